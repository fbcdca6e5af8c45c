//! Per-lag contributor counts and the spectral window they induce.
//!
//! `z(l)` counts the ordered sample pairs whose position difference is `l`;
//! it is assembled here in closed form from the difference-set structure and
//! cross-checked by exhaustive pair counting. The window `W(e^{j omega})` is
//! the Fourier transform of `z`; the correlogram estimate of a spectrum is,
//! statistically, the true spectrum convolved with this window, so its main
//! lobe and near-lobe ripple decide what a configuration can resolve.

use crate::error::{Error, Result};
use crate::geometry::CacisConfig;
use crate::grid;

/// Frequency band, in units of pi, used when judging ripple next to the
/// window's main lobe (and spurious estimates next to a spectral peak).
pub const NEAR_LOBE_BAND_OVER_PI: (f64, f64) = (0.04, 0.30);

/// Contributor counts `z(l)` for `l in [-span, span]`, holes stored as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagTable {
    span: i64,
    weights: Vec<u64>,
}

impl LagTable {
    fn zero(span: i64) -> Self {
        assert!(span > 0);
        Self {
            span,
            weights: vec![0; (2 * span + 1) as usize],
        }
    }

    /// Largest tabulated lag magnitude.
    pub fn span(&self) -> i64 {
        self.span
    }

    /// `z(lag)`; zero outside the tabulated span.
    pub fn weight(&self, lag: i64) -> u64 {
        if lag.abs() > self.span {
            0
        } else {
            self.weights[(lag + self.span) as usize]
        }
    }

    /// `(lag, z(lag))` pairs, ascending in lag, holes included.
    pub fn entries(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (i as i64 - self.span, w))
    }

    /// Total pair count; always the squared number of distinct positions.
    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Number of realizable lags (non-zero entries).
    pub fn nonzero_count(&self) -> u64 {
        self.weights.iter().filter(|&&w| w > 0).count() as u64
    }
}

/// Assembles `z(l)` from the closed-form difference-set counts.
pub fn weight_closed_form(config: &CacisConfig) -> LagTable {
    let m = config.m() as i64;
    let n = config.n() as i64;
    let m_tilde = config.m_tilde() as i64;
    let span = config.lag_span();
    // compressed self lags gain one extra cross pair once p >= 2
    let extra = if config.p() >= 2 { 1 } else { 0 };

    let mut acc = vec![0i64; (2 * span + 1) as usize];
    let mut add = |lag: i64, count: i64| {
        acc[(lag + span) as usize] += count;
    };

    for i in -(n - 1)..=(n - 1) {
        add(m_tilde * i, n - i.abs() + extra);
    }
    add(0, -(1 + extra));
    for i in -(m - 1)..=(m - 1) {
        add(n * i, m - i.abs());
    }
    // mirrored cross lags carry two contributors each
    for nn in 1..n {
        for mm in 1..m_tilde {
            add(m_tilde * nn - n * mm, 2);
        }
    }
    // unmirrored cross lags carry one on each side
    for nn in 1..n {
        for mm in (m_tilde + 1)..m {
            let l = n * mm - m_tilde * nn;
            add(-l, 1);
            add(l, 1);
        }
    }

    let weights = acc
        .into_iter()
        .map(|w| {
            debug_assert!(w >= 0);
            w as u64
        })
        .collect();
    LagTable { span, weights }
}

/// Counts ordered position pairs per lag over the union grid; the exhaustive
/// counterpart of [`weight_closed_form`].
pub fn weight_brute_force(config: &CacisConfig) -> LagTable {
    let mut table = LagTable::zero(config.lag_span());
    let grid = config.sampler_grid();
    for &u in grid.union_positions() {
        for &v in grid.union_positions() {
            let lag = u as i64 - v as i64;
            table.weights[(lag + table.span) as usize] += 1;
        }
    }
    table
}

/// Real spectral window sampled on the shared frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BiasWindow {
    grid_size: usize,
    values: Vec<f64>,
    normalization: f64,
}

impl BiasWindow {
    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// Window samples, one per grid frequency.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// Frequency of the `k`-th sample.
    pub fn omega(&self, k: usize) -> f64 {
        grid::omega(self.grid_size, k)
    }
}

fn check_grid(grid_size: usize, span: i64) -> Result<()> {
    let required = (2 * span + 1) as usize;
    if grid_size < required {
        return Err(Error::GridTooCoarse {
            grid_size,
            span,
            required,
        });
    }
    Ok(())
}

/// `sin(r*theta)/sin(theta)` with the removable singularities at
/// `sin(theta) = 0` replaced by their limit; `r` is integer-valued.
fn sine_ratio(r: f64, theta: f64) -> f64 {
    let denom = theta.sin();
    if denom.abs() < 1e-12 {
        // near theta = k*pi both sines vanish; the ratio of their leading
        // linear terms is r*cos(r*theta)/cos(theta)
        r * (r * theta).cos() / theta.cos()
    } else {
        (r * theta).sin() / denom
    }
}

/// Evaluates the closed-form window on the shared grid.
///
/// The expression combines two squared aperture kernels, two mirrored-set
/// cross kernels, and a one-sided comb kernel; it is only valid once the
/// spacing is actually compressed, so `p = 1` is rejected and served by
/// [`bias_via_dft`] instead.
pub fn bias_closed_form(config: &CacisConfig, grid_size: usize, s: f64) -> Result<BiasWindow> {
    if config.is_prototype() {
        return Err(Error::UnsupportedCompression);
    }
    check_grid(grid_size, config.lag_span())?;
    assert!(s > 0.0, "normalization must be positive");

    let m = config.m() as f64;
    let n = config.n() as f64;
    let m_tilde = config.m_tilde() as f64;

    let values = (0..grid_size)
        .map(|k| {
            let w = grid::omega(grid_size, k);
            let theta_c = w * m_tilde / 2.0; // compressed-spacing half angle
            let theta_u = w * n / 2.0; // uncompressed-spacing half angle
            let aperture_c = sine_ratio(n, theta_c).powi(2);
            let aperture_u = sine_ratio(m, theta_u).powi(2);
            let mirrored = 2.0 * sine_ratio(n - 1.0, theta_c) * sine_ratio(m_tilde - 1.0, theta_u);
            let unmirrored = 2.0
                * (w * m * n / 2.0).cos()
                * sine_ratio(n - 1.0, theta_c)
                * sine_ratio(m - m_tilde - 1.0, theta_u);
            let comb = sine_ratio(2.0 * n - 1.0, theta_c);
            (aperture_c + aperture_u + mirrored + unmirrored + comb - 2.0) / s
        })
        .collect();

    Ok(BiasWindow {
        grid_size,
        values,
        normalization: s,
    })
}

/// The window value at a single frequency, straight from the table:
/// `(1/s) * sum_l z(l) * cos(omega * l)`.
pub fn window_at(table: &LagTable, omega: f64, s: f64) -> f64 {
    let acc: f64 = table
        .entries()
        .filter(|&(_, z)| z > 0)
        .map(|(lag, z)| z as f64 * (omega * lag as f64).cos())
        .sum();
    acc / s
}

/// Transforms a weight table into its window on the shared grid; the
/// simulation-side counterpart of [`bias_closed_form`] and the only route
/// available for the prototype.
pub fn bias_via_dft(table: &LagTable, grid_size: usize, s: f64) -> Result<BiasWindow> {
    check_grid(grid_size, table.span())?;
    assert!(s > 0.0, "normalization must be positive");
    let values = (0..grid_size)
        .map(|k| window_at(table, grid::omega(grid_size, k), s))
        .collect();
    Ok(BiasWindow {
        grid_size,
        values,
        normalization: s,
    })
}
