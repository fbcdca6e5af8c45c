//! Snapshot acquisition and low-latency correlogram estimation.
//!
//! A snapshot is one co-prime period of the sampling pattern. Within each
//! snapshot every ordered sample pair contributes to the lag it realizes, so
//! even one or two snapshots produce an estimate at every covered lag; holes
//! are zero-filled before the transform.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::CacisConfig;
use crate::grid;
use crate::weights::weight_closed_form;

/// Minimum spacing, in grid bins, between reported spectral peaks.
pub const PEAK_MIN_SEPARATION_BINS: usize = 3;

/// Line-spectrum signal model: complex exponentials with unit-snapshot
/// phase randomization driven by `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSpec {
    frequencies: Vec<f64>,
    amplitudes: Vec<f64>,
    seed: u64,
}

impl SignalSpec {
    /// Frequencies in radians per sample within `(-pi, pi]`, matching
    /// positive amplitudes.
    pub fn new(frequencies: Vec<f64>, amplitudes: Vec<f64>, seed: u64) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::EmptySignalModel);
        }
        if frequencies.len() != amplitudes.len() {
            return Err(Error::MismatchedSignalModel {
                frequencies: frequencies.len(),
                amplitudes: amplitudes.len(),
            });
        }
        if let Some(&value) = frequencies
            .iter()
            .find(|f| !f.is_finite() || **f <= -std::f64::consts::PI || **f > std::f64::consts::PI)
        {
            return Err(Error::FrequencyOutOfRange { value });
        }
        if let Some(&value) = amplitudes.iter().find(|a| !a.is_finite() || **a <= 0.0) {
            return Err(Error::NonPositiveAmplitude { value });
        }
        Ok(Self {
            frequencies,
            amplitudes,
            seed,
        })
    }

    /// All components at amplitude one.
    pub fn with_unit_amplitudes(frequencies: Vec<f64>, seed: u64) -> Result<Self> {
        let amplitudes = vec![1.0; frequencies.len()];
        Self::new(frequencies, amplitudes, seed)
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

// Splitmix64: tiny, seedable, and identical on every target, which keeps
// estimates reproducible bit-for-bit.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform phase in `[0, 2*pi)`.
    fn next_phase(&mut self) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        2.0 * std::f64::consts::PI * unit
    }
}

/// Synthesizes the full-rate sequence over `num_snapshots` blocks of
/// `stride` samples; each component re-draws its phase once per block.
pub fn generate_signal(spec: &SignalSpec, num_snapshots: usize, stride: usize) -> Vec<Complex64> {
    let mut rng = SplitMix64::new(spec.seed());
    let mut signal = vec![Complex64::default(); num_snapshots * stride];
    for (block, chunk) in signal.chunks_mut(stride).enumerate() {
        let phases: Vec<f64> = spec
            .frequencies()
            .iter()
            .map(|_| rng.next_phase())
            .collect();
        for (offset, sample) in chunk.iter_mut().enumerate() {
            let t = (block * stride + offset) as f64;
            let mut acc = Complex64::default();
            for ((&freq, &amp), &phase) in spec
                .frequencies()
                .iter()
                .zip(spec.amplitudes())
                .zip(&phases)
            {
                acc += amp * Complex64::cis(freq * t + phase);
            }
            *sample = acc;
        }
    }
    signal
}

/// Sub-Nyquist samples: per snapshot, the signal values at the union
/// positions of the sampler pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSamples {
    positions: Vec<u64>,
    stride: usize,
    snapshots: Vec<Vec<Complex64>>,
}

impl SnapshotSamples {
    /// Within-snapshot sample positions, one value per entry of each snapshot.
    pub fn positions(&self) -> &[u64] {
        &self.positions
    }

    /// Nyquist slots consumed per snapshot.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn snapshots(&self) -> &[Vec<Complex64>] {
        &self.snapshots
    }
}

/// Picks the sub-Nyquist samples out of a full-rate sequence: snapshot `b`
/// reads index `b * stride + u` for every union position `u`.
pub fn acquire(
    signal: &[Complex64],
    config: &CacisConfig,
    num_snapshots: usize,
) -> Result<SnapshotSamples> {
    assert!(num_snapshots >= 1);
    let stride = config.snapshot_stride();
    let needed = num_snapshots * stride;
    if signal.len() < needed {
        return Err(Error::InsufficientSignal {
            got: signal.len(),
            needed,
            snapshots: num_snapshots,
        });
    }
    let positions = config.sampler_grid().union_positions().to_vec();
    let snapshots = (0..num_snapshots)
        .map(|b| {
            positions
                .iter()
                .map(|&u| signal[b * stride + u as usize])
                .collect()
        })
        .collect();
    Ok(SnapshotSamples {
        positions,
        stride,
        snapshots,
    })
}

/// Autocorrelation estimates over the symmetric lag span, holes zero-filled.
#[derive(Debug, Clone, PartialEq)]
pub struct Autocorrelation {
    span: i64,
    values: Vec<Complex64>,
}

impl Autocorrelation {
    pub fn span(&self) -> i64 {
        self.span
    }

    /// Estimate at `lag`; zero outside the span.
    pub fn value(&self, lag: i64) -> Complex64 {
        if lag.abs() > self.span {
            Complex64::default()
        } else {
            self.values[(lag + self.span) as usize]
        }
    }

    /// `(lag, value)` pairs, ascending in lag.
    pub fn entries(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as i64 - self.span, v))
    }
}

/// Averages every ordered sample pair at every covered lag.
///
/// For lag `l >= 0`, all within-snapshot pairs `(u, v)` with `u - v = l` are
/// summed across snapshots and divided by `L * z(l)`; negative lags follow by
/// conjugate symmetry and holes stay zero. The per-snapshot pair count at
/// each lag is exactly the closed-form weight.
pub fn estimate_autocorrelation(
    samples: &SnapshotSamples,
    config: &CacisConfig,
) -> Autocorrelation {
    let positions = samples.positions();
    let span = config.lag_span();
    let weights = weight_closed_form(config);

    // ordered index pairs per non-negative lag, fixed enumeration order
    let mut pairs_by_lag: Vec<Vec<(usize, usize)>> = vec![Vec::new(); span as usize + 1];
    for (i, &u) in positions.iter().enumerate() {
        for (j, &v) in positions.iter().enumerate() {
            let lag = u as i64 - v as i64;
            if lag >= 0 {
                pairs_by_lag[lag as usize].push((i, j));
            }
        }
    }

    let num_snapshots = samples.snapshots().len();
    let mut values = vec![Complex64::default(); (2 * span + 1) as usize];
    for (lag, pairs) in pairs_by_lag.iter().enumerate() {
        debug_assert_eq!(
            pairs.len() as u64,
            weights.weight(lag as i64),
            "pair count diverged from the weight table at lag {lag}"
        );
        if pairs.is_empty() {
            continue;
        }
        let mut acc = Complex64::default();
        for snapshot in samples.snapshots() {
            for &(i, j) in pairs {
                acc += snapshot[i] * snapshot[j].conj();
            }
        }
        let value = acc / (num_snapshots as f64 * pairs.len() as f64);
        values[(span + lag as i64) as usize] = value;
        values[(span - lag as i64) as usize] = value.conj();
    }
    Autocorrelation { span, values }
}

/// Correlogram output: the lag estimates and their magnitude spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    pub autocorr: Autocorrelation,
    pub spectrum: Vec<f64>,
    pub grid_size: usize,
}

/// Magnitude of the lag-domain transform on the shared frequency grid.
pub fn correlogram(autocorr: Autocorrelation, grid_size: usize) -> Result<SpectrumEstimate> {
    let required = (2 * autocorr.span() + 1) as usize;
    if grid_size < required {
        return Err(Error::GridTooCoarse {
            grid_size,
            span: autocorr.span(),
            required,
        });
    }
    let spectrum = (0..grid_size)
        .map(|k| {
            let omega = grid::omega(grid_size, k);
            let acc: Complex64 = autocorr
                .entries()
                .map(|(lag, value)| value * Complex64::cis(-omega * lag as f64))
                .sum();
            acc.norm()
        })
        .collect();
    Ok(SpectrumEstimate {
        autocorr,
        spectrum,
        grid_size,
    })
}

/// Local maxima of a circular spectrum, strongest first, no two closer than
/// `min_separation` bins.
pub fn detect_peaks(spectrum: &[f64], min_separation: usize) -> Vec<usize> {
    let len = spectrum.len();
    if len < 3 {
        return Vec::new();
    }
    let mut maxima: Vec<usize> = (0..len)
        .filter(|&k| {
            let prev = spectrum[(k + len - 1) % len];
            let next = spectrum[(k + 1) % len];
            spectrum[k] > prev && spectrum[k] > next
        })
        .collect();
    maxima.sort_by(|&a, &b| {
        spectrum[b]
            .partial_cmp(&spectrum[a])
            .expect("spectrum magnitudes are finite")
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for k in maxima {
        let far_enough = kept.iter().all(|&j| {
            let d = k.abs_diff(j);
            d.min(len - d) >= min_separation
        });
        if far_enough {
            kept.push(k);
        }
    }
    kept
}
