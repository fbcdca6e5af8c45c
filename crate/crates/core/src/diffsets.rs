//! Difference sets of a co-prime sampler pair.
//!
//! Autocorrelation lags realizable by the two sub-arrays split into
//! self-differences (within one sub-array), cross-differences (between the
//! two), and a partition of the cross set into a mirrored part (every lag
//! appears together with its negative) and an unmirrored part (strictly
//! one-sided). The partition drives the exact lag-weight counts and the
//! hole analysis; a brute-force enumeration over physical positions serves
//! as the independent check for all of it.

use std::collections::{BTreeMap, BTreeSet};

use crate::geometry::CacisConfig;

/// Which construction produced a labeled lag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LagSource {
    /// `+M_tilde * n` within the compressed sub-array.
    SelfCompressedPlus,
    /// `-M_tilde * n` within the compressed sub-array.
    SelfCompressedMinus,
    /// `+N * m` within the uncompressed sub-array.
    SelfUncompressedPlus,
    /// `-N * m` within the uncompressed sub-array.
    SelfUncompressedMinus,
    /// `M_tilde * n - N * m` across the sub-arrays.
    CrossPlus,
    /// `N * m - M_tilde * n` across the sub-arrays.
    CrossMinus,
}

/// A lag together with the `(n, m)` indices that generated it.
///
/// Self-differences use the unused index slot as zero: `(n, 0)` for the
/// compressed sub-array, `(0, m)` for the uncompressed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledLag {
    pub lag: i64,
    pub source: LagSource,
    pub pair: (u32, u32),
}

/// The four signed self-difference sets and their distinct union.
#[derive(Debug, Clone)]
pub struct SelfDifferences {
    pub compressed_plus: Vec<LabeledLag>,
    pub compressed_minus: Vec<LabeledLag>,
    pub uncompressed_plus: Vec<LabeledLag>,
    pub uncompressed_minus: Vec<LabeledLag>,
    /// Distinct union of all four signed sets; `2(M + N - 1) - 1` lags.
    pub union: BTreeSet<i64>,
}

/// Both signed cross-difference sets, `M * N` labeled entries each.
#[derive(Debug, Clone)]
pub struct CrossDifferences {
    pub plus: Vec<LabeledLag>,
    pub minus: Vec<LabeledLag>,
}

/// Partition of the cross-difference union into self, mirrored, and
/// unmirrored parts, with generating-pair provenance on the signed sets.
#[derive(Debug, Clone)]
pub struct DifferencePartition {
    /// `M_tilde*n - N*m` over `n in [1, N-1]`, `m in [1, M_tilde-1]`.
    pub mirrored_plus: Vec<LabeledLag>,
    /// Negatives of `mirrored_plus`.
    pub mirrored_minus: Vec<LabeledLag>,
    /// `M_tilde*n - N*m` over `n in [1, N-1]`, `m in [M_tilde+1, M-1]`.
    pub unmirrored_plus: Vec<LabeledLag>,
    /// Negatives of `unmirrored_plus`.
    pub unmirrored_minus: Vec<LabeledLag>,
    /// Distinct lags of the mirrored part.
    pub mirrored: BTreeSet<i64>,
    /// Distinct lags of the unmirrored part.
    pub unmirrored: BTreeSet<i64>,
    /// Distinct self-difference lags.
    pub self_union: BTreeSet<i64>,
    /// Distinct lags over both signed cross sets; every realizable lag.
    pub cross_union: BTreeSet<i64>,
}

pub fn self_differences(config: &CacisConfig) -> SelfDifferences {
    let m_tilde = config.m_tilde() as i64;
    let n_spacing = config.n() as i64;

    let compressed_plus: Vec<LabeledLag> = (0..config.n())
        .map(|n| LabeledLag {
            lag: m_tilde * n as i64,
            source: LagSource::SelfCompressedPlus,
            pair: (n, 0),
        })
        .collect();
    let compressed_minus: Vec<LabeledLag> = compressed_plus
        .iter()
        .map(|l| LabeledLag {
            lag: -l.lag,
            source: LagSource::SelfCompressedMinus,
            pair: l.pair,
        })
        .collect();
    let uncompressed_plus: Vec<LabeledLag> = (0..config.m())
        .map(|m| LabeledLag {
            lag: n_spacing * m as i64,
            source: LagSource::SelfUncompressedPlus,
            pair: (0, m),
        })
        .collect();
    let uncompressed_minus: Vec<LabeledLag> = uncompressed_plus
        .iter()
        .map(|l| LabeledLag {
            lag: -l.lag,
            source: LagSource::SelfUncompressedMinus,
            pair: l.pair,
        })
        .collect();

    let union: BTreeSet<i64> = compressed_plus
        .iter()
        .chain(&compressed_minus)
        .chain(&uncompressed_plus)
        .chain(&uncompressed_minus)
        .map(|l| l.lag)
        .collect();

    SelfDifferences {
        compressed_plus,
        compressed_minus,
        uncompressed_plus,
        uncompressed_minus,
        union,
    }
}

pub fn cross_differences(config: &CacisConfig) -> CrossDifferences {
    let m_tilde = config.m_tilde() as i64;
    let n_spacing = config.n() as i64;
    let mut plus = Vec::with_capacity((config.m() * config.n()) as usize);
    let mut minus = Vec::with_capacity(plus.capacity());
    for n in 0..config.n() {
        for m in 0..config.m() {
            let lag = m_tilde * n as i64 - n_spacing * m as i64;
            plus.push(LabeledLag {
                lag,
                source: LagSource::CrossPlus,
                pair: (n, m),
            });
            minus.push(LabeledLag {
                lag: -lag,
                source: LagSource::CrossMinus,
                pair: (n, m),
            });
        }
    }
    CrossDifferences { plus, minus }
}

pub fn partition(config: &CacisConfig) -> DifferencePartition {
    let m_tilde = config.m_tilde() as i64;
    let n_spacing = config.n() as i64;

    // empty index ranges (prototype or nested) yield empty sets, never errors
    let mut mirrored_plus = Vec::new();
    for n in 1..config.n() {
        for m in 1..config.m_tilde() {
            mirrored_plus.push(LabeledLag {
                lag: m_tilde * n as i64 - n_spacing * m as i64,
                source: LagSource::CrossPlus,
                pair: (n, m),
            });
        }
    }
    let mut unmirrored_plus = Vec::new();
    for n in 1..config.n() {
        for m in (config.m_tilde() + 1)..config.m() {
            unmirrored_plus.push(LabeledLag {
                lag: m_tilde * n as i64 - n_spacing * m as i64,
                source: LagSource::CrossPlus,
                pair: (n, m),
            });
        }
    }
    let mirror = |set: &[LabeledLag]| -> Vec<LabeledLag> {
        set.iter()
            .map(|l| LabeledLag {
                lag: -l.lag,
                source: LagSource::CrossMinus,
                pair: l.pair,
            })
            .collect()
    };
    let mirrored_minus = mirror(&mirrored_plus);
    let unmirrored_minus = mirror(&unmirrored_plus);

    let collect = |a: &[LabeledLag], b: &[LabeledLag]| -> BTreeSet<i64> {
        a.iter().chain(b).map(|l| l.lag).collect()
    };
    let mirrored = collect(&mirrored_plus, &mirrored_minus);
    let unmirrored = collect(&unmirrored_plus, &unmirrored_minus);

    let cross = cross_differences(config);
    let cross_union = collect(&cross.plus, &cross.minus);
    let self_union = self_differences(config).union;

    DifferencePartition {
        mirrored_plus,
        mirrored_minus,
        unmirrored_plus,
        unmirrored_minus,
        mirrored,
        unmirrored,
        self_union,
        cross_union,
    }
}

/// Number of distinct realizable lags, in closed form.
pub fn dof(config: &CacisConfig) -> u64 {
    let m = config.m() as i64;
    let n = config.n() as i64;
    let m_tilde = config.m_tilde() as i64;
    let base = 2 * (m + n - 1) - 1;
    let mirrored = if config.p() < config.m() {
        (m_tilde - 1) * (n - 1)
    } else {
        0
    };
    let unmirrored = if config.p() > 1 {
        2 * (n - 1) * (m - m_tilde - 1)
    } else {
        0
    };
    (base + mirrored + unmirrored) as u64
}

/// Extreme realizable lags `(-max, max)`; the positive extreme is the aperture.
pub fn lag_range(config: &CacisConfig) -> (i64, i64) {
    let span = config.lag_span();
    (-span, span)
}

/// Smallest positive lag no sample pair realizes.
///
/// Closed form `MN - M_tilde(N - 1)` for `p >= 2`; located by scanning the
/// enumerated lag set for the prototype. The return value is checked against
/// the realizable set either way: absent itself, everything below present.
pub fn first_hole(config: &CacisConfig) -> i64 {
    let lags = partition(config).cross_union;
    let hole = if config.p() >= 2 {
        let m = config.m() as i64;
        let n = config.n() as i64;
        m * n - config.m_tilde() as i64 * (n - 1)
    } else {
        let mut h = 1i64;
        while lags.contains(&h) {
            h += 1;
        }
        h
    };
    assert!(!lags.contains(&hole), "claimed hole {hole} is realizable");
    assert!(
        (0..hole).all(|l| lags.contains(&l)),
        "lag below the first hole {hole} is missing"
    );
    hole
}

/// Tally of ordered position-pair differences over the union grid.
///
/// Exhaustive and independent of the set constructions above: the key set
/// must coincide with the cross-difference union and the key count with
/// [`dof`].
pub fn brute_force_difference_oracle(config: &CacisConfig) -> BTreeMap<i64, u64> {
    let grid = config.sampler_grid();
    let positions = grid.union_positions();
    let mut counts = BTreeMap::new();
    for &u in positions {
        for &v in positions {
            *counts.entry(u as i64 - v as i64).or_insert(0u64) += 1;
        }
    }
    counts
}
