//! Co-prime sampler geometry with compressed inter-element spacing.
//!
//! A configuration pairs an uncompressed sub-array of `M` elements at spacing
//! `N` with a compressed sub-array of `N` elements at spacing `M_tilde = M / p`,
//! all positions in integer units of the Nyquist spacing. `p = 1` is the
//! prototype co-prime pair and `p = M` the nested arrangement.

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Validated `(M, N, p)` triple with the derived compressed spacing `M_tilde`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CacisConfig {
    m: u32,
    n: u32,
    p: u32,
    m_tilde: u32,
}

impl CacisConfig {
    /// Validates and builds a configuration.
    ///
    /// Requires `M, N >= 2`, `gcd(M, N) = 1`, and `p` in `[1, M]` dividing `M`.
    pub fn new(m: u32, n: u32, p: u32) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::DegenerateConfig { m, n });
        }
        let g = gcd(m, n);
        if g != 1 {
            return Err(Error::NotCoprime { m, n, gcd: g });
        }
        if p == 0 || p > m || !m.is_multiple_of(p) {
            return Err(Error::InvalidCompression { m, p });
        }
        let m_tilde = m / p;
        // co-primality of (M, N) carries over to (M_tilde, N)
        debug_assert_eq!(gcd(m_tilde, n), 1);
        Ok(Self { m, n, p, m_tilde })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m_tilde(&self) -> u32 {
        self.m_tilde
    }

    /// `p = 1`: spacing left uncompressed.
    pub fn is_prototype(&self) -> bool {
        self.p == 1
    }

    /// `p = M`: the compressed sub-array collapses to Nyquist spacing.
    pub fn is_nested(&self) -> bool {
        self.p == self.m
    }

    /// Largest realizable lag: the aperture `max(M_tilde(N-1), N(M-1))`.
    pub fn lag_span(&self) -> i64 {
        let a = self.m_tilde as i64 * (self.n as i64 - 1);
        let b = self.n as i64 * (self.m as i64 - 1);
        a.max(b)
    }

    /// Nyquist slots spanned by one acquisition block: a full co-prime period.
    pub fn snapshot_stride(&self) -> usize {
        self.m as usize * self.n as usize
    }

    pub fn sampler_grid(&self) -> SamplerGrid {
        SamplerGrid::new(self)
    }
}

/// Physical sample positions of the two sub-arrays, in Nyquist units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplerGrid {
    compressed: Vec<u64>,
    uncompressed: Vec<u64>,
    union: Vec<u64>,
}

impl SamplerGrid {
    fn new(config: &CacisConfig) -> Self {
        let compressed: Vec<u64> = (0..config.n as u64)
            .map(|i| config.m_tilde as u64 * i)
            .collect();
        let uncompressed: Vec<u64> = (0..config.m as u64)
            .map(|i| config.n as u64 * i)
            .collect();
        // the sub-arrays only coincide at position 0
        let mut union: Vec<u64> = compressed
            .iter()
            .chain(uncompressed.iter())
            .copied()
            .collect();
        union.sort_unstable();
        union.dedup();
        debug_assert_eq!(union.len(), (config.m + config.n - 1) as usize);
        Self {
            compressed,
            uncompressed,
            union,
        }
    }

    /// Positions `M_tilde * n` for `0 <= n <= N-1`, ascending.
    pub fn compressed_positions(&self) -> &[u64] {
        &self.compressed
    }

    /// Positions `N * m` for `0 <= m <= M-1`, ascending.
    pub fn uncompressed_positions(&self) -> &[u64] {
        &self.uncompressed
    }

    /// Sorted, deduplicated merge of both sub-arrays; `M + N - 1` entries.
    pub fn union_positions(&self) -> &[u64] {
        &self.union
    }
}

/// All compression factors usable with the pair `(M, N)`: divisors of `M`, ascending.
pub fn valid_compressions(m: u32, n: u32) -> Result<Vec<u32>> {
    if m < 2 || n < 2 {
        return Err(Error::DegenerateConfig { m, n });
    }
    let g = gcd(m, n);
    if g != 1 {
        return Err(Error::NotCoprime { m, n, gcd: g });
    }
    Ok((1..=m).filter(|&p| m.is_multiple_of(p)).collect())
}
