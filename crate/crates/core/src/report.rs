//! Design-exploration report: everything a pair `(M, N)` offers across its
//! valid compression factors, in one serializable bundle.

use serde::Serialize;

use crate::diffsets::{dof, first_hole, lag_range};
use crate::error::Result;
use crate::geometry::{valid_compressions, CacisConfig};

/// One row of the design report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigReport {
    pub p: u32,
    pub m_tilde: u32,
    pub dof: u64,
    pub first_hole: i64,
    pub lag_range: [i64; 2],
    pub positions_compressed: Vec<u64>,
    pub positions_uncompressed: Vec<u64>,
}

/// Design report for a co-prime pair, optionally narrowed to one compression.
#[derive(Debug, Clone, Serialize)]
pub struct DesignReport {
    pub m: u32,
    pub n: u32,
    pub valid_compressions: Vec<u32>,
    pub configurations: Vec<ConfigReport>,
}

impl DesignReport {
    pub fn build(m: u32, n: u32, only_p: Option<u32>) -> Result<Self> {
        let all = valid_compressions(m, n)?;
        let chosen: Vec<u32> = match only_p {
            // run the single-p validation even if p is not a divisor, so the
            // caller gets the specific rejection
            Some(p) => vec![CacisConfig::new(m, n, p)?.p()],
            None => all.clone(),
        };
        let configurations = chosen
            .into_iter()
            .map(|p| {
                let config = CacisConfig::new(m, n, p)?;
                let grid = config.sampler_grid();
                let (lo, hi) = lag_range(&config);
                Ok(ConfigReport {
                    p,
                    m_tilde: config.m_tilde(),
                    dof: dof(&config),
                    first_hole: first_hole(&config),
                    lag_range: [lo, hi],
                    positions_compressed: grid.compressed_positions().to_vec(),
                    positions_uncompressed: grid.uncompressed_positions().to_vec(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            m,
            n,
            valid_compressions: all,
            configurations,
        })
    }
}
