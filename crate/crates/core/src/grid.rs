//! Shared frequency-grid convention: `omega_k = -pi + 2*pi*k / grid_size`
//! for `k in [0, grid_size)`. Every spectral product in this crate samples
//! this grid so curves line up bit-for-bit.

use std::f64::consts::PI;

/// The `k`-th grid frequency in radians per sample.
pub fn omega(grid_size: usize, k: usize) -> f64 {
    debug_assert!(k < grid_size);
    -PI + 2.0 * PI * k as f64 / grid_size as f64
}

/// All grid frequencies, ascending over `[-pi, pi)`.
pub fn omegas(grid_size: usize) -> Vec<f64> {
    (0..grid_size).map(|k| omega(grid_size, k)).collect()
}

/// Grid index nearest to `target` radians per sample.
pub fn nearest_bin(grid_size: usize, target: f64) -> usize {
    let k = ((target + PI) * grid_size as f64 / (2.0 * PI)).round() as i64;
    k.rem_euclid(grid_size as i64) as usize
}
