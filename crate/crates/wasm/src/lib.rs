//! Browser bindings for the interactive demo page in `www/`.
//!
//! Build with `wasm-pack build crates/wasm --target web --out-dir www/pkg`
//! and serve `crates/wasm/www/` from any static file server.

use std::f64::consts::PI;

use wasm_bindgen::prelude::*;

use cacis_core::estimator::{
    acquire, correlogram, estimate_autocorrelation, generate_signal, SignalSpec,
};
use cacis_core::report::DesignReport;
use cacis_core::weights::{bias_closed_form, bias_via_dft, weight_closed_form};
use cacis_core::{valid_compressions, CacisConfig, Result as CoreResult};

fn design_report_impl(m: u32, n: u32) -> CoreResult<String> {
    let report = DesignReport::build(m, n, None)?;
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

fn weight_table_impl(m: u32, n: u32, p: u32) -> CoreResult<Vec<u32>> {
    let config = CacisConfig::new(m, n, p)?;
    Ok(weight_closed_form(&config)
        .entries()
        .map(|(_, z)| z as u32)
        .collect())
}

fn bias_curve_impl(m: u32, n: u32, p: u32, grid_size: usize) -> CoreResult<Vec<f64>> {
    let config = CacisConfig::new(m, n, p)?;
    let window = if config.is_prototype() {
        bias_via_dft(&weight_closed_form(&config), grid_size, 1.0)?
    } else {
        bias_closed_form(&config, grid_size, 1.0)?
    };
    let peak = window.values().iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    Ok(window.values().iter().map(|&v| v / peak).collect())
}

fn spectrum_curve_impl(
    m: u32,
    n: u32,
    p: u32,
    freqs_over_pi: &[f64],
    snapshots: usize,
    seed: u64,
    grid_size: usize,
) -> CoreResult<Vec<f64>> {
    let config = CacisConfig::new(m, n, p)?;
    let frequencies: Vec<f64> = freqs_over_pi.iter().map(|f| f * PI).collect();
    let spec = SignalSpec::with_unit_amplitudes(frequencies, seed)?;
    let snapshots = snapshots.max(1);
    let signal = generate_signal(&spec, snapshots, config.snapshot_stride());
    let samples = acquire(&signal, &config, snapshots)?;
    let estimate = correlogram(estimate_autocorrelation(&samples, &config), grid_size)?;
    let peak = estimate.spectrum.iter().fold(0.0f64, |a, &v| a.max(v));
    Ok(estimate.spectrum.iter().map(|&v| v / peak).collect())
}

/// Compression factors usable with `(m, n)`, ascending.
#[wasm_bindgen]
pub fn compressions(m: u32, n: u32) -> Result<Vec<u32>, JsValue> {
    valid_compressions(m, n).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Full design report for `(m, n)` as a JSON string.
#[wasm_bindgen]
pub fn design_report_json(m: u32, n: u32) -> Result<String, JsValue> {
    design_report_impl(m, n).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Contributor counts over the symmetric lag span; entry `i` is the weight
/// at lag `i - (len - 1) / 2`.
#[wasm_bindgen]
pub fn weight_table(m: u32, n: u32, p: u32) -> Result<Vec<u32>, JsValue> {
    weight_table_impl(m, n, p).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Spectral window samples over the grid, peak-normalized for display.
/// Uses the closed form when the spacing is compressed and the weight-table
/// transform for the prototype.
#[wasm_bindgen]
pub fn bias_curve(m: u32, n: u32, p: u32, grid_size: usize) -> Result<Vec<f64>, JsValue> {
    bias_curve_impl(m, n, p, grid_size).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// End-to-end correlogram magnitude spectrum for unit-amplitude components
/// at `freqs_over_pi * pi`, peak-normalized for display.
#[wasm_bindgen]
pub fn spectrum_curve(
    m: u32,
    n: u32,
    p: u32,
    freqs_over_pi: Vec<f64>,
    snapshots: usize,
    seed: u64,
    grid_size: usize,
) -> Result<Vec<f64>, JsValue> {
    spectrum_curve_impl(m, n, p, &freqs_over_pi, snapshots, seed, grid_size)
        .map_err(|e| JsValue::from_str(&e.to_string()))
}
