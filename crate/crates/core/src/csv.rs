//! CSV emission and ingestion. UTF-8, header row first, `.` decimal point,
//! no locale dependence; floats use the shortest round-trip form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::estimator::{Autocorrelation, SpectrumEstimate};
use crate::weights::{BiasWindow, LagTable};

/// `lag,weight` rows over the full symmetric span.
pub fn weight_csv(table: &LagTable) -> String {
    let mut out = String::from("lag,weight\n");
    for (lag, z) in table.entries() {
        out.push_str(&format!("{lag},{z}\n"));
    }
    out
}

/// `lag,z_closed,z_brute` rows for side-by-side oracle inspection.
pub fn weight_oracle_csv(closed: &LagTable, brute: &LagTable) -> String {
    debug_assert_eq!(closed.span(), brute.span());
    let mut out = String::from("lag,z_closed,z_brute\n");
    for (lag, z) in closed.entries() {
        out.push_str(&format!("{lag},{z},{}\n", brute.weight(lag)));
    }
    out
}

/// `omega,<label>` rows, one per grid frequency.
pub fn bias_csv(label: &str, window: &BiasWindow) -> String {
    let mut out = format!("omega,{label}\n");
    for (k, value) in window.values().iter().enumerate() {
        out.push_str(&format!("{},{}\n", window.omega(k), value));
    }
    out
}

/// `omega,w_closed,w_dft` rows comparing the two window routes.
pub fn bias_oracle_csv(closed: &BiasWindow, dft: &BiasWindow) -> String {
    debug_assert_eq!(closed.grid_size(), dft.grid_size());
    let mut out = String::from("omega,w_closed,w_dft\n");
    for (k, value) in closed.values().iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", closed.omega(k), value, dft.values()[k]));
    }
    out
}

/// `omega,magnitude` rows of the correlogram spectrum.
pub fn spectrum_csv(estimate: &SpectrumEstimate) -> String {
    let mut out = String::from("omega,magnitude\n");
    for (k, value) in estimate.spectrum.iter().enumerate() {
        out.push_str(&format!(
            "{},{}\n",
            crate::grid::omega(estimate.grid_size, k),
            value
        ));
    }
    out
}

/// `lag,re,im` rows of the lag-domain estimates.
pub fn autocorr_csv(autocorr: &Autocorrelation) -> String {
    let mut out = String::from("lag,re,im\n");
    for (lag, value) in autocorr.entries() {
        out.push_str(&format!("{lag},{},{}\n", value.re, value.im));
    }
    out
}

/// Reads a Nyquist-rate complex sequence from `re,im` rows; a leading
/// header row is skipped if present.
pub fn parse_signal_csv(text: &str) -> Result<Vec<Complex64>> {
    let mut samples = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let re = fields.next().map(str::trim);
        let im = fields.next().map(str::trim);
        if fields.next().is_some() {
            return Err(Error::MalformedCsv {
                line: idx + 1,
                message: "expected exactly two columns (re, im)".into(),
            });
        }
        match (re, im) {
            (Some(re), Some(im)) => match (re.parse::<f64>(), im.parse::<f64>()) {
                (Ok(re), Ok(im)) => samples.push(Complex64::new(re, im)),
                _ if idx == 0 => continue, // header row
                _ => {
                    return Err(Error::MalformedCsv {
                        line: idx + 1,
                        message: format!("cannot parse '{re},{im}' as two floats"),
                    })
                }
            },
            _ => {
                return Err(Error::MalformedCsv {
                    line: idx + 1,
                    message: "expected exactly two columns (re, im)".into(),
                })
            }
        }
    }
    Ok(samples)
}
