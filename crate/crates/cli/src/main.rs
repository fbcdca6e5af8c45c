//! `cacis` — design exploration, table emission, oracle verification, and
//! end-to-end correlogram estimation for co-prime samplers with compressed
//! inter-element spacing.
//!
//! Every run writes its artifacts plus a manifest recording the command,
//! the full parameter set, the seed, the tool version, and the output
//! paths; re-running the recorded command reproduces the artifacts
//! bit-for-bit.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use cacis_core::csv::{
    autocorr_csv, bias_csv, bias_oracle_csv, parse_signal_csv, spectrum_csv, weight_csv,
    weight_oracle_csv,
};
use cacis_core::estimator::{
    acquire, correlogram, detect_peaks, estimate_autocorrelation, generate_signal, SignalSpec,
    SpectrumEstimate, PEAK_MIN_SEPARATION_BINS,
};
use cacis_core::grid;
use cacis_core::report::DesignReport;
use cacis_core::weights::{bias_closed_form, bias_via_dft, weight_brute_force, weight_closed_form};
use cacis_core::{CacisConfig, Complex64, Error};

/// Relative agreement required of the two window routes under `--oracle`.
const BIAS_ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "cacis", version, about)]
struct Cli {
    /// Output directory for artifacts (default: $CACIS_OUT_DIR, then `.`)
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report valid compressions with their degrees of freedom, first hole,
    /// lag range, and sampler positions (JSON)
    Design {
        m: u32,
        n: u32,
        /// Restrict the report to one compression factor
        #[arg(long)]
        p: Option<u32>,
    },
    /// Emit the per-lag contributor counts as CSV
    Weights {
        m: u32,
        n: u32,
        p: u32,
        /// Also emit the exhaustive pair counts and fail on any mismatch
        #[arg(long)]
        oracle: bool,
    },
    /// Emit the spectral window of the weight function as CSV
    Bias {
        m: u32,
        n: u32,
        p: u32,
        /// Frequency grid size
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        /// Window normalization divisor
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        /// Also emit the weight-table transform and fail if the routes disagree
        #[arg(long)]
        oracle: bool,
    },
    /// Generate (or ingest), acquire, and estimate the correlogram spectrum
    Estimate {
        m: u32,
        n: u32,
        p: u32,
        /// Component frequencies in units of pi, e.g. 0.1,0.3,0.6
        #[arg(long, value_delimiter = ',')]
        freqs: Vec<f64>,
        /// Component amplitudes (default: all 1)
        #[arg(long, value_delimiter = ',')]
        amps: Option<Vec<f64>>,
        /// Number of snapshots
        #[arg(long, default_value_t = 10)]
        snapshots: usize,
        /// Phase-randomization seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Frequency grid size
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        /// Nyquist-rate complex input CSV (re,im rows) used instead of the
        /// synthesized signal
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

/// Written alongside every artifact; replaying the recorded command
/// reproduces the outputs exactly.
#[derive(Debug, Serialize, Deserialize)]
struct RunManifest {
    command: String,
    parameters: serde_json::Value,
    seed: Option<u64>,
    tool_version: String,
    outputs: Vec<String>,
}

struct Failure {
    code: u8,
    name: &'static str,
    message: String,
}

impl Failure {
    fn io(message: String) -> Self {
        Failure {
            code: 4,
            name: "Io",
            message,
        }
    }

    fn oracle(message: String) -> Self {
        Failure {
            code: 3,
            name: "OracleMismatch",
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let name = match err {
            Error::NotCoprime { .. } => "NotCoprime",
            Error::InvalidCompression { .. } => "InvalidCompression",
            Error::DegenerateConfig { .. } => "DegenerateConfig",
            Error::UnsupportedCompression => "UnsupportedCompression",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::InsufficientSignal { .. } => "InsufficientSignal",
            Error::EmptySignalModel => "EmptySignalModel",
            Error::MismatchedSignalModel { .. } => "MismatchedSignalModel",
            Error::FrequencyOutOfRange { .. } => "FrequencyOutOfRange",
            Error::NonPositiveAmplitude { .. } => "NonPositiveAmplitude",
            Error::MalformedCsv { .. } => "MalformedCsv",
        };
        Failure {
            code: 2,
            name,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!(
                "{}",
                json!({ "error": failure.name, "message": failure.message })
            );
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out_dir = cli
        .out_dir
        .or_else(|| std::env::var_os("CACIS_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out_dir)
        .map_err(|e| Failure::io(format!("cannot create {}: {e}", out_dir.display())))?;

    match cli.command {
        Command::Design { m, n, p } => cmd_design(&out_dir, m, n, p),
        Command::Weights { m, n, p, oracle } => cmd_weights(&out_dir, m, n, p, oracle),
        Command::Bias {
            m,
            n,
            p,
            grid,
            s,
            oracle,
        } => cmd_bias(&out_dir, m, n, p, grid, s, oracle),
        Command::Estimate {
            m,
            n,
            p,
            freqs,
            amps,
            snapshots,
            seed,
            grid,
            input,
        } => cmd_estimate(&out_dir, m, n, p, freqs, amps, snapshots, seed, grid, input),
    }
}

fn write_artifact(out_dir: &Path, name: &str, contents: &str) -> Result<PathBuf, Failure> {
    let path = out_dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn write_manifest(out_dir: &Path, base: &str, manifest: &RunManifest) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    write_artifact(out_dir, &format!("{base}.manifest.json"), &text)?;
    Ok(())
}

fn cmd_design(out_dir: &Path, m: u32, n: u32, p: Option<u32>) -> Result<(), Failure> {
    let report = DesignReport::build(m, n, p)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');

    let base = match p {
        Some(p) => format!("design_M{m}_N{n}_p{p}"),
        None => format!("design_M{m}_N{n}"),
    };
    let file = format!("{base}.json");
    write_artifact(out_dir, &file, &text)?;
    write_manifest(
        out_dir,
        &base,
        &RunManifest {
            command: "design".into(),
            parameters: json!({ "m": m, "n": n, "p": p }),
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            outputs: vec![file],
        },
    )?;
    print!("{text}");
    Ok(())
}

fn cmd_weights(out_dir: &Path, m: u32, n: u32, p: u32, oracle: bool) -> Result<(), Failure> {
    let config = CacisConfig::new(m, n, p)?;
    let closed = weight_closed_form(&config);
    let csv = if oracle {
        let brute = weight_brute_force(&config);
        if closed != brute {
            let lag = closed
                .entries()
                .find(|&(lag, z)| z != brute.weight(lag))
                .map(|(lag, _)| lag)
                .unwrap_or_default();
            return Err(Failure::oracle(format!(
                "closed-form weight disagrees with pair enumeration at lag {lag}"
            )));
        }
        weight_oracle_csv(&closed, &brute)
    } else {
        weight_csv(&closed)
    };

    let base = format!("weights_M{m}_N{n}_p{p}");
    let file = format!("{base}.csv");
    let path = write_artifact(out_dir, &file, &csv)?;
    write_manifest(
        out_dir,
        &base,
        &RunManifest {
            command: "weights".into(),
            parameters: json!({ "m": m, "n": n, "p": p, "oracle": oracle }),
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            outputs: vec![file],
        },
    )?;
    println!("{}", path.display());
    Ok(())
}

fn cmd_bias(
    out_dir: &Path,
    m: u32,
    n: u32,
    p: u32,
    grid_size: usize,
    s: f64,
    oracle: bool,
) -> Result<(), Failure> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Failure {
            code: 2,
            name: "InvalidNormalization",
            message: format!("normalization s must be a positive finite number, got {s}"),
        });
    }
    let config = CacisConfig::new(m, n, p)?;
    let table = weight_closed_form(&config);
    let dft = bias_via_dft(&table, grid_size, s)?;

    let (csv, dft_only) = if config.is_prototype() {
        eprintln!(
            "note: the closed-form window is undefined for p = 1; \
             emitting the weight-table transform only"
        );
        (bias_csv("w_dft", &dft), true)
    } else {
        let closed = bias_closed_form(&config, grid_size, s)?;
        if oracle {
            let peak = dft.values().iter().fold(0.0f64, |a, &v| a.max(v.abs()));
            let deviation = closed
                .values()
                .iter()
                .zip(dft.values())
                .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()))
                / peak;
            if deviation >= BIAS_ORACLE_TOLERANCE {
                return Err(Failure::oracle(format!(
                    "window routes disagree: relative deviation {deviation:.3e}"
                )));
            }
            (bias_oracle_csv(&closed, &dft), false)
        } else {
            (bias_csv("w_closed", &closed), false)
        }
    };

    let base = format!("bias_M{m}_N{n}_p{p}_g{grid_size}");
    let file = format!("{base}.csv");
    let path = write_artifact(out_dir, &file, &csv)?;
    write_manifest(
        out_dir,
        &base,
        &RunManifest {
            command: "bias".into(),
            parameters: json!({
                "m": m, "n": n, "p": p, "grid": grid_size, "s": s,
                "oracle": oracle, "dft_only": dft_only,
            }),
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            outputs: vec![file],
        },
    )?;
    println!("{}", path.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_estimate(
    out_dir: &Path,
    m: u32,
    n: u32,
    p: u32,
    freqs_over_pi: Vec<f64>,
    amps: Option<Vec<f64>>,
    snapshots: usize,
    seed: u64,
    grid_size: usize,
    input: Option<PathBuf>,
) -> Result<(), Failure> {
    let config = CacisConfig::new(m, n, p)?;

    let (signal, used_seed, peak_count): (Vec<Complex64>, Option<u64>, usize) = match &input {
        Some(path) => {
            if !freqs_over_pi.is_empty() {
                eprintln!("note: --input supplied; ignoring --freqs/--amps/--seed");
            }
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
            (parse_signal_csv(&text)?, None, 3)
        }
        None => {
            let frequencies: Vec<f64> = freqs_over_pi.iter().map(|f| f * PI).collect();
            let spec = match &amps {
                Some(amps) => SignalSpec::new(frequencies, amps.clone(), seed)?,
                None => SignalSpec::with_unit_amplitudes(frequencies, seed)?,
            };
            let count = spec.frequencies().len();
            (
                generate_signal(&spec, snapshots, config.snapshot_stride()),
                Some(seed),
                count,
            )
        }
    };

    let samples = acquire(&signal, &config, snapshots)?;
    let autocorr = estimate_autocorrelation(&samples, &config);
    let estimate: SpectrumEstimate = correlogram(autocorr, grid_size)?;

    let peaks = detect_peaks(&estimate.spectrum, PEAK_MIN_SEPARATION_BINS);
    for (rank, &bin) in peaks.iter().take(peak_count).enumerate() {
        println!(
            "peak {}: omega/pi = {:.6}, magnitude = {:.6}",
            rank + 1,
            grid::omega(grid_size, bin) / PI,
            estimate.spectrum[bin]
        );
    }

    let base = format!("estimate_M{m}_N{n}_p{p}_L{snapshots}_s{seed}");
    let spectrum_file = format!("{base}_spectrum.csv");
    let autocorr_file = format!("{base}_autocorr.csv");
    write_artifact(out_dir, &spectrum_file, &spectrum_csv(&estimate))?;
    write_artifact(out_dir, &autocorr_file, &autocorr_csv(&estimate.autocorr))?;
    write_manifest(
        out_dir,
        &base,
        &RunManifest {
            command: "estimate".into(),
            parameters: json!({
                "m": m, "n": n, "p": p,
                "freqs": freqs_over_pi,
                "amps": amps,
                "snapshots": snapshots,
                "seed": seed,
                "grid": grid_size,
                "input": input.as_ref().map(|p| p.display().to_string()),
            }),
            seed: used_seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            outputs: vec![spectrum_file, autocorr_file],
        },
    )?;
    Ok(())
}
