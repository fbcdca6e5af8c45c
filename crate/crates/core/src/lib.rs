//! Co-prime sampling with compressed inter-element spacing.
//!
//! Two uniform sub-samplers with co-prime periods `M` and `N` (the second
//! compressed by an integer factor `p`) acquire far fewer samples than a
//! Nyquist grid yet realize almost every autocorrelation lag. This crate
//! covers the full pipeline:
//!
//! * [`geometry`] — validated configurations and sampler position grids;
//! * [`diffsets`] — self/cross difference sets, their mirrored/unmirrored
//!   partition, degrees of freedom, lag range, and first hole, with an
//!   exhaustive pair-enumeration oracle;
//! * [`weights`] — closed-form per-lag contributor counts and the spectral
//!   window they induce, each against an independent route;
//! * [`estimator`] — snapshot acquisition and low-latency correlogram
//!   spectral estimation using every sample pair;
//! * [`csv`] — stable text formats for all of the above;
//! * [`report`] — the serializable design report.

pub mod csv;
pub mod diffsets;
pub mod error;
pub mod estimator;
pub mod geometry;
pub mod grid;
pub mod report;
pub mod weights;

pub use error::{Error, Result};
pub use geometry::{valid_compressions, CacisConfig, SamplerGrid};

pub use num_complex::Complex64;
