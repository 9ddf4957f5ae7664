//! Correlation measures of two-qubit Bell-diagonal states under projective
//! and weak measurements on one subsystem.
//!
//! The crate is organised bottom-up:
//!
//! - [`state`]: Bell-diagonal and Werner states, entropies, partial traces.
//! - [`measurement`]: projective and weak measurements on qubit B and the
//!   Holevo quantity of the ensembles they prepare on qubit A.
//! - [`correlations`]: closed-form measures (maximal Holevo quantity,
//!   classical correlation, discord and their weak-measurement analogues,
//!   entanglement of formation of Werner states).
//! - [`optimizer`]: a brute-force grid search plus simplex refinement over
//!   measurement directions, used as an independent check on the closed forms.
//! - [`channels`]: local decoherence channels, both as explicit Kraus maps
//!   and as transformations of the correlation triple.
//! - [`sampling`]: seeded random inputs for property and verification suites.

pub mod channels;
pub mod correlations;
mod error;
pub mod linalg;
pub mod measurement;
pub mod optimizer;
pub mod sampling;
pub mod state;

pub use error::{Error, Result};

pub use channels::{ChannelKind, ChannelSpec, NoiseSide};
pub use correlations::MeasureReport;
pub use measurement::{MeasuredEnsemble, MeasurementDirection, UnitaryParams, WeakStrength};
pub use optimizer::{MeasurementFamily, Optimum, OptimizerConfig};
pub use state::{CorrelationTriple, DensityMatrix, Subsystem, WernerParams};
