//! Second-order temporal interference of two independent light beams at a
//! lossless asymmetrical beam splitter.
//!
//! Two point sources `a` and `b` (laser, thermal or single-photon light) are
//! superposed on a beam splitter with reflectivity `R` and observed with two
//! single-photon detectors in coincidence. The crate provides
//!
//! * the conditional path probabilities and two-photon "way" probabilities
//!   ([`probability`]),
//! * the indistinguishable two-photon alternatives of each source pairing
//!   ([`alternatives`]),
//! * closed-form `G²(τ)` and visibility for all six pairings ([`analytic`]),
//! * a random-phase Monte Carlo ensemble average used as an independent
//!   oracle ([`montecarlo`]),
//! * visibility maximization and classical-limit threshold analysis
//!   ([`optimize`]).
//!
//! `G²` values are in proportional units: only ratios such as the visibility
//! are physically meaningful.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod alternatives;
pub mod analytic;
mod error;
mod exec;
pub mod model;
pub mod montecarlo;
pub mod optimize;
pub mod probability;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{
    validate_config, BeamSplitter, ExperimentConfig, G2Curve, PairKind, Source, SourceKind,
    VisibilityResult,
};
pub use probability::{path_probabilities, way_probabilities, PathProbabilities, WayProbabilities};
