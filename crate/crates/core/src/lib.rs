//! Coupled randomness and mutual dimension toolkit.
//!
//! The crate is organized bottom-up:
//!
//! - [`measures`]: pmfs on an alphabet and on pair alphabets, longitudinal
//!   product measures and the ρ-correlated family of coupled bits.
//! - [`info`]: exact entropy, mutual information, divergences, self-information
//!   and Hellinger distance.
//! - [`genseq`]: seeded sampling of coupled words, frequency-balanced words and
//!   the base-k real representation of a word.
//! - [`estimate`]: plug-in and code-length information-density estimators,
//!   dimension proxies and likelihood-ratio martingale traces.
//! - [`billingsley`]: mutual normalizability, the binary equivalence solver and
//!   the mutual divergence formula.
//! - [`kakutani`]: Hellinger-sum dichotomy for ρ-schedules.
//! - [`experiment`]: reproducible batch experiments with JSON reports.
//!
//! The exact calculators are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the common instantiations.

#![forbid(unsafe_code)]
// `!(x > 0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod billingsley;
pub mod error;
pub mod estimate;
pub mod experiment;
pub mod genseq;
pub mod info;
pub mod kakutani;
pub mod measures;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double precision pmf, the default used throughout sampling and estimation.
pub type Pmf64 = measures::Pmf<f64>;
/// Double precision joint pmf on a pair alphabet.
pub type JointPmf64 = measures::JointPmf<f64>;
/// Single precision pmf.
pub type Pmf32 = measures::Pmf<f32>;
/// Single precision joint pmf.
pub type JointPmf32 = measures::JointPmf<f32>;
/// Information quantity in bits, double precision.
pub type Bits64 = info::Bits<f64>;

/// Crate version recorded in provenance records and reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
