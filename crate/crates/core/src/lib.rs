//! Space-filling designs in the unit hypercube built by maximizing an entropy
//! estimate (equivalently, minimizing Kullback-Leibler information to the
//! uniform law) with an exchange algorithm, together with the criteria and
//! baseline generators used to compare them.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the common `f64` instantiations.

pub mod bench;
pub mod criteria;
pub mod design;
pub mod entropy;
pub mod error;
pub mod generators;
pub mod optimizer;
pub mod rng;
pub mod scalar;

pub use criteria::{evaluate_all, CriteriaReport};
pub use design::{read_design, validate, write_design, Design, Validation};
pub use error::{Error, Result};
pub use generators::{generate, GeneratorSpec, Method};
pub use optimizer::{exchange_run, multi_start, Objective, OptimizerConfig, Trace};
pub use rng::{uniform_point, SeededRng};
pub use scalar::Scalar;

pub type Design64 = Design<f64>;
pub type Design32 = Design<f32>;
pub type KernelSpec64 = entropy::KernelSpec<f64>;
pub type Objective64 = Objective<f64>;
pub type Trace64 = Trace<f64>;
pub type CriteriaReport64 = CriteriaReport<f64>;
