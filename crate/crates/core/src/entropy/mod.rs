//! Entropy estimators used as design objectives.

pub mod kde;
pub mod kernel;
pub mod nn;

pub use kde::{entropy_mc, entropy_mc_uniform, kde_at, uniform_sample_entropy, KdeProposal, KdeState};
pub use kernel::{
    bandwidth, epanechnikov_alpha, kernel_support_probability, unit_ball_volume, KernelFamily, KernelSpec,
};
pub use nn::{entropy_nn, DistanceProposal, DistanceState, NnProposal, NnState, EULER_GAMMA};
