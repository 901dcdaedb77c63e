//! Parameter-shift gradients of a variational quantum circuit.
//!
//! Three estimators share one cost-index convention:
//!
//! * [`grad::conventional_gradients`] runs the 2n+1 shifted circuits separately;
//! * [`grad::improved_gradients`] runs a single circuit in which two ancillas and
//!   2n measured blocks select, per shot, which parameter (if any) is shifted;
//! * [`grad::exact_gradients`] evaluates the same costs without sampling.
//!
//! [`grad::branch_oracle_check`] verifies the single-circuit construction branch
//! by branch, and [`resources`] checks its depth and register savings against
//! the circuits actually built.

pub mod cli;
pub mod data;
pub mod error;
pub mod grad;
pub mod resources;
pub mod rng;
pub mod sim;
pub mod stats;
pub mod vqc;

pub use error::{Error, Result};
