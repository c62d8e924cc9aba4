//! Upper bounds for the critical survival probability of the frog model on
//! the homogeneous tree `T_d` (every vertex has degree `d + 1`).
//!
//! The crate is organised bottom-up:
//!
//! - [`analytic`]: the edge-percolation base `β`, its inverse, `ψ`, `λ` and
//!   the two previously published bounds.
//! - [`phi`]: the child-probability sequence `φₙ` in its three equivalent
//!   forms, the characteristic roots of its recurrence and the functions
//!   `fₙ`, `f` whose roots give the bounds.
//! - [`quartic`]: the polynomial families `R` and `Q`, the closed-form root of
//!   `Q` in `(0, 1)` and a bracketed root isolator.
//! - [`bounds`]: the bound sequence `p̄ₙ(d)` and the per-degree comparison table.
//! - [`sim`]: a Monte Carlo frog-model simulator and three targeted estimators
//!   that check the analytic laws independently.

pub mod analytic;
pub mod bounds;
mod error;
pub mod phi;
pub mod quartic;
pub mod sim;

pub use analytic::{BranchRatio, Degree, Probability};
pub use error::{Error, Result};
