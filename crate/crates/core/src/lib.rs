//! Two-anyon scattering: free kernels and Aharonov–Bohm scattering, Jost
//! functions at continuous angular momentum, the contact and square-well
//! models, and differential cross-sections.
//!
//! Units are atomic (ħ = m = 1, reduced mass 1/2), so E = k².

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod delta;
pub mod error;
pub mod free;
pub mod jost;
pub mod observables;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod well;

pub use error::{CoreError, Result};
