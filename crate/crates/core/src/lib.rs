//! Helmholtz–Hodge decompositions of linear and planar polynomial vector fields.
//!
//! - [`matrix`]: small dense real matrices.
//! - [`linear`]: strictly orthogonal splits `A = -P + H` via the Riccati equation.
//! - [`sde`]: the bridge to SDE decompositions `F = -(D + Q)U`.
//! - [`wirtinger`]: polynomials in `z, z̄` and Wirtinger calculus.
//! - [`planar`]: complex potentials of planar polynomial fields.
//! - [`stability`]: level sets, sign maps and the Van der Pol case study.
//! - [`report`]: field specifications and report assembly for the CLI.

// `!(x <= tol)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linear;
pub mod matrix;
pub mod planar;
pub mod report;
pub mod sde;
pub mod stability;
pub mod wirtinger;

pub use error::{Error, Result};
pub use linear::{LinearHhd, QuadraticForm, RiccatiReport, SolverOptions};
pub use matrix::RealMatrix;
pub use planar::{PlanarHhd, QuadHomField};
pub use sde::SdeDecomposition;
pub use stability::{Grid, LevelSet, Polyline, VdpCaseStudy};
pub use wirtinger::{RealPoly2, ZPoly};
