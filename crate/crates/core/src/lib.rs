//! Orbit integrals `∫_G e^{tr(A g B g⁻¹)} dg` over the compact classical groups.
//!
//! * [`cartan`]: root systems, Weyl groups, and the matrix embeddings of
//!   Cartan elements and Weyl representatives.
//! * [`symalg`]: exact polynomial arithmetic, the differential pairing, and
//!   the discriminant norm `[[Π, Π]]`.
//! * [`closedform`]: the Weyl-sum localization formula and the determinant
//!   formulas for `U`, `SU`, `SO`, `O`, and `USp`.
//! * [`haarmc`]: Haar sampling and a Monte Carlo estimator used as an
//!   independent oracle for the closed forms.

pub mod cartan;
pub mod closedform;
pub mod error;
pub mod haarmc;
pub mod symalg;

pub use cartan::{CartanVector, Family, GroupSpec, RootCovector, RootSystem, WeylElement};

pub use closedform::{IntegralResult, Method};
pub use error::{Argument, Error, Result};

pub use haarmc::{McConfig, McEstimate};
pub use symalg::{MultiIndex, SparsePolynomial};
