//! Spectral solver for the non-homogeneous wave equation on a space-time
//! cone `|x| <= c t`.
//!
//! The solver expands a forcing term in an orthogonal polynomial basis on the
//! cone, transfers the coefficients through the conjugated wave operator, and
//! synthesizes an explicit solution whose residual can be verified exactly:
//! the polynomial layers run on arbitrary-precision rationals, so every
//! operator identity here is checked symbolically, not just numerically.
//!
//! Modules:
//! - [`polyalg`]: exact multivariate polynomials and the differential operators
//! - [`orthopoly1d`]: Laguerre, Jacobi, and Gegenbauer polynomials
//! - [`harmonics`]: real spherical harmonics for d = 1, 2, 3
//! - [`moments`]: exact sphere/cone monomial moments (symbolic integration)
//! - [`conebasis`]: the cone orthogonal bases and their norms
//! - [`quadrature`]: Gauss rules and product rules on the cone and boundary
//! - [`analysis`]: forward coefficient transform
//! - [`wavesolver`]: coefficient transfer, synthesis, and residual reports
//! - [`expr`]: the forcing-expression parser
//!
//! See the `examples/` directory for runnable walkthroughs of each
//! capability, and the `conewave` binary for the batch front end.

pub mod analysis;
pub mod arith;
pub mod conebasis;
pub mod expr;
pub mod harmonics;
pub mod moments;
pub mod orthopoly1d;
pub mod polyalg;
pub mod quadrature;
pub mod wavesolver;

pub use arith::Rational;
pub use conebasis::{BasisSpec, ConeIndex};
pub use harmonics::Convention;
pub use polyalg::{MultiPoly, Var};
