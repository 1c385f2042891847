//! Exact discriminant matrices.
//!
//! The crate builds, symbolically and over exact rationals, the classical
//! discriminant matrices of univariate polynomials (Bezout forms and their
//! modified versions), the Pfaffian matrix families attached to an elliptic
//! normal quintic, and the 6x6 matrix cutting out the dual variety of that
//! curve; it then verifies every identity these objects are supposed to
//! satisfy, from Saito-style tangency certificates to a floating-point
//! confrontation of the dual-variety equation with tangent hyperplanes
//! sampled from the Weierstrass parametrization.
//!
//! Layers, bottom to top:
//!
//! * [`poly`]: sparse exact-rational multivariate polynomials with a
//!   canonical text grammar;
//! * [`matrix`]: exact determinants (Bareiss and cofactor) and Pfaffians;
//! * [`univar`]: univariate gcd, Sylvester resultants, Monte Carlo
//!   squarefreeness: the independent oracles;
//! * [`saito`]: discriminant-matrix certification;
//! * [`bezout`]: the Bezout and modified Bezout matrices with their Gram,
//!   Vandermonde and discriminant identities;
//! * [`wp`]: the formal differential algebra of the Weierstrass function;
//! * [`a4`]: the explicit 5x5 Pfaffian matrices and the 6x6 dual-variety
//!   matrix, with all exact checks;
//! * [`numerics`]: Eisenstein series, Laurent evaluation of the Weierstrass
//!   function, tangent-hyperplane sampling and the numeric dual-variety and
//!   tangency tests;
//! * [`suites`]: assembled check suites behind the `discrimat` binary.
//!
//! Everything symbolic is pure and thread-safe; randomness enters only
//! through explicit seeds.

pub mod error;
pub mod vars;
pub mod poly;
mod parse;
pub mod matrix;
pub mod univar;
pub mod saito;
pub mod bezout;
pub mod wp;
pub mod a4;
pub mod numerics;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use matrix::{PolyMatrix, SkewPolyMatrix};
pub use poly::{MultiPoly, Rat, WeightSystem, WeightedDegree};
pub use report::{CheckReport, Status};
pub use vars::VarTable;
