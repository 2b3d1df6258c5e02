//! Exact arithmetic for classical modular forms.
//!
//! The crate computes q-expansions of level-one Eisenstein series, the
//! discriminant form and `j`, echelon (Miller) bases, Hecke matrices and
//! normalized eigenforms over number fields, Dirichlet characters and
//! generalized Bernoulli numbers, and builds verification reports on top of
//! those kernels: quadratic eigenform identities, decompositions of `f^2` in
//! an eigenbasis, algebraicity of `j` at Eisenstein zeros, and the bound
//! scans behind the finiteness of `h = a f^2 + b f g + g^2`.
//!
//! Every coefficient is exact. Floating point only appears where a value is
//! genuinely transcendental (evaluation on the unit arc, bound comparisons).

pub mod arith;
pub mod dirichlet;
pub mod error;
pub mod forms;
pub mod hecke;
pub mod identities;
pub mod numeric;
pub mod qseries;
pub mod scans;
pub mod serial;
pub mod zeros;

pub use arith::field::Field;
pub use arith::numfield::{NumberField, NumberFieldElement};
pub use arith::poly::RatPoly;
pub use arith::rational::Rational;
pub use error::{Error, Result};
pub use qseries::QSeries;
