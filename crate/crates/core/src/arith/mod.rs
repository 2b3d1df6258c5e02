//! Exact arithmetic foundation: rationals, polynomials over Q, number
//! fields, dense matrices, integer utilities and reductions modulo primes.

pub mod field;
pub mod intmath;
pub mod irreducible;
pub mod matrix;
pub mod modp;
pub mod numfield;
pub mod poly;
pub mod rational;
pub mod tensor;

pub use irreducible::{dedekind_index_test, poly_irreducible, IndexVerdict, Irreducibility};
pub use matrix::Matrix;
pub use numfield::{NumberField, NumberFieldElement};
pub use poly::RatPoly;
pub use rational::Rational;
