//! The algebra `F1 (x)_Q F2` of two number fields.
//!
//! Products of eigenform data from two different Hecke fields live here.
//! The algebra is a product of fields (both factors are separable), so an
//! element vanishes under every pair of embeddings iff it is zero, and is
//! nonzero under every pair iff its norm is nonzero.

use num_complex::Complex64;
use num_traits::Zero;

use super::field::Field;
use super::matrix::Matrix;
use super::numfield::{NumberField, NumberFieldElement};
use super::rational::{to_f64, Rational};

/// `sum_r alpha^r (x) parts[r]` with `alpha` the generator of the first
/// factor and `parts[r]` in the second.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement {
    first: NumberField,
    parts: Vec<NumberFieldElement>,
}

impl TensorElement {
    pub fn zero(first: &NumberField, second: &NumberField) -> Self {
        TensorElement { first: first.clone(), parts: vec![second.zero(); first.degree()] }
    }

    /// `a (x) b`.
    pub fn pure(a: &NumberFieldElement, b: &NumberFieldElement) -> Self {
        TensorElement {
            first: a.parent().clone(),
            parts: a.coords().iter().map(|c| b.scale(c)).collect(),
        }
    }

    pub fn first_field(&self) -> &NumberField {
        &self.first
    }

    pub fn second_field(&self) -> &NumberField {
        self.parts[0].parent()
    }

    pub fn parts(&self) -> &[NumberFieldElement] {
        &self.parts
    }

    pub fn add(&self, rhs: &Self) -> Self {
        TensorElement {
            first: self.first.clone(),
            parts: self.parts.iter().zip(&rhs.parts).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    /// Multiplication by `1 (x) b`.
    pub fn mul_second(&self, b: &NumberFieldElement) -> Self {
        TensorElement {
            first: self.first.clone(),
            parts: self.parts.iter().map(|p| p.times(b)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d1 = self.first.degree();
        let second = self.second_field().clone();
        let mut wide = vec![second.zero(); 2 * d1 - 1];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in rhs.parts.iter().enumerate() {
                wide[i + j] = wide[i + j].plus(&a.times(b));
            }
        }
        // reduce alpha^k with the first modulus, one power at a time
        let mut out = wide[..d1].to_vec();
        for (k, w) in wide.iter().enumerate().skip(d1) {
            let red = self
                .first
                .from_poly(&super::poly::RatPoly::monomial(Rational::from_integer(1.into()), k));
            for (j, c) in red.coords().iter().enumerate() {
                out[j] = out[j].plus(&w.scale(c));
            }
        }
        TensorElement { first: self.first.clone(), parts: out }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    /// `(id (x) Tr_{F2/Q})`, landing in the first factor.
    pub fn trace_second(&self) -> NumberFieldElement {
        self.first.element(self.parts.iter().map(|p| p.trace()).collect()).expect("degree")
    }

    /// Coordinates on the basis `alpha^r (x) beta^s`, `r` major.
    pub fn flat_coords(&self) -> Vec<Rational> {
        self.parts.iter().flat_map(|p| p.coords().to_vec()).collect()
    }

    /// Norm from the algebra to Q: determinant of multiplication by `self`.
    pub fn norm(&self) -> Rational {
        let d1 = self.first.degree();
        let d2 = self.second_field().degree();
        let second = self.second_field().clone();
        let mut cols = Vec::with_capacity(d1 * d2);
        for r in 0..d1 {
            for s in 0..d2 {
                let mut a = vec![Rational::zero(); d1];
                a[r] = Rational::from_integer(1.into());
                let mut b = vec![Rational::zero(); d2];
                b[s] = Rational::from_integer(1.into());
                let basis = TensorElement::pure(
                    &self.first.element(a).expect("degree"),
                    &second.element(b).expect("degree"),
                );
                cols.push(self.mul(&basis).flat_coords());
            }
        }
        Matrix::from_rows(cols).transpose().determinant()
    }

    /// Value under `alpha -> r1`, `beta -> r2`.
    pub fn embed(&self, r1: Complex64, r2: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        let mut pow = Complex64::new(1.0, 0.0);
        for p in &self.parts {
            let mut inner = Complex64::zero();
            let mut bp = Complex64::new(1.0, 0.0);
            for c in p.coords() {
                inner += bp * to_f64(c);
                bp *= r2;
            }
            acc += pow * inner;
            pow *= r1;
        }
        acc
    }
}
