//! Number fields `Q[x]/(m(x))` and their elements in the power basis.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::Field;
use super::irreducible::{poly_irreducible, Irreducibility};
use super::matrix::Matrix;
use super::poly::RatPoly;
use super::rational::{int, to_pq, Rational};
use crate::error::{Error, Result};

#[derive(Debug)]
struct FieldData {
    modulus: RatPoly,
    /// `Some(m)` when the modulus is the m-th cyclotomic polynomial and the
    /// generator is `exp(2 pi i / m)`.
    cyclotomic: Option<u64>,
    /// Reductions of `x^d, ..., x^(2d-2)` in the power basis.
    reductions: Vec<Vec<Rational>>,
}

/// `Q(alpha)` for one root `alpha` of a monic irreducible modulus.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Builds `Q[x]/(modulus)` after certifying irreducibility.
    pub fn new(modulus: RatPoly) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::InvalidArgument(format!("modulus {modulus} is not monic")));
        }
        match poly_irreducible(&modulus) {
            Irreducibility::Irreducible { .. } => Ok(Self::build(modulus, None)),
            Irreducibility::Reducible { .. } => {
                Err(Error::InvalidArgument(format!("modulus {modulus} is reducible")))
            }
            Irreducibility::Unknown { .. } => Err(Error::Unsupported(format!(
                "could not certify {modulus} irreducible"
            ))),
        }
    }

    /// `Q(zeta_m)`; cyclotomic polynomials are irreducible, no certificate needed.
    pub fn cyclotomic(m: u64) -> Self {
        Self::build(RatPoly::cyclotomic(m), Some(m))
    }

    /// `Q` itself, as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::build(RatPoly::x(), Some(1))
    }

    fn build(modulus: RatPoly, cyclotomic: Option<u64>) -> Self {
        let d = modulus.degree().expect("nonzero modulus");
        assert!(d >= 1, "modulus must have positive degree");
        let mut reductions = Vec::new();
        // x^d = -(m_0 + ... + m_{d-1} x^{d-1})
        let mut cur: Vec<Rational> = (0..d).map(|i| -modulus.coeff(i)).collect();
        for _ in d..=(2 * d).saturating_sub(2).max(d) {
            reductions.push(cur.clone());
            // multiply by x and reduce
            let top = cur[d - 1].clone();
            let mut next = vec![Rational::zero(); d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..d {
                next[i] -= &top * modulus.coeff(i);
            }
            cur = next;
        }
        NumberField(Arc::new(FieldData { modulus, cyclotomic, reductions }))
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.0.modulus
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.degree().expect("nonzero modulus")
    }

    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.0.cyclotomic
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<NumberFieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(NumberFieldElement { parent: self.clone(), coords })
    }

    /// Reduces an arbitrary polynomial in the generator.
    pub fn from_poly(&self, p: &RatPoly) -> NumberFieldElement {
        let d = self.degree();
        let mut coords = vec![Rational::zero(); d];
        for (i, c) in p.coeffs().iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if i < d {
                coords[i] += c;
            } else if i - d < self.0.reductions.len() {
                for (j, r) in self.0.reductions[i - d].iter().enumerate() {
                    coords[j] += c * r;
                }
            } else {
                let red = RatPoly::monomial(c.clone(), i).rem(self.modulus()).expect("nonzero");
                for (j, r) in red.coeffs().iter().enumerate() {
                    coords[j] += r;
                }
            }
        }
        NumberFieldElement { parent: self.clone(), coords }
    }

    pub fn from_rational(&self, r: Rational) -> NumberFieldElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = r;
        NumberFieldElement { parent: self.clone(), coords }
    }

    pub fn zero(&self) -> NumberFieldElement {
        self.from_rational(Rational::zero())
    }

    pub fn one(&self) -> NumberFieldElement {
        self.from_rational(Rational::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> NumberFieldElement {
        self.from_poly(&RatPoly::x())
    }

    /// Real roots of the modulus in descending order (numerically).
    pub fn real_embeddings(&self) -> Vec<f64> {
        let roots = crate::numeric::roots::poly_roots(self.modulus());
        let mut real: Vec<f64> = roots
            .into_iter()
            .filter(|z| z.im.abs() < 1e-9 * (1.0 + z.re.abs()))
            .map(|z| z.re)
            .collect();
        real.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        real
    }
}

/// Element of a number field as power-basis coordinates.
#[derive(Clone, Debug)]
pub struct NumberFieldElement {
    parent: NumberField,
    coords: Vec<Rational>,
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.coords == other.coords
    }
}

impl Eq for NumberFieldElement {}

impl NumberFieldElement {
    pub fn parent(&self) -> &NumberField {
        &self.parent
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    /// `Some(r)` when the element is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coords[1..]
            .iter()
            .all(|c| Zero::is_zero(c))
            .then(|| self.coords[0].clone())
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.parent == rhs.parent {
            Ok(())
        } else {
            Err(Error::MismatchedFields)
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn add_unchecked(&self, rhs: &Self) -> Self {
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        NumberFieldElement { parent: self.parent.clone(), coords }
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let d = self.coords.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !Zero::is_zero(b) {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<Rational> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            for (j, r) in self.parent.0.reductions[k].iter().enumerate() {
                coords[j] += c * r;
            }
        }
        NumberFieldElement { parent: self.parent.clone(), coords }
    }

    /// Inverse by the extended Euclidean algorithm on `(a(x), m(x))`.
    pub fn try_inv(&self) -> Result<Self> {
        if self.coords.iter().all(|c| Zero::is_zero(c)) {
            return Err(Error::NotAUnit("zero has no inverse".into()));
        }
        let (g, s, _) = self.as_poly().xgcd(self.parent.modulus());
        if g != RatPoly::one() {
            return Err(Error::NotAUnit(format!("gcd with modulus is {g}")));
        }
        Ok(self.parent.from_poly(&s))
    }

    /// Matrix of multiplication by `self` on the power basis (columns are
    /// images of basis vectors).
    pub fn multiplication_matrix(&self) -> Matrix<Rational> {
        let d = self.coords.len();
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.parent.one();
        let x = self.parent.generator();
        for _ in 0..d {
            cols.push(self.mul_unchecked(&basis).coords);
            basis = basis.mul_unchecked(&x);
        }
        Matrix::from_rows(cols).transpose()
    }

    pub fn trace(&self) -> Rational {
        self.multiplication_matrix().trace()
    }

    pub fn norm(&self) -> Rational {
        self.multiplication_matrix().determinant()
    }

    /// Value under `alpha -> root`.
    pub fn embed_f64(&self, root: f64) -> f64 {
        self.as_poly().eval_f64(root)
    }

    /// Image under `x -> trace - x` in a quadratic field.
    pub fn quadratic_conjugate(&self) -> Result<Self> {
        if self.parent.degree() != 2 {
            return Err(Error::Unsupported(format!(
                "conjugation in a degree-{} field",
                self.parent.degree()
            )));
        }
        let m = self.parent.modulus();
        // x + xbar = -m_1
        let (a, b) = (&self.coords[0], &self.coords[1]);
        let coords = vec![a - b * m.coeff(1), -b];
        Ok(NumberFieldElement { parent: self.parent.clone(), coords })
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(to_pq).collect()
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.as_poly().to_string();
        write!(f, "{}", s.replace('x', "a"))
    }
}

impl Field for NumberFieldElement {
    fn zero_like(&self) -> Self {
        self.parent.zero()
    }
    fn one_like(&self) -> Self {
        self.parent.one()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        self.parent.from_rational(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| Zero::is_zero(c))
    }
    fn plus(&self, rhs: &Self) -> Self {
        debug_assert!(self.parent == rhs.parent);
        self.add_unchecked(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        debug_assert!(self.parent == rhs.parent);
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        NumberFieldElement { parent: self.parent.clone(), coords }
    }
    fn times(&self, rhs: &Self) -> Self {
        debug_assert!(self.parent == rhs.parent);
        self.mul_unchecked(rhs)
    }
    fn negate(&self) -> Self {
        NumberFieldElement {
            parent: self.parent.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
    fn inverse(&self) -> Result<Self> {
        self.try_inv()
    }
    fn scale(&self, r: &Rational) -> Self {
        NumberFieldElement {
            parent: self.parent.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }
    fn same_field(&self, other: &Self) -> bool {
        self.parent == other.parent
    }
    fn root_of_unity_like(&self, order: u64, exponent: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("root of unity of order 0".into()));
        }
        let e = exponent % order;
        if e == 0 {
            return Ok(self.parent.one());
        }
        if 2 * e == order {
            return Ok(self.parent.from_rational(int(-1)));
        }
        match self.parent.cyclotomic_order() {
            Some(m) if m % order == 0 => {
                let power = (e * (m / order)) as usize;
                Ok(self.parent.from_poly(&RatPoly::monomial(Rational::one(), power)))
            }
            _ => Err(Error::Unsupported(format!(
                "field {} does not contain zeta_{order}",
                self.parent.modulus()
            ))),
        }
    }
    fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

/// Wire form: `{"modulus": [...], "coords": [...]}` with rational strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementJson {
    pub modulus: Vec<String>,
    pub coords: Vec<String>,
}

impl From<&NumberFieldElement> for ElementJson {
    fn from(e: &NumberFieldElement) -> Self {
        ElementJson { modulus: e.parent.modulus().to_strings(), coords: e.coord_strings() }
    }
}

impl ElementJson {
    /// Rebuilds the element; the modulus is re-certified irreducible.
    pub fn to_element(&self) -> Result<NumberFieldElement> {
        let modulus = RatPoly::from_strings(&self.modulus)?;
        let field = NumberField::new(modulus)?;
        let coords = self
            .coords
            .iter()
            .map(|s| super::rational::parse_pq(s))
            .collect::<Result<Vec<_>>>()?;
        field.element(coords)
    }
}

pub fn nf_mul(a: &NumberFieldElement, b: &NumberFieldElement) -> Result<NumberFieldElement> {
    a.try_mul(b)
}

pub fn nf_inv(a: &NumberFieldElement) -> Result<NumberFieldElement> {
    a.try_inv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use proptest::prelude::*;

    fn quad(d: i64) -> NumberField {
        NumberField::new(RatPoly::from_ints(&[-d, 0, 1])).unwrap()
    }

    #[test]
    fn sqrt5_examples() {
        let k = quad(5);
        let x = k.generator();
        assert_eq!(nf_mul(&x, &x).unwrap(), k.from_rational(int(5)));
        assert_eq!(nf_inv(&x).unwrap(), x.scale(&rat(1, 5)));
    }

    #[test]
    fn sqrt144169_inverse() {
        let k = quad(144169);
        let x = k.generator();
        let inv = nf_inv(&x).unwrap();
        assert_eq!(inv, x.scale(&rat(1, 144169)));
        assert!(nf_mul(&inv, &x).unwrap().is_one());
    }

    #[test]
    fn errors() {
        let k = quad(5);
        assert!(nf_inv(&k.zero()).is_err());
        let other = quad(7);
        assert_eq!(nf_mul(&k.one(), &other.one()), Err(Error::MismatchedFields));
        assert!(NumberField::new(RatPoly::from_ints(&[-1, 0, 1])).is_err());
        assert!(NumberField::new(RatPoly::from_ints(&[1, 0, 2])).is_err());
    }

    #[test]
    fn trace_norm_conjugate() {
        let k = NumberField::new(RatPoly::from_ints(&[-20468736, -1080, 1])).unwrap();
        let a = k.generator();
        assert_eq!(a.trace(), int(1080));
        assert_eq!(a.norm(), int(-20468736));
        let c = a.quadratic_conjugate().unwrap();
        assert_eq!(c, k.from_rational(int(1080)).minus(&a));
        assert_eq!(c.quadratic_conjugate().unwrap(), a);
    }

    #[test]
    fn cyclotomic_roots_of_unity() {
        let k = NumberField::cyclotomic(12);
        let z = k.one().root_of_unity_like(12, 1).unwrap();
        let mut acc = k.one();
        for _ in 0..12 {
            acc = acc.times(&z);
        }
        assert!(acc.is_one());
        let i = k.one().root_of_unity_like(4, 1).unwrap();
        assert_eq!(i.times(&i), k.from_rational(int(-1)));
        assert!(NumberField::cyclotomic(5).one().root_of_unity_like(4, 1).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let k = quad(5);
        let e = k.generator().scale(&rat(3, 7)).plus(&k.one());
        let j = ElementJson::from(&e);
        assert_eq!(j.coords, vec!["1".to_string(), "3/7".to_string()]);
        assert_eq!(j.to_element().unwrap(), e);
    }

    fn elem(k: &NumberField, v: Vec<(i64, i64)>) -> NumberFieldElement {
        k.element(v.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn inverse_in_random_quadratic_fields(
            d in prop::sample::select(vec![2i64, 3, 5, -1, -7, 144169, 18209]),
            a in proptest::collection::vec((-50i64..50, 1i64..9), 2),
            b in proptest::collection::vec((-50i64..50, 1i64..9), 2),
        ) {
            let k = quad(d);
            let a = elem(&k, a);
            let b = elem(&k, b);
            prop_assert_eq!(a.times(&b), b.times(&a));
            prop_assert_eq!(a.times(&b).times(&a), a.times(&b.times(&a)));
            if !Field::is_zero(&a) {
                prop_assert!(a.inverse().unwrap().times(&a).is_one());
            }
        }
    }
}
