//! Hecke operators on q-expansions, their matrices on cusp-form bases and
//! normalized eigenforms over Hecke fields.

use num_bigint::BigInt;

use crate::arith::field::Field;
use crate::arith::intmath::{divisors, gcd_u64};
use crate::arith::irreducible::{poly_irreducible, Irreducibility};
use crate::arith::matrix::Matrix;
use crate::arith::numfield::{NumberField, NumberFieldElement};
use crate::arith::poly::RatPoly;
use crate::arith::rational::{big, Rational};
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::forms::{dim_sk, miller_basis, SpaceBasis};
use crate::qseries::QSeries;

/// Hecke indices tried, in order, when looking for an irreducible
/// characteristic polynomial.
pub const DEFAULT_HECKE_INDICES: [u64; 3] = [2, 3, 5];

fn chi_weight<K: Field>(like: &K, chi: &DirichletCharacter, m1: u64, k: u32) -> Result<K> {
    let Some(e) = chi.value_exponent(m1 as i64) else {
        return Ok(like.zero_like());
    };
    let z = like.root_of_unity_like(chi.order(), e)?;
    Ok(z.scale(&big(BigInt::from(m1).pow(k - 1))))
}

/// `f |_k T_m` with nebentypus `chi`, to precision `prec`.
///
/// Needs `a_{m n}` for `n < prec`, so `f` must be known to `m (prec - 1) + 1`.
pub fn hecke_action<K: Field>(
    f: &QSeries<K>,
    m: u64,
    k: u32,
    chi: &DirichletCharacter,
    prec: usize,
) -> Result<QSeries<K>> {
    if m == 0 || prec == 0 {
        return Err(Error::InvalidArgument("m and prec must be positive".into()));
    }
    if k == 0 {
        return Err(Error::InvalidWeight(0, "weight must be positive"));
    }
    let required = (m as usize) * (prec - 1) + 1;
    if f.prec() < required {
        return Err(Error::InsufficientPrecision { required, available: f.prec() });
    }
    let like = f.like();
    let divs = divisors(m);
    let weights: Vec<K> = divs.iter().map(|&d| chi_weight(like, chi, d, k)).collect::<Result<_>>()?;
    let a = f.coeffs();
    let mut out = Vec::with_capacity(prec);
    let mut c0 = like.zero_like();
    for w in &weights {
        c0 = c0.plus(w);
    }
    out.push(a[0].times(&c0));
    for n in 1..prec as u64 {
        let g = gcd_u64(m, n);
        let mut s = like.zero_like();
        for (&d, w) in divs.iter().zip(&weights) {
            if g % d != 0 || w.is_zero() {
                continue;
            }
            let idx = (m * n / (d * d)) as usize;
            s = s.plus(&w.times(&a[idx]));
        }
        out.push(s);
    }
    Ok(QSeries::new(out))
}

/// Level-one `T_m` (trivial character).
pub fn hecke_action_level1<K: Field>(f: &QSeries<K>, m: u64, k: u32, prec: usize) -> Result<QSeries<K>> {
    hecke_action(f, m, k, &DirichletCharacter::trivial(1)?, prec)
}

/// Matrix of `T_n` on the echelon basis of `S_k`; column `j` holds the
/// coordinates of `T_n` applied to basis form `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeMatrix {
    pub n: u64,
    pub weight: u32,
    pub matrix: Matrix<Rational>,
}

impl HeckeMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn charpoly(&self) -> RatPoly {
        self.matrix.charpoly()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Matrix<Rational>> {
        self.matrix.mul(&rhs.matrix)
    }
}

/// Smallest basis precision that determines `T_n` on `S_k` and leaves
/// `extra` coefficients to check the span.
pub fn hecke_prec(n: u64, k: u32) -> usize {
    let d = dim_sk(k as i64);
    n as usize * (d + 1) + 1
}

pub fn hecke_matrix(n: u64, k: u32, prec: usize) -> Result<HeckeMatrix> {
    let d = dim_sk(k as i64);
    if d == 0 {
        return Err(Error::InvalidArgument(format!("S_{k} is zero")));
    }
    let need = hecke_prec(n, k);
    if prec < need {
        return Err(Error::InsufficientPrecision { required: need, available: prec });
    }
    let basis = miller_basis(k, prec, true)?;
    hecke_matrix_on(&basis, n)
}

/// `T_n` on a given cusp basis, which must be known to `n (dim + 1) + 1`.
pub fn hecke_matrix_on(basis: &SpaceBasis, n: u64) -> Result<HeckeMatrix> {
    let d = basis.dim();
    let out_prec = (basis.prec() - 1) / n as usize + 1;
    if out_prec <= d {
        return Err(Error::InsufficientPrecision {
            required: n as usize * d + 1,
            available: basis.prec(),
        });
    }
    let mut cols = Vec::with_capacity(d);
    for f in &basis.forms {
        let tf = hecke_action_level1(f, n, basis.weight, out_prec)?;
        let short = SpaceBasis {
            weight: basis.weight,
            cusp_only: true,
            forms: basis.forms.iter().map(|g| g.truncate(out_prec)).collect(),
        };
        cols.push(short.coordinates(&tf)?);
    }
    let matrix = Matrix::from_rows(cols).transpose();
    Ok(HeckeMatrix { n, weight: basis.weight, matrix })
}

/// `T_{n,k}(x)`.
pub fn charpoly(m: &HeckeMatrix) -> RatPoly {
    m.charpoly()
}

/// Normalized (`a_1 = 1`) cusp eigenform over its Hecke field.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenform {
    pub weight: u32,
    pub field: NumberField,
    pub series: QSeries<NumberFieldElement>,
    /// Index `n` whose characteristic polynomial defines `field`.
    pub hecke_index: u64,
}

impl Eigenform {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn coeff(&self, n: usize) -> Option<&NumberFieldElement> {
        self.series.coeff(n)
    }

    pub fn prec(&self) -> usize {
        self.series.prec()
    }
}

/// Certified-irreducible characteristic polynomial of some `T_n` on `S_k`,
/// trying `indices` in order.
pub fn irreducible_hecke_polynomial(
    k: u32,
    basis: &SpaceBasis,
    indices: &[u64],
) -> Result<(u64, HeckeMatrix, RatPoly)> {
    let mut last = None;
    for &n in indices {
        let m = match hecke_matrix_on(basis, n) {
            Ok(m) => m,
            Err(e @ Error::InsufficientPrecision { .. }) => {
                last = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let t = m.charpoly();
        match poly_irreducible(&t) {
            Irreducibility::Irreducible { .. } => return Ok((n, m, t)),
            Irreducibility::Reducible { factor } => {
                return Err(Error::Unsupported(format!(
                    "T_{{{n},{k}}} = {t} is reducible (factor {factor}); the Hecke algebra is not a field"
                )))
            }
            Irreducibility::Unknown { .. } => {
                last = Some(Error::Unsupported(format!("irreducibility of T_{{{n},{k}}} not certified")))
            }
        }
    }
    Err(last.unwrap_or_else(|| Error::Unsupported("no Hecke index tried".into())))
}

/// The normalized eigenforms of `S_k`, up to Galois conjugacy: one
/// eigenform over `Q[x]/(T_{n,k})`.
pub fn eigenbasis(k: u32, prec: usize) -> Result<Vec<Eigenform>> {
    let d = dim_sk(k as i64);
    if d == 0 {
        return Err(Error::InvalidArgument(format!("S_{k} is zero")));
    }
    if prec <= d {
        return Err(Error::InsufficientPrecision { required: d + 1, available: prec });
    }
    let basis = miller_basis(k, prec, true)?;
    if d == 1 {
        let q = NumberField::rationals();
        let series = basis.forms[0].map(|c| q.from_rational(c.clone()));
        return Ok(vec![Eigenform { weight: k, field: q, series, hecke_index: 1 }]);
    }
    let (n, m, t) = irreducible_hecke_polynomial(k, &basis, &DEFAULT_HECKE_INDICES)?;
    let field = NumberField::new(t.monic())?;
    let alpha = field.generator();
    let lifted = m.matrix.map(|r| field.from_rational(r.clone()));
    let shifted = lifted.sub(&Matrix::identity_like(&alpha, d).scale(&alpha));
    let kernel = shifted.nullspace();
    if kernel.len() != 1 {
        return Err(Error::ValenceViolation(format!(
            "eigenspace of T_{n} for alpha has dimension {}",
            kernel.len()
        )));
    }
    let v = &kernel[0];
    // basis form j has leading term q^{j+1}, so a_1 = v_0
    let scale = v[0].inverse()?;
    let mut series = QSeries::zero_like(&field.zero(), prec);
    for (vj, fj) in v.iter().zip(&basis.forms) {
        let c = vj.times(&scale);
        series = series.add(&fj.map(|r| c.scale(r)));
    }
    Ok(vec![Eigenform { weight: k, field, series, hecke_index: n }])
}

/// Coefficientwise nontrivial automorphism of a quadratic Hecke field;
/// identity over `Q`.
pub fn galois_conjugate(f: &Eigenform) -> Result<Eigenform> {
    match f.degree() {
        1 => Ok(f.clone()),
        2 => {
            let coeffs = f
                .series
                .coeffs()
                .iter()
                .map(|c| c.quadratic_conjugate())
                .collect::<Result<Vec<_>>>()?;
            Ok(Eigenform { series: QSeries::new(coeffs), ..f.clone() })
        }
        d => Err(Error::Unsupported(format!("conjugation in a degree-{d} Hecke field"))),
    }
}

/// Checks `T_m f = a_m(f) f` on the coefficients the precision allows.
pub fn eigenvalue_consistent(f: &Eigenform, m: u64) -> Result<bool> {
    let out_prec = (f.prec() - 1) / m as usize + 1;
    let tf = hecke_action_level1(&f.series, m, f.weight, out_prec)?;
    let am = f.coeff(m as usize).ok_or(Error::InsufficientPrecision {
        required: m as usize + 1,
        available: f.prec(),
    })?;
    Ok(tf.agrees_with(&f.series.truncate(out_prec).scale(am)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::forms::{delta_series, eisenstein_series};

    #[test]
    fn action_examples() {
        let d = delta_series(11);
        let t2 = hecke_action_level1(&d, 2, 12, 5).unwrap();
        assert_eq!(t2, delta_series(5).scale(&int(-24)));
        let e12 = eisenstein_series(12, 21).unwrap();
        let t = hecke_action_level1(&e12, 2, 12, 10).unwrap();
        assert_eq!(t, e12.truncate(10).scale(&int(1 + 2048)));
        assert_eq!(hecke_action_level1(&d, 1, 12, 11).unwrap(), d);
        assert_eq!(
            hecke_action_level1(&d, 3, 12, 5),
            Err(Error::InsufficientPrecision { required: 13, available: 11 })
        );
    }

    #[test]
    fn eisenstein_eigenvalues() {
        for k in (4..=16).step_by(2) {
            let e = eisenstein_series(k, 41).unwrap();
            for p in [2u64, 3, 5] {
                let lam = int(1) + big(BigInt::from(p).pow(k - 1));
                let t = hecke_action_level1(&e, p, k, 9).unwrap();
                assert_eq!(t, e.truncate(9).scale(&lam), "k={k} p={p}");
                // constant-term relation: a_0 sum_{d|p} d^{k-1} = lambda a_0
                assert_eq!(t.coeffs()[0], lam.clone() * &e.coeffs()[0]);
            }
        }
    }

    #[test]
    fn matrix_examples() {
        let m = hecke_matrix(2, 12, hecke_prec(2, 12)).unwrap();
        assert_eq!(m.matrix.to_rows(), vec![vec![int(-24)]]);
        assert_eq!(m.charpoly(), RatPoly::from_ints(&[24, 1]));
        let m = hecke_matrix(2, 16, 10).unwrap();
        assert_eq!(m.matrix.to_rows(), vec![vec![int(216)]]);
        let m = hecke_matrix(2, 24, 10).unwrap();
        assert_eq!(m.matrix.trace(), int(1080));
        assert_eq!(m.charpoly(), RatPoly::from_ints(&[-20468736, -1080, 1]));
        assert!(hecke_matrix(2, 24, 4).is_err());
        assert!(hecke_matrix(2, 14, 10).is_err());
    }

    #[test]
    fn multiplication_rules() {
        for k in [24u32, 36] {
            let p = 6 * (dim_sk(k as i64) + 1) + 1;
            let t2 = hecke_matrix(2, k, p).unwrap();
            let t3 = hecke_matrix(3, k, p).unwrap();
            let t4 = hecke_matrix(4, k, p).unwrap();
            let t6 = hecke_matrix(6, k, p).unwrap();
            assert_eq!(t2.mul(&t3).unwrap(), t6.matrix);
            assert_eq!(t3.mul(&t2).unwrap(), t6.matrix);
            let d = t2.dim();
            let lhs = t2.mul(&t2).unwrap();
            let rhs = t4.matrix.add(&Matrix::identity(d).scale(&big(BigInt::from(2).pow(k - 1))));
            assert_eq!(lhs, rhs);
        }
        for k in [12u32, 16, 18, 20, 22, 26] {
            let p = 4 * (dim_sk(k as i64) + 1) + 1;
            let t2 = hecke_matrix(2, k, p).unwrap();
            let t4 = hecke_matrix(4, k, p).unwrap();
            let rhs = t4.matrix.add(&Matrix::identity(1).scale(&big(BigInt::from(2).pow(k - 1))));
            assert_eq!(t2.mul(&t2).unwrap(), rhs);
        }
    }

    #[test]
    fn eigenbasis_examples() {
        let f = &eigenbasis(12, 10).unwrap()[0];
        assert_eq!(f.coeff(1).unwrap().to_rational(), Some(int(1)));
        assert_eq!(f.coeff(2).unwrap().to_rational(), Some(int(-24)));
        let g = &eigenbasis(24, 16).unwrap()[0];
        assert_eq!(g.field.modulus(), &RatPoly::from_ints(&[-20468736, -1080, 1]));
        assert_eq!(g.coeff(2).unwrap(), &g.field.generator());
        assert!(g.coeff(1).unwrap().is_one());
        let a2 = g.coeff(2).unwrap();
        let val = a2.times(a2).minus(&a2.scale(&int(1080))).minus(&g.field.from_rational(int(20468736)));
        assert!(val.is_zero());
        let h = &eigenbasis(26, 8).unwrap()[0];
        assert_eq!(h.degree(), 1);
        for m in [2u64, 3, 5] {
            assert!(eigenvalue_consistent(g, m).unwrap());
            assert!(eigenvalue_consistent(f, m).unwrap());
        }
    }

    #[test]
    fn conjugation() {
        let g = &eigenbasis(24, 12).unwrap()[0];
        let c = galois_conjugate(g).unwrap();
        let expect = g.field.from_rational(int(1080)).minus(&g.field.generator());
        assert_eq!(c.coeff(2).unwrap(), &expect);
        assert_eq!(galois_conjugate(&c).unwrap(), *g);
        for m in [2u64, 3] {
            assert!(eigenvalue_consistent(&c, m).unwrap());
        }
        let f = &eigenbasis(12, 6).unwrap()[0];
        assert_eq!(galois_conjugate(f).unwrap(), *f);
    }

    #[test]
    fn commutativity_up_to_40() {
        for k in (12..=40u32).step_by(2) {
            if dim_sk(k as i64) == 0 {
                continue;
            }
            let p = 6 * (dim_sk(k as i64) + 1) + 1;
            let t2 = hecke_matrix(2, k, p).unwrap();
            let t3 = hecke_matrix(3, k, p).unwrap();
            assert_eq!(t2.mul(&t3).unwrap(), t3.mul(&t2).unwrap(), "k = {k}");
        }
    }
}
