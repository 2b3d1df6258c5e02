//! Concrete modular forms: level-one Eisenstein series, `Delta`, `j`,
//! echelon bases of `M_k` and `S_k`, and twisted Eisenstein series of
//! higher level.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::field::Field;
use crate::arith::numfield::NumberFieldElement;
use crate::arith::rational::{big, int, Rational};
use crate::dirichlet::{
    bernoulli, cyclotomic_field, gen_bernoulli, parity_matches, sigma_gen_in, DirichletCharacter,
};
use crate::error::{Error, Result};
use crate::qseries::{QSeries, Valuation};

/// A q-expansion with its weight, level and nebentypus.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularForm<K> {
    pub weight: u32,
    pub level: u64,
    pub character: DirichletCharacter,
    pub series: QSeries<K>,
    pub label: String,
}

impl ModularForm<Rational> {
    fn level_one(weight: u32, series: QSeries<Rational>, label: String) -> Self {
        ModularForm {
            weight,
            level: 1,
            character: DirichletCharacter::trivial(1).expect("modulus 1"),
            series,
            label,
        }
    }
}

fn check_even_weight(k: u32, min: u32) -> Result<()> {
    if k % 2 == 1 {
        return Err(Error::InvalidWeight(k as i64, "weight must be even"));
    }
    if k < min {
        return Err(Error::InvalidWeight(k as i64, "weight too small"));
    }
    Ok(())
}

/// `sigma_{e}(n)` for `0 <= n < prec` (entry 0 unused) by a divisor sieve.
pub fn sigma_table(e: u32, prec: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); prec];
    for d in 1..prec {
        let w = BigInt::from(d).pow(e);
        let mut m = d;
        while m < prec {
            s[m] += &w;
            m += d;
        }
    }
    s
}

/// `E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n`, normalized with `a_0 = 1`.
pub fn eisenstein_series(k: u32, prec: usize) -> Result<QSeries<Rational>> {
    check_even_weight(k, 4)?;
    if prec == 0 {
        return Err(Error::InsufficientPrecision { required: 1, available: 0 });
    }
    let c = -int(2 * k as i64) / bernoulli(k as usize);
    let sig = sigma_table(k - 1, prec);
    Ok(QSeries::from_fn(prec, |n| if n == 0 { Rational::one() } else { &c * big(sig[n].clone()) }))
}

pub fn eisenstein_level1(k: u32, prec: usize) -> Result<ModularForm<Rational>> {
    Ok(ModularForm::level_one(k, eisenstein_series(k, prec)?, format!("E{k}")))
}

/// `prod_{n>=1} (1 - q^n)` via Euler's pentagonal theorem.
pub fn euler_product(prec: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); prec];
    if prec == 0 {
        return c;
    }
    c[0] = BigInt::one();
    let mut m: i64 = 1;
    loop {
        let sign = if m % 2 == 1 { -1 } else { 1 };
        let p1 = (m * (3 * m - 1) / 2) as usize;
        let p2 = (m * (3 * m + 1) / 2) as usize;
        if p1 >= prec {
            break;
        }
        c[p1] += sign;
        if p2 < prec {
            c[p2] += sign;
        }
        m += 1;
    }
    c
}

/// `f^e` for an integer series with `f_0 = 1`, by the power recurrence
/// `n g_n = sum_{i=1}^n ((e + 1) i - n) f_i g_{n-i}`.
pub fn integer_series_power(f: &[BigInt], e: u64) -> Vec<BigInt> {
    assert!(f.first().is_some_and(|a| a.is_one()), "power recurrence needs f_0 = 1");
    let p = f.len();
    let mut g = vec![BigInt::zero(); p];
    g[0] = BigInt::one();
    let e1 = BigInt::from(e + 1);
    for n in 1..p {
        let mut s = BigInt::zero();
        for i in 1..=n {
            if f[i].is_zero() {
                continue;
            }
            let w = &e1 * BigInt::from(i) - BigInt::from(n);
            s += w * &f[i] * &g[n - i];
        }
        g[n] = s / BigInt::from(n);
    }
    g
}

/// `Delta = q prod (1 - q^n)^24` as a series of length `prec`.
pub fn delta_series(prec: usize) -> QSeries<Rational> {
    assert!(prec >= 1);
    let eta = euler_product(prec.saturating_sub(1).max(1));
    let pow = integer_series_power(&eta, 24);
    QSeries::from_fn(prec, |n| if n == 0 { Rational::zero() } else { big(pow[n - 1].clone()) })
}

pub fn delta(prec: usize) -> ModularForm<Rational> {
    ModularForm::level_one(12, delta_series(prec), "Delta".into())
}

/// `tau(1) .. tau(n)` (index 0 is zero).
pub fn tau_table(n: usize) -> Vec<BigInt> {
    delta_series(n + 1).coeffs().iter().map(|c| c.to_integer()).collect()
}

/// `j q = E_4^3 / (Delta / q)`, an honest power series of length `prec`.
pub fn jfunction(prec: usize) -> Result<QSeries<Rational>> {
    if prec < 2 {
        return Err(Error::InsufficientPrecision { required: 2, available: prec });
    }
    let e4 = eisenstein_series(4, prec)?;
    let dq = delta_series(prec + 1).shift_down(1)?;
    Ok(e4.pow(3).mul(&dq.inv()?))
}

/// `dim M_k(SL_2(Z))`.
pub fn dim_mk(k: i64) -> usize {
    if k < 0 || k % 2 == 1 {
        return 0;
    }
    if k % 12 == 2 {
        (k / 12) as usize
    } else {
        (k / 12) as usize + 1
    }
}

/// `dim S_k(SL_2(Z))`.
pub fn dim_sk(k: i64) -> usize {
    if k < 12 {
        0
    } else {
        dim_mk(k) - 1
    }
}

/// Echelon basis of `M_k` or `S_k`: form `i` has leading term `q^{v_i}` with
/// coefficient one and vanishing coefficients at every other `q^{v_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceBasis {
    pub weight: u32,
    pub cusp_only: bool,
    pub forms: Vec<QSeries<Rational>>,
}

impl SpaceBasis {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    pub fn valuations(&self) -> Vec<usize> {
        self.forms.iter().map(|f| f.valuation().finite().expect("nonzero basis form")).collect()
    }

    pub fn prec(&self) -> usize {
        self.forms.first().map_or(0, |f| f.prec())
    }

    /// Coordinates of `f` in this basis, read from the pivot coefficients;
    /// the remaining known coefficients are checked.
    pub fn coordinates<K: Field>(&self, f: &QSeries<K>) -> Result<Vec<K>> {
        let vals = self.valuations();
        let like = f.like().clone();
        let mut coords = Vec::with_capacity(vals.len());
        let mut rest = f.clone();
        for (form, &v) in self.forms.iter().zip(&vals) {
            let c = rest
                .coeff(v)
                .ok_or(Error::InsufficientPrecision { required: v + 1, available: f.prec() })?
                .clone();
            let lifted = form.map(|r| like.from_rational_like(r));
            rest = rest.sub(&lifted.scale(&c));
            coords.push(c);
        }
        if let Valuation::At(n) = rest.valuation() {
            return Err(Error::InvalidArgument(format!(
                "series is not in the span of the basis (residual at q^{n})"
            )));
        }
        Ok(coords)
    }
}

/// Monomials `E_4^a E_6^b Delta^c` (`b` in {0, 1}) of weight `k`, ordered
/// by `c`; monomial `c` has valuation `c`.
pub fn monomial_exponents(k: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    if k % 2 == 1 {
        return out;
    }
    for c in 0..=k / 12 {
        let r = k - 12 * c;
        let (a, b) = match r % 4 {
            0 => (r / 4, 0),
            _ if r >= 6 => ((r - 6) / 4, 1),
            _ => continue,
        };
        out.push((a, b, c));
    }
    out
}

pub fn miller_basis(k: u32, prec: usize, cusp_only: bool) -> Result<SpaceBasis> {
    if k % 2 == 1 {
        return Err(Error::InvalidWeight(k as i64, "weight must be even"));
    }
    let dim = dim_mk(k as i64);
    if prec <= dim {
        return Err(Error::InsufficientPrecision { required: dim + 1, available: prec });
    }
    let exps = monomial_exponents(k);
    debug_assert_eq!(exps.len(), dim);
    let mut rows: Vec<QSeries<Rational>> = Vec::new();
    if k == 0 {
        rows.push(QSeries::one(prec));
    } else if !exps.is_empty() {
        let max_a = exps.iter().map(|e| e.0).max().unwrap_or(0);
        let max_c = exps.iter().map(|e| e.2).max().unwrap_or(0);
        let e4 = eisenstein_series(4, prec)?;
        let e6 = eisenstein_series(6, prec)?;
        let d = delta_series(prec);
        let mut e4_pows = vec![QSeries::one(prec)];
        for _ in 0..max_a {
            let next = e4_pows.last().expect("nonempty").mul(&e4);
            e4_pows.push(next);
        }
        let mut d_pows = vec![QSeries::one(prec)];
        for _ in 0..max_c {
            let next = d_pows.last().expect("nonempty").mul(&d);
            d_pows.push(next);
        }
        for &(a, b, c) in &exps {
            if cusp_only && c == 0 {
                continue;
            }
            let mut m = e4_pows[a as usize].mul(&d_pows[c as usize]);
            if b == 1 {
                m = m.mul(&e6);
            }
            rows.push(m);
        }
    }
    // rows are already triangular (row i has valuation c_i); clear upwards
    for i in (0..rows.len()).rev() {
        let v = rows[i].valuation().finite().expect("monomials are nonzero");
        let lead = rows[i].coeffs()[v].clone();
        if !One::is_one(&lead) {
            rows[i] = rows[i].scale(&lead.recip());
        }
        for j in 0..i {
            let c = rows[j].coeffs()[v].clone();
            if !Zero::is_zero(&c) {
                rows[j] = rows[j].sub(&rows[i].scale(&c));
            }
        }
    }
    Ok(SpaceBasis { weight: k, cusp_only, forms: rows })
}

/// `E_k^{psi,phi,t}` normalized as
/// `delta(psi) L(1-k, phi) + 2 sum sigma^{psi,phi}_{k-1}(n) q^n`, dilated by `t`.
pub fn eisenstein_level_n(
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    t: u64,
    k: u32,
    prec: usize,
) -> Result<ModularForm<NumberFieldElement>> {
    if k < 3 {
        return Err(Error::InvalidWeight(k as i64, "weight must be at least 3"));
    }
    if t == 0 || prec == 0 {
        return Err(Error::InvalidArgument("t and prec must be positive".into()));
    }
    if !psi.is_primitive() || !phi.is_primitive() {
        return Err(Error::InvalidArgument("psi and phi must be primitive".into()));
    }
    let sign = psi.parity() * phi.parity();
    if (sign == 1) != (k % 2 == 0) {
        return Err(Error::ParityMismatch(format!(
            "(psi phi)(-1) = {sign} but k = {k}; the series vanishes"
        )));
    }
    let m = crate::arith::intmath::lcm_u64(psi.order(), phi.order());
    let field = cyclotomic_field(m);
    let base_prec = (prec - 1) / t as usize + 1;
    let mut coeffs = Vec::with_capacity(base_prec);
    let constant = if psi.modulus() == 1 {
        let b = gen_bernoulli(k as usize, phi);
        field.from_poly(&b.as_poly()).scale(&-Rational::new(BigInt::one(), BigInt::from(k)))
    } else {
        field.zero()
    };
    // lift b from Q(zeta_{ord phi}) into the compositum
    let constant = if psi.modulus() == 1 { lift_cyclotomic(&constant, phi.order(), m) } else { constant };
    coeffs.push(constant);
    for n in 1..base_prec {
        let s = sigma_gen_in(k - 1, psi, phi, n as u64, &field)?;
        coeffs.push(s.scale(&int(2)));
    }
    let series = QSeries::new(coeffs).dilate(t as usize).truncate(prec);
    let level = psi.modulus() * phi.modulus() * t;
    let character = psi.induce(level)?.mul(&phi.induce(level)?)?;
    debug_assert!(parity_matches(k as usize, &character));
    Ok(ModularForm {
        weight: k,
        level,
        character,
        series,
        label: format!("E{k}[{},{},{t}]", psi.label(), phi.label()),
    })
}

/// Re-expresses an element written in powers of `zeta_from` (already placed
/// in the target field's coordinates) as an element of `Q(zeta_to)`.
pub(crate) fn lift_cyclotomic(x: &NumberFieldElement, from: u64, to: u64) -> NumberFieldElement {
    let target = cyclotomic_field(to);
    if from == to || from <= 2 {
        return target.from_poly(&x.as_poly());
    }
    let step = to / from;
    let zeta = target.one().root_of_unity_like(to, step).expect("zeta_to in its field");
    let mut acc = target.zero();
    let mut pow = target.one();
    for c in x.coords() {
        acc = acc.plus(&pow.scale(c));
        pow = pow.times(&zeta);
    }
    acc
}
