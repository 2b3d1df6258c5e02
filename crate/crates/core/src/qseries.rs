//! Truncated q-expansions with exact coefficients.
//!
//! A series stores `a_0 .. a_{prec-1}`; everything at index `prec` and
//! beyond is unknown. Results of binary operations carry the smaller of the
//! two precisions, and nothing is ever extrapolated.

use std::fmt;

use crate::arith::field::Field;
use crate::arith::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<K> {
    coeffs: Vec<K>,
}

/// Order of vanishing at the cusp, as far as the known coefficients tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    At(usize),
    /// Every known coefficient is zero.
    ZeroToPrecision,
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::At(n) => Some(n),
            Valuation::ZeroToPrecision => None,
        }
    }
}

impl<K: Field> QSeries<K> {
    /// Series with the given coefficients; `prec = coeffs.len()`, which must
    /// be positive.
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series needs prec >= 1");
        QSeries { coeffs }
    }

    pub fn from_fn(prec: usize, f: impl FnMut(usize) -> K) -> Self {
        QSeries::new((0..prec).map(f).collect())
    }

    pub fn zero_like(like: &K, prec: usize) -> Self {
        QSeries::new(vec![like.zero_like(); prec])
    }

    pub fn constant(c: K, prec: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); prec];
        coeffs[0] = c;
        QSeries::new(coeffs)
    }

    pub fn one_like(like: &K, prec: usize) -> Self {
        QSeries::constant(like.one_like(), prec)
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    /// `a_n`, or `None` when `n >= prec`.
    pub fn coeff(&self, n: usize) -> Option<&K> {
        self.coeffs.get(n)
    }

    pub fn like(&self) -> &K {
        &self.coeffs[0]
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec >= 1 && prec <= self.prec(), "cannot raise precision by truncation");
        QSeries::new(self.coeffs[..prec].to_vec())
    }

    fn check_field(&self, rhs: &Self) -> Result<()> {
        if self.like().same_field(rhs.like()) {
            Ok(())
        } else {
            Err(Error::MismatchedFields)
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        let p = self.prec().min(rhs.prec());
        Ok(QSeries::from_fn(p, |i| self.coeffs[i].plus(&rhs.coeffs[i])))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        let p = self.prec().min(rhs.prec());
        Ok(QSeries::from_fn(p, |i| self.coeffs[i].minus(&rhs.coeffs[i])))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("series over different fields")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("series over different fields")
    }

    pub fn neg(&self) -> Self {
        QSeries::new(self.coeffs.iter().map(Field::negate).collect())
    }

    pub fn scale(&self, c: &K) -> Self {
        QSeries::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        QSeries::new(self.coeffs.iter().map(|a| a.scale(r)).collect())
    }

    /// Cauchy product truncated at the smaller precision.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        let p = self.prec().min(rhs.prec());
        let zero = self.like().zero_like();
        let lo_a = self.coeffs.iter().take(p).position(|c| !c.is_zero()).unwrap_or(p);
        let lo_b = rhs.coeffs.iter().take(p).position(|c| !c.is_zero()).unwrap_or(p);
        let mut out = vec![zero; p];
        for i in lo_a..p {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in lo_b..p - i {
                let b = &rhs.coeffs[j];
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Ok(QSeries::new(out))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("series over different fields")
    }

    /// Multiplicative inverse by the coefficient recurrence.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotAUnit("series with zero constant term".into()));
        }
        let c = a0.inverse()?;
        let p = self.prec();
        let mut g: Vec<K> = Vec::with_capacity(p);
        g.push(c.clone());
        for n in 1..p {
            let mut s = c.zero_like();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    s = s.plus(&a.times(&g[n - i]));
                }
            }
            g.push(s.times(&c).negate());
        }
        Ok(QSeries::new(g))
    }

    /// `f^e` by repeated squaring; `f^0 = 1` at the precision of `f`.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = QSeries::one_like(self.like(), self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(n) => Valuation::At(n),
            None => Valuation::ZeroToPrecision,
        }
    }

    /// `f / q^v`; the first `v` coefficients must vanish. Precision drops by `v`.
    pub fn shift_down(&self, v: usize) -> Result<Self> {
        if v >= self.prec() {
            return Err(Error::InsufficientPrecision { required: v + 1, available: self.prec() });
        }
        if self.coeffs[..v].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(format!("series is not divisible by q^{v}")));
        }
        Ok(QSeries::new(self.coeffs[v..].to_vec()))
    }

    /// `q^v f`; precision grows by `v` since the new low terms are known zeros.
    pub fn shift_up(&self, v: usize) -> Self {
        let mut coeffs = vec![self.like().zero_like(); v];
        coeffs.extend(self.coeffs.iter().cloned());
        QSeries::new(coeffs)
    }

    /// `f(q^t)`, known up to index `t (prec - 1)`.
    pub fn dilate(&self, t: usize) -> Self {
        assert!(t >= 1);
        let p = (self.prec() - 1) * t + 1;
        let zero = self.like().zero_like();
        QSeries::from_fn(p, |i| if i % t == 0 { self.coeffs[i / t].clone() } else { zero.clone() })
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> QSeries<L> {
        QSeries::new(self.coeffs.iter().map(f).collect())
    }

    /// First index below the common precision where the two series differ.
    pub fn first_difference(&self, rhs: &Self) -> Option<usize> {
        let p = self.prec().min(rhs.prec());
        (0..p).find(|&i| self.coeffs[i] != rhs.coeffs[i])
    }

    /// Equality of the known coefficients up to the common precision.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.first_difference(rhs).is_none()
    }
}

pub fn qs_mul<K: Field>(f: &QSeries<K>, g: &QSeries<K>) -> Result<QSeries<K>> {
    f.try_mul(g)
}

pub fn qs_inv<K: Field>(f: &QSeries<K>) -> Result<QSeries<K>> {
    f.inv()
}

pub fn qs_pow<K: Field>(f: &QSeries<K>, e: u64) -> QSeries<K> {
    f.pow(e)
}

pub fn qs_valuation<K: Field>(f: &QSeries<K>) -> Valuation {
    f.valuation()
}

impl QSeries<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        QSeries::new(coeffs.iter().map(|&c| crate::arith::rational::int(c)).collect())
    }

    pub fn zero(prec: usize) -> Self {
        QSeries::zero_like(&crate::arith::rational::int(0), prec)
    }

    pub fn one(prec: usize) -> Self {
        QSeries::one_like(&crate::arith::rational::int(0), prec)
    }
}

impl<K: Field> fmt::Display for QSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let s = c.to_exact_string();
            let s = if s.contains(' ') { format!("({s})") } else { s };
            match n {
                0 => write!(f, "{s}")?,
                1 => write!(f, "{s}*q")?,
                _ => write!(f, "{s}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}
