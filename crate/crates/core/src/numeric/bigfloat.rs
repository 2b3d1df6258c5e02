//! Thin helpers over `astro_float` for evaluation that needs more than
//! double precision (series on the unit arc, root polishing, embeddings of
//! large cyclotomic elements).

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex64;

use crate::arith::rational::Rational;

/// Default working precision in bits.
pub const PREC: usize = 256;
pub const RM: RoundingMode = RoundingMode::ToEven;

pub fn consts() -> Consts {
    Consts::new().expect("constant cache allocation")
}

pub fn from_i64(n: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(n, p)
}

pub fn from_f64(x: f64, p: usize) -> BigFloat {
    BigFloat::from_f64(x, p)
}

/// Integer to float, rounding once at the end of each 64-bit limb step.
pub fn from_bigint(n: &BigInt, p: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    let base = BigFloat::from_u128(1u128 << 64, p);
    let mut acc = BigFloat::from_u64(0, p);
    for d in digits.iter().rev() {
        acc = acc.mul(&base, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
    }
    if sign == num_bigint::Sign::Minus {
        acc = acc.neg();
    }
    acc
}

pub fn from_rational(r: &Rational, p: usize) -> BigFloat {
    from_bigint(r.numer(), p).div(&from_bigint(r.denom(), p), p, RM)
}

/// Nearest double; astro-float has no direct conversion so this goes
/// through the decimal rendering.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    x.to_string().parse().unwrap_or(f64::NAN)
}

pub fn is_negative(x: &BigFloat) -> bool {
    x.sign() == Some(Sign::Neg) && !x.is_zero()
}

/// Complex number with `BigFloat` parts.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(p: usize) -> Self {
        BigComplex { re: BigFloat::from_u64(0, p), im: BigFloat::from_u64(0, p) }
    }

    pub fn one(p: usize) -> Self {
        BigComplex { re: BigFloat::from_u64(1, p), im: BigFloat::from_u64(0, p) }
    }

    pub fn real(re: BigFloat, p: usize) -> Self {
        BigComplex { re, im: BigFloat::from_u64(0, p) }
    }

    pub fn from_c64(z: Complex64, p: usize) -> Self {
        BigComplex { re: from_f64(z.re, p), im: from_f64(z.im, p) }
    }

    /// `r e^{i theta}`.
    pub fn polar(r: &BigFloat, theta: &BigFloat, p: usize, cc: &mut Consts) -> Self {
        BigComplex {
            re: r.mul(&theta.cos(p, RM, cc), p, RM),
            im: r.mul(&theta.sin(p, RM, cc), p, RM),
        }
    }

    pub fn add(&self, o: &Self, p: usize) -> Self {
        BigComplex { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM) }
    }

    pub fn sub(&self, o: &Self, p: usize) -> Self {
        BigComplex { re: self.re.sub(&o.re, p, RM), im: self.im.sub(&o.im, p, RM) }
    }

    pub fn mul(&self, o: &Self, p: usize) -> Self {
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        BigComplex { re, im }
    }

    pub fn scale(&self, s: &BigFloat, p: usize) -> Self {
        BigComplex { re: self.re.mul(s, p, RM), im: self.im.mul(s, p, RM) }
    }

    pub fn norm_sqr(&self, p: usize) -> BigFloat {
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self, p: usize) -> BigFloat {
        self.norm_sqr(p).sqrt(p, RM)
    }

    pub fn div(&self, o: &Self, p: usize) -> Self {
        let d = o.norm_sqr(p);
        let conj = BigComplex { re: o.re.clone(), im: o.im.neg() };
        let n = self.mul(&conj, p);
        BigComplex { re: n.re.div(&d, p, RM), im: n.im.div(&d, p, RM) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}
