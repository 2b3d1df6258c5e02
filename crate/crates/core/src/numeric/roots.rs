//! Simultaneous (Aberth) root finding for rational polynomials.
//!
//! The polynomial is made monic and rescaled by a power of two so that all
//! roots lie in a disc of radius about one; Aberth iteration runs in double
//! precision and each root is then polished by Newton steps in 256-bit
//! arithmetic against the exact coefficients.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::bigfloat::{self, BigComplex, PREC};
use crate::arith::poly::RatPoly;
use crate::arith::rational::{to_f64, Rational};

#[derive(Clone, Copy, Debug)]
pub struct AberthConfig {
    /// Rotates the starting circle; the result does not depend on it beyond
    /// ordering and rounding.
    pub seed: u64,
    pub max_iter: usize,
    pub polish_steps: usize,
}

impl Default for AberthConfig {
    fn default() -> Self {
        AberthConfig { seed: 0, max_iter: 1000, polish_steps: 6 }
    }
}

pub fn poly_roots(p: &RatPoly) -> Vec<Complex64> {
    poly_roots_with(p, &AberthConfig::default())
}

/// All complex roots of `p` with multiplicity, sorted by (re, im).
pub fn poly_roots_with(p: &RatPoly, cfg: &AberthConfig) -> Vec<Complex64> {
    let Some(deg) = p.degree() else { return Vec::new() };
    let mut roots = Vec::with_capacity(deg);
    let coeffs = p.coeffs();
    let zeros_at_origin = coeffs.iter().take_while(|c| c.is_zero()).count();
    roots.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(zeros_at_origin));
    let reduced = RatPoly::new(coeffs[zeros_at_origin..].to_vec()).monic();
    let d = deg - zeros_at_origin;
    if d == 1 {
        roots.push(Complex64::new(to_f64(&-reduced.coeff(0)), 0.0));
    } else if d > 1 {
        let shift = scale_exponent(&reduced);
        let scaled = rescale(&reduced, shift);
        let b: Vec<f64> = scaled.coeffs().iter().map(to_f64).collect();
        let approx = aberth(&b, cfg);
        let factor = 2f64.powi(shift);
        for z in approx {
            let z = z * factor;
            roots.push(polish(&reduced, z, cfg.polish_steps));
        }
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    roots
}

/// `log2` of a Fujiwara-type root radius, rounded up.
fn scale_exponent(monic: &RatPoly) -> i32 {
    let d = monic.degree().unwrap_or(0);
    let mut best = f64::NEG_INFINITY;
    for (i, c) in monic.coeffs().iter().enumerate().take(d) {
        if c.is_zero() {
            continue;
        }
        let l = log2_abs(c) / (d - i) as f64;
        best = best.max(l);
    }
    if best.is_finite() {
        best.ceil() as i32 + 1
    } else {
        0
    }
}

fn log2_abs(r: &Rational) -> f64 {
    log2_big(r.numer()) - log2_big(r.denom())
}

fn log2_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_string().parse::<f64>().map(f64::log2).unwrap_or(0.0);
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_string().parse::<f64>().map(f64::log2).unwrap_or(0.0) + shift as f64
}

/// Coefficients of `p(2^e y) / 2^{e d}`.
fn rescale(monic: &RatPoly, e: i32) -> RatPoly {
    let d = monic.degree().unwrap_or(0);
    let two = Rational::from_integer(BigInt::from(2));
    let step = if e >= 0 { two.clone() } else { two.recip() };
    let unit = num_traits::pow(step, e.unsigned_abs() as usize);
    let mut out = Vec::with_capacity(d + 1);
    let mut acc = Rational::one();
    // coefficient i is scaled by 2^{e (i - d)}
    let inv = unit.recip();
    let mut powers = vec![Rational::one(); d + 1];
    for i in (0..d).rev() {
        acc = &acc * &inv;
        powers[i] = acc.clone();
    }
    for (i, c) in monic.coeffs().iter().enumerate() {
        out.push(c * &powers[i]);
    }
    RatPoly::new(out)
}

fn horner_with_derivative(b: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for c in b.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn aberth(b: &[f64], cfg: &AberthConfig) -> Vec<Complex64> {
    let d = b.len() - 1;
    let offset = (splitmix(cfg.seed) >> 11) as f64 / (1u64 << 53) as f64;
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            let angle = std::f64::consts::TAU * (j as f64 + 0.25 + 0.5 * offset) / d as f64;
            Complex64::from_polar(0.7, angle)
        })
        .collect();
    for _ in 0..cfg.max_iter {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = horner_with_derivative(b, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    repulsion += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Newton refinement against the exact coefficients; a step is kept only
/// when it reduces the residual.
fn polish(p: &RatPoly, z0: Complex64, steps: usize) -> Complex64 {
    let coeffs: Vec<_> = p.coeffs().iter().map(|c| bigfloat::from_rational(c, PREC)).collect();
    let eval = |z: &BigComplex| {
        let mut val = BigComplex::zero(PREC);
        let mut der = BigComplex::zero(PREC);
        for c in coeffs.iter().rev() {
            der = der.mul(z, PREC).add(&val, PREC);
            val = val.mul(z, PREC).add(&BigComplex::real(c.clone(), PREC), PREC);
        }
        (val, der)
    };
    let mut z = BigComplex::from_c64(z0, PREC);
    let (mut val, mut der) = eval(&z);
    let mut resid = bigfloat::to_f64(&val.abs(PREC));
    for _ in 0..steps {
        if resid == 0.0 || der.re.is_zero() && der.im.is_zero() {
            break;
        }
        let cand = z.sub(&val.div(&der, PREC), PREC);
        let (v2, d2) = eval(&cand);
        let r2 = bigfloat::to_f64(&v2.abs(PREC));
        if !(r2 < resid) {
            break;
        }
        z = cand;
        val = v2;
        der = d2;
        resid = r2;
    }
    z.to_c64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn quadratic_with_large_coefficients() {
        let p = RatPoly::from_ints(&[-20468736, -1080, 1]);
        let r = poly_roots(&p);
        let s = 12.0 * 144169f64.sqrt();
        assert!(close(r[0], Complex64::new(540.0 - s, 0.0), 1e-15));
        assert!(close(r[1], Complex64::new(540.0 + s, 0.0), 1e-15));
    }

    #[test]
    fn roots_of_unity() {
        let p = RatPoly::from_ints(&[-1, 0, 0, 0, 0, 1]);
        let r = poly_roots(&p);
        assert_eq!(r.len(), 5);
        for z in r {
            assert!((z.powu(5) - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_roots_and_linear() {
        let p = RatPoly::from_ints(&[0, 0, 3, 1]);
        let r = poly_roots(&p);
        assert_eq!(r, vec![Complex64::new(-3.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert!(poly_roots(&RatPoly::constant(int(4))).is_empty());
    }

    #[test]
    fn seed_does_not_change_roots() {
        let p = RatPoly::from_ints(&[6, -11, 6, -1]);
        for seed in 0..5 {
            let r = poly_roots_with(&p, &AberthConfig { seed, ..Default::default() });
            for (z, e) in r.iter().zip([1.0, 2.0, 3.0]) {
                assert!(close(*z, Complex64::new(e, 0.0), 1e-14));
            }
        }
    }

    #[test]
    fn residual_contract_on_wilkinson_like() {
        // prod (x - i) for i = 1..10
        let mut p = RatPoly::one();
        for i in 1..=10 {
            p = p.mul(&RatPoly::from_ints(&[-i, 1]));
        }
        let r = poly_roots(&p);
        for (i, z) in r.iter().enumerate() {
            assert!(close(*z, Complex64::new((i + 1) as f64, 0.0), 1e-12), "{z}");
        }
    }
}
