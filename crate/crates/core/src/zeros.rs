//! Zeros of `E_{12n}` on the arc `|z| = 1`, `pi/3 <= arg z <= pi/2`, and the
//! algebraicity of `j` at those zeros.
//!
//! `E_{12n}` is written exactly as `sum_l a_l E_12^{n-l} Delta^l`; at a zero
//! `rho` this makes `E_12(rho)/Delta(rho)` a root of `P(x) = sum_l a_l x^{n-l}`,
//! and `j = E_12/Delta + 432000/691`.

use astro_float::{BigFloat, Consts};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::poly::RatPoly;
use crate::arith::rational::{rat, to_pq, Rational};
use crate::error::{Error, Result};
use crate::forms::{delta_series, eisenstein_series};
use crate::numeric::bigfloat::{self, from_rational, BigComplex, PREC, RM};
use crate::numeric::roots::{poly_roots_with, AberthConfig};
use crate::qseries::QSeries;

/// `j - E_12/Delta`.
pub fn j_shift() -> Rational {
    rat(432000, 691)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialExpansion {
    pub n: u32,
    /// `a_0 = 1, a_1, ..., a_n`.
    pub a: Vec<Rational>,
}

impl MonomialExpansion {
    pub fn a_strings(&self) -> Vec<String> {
        self.a.iter().map(to_pq).collect()
    }
}

/// Expansion of `E_{12n}` in the monomials `E_12^{n-l} Delta^l`, read off one
/// constant term at a time: subtract the monomials found so far, divide the
/// remainder by `Delta^{l+1}` and take the constant term.
pub fn expand_e12n(n: u32, prec: usize) -> Result<MonomialExpansion> {
    if n == 0 {
        return Err(Error::InvalidWeight(0, "expansion needs n >= 1"));
    }
    if prec < n as usize + 2 {
        return Err(Error::InsufficientPrecision { required: n as usize + 2, available: prec });
    }
    let target = eisenstein_series(12 * n, prec)?;
    let e12 = eisenstein_series(12, prec)?;
    let delta = delta_series(prec);
    // Delta / q is a unit
    let delta_unit_inv = delta.shift_down(1)?.inv()?;
    let mut a = vec![target.coeffs()[0].clone()];
    let mut rest = target.clone();
    for l in 0..n as usize {
        let mono = e12.pow((n as usize - l) as u64).mul(&delta.pow(l as u64));
        rest = rest.sub(&mono.scale(&a[l]));
        let m = l + 1;
        let quotient = rest.shift_down(m)?.mul(&delta_unit_inv.truncate(prec - m).pow(m as u64));
        a.push(quotient.coeffs()[0].clone());
    }
    Ok(MonomialExpansion { n, a })
}

/// First index where `E_{12n} - sum_l a_l E_12^{n-l} Delta^l` is nonzero.
pub fn expansion_residual(exp: &MonomialExpansion, prec: usize) -> Result<Option<usize>> {
    let n = exp.n as usize;
    let e12 = eisenstein_series(12, prec)?;
    let delta = delta_series(prec);
    let mut sum = QSeries::<Rational>::zero(prec);
    for (l, al) in exp.a.iter().enumerate() {
        sum = sum.add(&e12.pow((n - l) as u64).mul(&delta.pow(l as u64)).scale(al));
    }
    let target = eisenstein_series(12 * exp.n, prec)?;
    Ok(target.first_difference(&sum))
}

/// `P(x) = sum_l a_l x^{n-l}`.
pub fn algebraic_poly(exp: &MonomialExpansion) -> RatPoly {
    RatPoly::new(exp.a.iter().rev().cloned().collect())
}

/// Value of a series at a point together with an estimate of the truncation
/// error.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: BigComplex,
    /// Bound on the omitted tail assuming `|a_m| <= M m^k` for `m >= prec`,
    /// with `M` the largest ratio seen among the known terms.
    pub tail_bound: f64,
}

/// Series coefficients converted once for repeated evaluation.
#[derive(Clone, Debug)]
pub struct SeriesEvaluator {
    coeffs: Vec<BigFloat>,
    weight: u32,
    growth: f64,
    bits: usize,
}

/// Smallest imaginary part accepted by the evaluator.
pub const MIN_IMAG: f64 = 0.85;

impl SeriesEvaluator {
    pub fn new(series: &QSeries<Rational>, weight: u32, bits: usize) -> Self {
        let coeffs: Vec<BigFloat> = series.coeffs().iter().map(|c| from_rational(c, bits)).collect();
        let growth = series
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| {
                let v = c.to_f64().unwrap_or(f64::INFINITY).abs();
                v / (m as f64).powi(weight as i32)
            })
            .fold(0.0f64, f64::max);
        SeriesEvaluator { coeffs, weight, growth, bits }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Sum at a given `q` by Horner's rule.
    pub fn at_q(&self, q: &BigComplex, q_abs: f64) -> SeriesValue {
        let p = self.bits;
        let mut acc = BigComplex::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q, p);
            acc.re = acc.re.add(c, p, RM);
        }
        SeriesValue { value: acc, tail_bound: self.tail_bound(q_abs) }
    }

    fn tail_bound(&self, r: f64) -> f64 {
        let n = self.coeffs.len() as f64;
        let k = self.weight as f64;
        let ratio = ((n + 1.0) / n).powf(k) * r;
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        let log_first = self.growth.ln() + k * n.ln() + n * r.ln();
        log_first.exp() / (1.0 - ratio)
    }

    /// Value at `z` with `Im z >= MIN_IMAG`.
    pub fn at(&self, z: Complex64, cc: &mut Consts) -> Result<SeriesValue> {
        if z.im < MIN_IMAG {
            return Err(Error::InvalidArgument(format!(
                "Im z = {} is below {MIN_IMAG}, the tail estimate does not apply",
                z.im
            )));
        }
        let p = self.bits;
        let two_pi = cc.pi(p, RM).mul(&bigfloat::from_i64(2, p), p, RM);
        let (q, r) = q_at(&bigfloat::from_f64(z.re, p), &bigfloat::from_f64(z.im, p), &two_pi, p, cc);
        Ok(self.at_q(&q, r))
    }
}

/// `q = e^{2 pi i (x + i y)}` and `|q|` as a double.
fn q_at(x: &BigFloat, y: &BigFloat, two_pi: &BigFloat, p: usize, cc: &mut Consts) -> (BigComplex, f64) {
    let r = two_pi.mul(y, p, RM).neg().exp(p, RM, cc);
    let theta = two_pi.mul(x, p, RM);
    let q = BigComplex::polar(&r, &theta, p, cc);
    (q, bigfloat::to_f64(&r))
}

/// `sum_n a_n e^{2 pi i n z}` for a weight-`k` series.
pub fn eval_series_at(series: &QSeries<Rational>, z: Complex64, k: u32) -> Result<SeriesValue> {
    let mut cc = bigfloat::consts();
    SeriesEvaluator::new(series, k, PREC).at(z, &mut cc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcZero {
    pub theta: f64,
    pub z: (f64, f64),
    /// `|E_k(z)|` at the returned point.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct ArcConfig {
    pub samples: usize,
    pub bits: usize,
    /// Number of series terms used.
    pub terms: usize,
}

impl Default for ArcConfig {
    fn default() -> Self {
        ArcConfig { samples: 2048, bits: PREC, terms: 60 }
    }
}

/// Evaluation of `e^{i k theta / 2} E_k(e^{i theta})`, real on the arc.
struct ArcFunction {
    eval: SeriesEvaluator,
    k: u32,
    two_pi: BigFloat,
    cc: Consts,
}

impl ArcFunction {
    fn new(series: &QSeries<Rational>, k: u32, bits: usize) -> Self {
        let mut cc = bigfloat::consts();
        let two_pi = cc.pi(bits, RM).mul(&bigfloat::from_i64(2, bits), bits, RM);
        ArcFunction { eval: SeriesEvaluator::new(series, k, bits), k, two_pi, cc }
    }

    fn point(&mut self, theta: &BigFloat) -> BigComplex {
        let p = self.eval.bits;
        let x = theta.cos(p, RM, &mut self.cc);
        let y = theta.sin(p, RM, &mut self.cc);
        let (q, r) = q_at(&x, &y, &self.two_pi, p, &mut self.cc);
        self.eval.at_q(&q, r).value
    }

    fn rotated(&mut self, theta: &BigFloat) -> (BigFloat, BigComplex) {
        let p = self.eval.bits;
        let v = self.point(theta);
        let half_k = bigfloat::from_rational(&rat(self.k as i64, 2), p);
        let rot = BigComplex::polar(&bigfloat::from_i64(1, p), &theta.mul(&half_k, p, RM), p, &mut self.cc);
        (rot.mul(&v, p).re, v)
    }
}

/// All sign changes of `theta -> e^{i k theta / 2} E_k(e^{i theta})` on
/// `[pi/3, pi/2]`, refined by bisection to width `tol`.
pub fn find_arc_zeros(k: u32, tol: f64) -> Result<Vec<ArcZero>> {
    find_arc_zeros_with(k, tol, &ArcConfig::default())
}

pub fn find_arc_zeros_with(k: u32, tol: f64, cfg: &ArcConfig) -> Result<Vec<ArcZero>> {
    if k == 0 || k % 12 != 0 {
        return Err(Error::InvalidWeight(k as i64, "arc zeros are computed for weights divisible by 12"));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let series = eisenstein_series(k, cfg.terms)?;
    let mut f = ArcFunction::new(&series, k, cfg.bits);
    let p = cfg.bits;
    let pi = f.cc.pi(p, RM);
    let lo = pi.div(&bigfloat::from_i64(3, p), p, RM);
    let hi = pi.div(&bigfloat::from_i64(2, p), p, RM);
    let width = hi.sub(&lo, p, RM);
    let samples = cfg.samples.max(2);
    let step = width.div(&bigfloat::from_i64(samples as i64 - 1, p), p, RM);
    let thetas: Vec<BigFloat> =
        (0..samples).map(|i| lo.add(&step.mul(&bigfloat::from_i64(i as i64, p), p, RM), p, RM)).collect();
    let values: Vec<BigFloat> = thetas.iter().map(|t| f.rotated(t).0).collect();
    let mut out = Vec::new();
    for i in 0..samples - 1 {
        let (va, vb) = (&values[i], &values[i + 1]);
        if va.is_zero() {
            out.push(finish_zero(&mut f, &thetas[i]));
            continue;
        }
        if vb.is_zero() || bigfloat::is_negative(va) == bigfloat::is_negative(vb) {
            continue;
        }
        let (mut a, mut b) = (thetas[i].clone(), thetas[i + 1].clone());
        let neg_a = bigfloat::is_negative(va);
        let two = bigfloat::from_i64(2, p);
        while bigfloat::to_f64(&b.sub(&a, p, RM)) > tol {
            let m = a.add(&b, p, RM).div(&two, p, RM);
            let vm = f.rotated(&m).0;
            if vm.is_zero() {
                a = m.clone();
                b = m;
                break;
            }
            if bigfloat::is_negative(&vm) == neg_a {
                a = m;
            } else {
                b = m;
            }
        }
        let m = a.add(&b, p, RM).div(&two, p, RM);
        out.push(finish_zero(&mut f, &m));
    }
    if values[samples - 1].is_zero() {
        out.push(finish_zero(&mut f, &thetas[samples - 1]));
    }
    Ok(out)
}

fn finish_zero(f: &mut ArcFunction, theta: &BigFloat) -> ArcZero {
    let p = f.eval.bits;
    let (_, v) = f.rotated(theta);
    let t = bigfloat::to_f64(theta);
    let x = bigfloat::to_f64(&theta.cos(p, RM, &mut f.cc));
    let y = bigfloat::to_f64(&theta.sin(p, RM, &mut f.cc));
    ArcZero { theta: t, z: (x, y), residual: bigfloat::to_f64(&v.abs(p)) }
}

/// `j(e^{i theta}) = E_4^3 / Delta` evaluated from the two series.
pub fn j_on_arc(theta: f64, bits: usize) -> Result<Complex64> {
    let terms = 60;
    let mut cc = bigfloat::consts();
    let e4 = SeriesEvaluator::new(&eisenstein_series(4, terms)?, 4, bits);
    let del = SeriesEvaluator::new(&delta_series(terms), 12, bits);
    let z = Complex64::from_polar(1.0, theta);
    let a = e4.at(z, &mut cc)?.value;
    let d = del.at(z, &mut cc)?.value;
    Ok(a.mul(&a, bits).mul(&a, bits).div(&d, bits).to_c64())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroJ {
    pub theta: f64,
    pub j_numeric: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JValueReport {
    pub n: u32,
    pub weight: u32,
    /// `a_0, ..., a_n` as exact fractions.
    pub a_l: Vec<String>,
    pub zeros: Vec<ZeroJ>,
    /// Roots of `P` plus `432000/691`, as `(re, im)`.
    pub poly_roots_shifted: Vec<(f64, f64)>,
    /// Largest `|P(r)| / max |a_l|` over the numeric roots.
    pub root_residual: f64,
    pub expected_zero_count: u32,
    pub max_pair_distance: f64,
    pub tol_match: f64,
    pub passed: bool,
}

fn eval_complex(p: &RatPoly, z: Complex64) -> Complex64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
}

/// Smallest achievable maximum distance over bijections between `a` and `b`.
pub fn optimal_pairing_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0.0);
    }
    if a.len() > 8 {
        // sort both by real part; exact search is factorial
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        x.sort_by(|u, v| u.re.total_cmp(&v.re));
        y.sort_by(|u, v| u.re.total_cmp(&v.re));
        return Some(x.iter().zip(&y).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max));
    }
    fn go(a: &[Complex64], b: &[Complex64], used: &mut Vec<bool>, i: usize, cur: f64, best: &mut f64) {
        if cur >= *best {
            return;
        }
        if i == a.len() {
            *best = cur;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(a, b, used, i + 1, cur.max((a[i] - b[j]).norm()), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(a, b, &mut vec![false; b.len()], 0, 0.0, &mut best);
    Some(best)
}

/// Compares `j` at the arc zeros of `E_{12n}` with the shifted roots of `P`.
pub fn jvalue_algebraicity_check(n: u32, tol_zero: f64, tol_match: f64, seed: u64) -> Result<JValueReport> {
    let prec = 4 * n as usize + 20;
    let exp = expand_e12n(n, prec)?;
    let poly = algebraic_poly(&exp);
    let zeros = find_arc_zeros(12 * n, tol_zero)?;
    let mut zj = Vec::new();
    let mut s1 = Vec::new();
    for z in &zeros {
        let j = j_on_arc(z.theta, PREC)?;
        s1.push(j);
        zj.push(ZeroJ { theta: z.theta, j_numeric: j.re, residual: z.residual });
    }
    let roots = poly_roots_with(&poly, &AberthConfig { seed, ..AberthConfig::default() });
    let scale = exp.a.iter().filter_map(|c| c.to_f64()).map(f64::abs).fold(0.0, f64::max);
    let root_residual = roots.iter().map(|r| eval_complex(&poly, *r).norm() / scale).fold(0.0, f64::max);
    let shift = j_shift().to_f64().unwrap_or(f64::NAN);
    let s2: Vec<Complex64> = roots.iter().map(|r| r + shift).collect();
    let dist = optimal_pairing_distance(&s1, &s2).unwrap_or(f64::INFINITY);
    Ok(JValueReport {
        n,
        weight: 12 * n,
        a_l: exp.a_strings(),
        zeros: zj,
        poly_roots_shifted: s2.iter().map(|z| (z.re, z.im)).collect(),
        root_residual,
        expected_zero_count: n,
        max_pair_distance: dist,
        tol_match,
        passed: dist <= tol_match && s1.len() == n as usize,
    })
}
