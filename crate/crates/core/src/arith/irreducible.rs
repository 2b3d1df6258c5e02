//! Irreducibility certificates over Q and Dedekind's index criterion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::intmath::{is_prime_u64, primes_up_to};
use super::modp::FpPoly;
use super::poly::RatPoly;
use super::rational::{big, int, Rational};
use crate::error::{Error, Result};

/// One-sided irreducibility verdict. `Unknown` is an honest outcome, never
/// a disguised failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Irreducibility {
    /// `witness_primes` either contains one prime modulo which the
    /// polynomial stays irreducible, or the primes whose degree patterns
    /// jointly rule out every proper factor degree.
    Irreducible { witness_primes: Vec<u64> },
    /// A proper factor over Q.
    Reducible { factor: RatPoly },
    Unknown { primes_tried: usize },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IrreducibilityConfig {
    /// Number of good primes whose degree patterns are intersected.
    pub primes: usize,
}

impl Default for IrreducibilityConfig {
    fn default() -> Self {
        IrreducibilityConfig { primes: 20 }
    }
}

pub fn poly_irreducible(p: &RatPoly) -> Irreducibility {
    poly_irreducible_with(p, IrreducibilityConfig::default())
}

/// Good primes for `f`: the reduction keeps its degree and stays squarefree.
pub fn good_primes(f: &RatPoly, count: usize) -> impl Iterator<Item = (u64, FpPoly)> + '_ {
    let (ints, _) = f.primitive_integer();
    let lead = ints.last().cloned().unwrap_or_default();
    (2u64..)
        .filter(|&q| is_prime_u64(q))
        .filter(move |&q| !(&lead % BigInt::from(q)).is_zero())
        .filter_map(move |q| {
            let fp = FpPoly::from_bigints(q, &ints);
            fp.is_squarefree().then_some((q, fp))
        })
        .take(count)
}

pub fn poly_irreducible_with(p: &RatPoly, cfg: IrreducibilityConfig) -> Irreducibility {
    let Some(d) = p.degree() else {
        return Irreducibility::Unknown { primes_tried: 0 };
    };
    if d <= 1 {
        return Irreducibility::Irreducible { witness_primes: Vec::new() };
    }
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) >= 1 {
        return Irreducibility::Reducible { factor: g };
    }
    if let Some(root) = find_rational_root(p) {
        return Irreducibility::Reducible { factor: RatPoly::new(vec![-root, int(1)]) };
    }

    // possible[k]: a factor of degree k is still consistent with all patterns
    let mut possible = vec![true; d + 1];
    let mut used = Vec::new();
    for (q, fp) in good_primes(p, cfg.primes) {
        let pattern = fp.factor_degrees();
        if pattern.len() == 1 {
            return Irreducibility::Irreducible { witness_primes: vec![q] };
        }
        let mut sums = vec![false; d + 1];
        sums[0] = true;
        for &deg in &pattern {
            for s in (deg..=d).rev() {
                if sums[s - deg] {
                    sums[s] = true;
                }
            }
        }
        for k in 0..=d {
            possible[k] &= sums[k];
        }
        used.push(q);
        if (1..d).all(|k| !possible[k]) {
            return Irreducibility::Irreducible { witness_primes: used };
        }
    }
    if d == 2 || d == 3 {
        // a reducible quadratic or cubic has a rational root
        if exact_rational_root_free(p) {
            return Irreducibility::Irreducible { witness_primes: used };
        }
    }
    Irreducibility::Unknown { primes_tried: used.len() }
}

/// Candidate rational roots from numeric approximations, confirmed exactly.
fn find_rational_root(p: &RatPoly) -> Option<Rational> {
    let (ints, _) = p.primitive_integer();
    let lead = ints.last()?.clone();
    let f = RatPoly::from_bigints(&ints);
    for z in crate::numeric::roots::poly_roots(&f) {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        let scaled = z.re * crate::arith::rational::to_f64(&big(lead.clone()));
        if !scaled.is_finite() || scaled.abs() > 1e300 {
            continue;
        }
        let center = BigInt::from(scaled.round() as i128);
        for delta in -1i64..=1 {
            let cand = Rational::new(&center + delta, lead.clone());
            if f.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

/// Exact rational-root-theorem scan, feasible only when the constant and
/// leading coefficients are small enough to enumerate divisors.
fn exact_rational_root_free(p: &RatPoly) -> bool {
    let (ints, _) = p.primitive_integer();
    let (Some(c0), Some(lead)) = (ints.first(), ints.last()) else {
        return false;
    };
    if c0.is_zero() {
        return false;
    }
    let bound = BigInt::from(1_000_000_000u64);
    if c0.abs() > bound || lead.abs() > bound {
        return false;
    }
    let divs = |n: &BigInt| -> Vec<BigInt> {
        let n: u64 = n.abs().try_into().expect("bounded");
        super::intmath::divisors(n).into_iter().map(BigInt::from).collect()
    };
    let f = RatPoly::from_bigints(&ints);
    for num in divs(c0) {
        for den in divs(lead) {
            for s in [1, -1] {
                let cand = Rational::new(&num * s, den.clone());
                if f.eval(&cand).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IndexVerdict {
    IndexDivisor,
    NotIndexDivisor,
}

/// Dedekind's criterion: does `q` divide `[O_K : Z[alpha]]` for `K = Q[x]/(f)`?
pub fn dedekind_index_test(f: &RatPoly, q: u64) -> Result<IndexVerdict> {
    if !f.is_monic() || !f.is_integral() {
        return Err(Error::InvalidArgument(format!("{f} is not a monic integer polynomial")));
    }
    if !is_prime_u64(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| c.to_integer()).collect();
    let fbar = FpPoly::from_bigints(q, &ints);
    let g = fbar.radical();
    let h = fbar.div_rem(&g).0;
    let lifted = RatPoly::from_bigints(&g.lift()).mul(&RatPoly::from_bigints(&h.lift()));
    let diff = lifted.sub(f);
    let qb = BigInt::from(q);
    let fq: Vec<BigInt> = (0..=f.degree().unwrap_or(0))
        .map(|i| {
            let c = diff.coeff(i).to_integer();
            debug_assert!((&c % &qb).is_zero());
            c.div_floor(&qb)
        })
        .collect();
    let fbar_q = FpPoly::from_bigints(q, &fq);
    let common = fbar_q.gcd(&g).gcd(&h);
    Ok(if common.degree().unwrap_or(0) >= 1 {
        IndexVerdict::IndexDivisor
    } else {
        IndexVerdict::NotIndexDivisor
    })
}

/// Primes below `bound` dividing `n`.
pub fn small_prime_divisors(n: &BigInt, bound: u64) -> Vec<u64> {
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| (n % BigInt::from(p)).is_zero())
        .collect()
}
