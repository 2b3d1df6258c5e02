//! Searches behind the finiteness of `h = a f^2 + b f g + g^2` at general
//! level, and the Galois-side checks on level-one Hecke fields.
//!
//! With `g = E_k^{1,phi}` and `h = E_{2k}^{1,phi^2}` normalized to constant
//! term 1, comparing `q^1` coefficients gives `b + 2 beta = alpha` where
//! `beta = -2k / B_{k,phi}` and `alpha = -4k / B_{2k,phi^2}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::field::Field;
use crate::arith::intmath::{factor_trial, quad_field_discriminant, squarefree_kernel};
use crate::arith::irreducible::{
    dedekind_index_test, good_primes, poly_irreducible_with, IndexVerdict, Irreducibility,
    IrreducibilityConfig,
};
use crate::arith::numfield::NumberFieldElement;
use crate::arith::poly::RatPoly;
use crate::arith::rational::{int, to_pq, Rational};
use crate::dirichlet::{abs_embed, gen_bernoulli, parity_matches, primitive_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::forms::{dim_sk, lift_cyclotomic};
use crate::hecke::{hecke_matrix, hecke_prec};
use crate::numeric::{ln_factorial, zeta};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// `(alpha, beta)` in `Q(zeta_m)`, `m` the order of `phi`.
///
/// `phi^2` is taken modulo the modulus of `phi`; when `phi^2` is imprimitive
/// this is the imprimitive Bernoulli number.
pub fn alpha_beta(k: u32, phi: &DirichletCharacter) -> Result<(NumberFieldElement, NumberFieldElement)> {
    if k == 0 {
        return Err(Error::InvalidWeight(0, "weight must be positive"));
    }
    if !parity_matches(k as usize, phi) {
        return Err(Error::ParityMismatch(format!("phi(-1) != (-1)^{k} for {}", phi.label())));
    }
    let m = phi.order();
    let bk = gen_bernoulli(k as usize, phi);
    let phi2 = phi.pow(2);
    let b2k = lift_cyclotomic(&gen_bernoulli(2 * k as usize, &phi2), phi2.order(), m);
    let bk = lift_cyclotomic(&bk, m, m);
    if Field::is_zero(&bk) || Field::is_zero(&b2k) {
        return Err(Error::ParityMismatch(format!("vanishing Bernoulli number at k = {k} for {}", phi.label())));
    }
    let beta = bk.try_inv()?.scale(&int(-2 * k as i64));
    let alpha = b2k.try_inv()?.scale(&int(-4 * k as i64));
    Ok((alpha, beta))
}

/// `ln(k! (2 pi)^-k)`.
fn ln_core(k: u32) -> f64 {
    ln_factorial(k as u64) - k as f64 * TWO_PI.ln()
}

/// Lower and upper bounds for `|B_{k,chi}|` at conductor `l`, each taken
/// in the conservative direction of the zeta enclosures.
pub fn bernoulli_bounds(k: u32, l: u64) -> (f64, f64) {
    let zk = zeta(k);
    let z2k = zeta(2 * k);
    let lpow = (k as f64 - 0.5) * (l as f64).ln();
    let lower = (2.0 * z2k.lo / zk.hi).ln() + ln_core(k) + lpow;
    let upper = (2.0 * zk.hi).ln() + ln_core(k) + lpow;
    (lower.exp(), upper.exp())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub k: u32,
    pub conductor: u64,
    pub character: String,
    pub lower: f64,
    pub upper: f64,
    pub actual: f64,
    pub holds: bool,
}

/// Relative slack allowed for the embedding of `B_{k,chi}` into `C`.
pub const EMBED_TOL: f64 = 1e-12;

pub fn bernoulli_bound_check(k: u32, chi: &DirichletCharacter) -> Result<BoundCheck> {
    if k < 3 {
        return Err(Error::InvalidWeight(k as i64, "the bound is stated for k >= 3"));
    }
    if !chi.is_primitive() {
        return Err(Error::InvalidArgument(format!("{} is not primitive", chi.label())));
    }
    if !parity_matches(k as usize, chi) {
        return Err(Error::ParityMismatch(format!("chi(-1) != (-1)^{k} for {}", chi.label())));
    }
    let l = chi.conductor();
    let (lower, upper) = bernoulli_bounds(k, l);
    let actual = abs_embed(&gen_bernoulli(k as usize, chi))?;
    let holds = lower * (1.0 - EMBED_TOL) <= actual && actual <= upper * (1.0 + EMBED_TOL);
    Ok(BoundCheck { k, conductor: l, character: chi.label(), lower, upper, actual, holds })
}

/// Conductor-uniform upper envelopes `(|alpha|, |beta|)` at weight `k`,
/// from the lower bound on `|B|` with `l = 1`.
pub fn envelopes(k: u32) -> (f64, f64) {
    let (lb_k, _) = bernoulli_bounds(k, 1);
    let (lb_2k, _) = bernoulli_bounds(2 * k, 1);
    (4.0 * k as f64 / lb_2k, 2.0 * k as f64 / lb_k)
}

/// Largest conductor for which `|beta| < |b|/4` and `|alpha| < |b|/2` can
/// fail at weight `k` (both `phi` and `phi^2` of conductor `l`).
pub fn conductor_cutoff(k: u32, b_abs: f64) -> u64 {
    let (lb_k, _) = bernoulli_bounds(k, 1);
    let (lb_2k, _) = bernoulli_bounds(2 * k, 1);
    // 2k / (lb_k l^{k-1/2}) < b/4  <=>  l > (8k / (b lb_k))^{1/(k-1/2)}
    let l_beta = (8.0 * k as f64 / (b_abs * lb_k)).powf(1.0 / (k as f64 - 0.5));
    let l_alpha = (8.0 * k as f64 / (b_abs * lb_2k)).powf(1.0 / (2.0 * k as f64 - 0.5));
    l_beta.max(l_alpha).max(1.0).floor() as u64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub k: u32,
    pub conductor: u64,
    pub character: String,
    pub alpha_abs: f64,
    pub beta_abs: f64,
    /// `survivor`, `equation` (exactly checked, no solution) or
    /// `phi2_imprimitive`.
    pub excluded_by: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Survivor {
    pub k: u32,
    pub conductor: u64,
    pub character: String,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub reverified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Envelope {
    pub k: u32,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FinitenessReport {
    pub a: String,
    pub b: String,
    /// For every `k > k_bound` no conductor can satisfy the equation.
    pub k_bound: u32,
    /// False when `k_max` stopped the search for `k_bound`.
    pub k_bound_certified: bool,
    pub envelopes: Vec<Envelope>,
    pub envelopes_monotone_from_8: bool,
    /// Enumerated conductors per weight: `max(l_max, l*(k))`.
    pub conductor_limits: BTreeMap<u32, u64>,
    pub cells: Vec<ScanRow>,
    pub surviving: Vec<Survivor>,
}

impl FinitenessReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,conductor,character,alpha_abs,beta_abs,excluded_by\n");
        for r in &self.cells {
            s.push_str(&format!(
                "{},{},\"{}\",{:.6e},{:.6e},{}\n",
                r.k, r.conductor, r.character, r.alpha_abs, r.beta_abs, r.excluded_by
            ));
        }
        s
    }
}

/// Whether `b + 2 beta = alpha` exactly.
pub fn equation_holds(b: &Rational, alpha: &NumberFieldElement, beta: &NumberFieldElement) -> bool {
    let lhs = beta.scale(&int(2)).plus(&alpha.parent().from_rational(b.clone()));
    lhs == *alpha
}

/// Evaluates one `(k, phi)` cell.
pub fn scan_cell(k: u32, phi: &DirichletCharacter, b: &Rational) -> Result<(ScanRow, Option<Survivor>)> {
    let l = phi.conductor();
    let phi2 = phi.pow(2);
    if !phi2.is_primitive() {
        return Ok((
            ScanRow {
                k,
                conductor: l,
                character: phi.label(),
                alpha_abs: f64::NAN,
                beta_abs: f64::NAN,
                excluded_by: "phi2_imprimitive".into(),
            },
            None,
        ));
    }
    let (alpha, beta) = alpha_beta(k, phi)?;
    let survives = equation_holds(b, &alpha, &beta);
    let row = ScanRow {
        k,
        conductor: l,
        character: phi.label(),
        alpha_abs: abs_embed(&alpha)?,
        beta_abs: abs_embed(&beta)?,
        excluded_by: if survives { "survivor" } else { "equation" }.into(),
    };
    let survivor = survives.then(|| Survivor {
        k,
        conductor: l,
        character: phi.label(),
        alpha: alpha.coord_strings(),
        beta: beta.coord_strings(),
        reverified: alpha_beta(k, phi).map(|(a, bt)| equation_holds(b, &a, &bt)).unwrap_or(false),
    });
    Ok((row, survivor))
}

pub fn finiteness_scan(a: &Rational, b: &Rational, k_max: u32, l_max: u64) -> Result<FinitenessReport> {
    if Zero::is_zero(a) || Zero::is_zero(b) {
        return Err(Error::InvalidArgument("a and b must be nonzero".into()));
    }
    if k_max < 8 {
        return Err(Error::InvalidArgument("k_max must be at least 8".into()));
    }
    let b_abs = b.abs().to_f64().unwrap_or(f64::INFINITY);
    let envelopes: Vec<Envelope> = (3..=k_max)
        .map(|k| {
            let (alpha, beta) = envelopes(k);
            Envelope { k, alpha, beta }
        })
        .collect();
    let monotone = envelopes
        .windows(2)
        .filter(|w| w[0].k >= 8)
        .all(|w| w[1].alpha < w[0].alpha && w[1].beta < w[0].beta);
    // past k = 8 the envelopes decrease, so the first weight at or after 8
    // where |alpha| + 2|beta| < |b| bounds everything beyond it
    let mut k_bound = 2;
    let mut certified = false;
    for e in &envelopes {
        if e.alpha + 2.0 * e.beta >= b_abs {
            k_bound = e.k;
        } else if e.k >= 8 && monotone {
            certified = true;
            break;
        }
    }
    if !certified {
        k_bound = k_max;
    }
    let mut cells = Vec::new();
    let mut surviving = Vec::new();
    let mut limits = BTreeMap::new();
    for k in 3..=k_bound {
        let limit = l_max.max(conductor_cutoff(k, b_abs));
        limits.insert(k, limit);
        for l in 1..=limit {
            for phi in primitive_characters(l)? {
                if !parity_matches(k as usize, &phi) {
                    continue;
                }
                let (row, s) = scan_cell(k, &phi, b)?;
                cells.push(row);
                surviving.extend(s);
            }
        }
    }
    Ok(FinitenessReport {
        a: to_pq(a),
        b: to_pq(b),
        k_bound,
        k_bound_certified: certified,
        envelopes,
        envelopes_monotone_from_8: monotone,
        conductor_limits: limits,
        cells,
        surviving,
    })
}

/// Which mod-p factorization shapes were seen; each is a cycle type in the
/// Galois group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SnEvidence {
    pub patterns: Vec<(u64, Vec<usize>)>,
    /// Some prime keeps the polynomial irreducible: an `n`-cycle.
    pub n_cycle: bool,
    /// One 2-cycle and otherwise odd cycles: a power is a transposition.
    pub transposition: bool,
    /// A cycle of prime length `p > n/2`: a power is a `p`-cycle.
    pub large_prime_cycle: bool,
    /// All three seen. Heuristic: with irreducibility this is the usual
    /// sufficient condition for the full symmetric group.
    pub sn_witnessed: bool,
}

pub fn sn_evidence(f: &RatPoly, primes: usize) -> SnEvidence {
    let n = f.degree().unwrap_or(0);
    let mut ev = SnEvidence::default();
    for (p, fp) in good_primes(f, primes) {
        let pat = fp.factor_degrees();
        if pat == [n] {
            ev.n_cycle = true;
        }
        if pat.iter().filter(|&&d| d == 2).count() == 1 && pat.iter().all(|&d| d == 2 || d % 2 == 1) {
            ev.transposition = true;
        }
        if pat.iter().any(|&d| 2 * d > n && crate::arith::intmath::is_prime_u64(d as u64)) {
            ev.large_prime_cycle = true;
        }
        ev.patterns.push((p, pat));
    }
    ev.sn_witnessed = ev.n_cycle && ev.transposition && (ev.large_prime_cycle || n <= 3);
    ev
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaedaReport {
    pub k: u32,
    pub dim: usize,
    /// Hecke index whose polynomial was certified (or the last one tried).
    pub n: u64,
    pub charpoly: Vec<String>,
    pub irreducibility: Irreducibility,
    pub poly_discriminant: String,
    /// Small prime factors of the polynomial discriminant.
    pub disc_small_factors: Vec<(String, u32)>,
    /// Squarefree part of the discriminant, for quadratics.
    pub disc_squarefree: Option<String>,
    /// For quadratics: the discriminant is not a square.
    pub square_test: Option<bool>,
    pub sn_evidence: SnEvidence,
}

pub const MAEDA_PRIMES: usize = 30;

/// Good primes tried before a Hecke polynomial is reported `Unknown`.
/// Hecke polynomials have many small ramified primes and long runs of
/// split reductions, so the library default is too short here.
pub const MAEDA_IRREDUCIBILITY_PRIMES: usize = 200;

pub fn maeda_check(k: u32, n_list: &[u64]) -> Result<MaedaReport> {
    let dim = dim_sk(k as i64);
    if dim == 0 {
        return Err(Error::InvalidWeight(k as i64, "S_k is zero"));
    }
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("no Hecke indices given".into()));
    }
    let mut last = None;
    for &n in n_list {
        let m = hecke_matrix(n, k, hecke_prec(n, k))?;
        let cp = m.charpoly();
        let v = poly_irreducible_with(&cp, IrreducibilityConfig { primes: MAEDA_IRREDUCIBILITY_PRIMES });
        let done = v.is_irreducible() || matches!(v, Irreducibility::Reducible { .. } if dim == 1);
        last = Some((n, cp, v));
        if done {
            break;
        }
    }
    let (n, cp, v) = last.expect("nonempty index list");
    let disc = cp.discriminant()?.to_integer();
    let small = factor_trial(&disc, 10_000);
    let (disc_squarefree, square_test) = if dim == 2 {
        let ker = squarefree_kernel(&disc)?;
        let not_square = !(ker.squarefree.is_one() && ker.complete);
        (Some(ker.squarefree.to_string()), Some(not_square))
    } else {
        (None, None)
    };
    Ok(MaedaReport {
        k,
        dim,
        n,
        charpoly: cp.to_strings(),
        irreducibility: v,
        poly_discriminant: disc.to_string(),
        disc_small_factors: small.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
        disc_squarefree,
        square_test,
        sn_evidence: sn_evidence(&cp, MAEDA_PRIMES),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SideVerdict {
    /// `p` does not divide the field discriminant.
    Unramified,
    /// `p` divides the field discriminant.
    Ramified,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedPrime {
    pub p: String,
    pub valuation_first: u32,
    pub valuation_second: u32,
    pub index_first: Option<IndexVerdict>,
    pub index_second: Option<IndexVerdict>,
    pub first: SideVerdict,
    pub second: SideVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "conclusion")]
pub enum IntersectionConclusion {
    /// No prime divides both field discriminants.
    Coprime,
    /// The first Hecke field is `Q`.
    FirstIsRational,
    SharedRamifiedPrime { p: String },
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub k: u32,
    pub dims: (usize, usize),
    pub disc_first: String,
    pub disc_second: String,
    pub gcd: String,
    pub shared_primes: Vec<SharedPrime>,
    /// Exact field discriminant when the first Hecke field is quadratic.
    pub quadratic_field_discriminant: Option<String>,
    pub conclusion: IntersectionConclusion,
}

impl IntersectionReport {
    pub fn is_coprime(&self) -> bool {
        matches!(self.conclusion, IntersectionConclusion::Coprime | IntersectionConclusion::FirstIsRational)
    }
}

fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut v = 0;
    let mut m = n.abs();
    while !m.is_zero() && m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// Decides whether `p` divides `disc(K)` for `K = Q[x]/(f)` from the
/// Dedekind test: `disc(f) = ind^2 disc(K)`.
fn side_verdict(f: &RatPoly, p: &BigInt, v: u32, exact_field_disc: Option<&BigInt>) -> (Option<IndexVerdict>, SideVerdict) {
    if let Some(d) = exact_field_disc {
        let r = if d.is_multiple_of(p) { SideVerdict::Ramified } else { SideVerdict::Unramified };
        return (None, r);
    }
    let Some(pu) = p.to_u64() else {
        return (None, SideVerdict::Unknown);
    };
    match dedekind_index_test(f, pu) {
        Ok(IndexVerdict::NotIndexDivisor) => (Some(IndexVerdict::NotIndexDivisor), SideVerdict::Ramified),
        // v_p(disc K) = v - 2 v_p(ind) <= v - 2
        Ok(IndexVerdict::IndexDivisor) if v <= 2 => (Some(IndexVerdict::IndexDivisor), SideVerdict::Unramified),
        Ok(IndexVerdict::IndexDivisor) if v == 3 => (Some(IndexVerdict::IndexDivisor), SideVerdict::Ramified),
        Ok(iv) => (Some(iv), SideVerdict::Unknown),
        Err(_) => (None, SideVerdict::Unknown),
    }
}

/// Trial-division bound for the gcd of the two polynomial discriminants.
pub const GCD_TRIAL_BOUND: u64 = 1_000_000;

/// Whether the Hecke fields of weights `k` and `2k` (cut out by `T_2`) have
/// coprime discriminants.
pub fn hecke_field_intersection_check(k: u32) -> Result<IntersectionReport> {
    let d1 = dim_sk(k as i64);
    let d2 = dim_sk(2 * k as i64);
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidWeight(k as i64, "both S_k and S_2k must be nonzero"));
    }
    let f2 = hecke_matrix(2, 2 * k, hecke_prec(2, 2 * k))?.charpoly();
    let disc2 = f2.discriminant()?.to_integer();
    if d1 == 1 {
        return Ok(IntersectionReport {
            k,
            dims: (d1, d2),
            disc_first: "1".into(),
            disc_second: disc2.to_string(),
            gcd: "1".into(),
            shared_primes: Vec::new(),
            quadratic_field_discriminant: None,
            conclusion: IntersectionConclusion::FirstIsRational,
        });
    }
    let f1 = hecke_matrix(2, k, hecke_prec(2, k))?.charpoly();
    for f in [&f1, &f2] {
        if !poly_irreducible_with(f, IrreducibilityConfig { primes: MAEDA_IRREDUCIBILITY_PRIMES }).is_irreducible() {
            return Err(Error::Unsupported(format!("T_2 polynomial {f} not certified irreducible")));
        }
    }
    let disc1 = f1.discriminant()?.to_integer();
    let quad = if d1 == 2 {
        let ker = squarefree_kernel(&disc1)?;
        Some(quad_field_discriminant(&ker.squarefree)?)
    } else {
        None
    };
    let g = disc1.gcd(&disc2);
    let fac = factor_trial(&g, GCD_TRIAL_BOUND);
    let mut shared = Vec::new();
    let mut conclusion = IntersectionConclusion::Coprime;
    for (p, _) in &fac.factors {
        let v1 = valuation(&disc1, p);
        let v2 = valuation(&disc2, p);
        let (i1, s1) = side_verdict(&f1, p, v1, quad.as_ref());
        let (i2, s2) = side_verdict(&f2, p, v2, None);
        if s1 == SideVerdict::Ramified && s2 == SideVerdict::Ramified {
            conclusion = IntersectionConclusion::SharedRamifiedPrime { p: p.to_string() };
        } else if s1 != SideVerdict::Unramified
            && s2 != SideVerdict::Unramified
            && conclusion == IntersectionConclusion::Coprime
        {
            conclusion = IntersectionConclusion::Unknown { reason: format!("prime {p} undecided") };
        }
        shared.push(SharedPrime {
            p: p.to_string(),
            valuation_first: v1,
            valuation_second: v2,
            index_first: i1,
            index_second: i2,
            first: s1,
            second: s2,
        });
    }
    if !fac.complete && conclusion == IntersectionConclusion::Coprime {
        conclusion = IntersectionConclusion::Unknown { reason: format!("unfactored cofactor {}", fac.cofactor) };
    }
    Ok(IntersectionReport {
        k,
        dims: (d1, d2),
        disc_first: disc1.to_string(),
        disc_second: disc2.to_string(),
        gcd: g.to_string(),
        shared_primes: shared,
        quadratic_field_discriminant: quad.map(|d| d.to_string()),
        conclusion,
    })
}

/// `b` from a report string, for callers holding exact inputs.
pub fn parse_rational(s: &str) -> Result<Rational> {
    crate::arith::rational::parse_pq(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::dirichlet::characters_mod;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn trivial() -> DirichletCharacter {
        DirichletCharacter::trivial(1).unwrap()
    }

    #[test]
    fn alpha_beta_level_one() {
        for (k, b) in [(4, rat(240, 1)), (6, rat(-504, 1)), (12, rat(65520, 691))] {
            let (_, beta) = alpha_beta(k, &trivial()).unwrap();
            assert_eq!(beta.to_rational(), Some(b));
        }
        let (alpha, _) = alpha_beta(4, &trivial()).unwrap();
        // E_8 = 1 + 480 sum sigma_7
        assert_eq!(alpha.to_rational(), Some(rat(480, 1)));
        assert!(matches!(alpha_beta(3, &trivial()), Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn bound_examples() {
        let c = bernoulli_bound_check(12, &trivial()).unwrap();
        assert!(c.holds);
        assert!((c.actual - 691.0 / 2730.0).abs() < 1e-15);
        let odd4 = primitive_characters(4).unwrap().into_iter().find(|c| !c.is_even()).unwrap();
        assert!(bernoulli_bound_check(5, &odd4).unwrap().holds);
        let odd7: Vec<_> = primitive_characters(7).unwrap().into_iter().filter(|c| !c.is_even()).collect();
        assert!(!odd7.is_empty());
        for c in &odd7 {
            assert!(bernoulli_bound_check(3, c).unwrap().holds);
        }
        let imprim = characters_mod(8).unwrap().into_iter().find(|c| !c.is_primitive()).unwrap();
        assert!(bernoulli_bound_check(4, &imprim).is_err());
    }

    #[test]
    fn envelopes_shrink() {
        let mut prev = envelopes(8);
        for k in 9..60 {
            let e = envelopes(k);
            assert!(e.0 < prev.0 && e.1 < prev.1, "k = {k}");
            prev = e;
        }
    }

    #[test]
    fn scan_b_one() {
        let r = finiteness_scan(&rat(1, 1), &rat(1, 1), 60, 12).unwrap();
        assert!(r.k_bound_certified);
        assert!(r.envelopes_monotone_from_8);
        assert!(r.k_bound >= 8 && r.k_bound < 60);
        for s in &r.surviving {
            assert!(s.reverified);
        }
        assert!(r.cells.iter().any(|c| c.excluded_by == "equation"));
        assert!(r.to_csv().lines().count() == r.cells.len() + 1);
    }

    #[test]
    fn scan_large_b_has_no_survivors() {
        let r = finiteness_scan(&rat(1, 1), &rat(1000, 1), 40, 6).unwrap();
        assert!(r.surviving.is_empty());
        assert!(r.k_bound <= 12);
    }

    #[test]
    fn level_one_k4_relation() {
        // b = alpha - 2 beta = 480 - 480 = 0 at k = 4, so no nonzero b works
        let (alpha, beta) = alpha_beta(4, &trivial()).unwrap();
        assert!(equation_holds(&rat(0, 1), &alpha, &beta));
        assert!(!equation_holds(&rat(1, 1), &alpha, &beta));
    }

    #[test]
    fn excluded_pairs_spot_check() {
        let mut pairs = Vec::new();
        for l in 1..=20u64 {
            for phi in primitive_characters(l).unwrap() {
                for k in 3..=20u32 {
                    if parity_matches(k as usize, &phi) && phi.pow(2).is_primitive() {
                        pairs.push((k, phi.clone()));
                    }
                }
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        pairs.shuffle(&mut rng);
        let b = rat(1000, 1);
        for (k, phi) in pairs.iter().take(50) {
            let (alpha, beta) = alpha_beta(*k, phi).unwrap();
            assert!(!equation_holds(&b, &alpha, &beta));
        }
    }

    #[test]
    fn maeda_small_weights() {
        let r = maeda_check(24, &[2, 3, 5]).unwrap();
        assert!(r.irreducibility.is_irreducible());
        assert_eq!(r.disc_squarefree.as_deref(), Some("144169"));
        assert_eq!(r.square_test, Some(true));
        let r = maeda_check(28, &[2, 3, 5]).unwrap();
        assert_eq!(r.disc_squarefree.as_deref(), Some("18209"));
        assert_eq!(131 * 139, 18209);
        let r = maeda_check(12, &[2]).unwrap();
        assert_eq!(r.dim, 1);
        assert!(r.irreducibility.is_irreducible());
        let r = maeda_check(60, &[2, 3, 5]).unwrap();
        assert!(r.irreducibility.is_irreducible());
        assert!(r.sn_evidence.n_cycle);
    }

    #[test]
    fn intersections() {
        let r = hecke_field_intersection_check(24).unwrap();
        assert_eq!(r.quadratic_field_discriminant.as_deref(), Some("144169"));
        assert!(r.is_coprime(), "{r:?}");
        let r = hecke_field_intersection_check(28).unwrap();
        assert_eq!(r.quadratic_field_discriminant.as_deref(), Some("18209"));
        assert!(r.is_coprime(), "{r:?}");
        let r = hecke_field_intersection_check(16).unwrap();
        assert_eq!(r.conclusion, IntersectionConclusion::FirstIsRational);
    }

    #[test]
    fn sn_evidence_quadratic() {
        let f = RatPoly::from_ints(&[-2, 0, 1]);
        let ev = sn_evidence(&f, 10);
        assert!(ev.n_cycle && ev.transposition && ev.sn_witnessed);
    }
}
