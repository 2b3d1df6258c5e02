//! Dirichlet characters with exact cyclotomic values, Bernoulli numbers and
//! twisted divisor sums.
//!
//! A character is stored as exponents against fixed generators of
//! `(Z/NZ)^x`; values are only materialized in `Q(zeta_m)` when needed.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::field::Field;
use crate::arith::intmath::{divisors, factor_u64, gcd_u64, lcm_u64, mod_pow};
use crate::arith::numfield::{NumberField, NumberFieldElement};
use crate::arith::rational::{big, Rational};
use crate::error::{Error, Result};
use crate::numeric::bigfloat::{self, BigComplex, RM};

/// Largest modulus accepted by [`UnitGroup::new`].
pub const MAX_MODULUS: u64 = 10_000;

/// `(Z/NZ)^x` with a generator set from the CRT decomposition.
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    /// Discrete logs of each residue, `None` for non-units.
    logs: Vec<Option<Vec<u64>>>,
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Result<Arc<Self>> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(Error::InvalidArgument(format!(
                "modulus {modulus} outside 1..={MAX_MODULUS}"
            )));
        }
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, e) in factor_u64(modulus) {
            let pe = p.pow(e);
            let rest = modulus / pe;
            let mut local: Vec<(u64, u64)> = Vec::new();
            if p == 2 {
                if e >= 2 {
                    local.push((pe - 1, 2));
                }
                if e >= 3 {
                    local.push((5, pe / 4));
                }
            } else {
                local.push((primitive_root_prime_power(p, e), pe - pe / p));
            }
            for (g, ord) in local {
                generators.push(crt_lift(g, pe, rest));
                orders.push(ord);
            }
        }
        let mut logs = vec![None; modulus as usize];
        let mut exps = vec![0u64; generators.len()];
        let total: u64 = orders.iter().product();
        for _ in 0..total {
            let mut a = 1 % modulus;
            for (g, &x) in generators.iter().zip(&exps) {
                a = a * mod_pow(*g, x, modulus) % modulus;
            }
            logs[a as usize] = Some(exps.clone());
            // odometer
            for i in 0..exps.len() {
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
            }
        }
        if modulus == 1 {
            logs[0] = Some(Vec::new());
        }
        Ok(Arc::new(UnitGroup { modulus, generators, orders, logs }))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn log(&self, a: i64) -> Option<&[u64]> {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        self.logs[r].as_deref()
    }
}

fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let phi = p - 1;
    let primes: Vec<u64> = factor_u64(phi).into_iter().map(|(q, _)| q).collect();
    let g = (2..p)
        .find(|&g| primes.iter().all(|&q| mod_pow(g, phi / q, p) != 1))
        .unwrap_or(1);
    if e == 1 {
        return if p == 2 { 1 } else { g };
    }
    // g generates mod p^e unless g^(p-1) = 1 mod p^2
    if mod_pow(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// The residue mod `pe * rest` that is `g` mod `pe` and `1` mod `rest`.
fn crt_lift(g: u64, pe: u64, rest: u64) -> u64 {
    let n = pe * rest;
    (0..rest).map(|t| g + t * pe).find(|x| x % rest == 1 % rest).unwrap_or(g) % n
}

/// `Q(zeta_m)`, with `Q` itself for `m <= 2`.
pub fn cyclotomic_field(m: u64) -> NumberField {
    if m <= 2 {
        NumberField::rationals()
    } else {
        NumberField::cyclotomic(m)
    }
}

/// Homomorphism `(Z/NZ)^x -> mu_infinity`, extended by zero.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirichletCharacter({})", self.label())
    }
}

impl DirichletCharacter {
    pub fn new(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() != group.orders.len()
            || exponents.iter().zip(&group.orders).any(|(e, o)| e >= o)
        {
            return Err(Error::InvalidArgument(format!(
                "exponents {exponents:?} do not match generator orders {:?}",
                group.orders
            )));
        }
        Ok(DirichletCharacter { group, exponents })
    }

    pub fn trivial(modulus: u64) -> Result<Self> {
        let group = UnitGroup::new(modulus)?;
        let n = group.orders.len();
        Ok(DirichletCharacter { group, exponents: vec![0; n] })
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Order `m` of the character, so values lie in `Q(zeta_m)`.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.group.orders)
            .fold(1, |acc, (&e, &o)| lcm_u64(acc, o / gcd_u64(o, e)))
    }

    /// `chi(a) = zeta_m^j` with `m = self.order()`; `None` when `a` is not a unit.
    pub fn value_exponent(&self, a: i64) -> Option<u64> {
        let m = self.order();
        let log = self.group.log(a)?;
        let mut e = 0u64;
        for ((&x, &chi_e), &o) in log.iter().zip(&self.exponents).zip(&self.group.orders) {
            e = (e + x * chi_e % o * m / o) % m;
        }
        Some(e)
    }

    /// `chi(a)` as an element of `field`, which must contain `zeta_m`.
    pub fn value_in(&self, a: i64, field: &NumberField) -> Result<NumberFieldElement> {
        match self.value_exponent(a) {
            None => Ok(field.zero()),
            Some(e) => field.one().root_of_unity_like(self.order(), e),
        }
    }

    /// `chi(a)` in the character's own field `Q(zeta_m)`.
    pub fn value(&self, a: i64) -> NumberFieldElement {
        self.value_in(a, &cyclotomic_field(self.order())).expect("field contains its own roots")
    }

    /// `chi(-1)`.
    pub fn parity(&self) -> i8 {
        match self.value_exponent(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    /// Smallest `d | N` such that `chi` is trivial on units `= 1 mod d`.
    pub fn conductor(&self) -> u64 {
        let n = self.group.modulus;
        for d in divisors(n) {
            let trivial_on_kernel = (0..n / d).all(|t| {
                let a = (1 + t * d) % n;
                match self.value_exponent(a as i64) {
                    None => true,
                    Some(e) => e == 0,
                }
            });
            if trivial_on_kernel {
                return d;
            }
        }
        n
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.group.modulus
    }

    /// Pointwise product of two characters of the same modulus.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.modulus() != rhs.modulus() {
            return Err(Error::InvalidArgument("characters of different moduli".into()));
        }
        let exponents = self
            .exponents
            .iter()
            .zip(&rhs.exponents)
            .zip(&self.group.orders)
            .map(|((a, b), o)| (a + b) % o)
            .collect();
        Ok(DirichletCharacter { group: self.group.clone(), exponents })
    }

    pub fn pow(&self, e: u64) -> Self {
        let exponents =
            self.exponents.iter().zip(&self.group.orders).map(|(a, o)| a * (e % o) % o).collect();
        DirichletCharacter { group: self.group.clone(), exponents }
    }

    /// The character mod `m` (a multiple of `N`) given by `a -> chi(a mod N)`.
    pub fn induce(&self, m: u64) -> Result<Self> {
        if m % self.modulus() != 0 {
            return Err(Error::InvalidArgument(format!(
                "{m} is not a multiple of {}",
                self.modulus()
            )));
        }
        let group = UnitGroup::new(m)?;
        let order = self.order();
        let exponents = group
            .generators
            .iter()
            .zip(&group.orders)
            .map(|(&g, &o)| {
                let e = self.value_exponent(g as i64).expect("unit maps to unit");
                e * o / order % o
            })
            .collect();
        DirichletCharacter::new(group, exponents)
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Result<Self> {
        let c = self.conductor();
        characters_mod(c)?
            .into_iter()
            .find(|psi| {
                (1..self.modulus() as i64).all(|a| match self.value_exponent(a) {
                    None => true,
                    Some(e) => {
                        let mine = (e, self.order());
                        let theirs = (psi.value_exponent(a).unwrap_or(0), psi.order());
                        // compare as fractions of a full turn
                        mine.0 * theirs.1 == theirs.0 * mine.1
                    }
                })
            })
            .ok_or_else(|| Error::InvalidArgument("no primitive character found".into()))
    }

    /// Stable identifier `N.[e_1,...]`.
    pub fn label(&self) -> String {
        let e: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        format!("{}.[{}]", self.modulus(), e.join(","))
    }

    /// Inverse of [`label`](Self::label); also accepts `N.e1.e2` and a bare
    /// `N` for the trivial character.
    pub fn parse_label(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad character label '{s}'"));
        let (n, rest) = match s.split_once('.') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let Some(rest) = rest else {
            return Self::trivial(n);
        };
        let body = rest.trim().trim_start_matches('[').trim_end_matches(']');
        let exps = if body.is_empty() {
            Vec::new()
        } else {
            body.split([',', '.']).map(|e| e.trim().parse::<u64>().map_err(|_| bad())).collect::<Result<_>>()?
        };
        Self::new(UnitGroup::new(n)?, exps)
    }

    pub fn to_json(&self) -> CharacterJson {
        let m = self.order();
        CharacterJson {
            modulus: self.modulus(),
            generators: self.group.generators.clone(),
            value_order: m,
            generator_images: self
                .exponents
                .iter()
                .zip(&self.group.orders)
                .map(|(e, o)| e * m / o)
                .collect(),
            conductor: self.conductor(),
            parity: self.parity(),
        }
    }
}

/// Wire form: images of the generators as exponents of `zeta_{value_order}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharacterJson {
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub value_order: u64,
    pub generator_images: Vec<u64>,
    pub conductor: u64,
    pub parity: i8,
}

impl CharacterJson {
    pub fn to_character(&self) -> Result<DirichletCharacter> {
        let group = UnitGroup::new(self.modulus)?;
        if group.generators != self.generators || self.generator_images.len() != group.orders.len()
        {
            return Err(Error::Parse("generator list does not match".into()));
        }
        let mut exponents = Vec::new();
        for (&img, &o) in self.generator_images.iter().zip(&group.orders) {
            let num = img * o;
            if self.value_order == 0 || num % self.value_order != 0 {
                return Err(Error::Parse(format!("image zeta_{}^{img} has wrong order", self.value_order)));
            }
            exponents.push(num / self.value_order % o);
        }
        DirichletCharacter::new(group, exponents)
    }
}

/// All `phi(N)` characters mod `N` in odometer order (trivial first).
pub fn characters_mod(n: u64) -> Result<Vec<DirichletCharacter>> {
    let group = UnitGroup::new(n)?;
    let orders = group.orders.clone();
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut exps = vec![0u64; orders.len()];
    for _ in 0..total {
        out.push(DirichletCharacter { group: group.clone(), exponents: exps.clone() });
        for i in 0..exps.len() {
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
    Ok(out)
}

/// Primitive characters of conductor exactly `l`.
pub fn primitive_characters(l: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(characters_mod(l)?.into_iter().filter(|c| c.is_primitive()).collect())
}

/// `B_0 .. B_n` by `sum_{j<=k} C(k+1, j) B_j = 0`, with `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for k in 1..=n {
        if k > 1 && k % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        let mut s = Rational::zero();
        let mut binom = BigInt::one();
        // binom runs over C(k+1, j)
        for (j, bj) in b.iter().enumerate() {
            s += bj * big(binom.clone());
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / big(BigInt::from(k + 1)));
    }
    b
}

pub fn bernoulli(k: usize) -> Rational {
    bernoulli_table(k).pop().expect("nonempty table")
}

/// Coefficients of the Bernoulli polynomial `B_k(x)`, ascending.
pub fn bernoulli_polynomial(k: usize) -> Vec<Rational> {
    let b = bernoulli_table(k);
    let mut coeffs = vec![Rational::zero(); k + 1];
    let mut binom = BigInt::one();
    for (j, bj) in b.iter().enumerate() {
        // term C(k, j) B_j x^{k-j}
        coeffs[k - j] = bj * big(binom.clone());
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    coeffs
}

/// `B_{k,chi} = N^{k-1} sum_{a=0}^{N-1} chi(a) B_k(a/N)`, in `Q(zeta_m)`.
pub fn gen_bernoulli(k: usize, chi: &DirichletCharacter) -> NumberFieldElement {
    let n = chi.modulus();
    let poly = bernoulli_polynomial(k);
    let m = chi.order();
    let mut buckets: BTreeMap<u64, Rational> = BTreeMap::new();
    let nn = big(BigInt::from(n));
    for a in 0..n {
        let Some(e) = chi.value_exponent(a as i64) else { continue };
        let x = Rational::new(BigInt::from(a), BigInt::from(n));
        let mut val = Rational::zero();
        for c in poly.iter().rev() {
            val = val * &x + c;
        }
        *buckets.entry(e).or_insert_with(Rational::zero) += val;
    }
    let scale = num_traits::pow(nn, k.saturating_sub(1));
    let field = cyclotomic_field(m);
    let mut acc = field.zero();
    for (e, c) in buckets {
        if Zero::is_zero(&c) {
            continue;
        }
        let z = field.one().root_of_unity_like(m, e).expect("own field");
        acc = acc.plus(&z.scale(&(c * &scale)));
    }
    acc
}

/// `sum_{m | n} psi(n/m) phi(m) m^{k-1}` in `Q(zeta_lcm)`.
pub fn sigma_gen(
    kminus1: u32,
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    n: u64,
) -> Result<NumberFieldElement> {
    if n == 0 {
        return Err(Error::InvalidArgument("sigma_gen needs n >= 1".into()));
    }
    let field = cyclotomic_field(lcm_u64(psi.order(), phi.order()));
    sigma_gen_in(kminus1, psi, phi, n, &field)
}

/// [`sigma_gen`] with values in a caller-chosen field containing both
/// characters' values.
pub fn sigma_gen_in(
    kminus1: u32,
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    n: u64,
    field: &NumberField,
) -> Result<NumberFieldElement> {
    let mut acc = field.zero();
    for m in divisors(n) {
        let a = psi.value_in((n / m) as i64, field)?;
        let b = phi.value_in(m as i64, field)?;
        if Field::is_zero(&a) || Field::is_zero(&b) {
            continue;
        }
        let w = big(BigInt::from(m).pow(kminus1));
        acc = acc.plus(&a.times(&b).scale(&w));
    }
    Ok(acc)
}

/// `|x|` under `zeta_m -> exp(2 pi i / m)`, evaluated with enough bits that
/// cancellation between coordinates cannot reach the returned double.
pub fn abs_embed(x: &NumberFieldElement) -> Result<f64> {
    let field = x.parent();
    let m = field
        .cyclotomic_order()
        .ok_or_else(|| Error::Unsupported("abs_embed needs a cyclotomic field".into()))?;
    if let Some(r) = x.to_rational() {
        return Ok(crate::arith::rational::to_f64(&r.abs()));
    }
    let bits = x
        .coords()
        .iter()
        .map(|c| c.numer().bits().max(c.denom().bits()))
        .max()
        .unwrap_or(0) as usize;
    let p = 192 + 2 * bits;
    let mut cc = bigfloat::consts();
    let two_pi = cc.pi(p, RM).mul(&bigfloat::from_i64(2, p), p, RM);
    let angle = two_pi.div(&bigfloat::from_i64(m as i64, p), p, RM);
    let zeta = BigComplex::polar(&bigfloat::from_i64(1, p), &angle, p, &mut cc);
    let mut acc = BigComplex::zero(p);
    for c in x.coords().iter().rev() {
        acc = acc.mul(&zeta, p).add(&BigComplex::real(bigfloat::from_rational(c, p), p), p);
    }
    Ok(bigfloat::to_f64(&acc.abs(p)))
}

/// Whether `k` has the parity of `chi`, i.e. `chi(-1) = (-1)^k`.
pub fn parity_matches(k: usize, chi: &DirichletCharacter) -> bool {
    (chi.parity() == 1) == (k % 2 == 0)
}

/// `L(1 - k, chi) = -B_{k,chi} / k`.
pub fn l_value_at_one_minus_k(k: usize, chi: &DirichletCharacter) -> NumberFieldElement {
    gen_bernoulli(k, chi).scale(&-Rational::new(BigInt::one(), BigInt::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat, to_pq};
    use crate::qseries::QSeries;

    fn odd_mod4() -> DirichletCharacter {
        characters_mod(4).unwrap().into_iter().find(|c| !c.is_trivial()).unwrap()
    }

    #[test]
    fn label_round_trip() {
        for n in [1u64, 4, 12, 15] {
            for c in characters_mod(n).unwrap() {
                assert_eq!(DirichletCharacter::parse_label(&c.label()).unwrap(), c);
            }
        }
        let c = DirichletCharacter::parse_label("8.1.0").unwrap();
        assert_eq!(c.label(), "8.[1,0]");
        assert!(DirichletCharacter::parse_label("x").is_err());
        assert!(DirichletCharacter::parse_label("4.[2]").is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(characters_mod(8).unwrap().len(), 4);
        let one = characters_mod(1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].is_trivial());
        let four = characters_mod(4).unwrap();
        assert_eq!(four.len(), 2);
        assert!(four[0].is_trivial());
        let chi = odd_mod4();
        assert_eq!(chi.value(3), NumberField::rationals().from_rational(int(-1)));
        assert_eq!(chi.parity(), -1);
        for n in 1..=60u64 {
            assert_eq!(characters_mod(n).unwrap().len() as u64, crate::arith::intmath::euler_phi(n));
        }
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(DirichletCharacter::trivial(6).unwrap().conductor(), 1);
        let chi = odd_mod4();
        assert_eq!(chi.conductor(), 4);
        assert!(chi.is_primitive());
        let lifted = chi.induce(8).unwrap();
        assert_eq!(lifted.conductor(), 4);
        assert!(!lifted.is_primitive());
        assert_eq!(lifted.primitive().unwrap(), chi);
        // primitive counts: number of primitive characters mod p is p - 2
        assert_eq!(primitive_characters(7).unwrap().len(), 5);
        assert_eq!(primitive_characters(2).unwrap().len(), 0);
    }

    #[test]
    fn multiplicativity_and_orthogonality() {
        for n in 1..=24u64 {
            let chars = characters_mod(n).unwrap();
            for chi in &chars {
                let m = chi.order();
                for a in 0..n as i64 {
                    for b in 0..n as i64 {
                        match (chi.value_exponent(a), chi.value_exponent(b)) {
                            (Some(x), Some(y)) => {
                                assert_eq!(chi.value_exponent(a * b), Some((x + y) % m))
                            }
                            _ => assert_eq!(chi.value_exponent(a * b), None),
                        }
                    }
                }
                let s = (0..n as i64).fold(cyclotomic_field(m).zero(), |acc, a| acc.plus(&chi.value(a)));
                let expect = if chi.is_trivial() {
                    crate::arith::intmath::euler_phi(n) as i64
                } else {
                    0
                };
                assert_eq!(s.to_rational(), Some(int(expect)), "mod {n} {}", chi.label());
            }
        }
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(to_pq(&bernoulli(20)), "-174611/330");
    }

    #[test]
    fn gen_bernoulli_examples() {
        let one = DirichletCharacter::trivial(1).unwrap();
        for k in 2..=20 {
            assert_eq!(gen_bernoulli(k, &one).to_rational(), Some(bernoulli(k)), "k = {k}");
        }
        assert_eq!(gen_bernoulli(1, &odd_mod4()).to_rational(), Some(rat(-1, 2)));
    }

    /// k! times the t^k coefficient of sum_a chi(a) t e^{at} / (e^{Nt} - 1).
    fn generating_function_oracle(k: usize, chi: &DirichletCharacter) -> NumberFieldElement {
        let n = chi.modulus() as i64;
        let field = cyclotomic_field(chi.order());
        let prec = k + 2;
        let fact = |j: usize| (1..=j as i64).fold(Rational::one(), |acc, i| acc * int(i));
        // (e^{Nt} - 1) / t = sum_j N^{j+1} t^j / (j+1)!
        let denom = QSeries::from_fn(prec, |j| {
            field.from_rational(num_traits::pow(int(n), j + 1) / fact(j + 1))
        });
        let inv = denom.inv().unwrap();
        let mut numer = QSeries::zero_like(&field.one(), prec);
        for a in 0..n {
            let c = chi.value(a);
            let c = field.from_poly(&c.as_poly());
            let exp = QSeries::from_fn(prec, |j| field.from_rational(num_traits::pow(int(a), j) / fact(j)));
            numer = numer.add(&exp.scale(&c));
        }
        numer.mul(&inv).coeffs()[k].scale(&fact(k))
    }

    #[test]
    fn generating_function_equivalence_and_parity() {
        for n in 1..=12u64 {
            for chi in characters_mod(n).unwrap() {
                for k in 1..=8 {
                    let closed = gen_bernoulli(k, &chi);
                    let oracle = generating_function_oracle(k, &chi);
                    assert_eq!(closed, oracle, "k={k} chi={}", chi.label());
                    if !parity_matches(k, &chi) && !(n == 1 && k == 1) {
                        assert!(Field::is_zero(&closed), "parity k={k} chi={}", chi.label());
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_gen_examples() {
        let one = DirichletCharacter::trivial(1).unwrap();
        assert_eq!(sigma_gen(11, &one, &one, 2).unwrap().to_rational(), Some(int(2049)));
        assert_eq!(sigma_gen(3, &one, &one, 2).unwrap().to_rational(), Some(int(9)));
        assert_eq!(sigma_gen(1, &one, &odd_mod4(), 5).unwrap().to_rational(), Some(int(6)));
    }

    #[test]
    fn abs_embed_examples() {
        let q = NumberField::rationals().from_rational(rat(-691, 2730));
        assert!((abs_embed(&q).unwrap() - 691.0 / 2730.0).abs() < 1e-16);
        let k4 = NumberField::cyclotomic(4);
        assert!((abs_embed(&k4.generator()).unwrap() - 1.0).abs() < 1e-15);
        let s = k4.one().plus(&k4.generator());
        assert!((abs_embed(&s).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        // heavy cancellation: (1 + 10^150 (zeta_3 + zeta_3^2 + 1)) = 1
        let k3 = NumberField::cyclotomic(3);
        let big10 = big(BigInt::from(10).pow(150));
        let z = k3.generator();
        let zero = z.plus(&z.times(&z)).plus(&k3.one());
        let e = k3.one().plus(&zero.scale(&big10));
        assert!((abs_embed(&e).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        for n in [1u64, 4, 7, 8, 15, 16] {
            for chi in characters_mod(n).unwrap() {
                let j = chi.to_json();
                let text = serde_json::to_string(&j).unwrap();
                let back: CharacterJson = serde_json::from_str(&text).unwrap();
                assert_eq!(back.to_character().unwrap(), chi);
            }
        }
    }
}
