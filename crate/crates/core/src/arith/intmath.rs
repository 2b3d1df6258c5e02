//! Integer utilities: primality, factoring, squarefree kernels, divisors.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;
pub const DEFAULT_RHO_ITERATIONS: u64 = 200_000;

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with fixed bases; exact below 3.3e24, probabilistic above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigInt::one();
    let n1 = n - &one;
    let mut d = n1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigInt::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization, possibly partial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Prime (or probable prime) factors with multiplicities, ascending.
    pub factors: Vec<(BigInt, u32)>,
    /// Unfactored part (1 when `complete`).
    pub cofactor: BigInt,
    pub complete: bool,
}

fn pollard_brent(n: &BigInt, seed: u64, max_iter: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let c = BigInt::from(seed);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2 + seed);
    let m = 128u64;
    let mut g = BigInt::one();
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut iters = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
            iters += m.min(r);
        }
        r *= 2;
        if iters > max_iter {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn push_factor(out: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32) {
    if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
        slot.1 += e;
    } else {
        out.push((p, e));
    }
}

/// Trial division up to `trial_bound`, then Brent-Pollard rho with an
/// iteration cap on what remains. Unfinished parts are reported in
/// `cofactor` with `complete == false`.
pub fn factor_bigint(n: &BigInt, trial_bound: u64, rho_iterations: u64) -> Factorization {
    let mut rest = n.abs();
    let mut factors = Vec::new();
    if rest.is_zero() {
        return Factorization { factors, cofactor: rest, complete: false };
    }
    let mut p = 2u64;
    while p <= trial_bound {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut pending = vec![rest];
    let mut cofactor = BigInt::one();
    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        let trial_sq = BigInt::from(trial_bound) * BigInt::from(trial_bound);
        if m <= trial_sq || is_probable_prime(&m) {
            push_factor(&mut factors, m, 1);
            continue;
        }
        let split = (1..=4).find_map(|seed| pollard_brent(&m, seed, rho_iterations));
        match split {
            Some(d) => {
                let other = &m / &d;
                pending.push(d);
                pending.push(other);
            }
            None => cofactor *= m,
        }
    }
    factors.sort();
    // merge duplicates produced by splitting
    let mut merged: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in factors {
        push_factor(&mut merged, p, e);
    }
    let complete = cofactor.is_one();
    Factorization { factors: merged, cofactor, complete }
}

/// Trial-division-only factorization with a cap; anything left is the
/// cofactor.
pub fn factor_trial(n: &BigInt, bound: u64) -> Factorization {
    let mut rest = n.abs();
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p <= bound && !rest.is_one() && !rest.is_zero() {
        let pb = BigInt::from(p);
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            factors.push((pb.clone(), e));
        }
        if &pb * &pb > rest && !rest.is_one() {
            factors.push((rest.clone(), 1));
            rest = BigInt::one();
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let complete = rest.is_one();
    Factorization { factors, cofactor: rest, complete }
}

/// `n = s * f^2` with `s` squarefree (sign carried by `s`) and `f > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeKernel {
    pub squarefree: BigInt,
    pub square_root_part: BigInt,
    /// False when the factorization was partial; `squarefree` may then
    /// still contain a square factor hidden in the unfactored cofactor.
    pub complete: bool,
}

pub fn squarefree_kernel(n: &BigInt) -> Result<SquarefreeKernel> {
    squarefree_kernel_with(n, DEFAULT_TRIAL_BOUND, DEFAULT_RHO_ITERATIONS)
}

pub fn squarefree_kernel_with(
    n: &BigInt,
    trial_bound: u64,
    rho_iterations: u64,
) -> Result<SquarefreeKernel> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("squarefree kernel of 0".into()));
    }
    let fac = factor_bigint(n, trial_bound, rho_iterations);
    let mut s = BigInt::from(n.signum());
    let mut f = BigInt::one();
    for (p, e) in &fac.factors {
        f *= num_traits::pow(p.clone(), (*e / 2) as usize);
        if e % 2 == 1 {
            s *= p;
        }
    }
    // A perfect-square cofactor can still be peeled off exactly.
    let c = &fac.cofactor;
    let r = c.sqrt();
    let complete = if fac.complete {
        true
    } else if &(&r * &r) == c {
        f *= r;
        false
    } else {
        s *= c;
        false
    };
    Ok(SquarefreeKernel { squarefree: s, square_root_part: f, complete })
}

pub fn is_squarefree(n: &BigInt) -> Option<bool> {
    let fac = factor_bigint(n, DEFAULT_TRIAL_BOUND, DEFAULT_RHO_ITERATIONS);
    if fac.factors.iter().any(|(_, e)| *e > 1) {
        return Some(false);
    }
    fac.complete.then_some(true)
}

/// Discriminant of `Q(sqrt(d))` for squarefree `d != 0, 1`.
pub fn quad_field_discriminant(d: &BigInt) -> Result<BigInt> {
    if d.is_zero() || d.is_one() {
        return Err(Error::InvalidArgument(format!("{d} does not define a quadratic field")));
    }
    match is_squarefree(d) {
        Some(true) => {}
        Some(false) => {
            return Err(Error::InvalidArgument(format!("{d} is not squarefree")));
        }
        None => {
            return Err(Error::Unsupported(format!("could not certify {d} squarefree")));
        }
    }
    let r = d.mod_floor(&BigInt::from(4));
    Ok(if r.is_one() { d.clone() } else { d * 4 })
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn squarefree_examples() {
        let k = squarefree_kernel(&b(83041344)).unwrap();
        assert_eq!((k.squarefree.clone(), k.square_root_part.clone()), (b(144169), b(24)));
        assert!(k.complete);
        let k = squarefree_kernel(&b(4)).unwrap();
        assert_eq!((k.squarefree, k.square_root_part), (b(1), b(2)));
        let k = squarefree_kernel(&b(5)).unwrap();
        assert_eq!((k.squarefree, k.square_root_part), (b(5), b(1)));
        let k = squarefree_kernel(&b(-12)).unwrap();
        assert_eq!((k.squarefree, k.square_root_part), (b(-3), b(2)));
    }

    #[test]
    fn quad_discriminants() {
        assert_eq!(quad_field_discriminant(&b(144169)).unwrap(), b(144169));
        assert_eq!(quad_field_discriminant(&b(131 * 139)).unwrap(), b(18209));
        assert_eq!(quad_field_discriminant(&b(2)).unwrap(), b(8));
        assert_eq!(quad_field_discriminant(&b(-1)).unwrap(), b(-4));
        assert!(quad_field_discriminant(&b(12)).is_err());
        assert!(quad_field_discriminant(&b(1)).is_err());
    }

    #[test]
    fn rho_splits_semiprime_beyond_trial_bound() {
        let p = b(1_000_003);
        let q = b(1_000_033);
        let n = &p * &q * &q;
        let f = factor_bigint(&n, 1000, DEFAULT_RHO_ITERATIONS);
        assert!(f.complete);
        assert_eq!(f.factors, vec![(p, 1), (q, 2)]);
        let k = squarefree_kernel_with(&n, 1000, DEFAULT_RHO_ITERATIONS).unwrap();
        assert_eq!(k.squarefree, b(1_000_003));
    }

    #[test]
    fn partial_factorization_is_flagged() {
        let p = BigInt::parse_bytes(b"1000000000000000003", 10).unwrap();
        let q = BigInt::parse_bytes(b"1000000000000000009", 10).unwrap();
        let n = &p * &q;
        let f = factor_bigint(&n, 100, 10);
        assert!(!f.complete);
        assert_eq!(f.cofactor, n);
    }

    #[test]
    fn primes_and_phi() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime_u64(144169));
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mod_inv(3, 7), Some(5));
    }
}
