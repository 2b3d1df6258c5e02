//! Polynomials over prime fields `F_p` (p < 2^32), enough for degree
//! patterns, radicals and Dedekind's criterion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::intmath::mod_inv;
use super::poly::RatPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        assert!(p >= 2 && p < (1 << 32), "prime out of range");
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// Reduction of an integer polynomial.
    pub fn from_bigints(p: u64, coeffs: &[BigInt]) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
                .collect(),
        )
    }

    /// Reduction of a rational polynomial; every denominator must be a unit
    /// mod `p`.
    pub fn from_ratpoly(p: u64, f: &RatPoly) -> Result<Self> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(f.coeffs().len());
        for c in f.coeffs() {
            let d = c.denom().mod_floor(&pb).to_u64().expect("reduced");
            let inv = mod_inv(d, p).ok_or(Error::BadPrime(p, "divides a denominator"))?;
            let n = c.numer().mod_floor(&pb).to_u64().expect("reduced");
            out.push(mulmod(n, inv, p));
        }
        Ok(Self::new(p, out))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inv(self.lead(), self.p).expect("field");
        Self::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.c(i) + rhs.c(i)) % self.p).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.c(i) + self.p - rhs.c(i)) % self.p).collect())
    }

    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = mod_inv(d.lead(), self.p).expect("field");
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(self.p), Self::zero(self.p));
        };
        if sd < dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = mulmod(rem[i + dd], inv, self.p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + self.p - mulmod(c, dc, self.p)) % self.p;
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (Self::new(self.p, q), Self::new(self.p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// For `f` with `f' = 0`, the polynomial `g` with `g^p = f`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one(self.p);
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.pth_root().radical();
        }
        let u = self.gcd(&d);
        let w = self.div_rem(&u).0.monic();
        let r = u.radical();
        // lcm(w, r)
        let g = w.gcd(&r);
        w.mul(&r).div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, by
    /// distinct-degree factorization. Sorted descending.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut d = 1;
        while let Some(deg) = f.degree() {
            if deg < 2 * d {
                if deg > 0 {
                    out.push(deg);
                }
                break;
            }
            h = h.pow_mod(self.p, &f);
            let g = h.sub(&x).gcd(&f);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                out.extend(std::iter::repeat(d).take(gd / d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            d += 1;
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Lift to integers in `[0, p)`.
    pub fn lift(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Degree pattern of `f mod q`: the multiset of irreducible-factor degrees.
pub fn poly_factor_degrees_mod_p(f: &RatPoly, q: u64) -> Result<Vec<usize>> {
    if !super::intmath::is_prime_u64(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let lead = f.leading();
    if lead.numer().mod_floor(&BigInt::from(q)) == BigInt::from(0u8) {
        return Err(Error::BadPrime(q, "divides the leading coefficient"));
    }
    let fp = FpPoly::from_ratpoly(q, f)?;
    if !fp.is_squarefree() {
        return Err(Error::BadPrime(q, "reduction is not squarefree"));
    }
    Ok(fp.factor_degrees())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_patterns() {
        let f = RatPoly::from_ints(&[1, 0, 1]);
        assert_eq!(poly_factor_degrees_mod_p(&f, 5).unwrap(), vec![1, 1]);
        assert_eq!(poly_factor_degrees_mod_p(&f, 3).unwrap(), vec![2]);
        let t24 = RatPoly::from_ints(&[-20468736, -1080, 1]);
        assert_eq!(poly_factor_degrees_mod_p(&t24, 7).unwrap(), vec![1, 1]);
        let lead2 = RatPoly::from_ints(&[1, 0, 2]);
        assert!(poly_factor_degrees_mod_p(&lead2, 2).is_err());
        assert!(poly_factor_degrees_mod_p(&f, 2).is_err());
    }

    #[test]
    fn brute_force_roots_mod_7() {
        // oracle: count roots of x^2 - 1080x - 20468736 in F_7 directly
        let roots = (0i64..7)
            .filter(|&x| (x * x - 1080 * x - 20468736).rem_euclid(7) == 0)
            .count();
        assert_eq!(roots, 2);
    }

    #[test]
    fn patterns_match_brute_force_counts() {
        // number of linear factors equals number of roots for squarefree f
        let f = RatPoly::from_ints(&[-2, 0, 0, 1]);
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
            let pat = poly_factor_degrees_mod_p(&f, p).unwrap();
            let roots = (0..p as i64)
                .filter(|&x| (x * x * x - 2).rem_euclid(p as i64) == 0)
                .count();
            assert_eq!(pat.iter().filter(|&&d| d == 1).count(), roots, "p={p}");
            assert_eq!(pat.iter().sum::<usize>(), 3);
        }
    }

    #[test]
    fn radical_handles_pth_powers() {
        let p = 2;
        let x = FpPoly::x(p);
        let x1 = x.add(&FpPoly::one(p));
        // x^2 (x+1)^4
        let f = x.mul(&x).mul(&x1.mul(&x1).mul(&x1.mul(&x1)));
        assert_eq!(f.radical(), x.mul(&x1));
    }
}
