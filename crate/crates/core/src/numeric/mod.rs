//! Floating-point side of the library: extended-precision helpers, a
//! simultaneous polynomial root finder and zeta enclosures.

pub mod bigfloat;
pub mod roots;

/// Two-sided enclosure `lo <= zeta(s) <= hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaInterval {
    pub lo: f64,
    pub hi: f64,
}

/// Number of explicit terms used by [`zeta`].
pub const ZETA_TERMS: u64 = 100_000;

/// `zeta(s)` for integer `s >= 2` by direct summation of `ZETA_TERMS` terms.
///
/// The tail `sum_{n > N} n^-s` lies between the integrals from `N + 1` and
/// from `N`, which gives an enclosure of width about `N^-s`.
pub fn zeta(s: u32) -> ZetaInterval {
    assert!(s >= 2, "zeta needs s >= 2");
    let n = ZETA_TERMS;
    // sum small terms first
    let mut sum = 0.0f64;
    for m in (1..=n).rev() {
        sum += (m as f64).powi(-(s as i32));
    }
    let sm1 = (s - 1) as f64;
    let tail_lo = ((n + 1) as f64).powf(-sm1) / sm1;
    let tail_hi = (n as f64).powf(-sm1) / sm1;
    // one ulp-scale slack for the summation itself
    let slack = 4.0 * f64::EPSILON * sum;
    ZetaInterval { lo: sum + tail_lo - slack, hi: sum + tail_hi + slack }
}

/// `ln(n!)` summed exactly term by term.
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|m| (m as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_encloses_known_values() {
        let pi = std::f64::consts::PI;
        let z2 = zeta(2);
        // width is ~1e-5 at s = 2 with 1e5 terms
        assert!(z2.lo <= pi * pi / 6.0 && pi * pi / 6.0 <= z2.hi);
        let z4 = zeta(4);
        assert!(z4.lo <= pi.powi(4) / 90.0 + 1e-16 && pi.powi(4) / 90.0 - 1e-16 <= z4.hi);
        assert!(z4.hi - z4.lo < 1e-14);
        let z3 = zeta(3);
        let apery = 1.202_056_903_159_594_2;
        assert!(z3.lo <= apery + 1e-15 && apery - 1e-15 <= z3.hi);
        assert!(z3.hi - z3.lo < 1e-14);
    }

    #[test]
    fn ln_factorial_small() {
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-12);
        assert_eq!(ln_factorial(0), 0.0);
    }
}
