use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use proptest::prelude::*;

use modforms::forms::{delta_series, eisenstein_series, sigma_table, tau_table};
use modforms::hecke::hecke_action_level1;
use modforms::Rational;

const TAU_N: usize = 400;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tau_multiplicative(m in 1usize..20, n in 1usize..20) {
        prop_assume!(m.gcd(&n) == 1);
        let t = tau_table(TAU_N);
        prop_assert_eq!(&t[m * n], &(&t[m] * &t[n]));
    }

    #[test]
    fn tau_prime_power_recursion(p in small_prime()) {
        let p = p as usize;
        prop_assume!(p * p * p <= TAU_N);
        let t = tau_table(TAU_N);
        let p11 = BigInt::from(p).pow(11u32);
        prop_assert_eq!(&t[p * p * p], &(&t[p] * &t[p * p] - &p11 * &t[p]));
    }

    #[test]
    fn eisenstein_products_in_dim_one(pair in prop::sample::select(vec![(4u32, 4u32), (4, 6), (4, 10), (6, 8)])) {
        let (a, b) = pair;
        let prec = 25;
        let lhs = eisenstein_series(a, prec).unwrap().mul(&eisenstein_series(b, prec).unwrap());
        prop_assert_eq!(lhs, eisenstein_series(a + b, prec).unwrap());
    }

    #[test]
    fn eisenstein_is_hecke_eigenform(k in prop::sample::select(vec![4u32, 6, 8, 12, 16]), n in 1u64..8) {
        let prec = 60;
        let e = eisenstein_series(k, prec).unwrap();
        let out = (prec as u64 - 1) / n + 1;
        let te = hecke_action_level1(&e, n, k, out as usize).unwrap();
        let lambda = Rational::from(sigma_table(k - 1, n as usize + 1)[n as usize].clone());
        prop_assert_eq!(te, e.truncate(out as usize).scale(&lambda));
    }

    #[test]
    fn delta_eigenvalue_is_tau(n in 1u64..10) {
        let prec = 90;
        let d = delta_series(prec);
        let out = ((prec as u64 - 1) / n + 1) as usize;
        let td = hecke_action_level1(&d, n, 12, out).unwrap();
        let tau = d.coeff(n as usize).unwrap().clone();
        prop_assert_eq!(td, d.truncate(out).scale(&tau));
    }
}
