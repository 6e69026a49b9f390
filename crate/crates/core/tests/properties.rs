use eigencount::closedform::{v_density, w_density};
use eigencount::exactcount::{
    brute_force_count_lambda, coprime_sum_via_mobius, fast_count_lambda, mobius_sieve, n_k_lambda,
    CoprimePairs,
};
use eigencount::{IntMatrix2, SpectrumClass};
use proptest::prelude::*;

proptest! {
    #[test]
    fn fast_matches_brute(k in 1_u32..=5, offset in 0_i64..=20) {
        let kk = i64::from(k);
        let lambda = offset % (4 * kk + 1) - 2 * kk;
        prop_assert_eq!(fast_count_lambda(k, lambda), brute_force_count_lambda(k, lambda).unwrap());
    }

    #[test]
    fn counts_are_even_in_lambda(k in 1_u32..=60, lambda in 0_i64..=120) {
        prop_assert_eq!(fast_count_lambda(k, lambda), fast_count_lambda(k, -lambda));
    }

    #[test]
    fn mobius_route_agrees(k in 1_u32..=80, offset in 0_i64..=320) {
        let lambda = offset % (4 * i64::from(k) + 1) - 2 * i64::from(k);
        let mobius = mobius_sieve(k as usize).unwrap();
        let pairs = coprime_sum_via_mobius(k, lambda, &mobius).unwrap();
        let diagonal = i128::from(n_k_lambda(k, lambda.abs(), 1, 1).unwrap());
        let direct = i128::from(CoprimePairs::new(k).quadruple_count(lambda));
        prop_assert_eq!(4 * (diagonal + 2 * pairs), direct);
    }

    #[test]
    fn integer_eigenvalues_lie_in_gershgorin_disc(
        a in -9_i64..=9, b in -9_i64..=9, c in -9_i64..=9, d in -9_i64..=9,
    ) {
        let m = IntMatrix2::new(9, [[a, b], [c, d]]).unwrap();
        let bound = m.gershgorin_bound() as f64;
        match m.to_real().classify_spectrum() {
            SpectrumClass::ComplexPair => prop_assert!(m.invariants().discriminant < 0),
            s => {
                for e in s.real_eigenvalues() {
                    prop_assert!(e.abs() <= bound + 1e-9);
                }
            }
        }
    }

    #[test]
    fn densities_even_and_nonnegative(delta in -2.5_f64..2.5) {
        prop_assert_eq!(v_density(delta), v_density(-delta));
        prop_assert_eq!(w_density(delta), w_density(-delta));
        prop_assert!(v_density(delta) >= 0.0 && w_density(delta) >= 0.0);
    }
}
