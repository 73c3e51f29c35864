use fatpoints_core::choose2;
use fatpoints_core::conjecture::{
    conjectured_alpha, conjectured_hilbert, conjectured_resolution, resolution_hilbert_check,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn resolution_reproduces_hilbert_function(n in 10i64..=100, m in 1i64..=12) {
        let betti = conjectured_resolution(n, m).unwrap();
        prop_assert!(betti.is_consistent(), "{:?}", betti);
        prop_assert!(betti.gens_alpha >= 1);
        prop_assert_eq!(betti.gens_alpha1 * betti.syz_alpha1, 0);
        prop_assert_eq!(
            betti.syz_alpha2,
            betti.gens_alpha + betti.gens_alpha1 - betti.syz_alpha1 - 1
        );
        prop_assert!(betti.syz_alpha2 >= 0);
        for t in betti.alpha..=betti.alpha + 5 {
            prop_assert_eq!(
                resolution_hilbert_check(&betti, t).unwrap(),
                conjectured_hilbert(n, m, t).unwrap()
            );
        }
    }

    #[test]
    fn hilbert_is_monotone_and_exact(n in 10i64..=400, m in 1i64..=30) {
        let count = n * choose2(m + 1);
        let mut prev = 0;
        for t in 0..=conjectured_alpha(n, m).unwrap() + 10 {
            let h = conjectured_hilbert(n, m, t).unwrap();
            prop_assert!(h >= prev);
            let expected = choose2(t + 2) - count;
            prop_assert!(h >= expected);
            if expected >= 0 {
                prop_assert_eq!(h, expected);
            }
            prev = h;
        }
    }
}
