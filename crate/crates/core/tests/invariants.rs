mod common;

use common::*;
use legendre::number_theory::three_squares_all_odd;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn paf_and_psd_are_symmetric(a in pm_sequence(81)) {
        symmetric(&a)?;
    }

    #[test]
    fn psd_sums_to_l_squared(a in pm_sequence(81)) {
        parseval(&a)?;
    }

    #[test]
    fn psd_is_cosine_transform_of_paf(a in pm_sequence(61)) {
        wiener_khinchin(&a)?;
    }

    #[test]
    fn compression_preserves_psd(a in pm_sequence_mod3(99), pick in 0usize..64) {
        compression(&a, pick)?;
    }

    #[test]
    fn exact_third_matches_float(a in pm_sequence_mod3(201)) {
        exact_third(&a)?;
    }

    #[test]
    fn subset_rank_unrank(n in 1usize..60, k in 0usize..60, r in any::<u128>()) {
        subset_bijection(n, k, r)?;
    }

    #[test]
    fn selection_rank_unrank(r in any::<u128>(), plus in any::<bool>()) {
        selection_bijection(r, plus)?;
    }
}

#[test]
fn three_squares_brute_force() {
    for n in 0..=500u64 {
        let mut expected = Vec::new();
        for x in (1..=23u64).step_by(2) {
            for y in (x..=23).step_by(2) {
                for z in (y..=23).step_by(2) {
                    if x * x + y * y + z * z == n {
                        expected.push([x, y, z]);
                    }
                }
            }
        }
        assert_eq!(three_squares_all_odd(n), expected, "n = {n}");
    }
}
