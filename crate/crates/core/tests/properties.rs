//! Randomized property suites, 100 cases each.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, ..ProptestConfig::default() })]

    #[test]
    fn step_halving_keeps_braids(f in family(), step in prop::sample::select(vec![0.25, 0.125, 0.0625])) {
        step_halving(&f, step)?;
    }

    #[test]
    fn index_data_is_seed_independent(f in family(), a in any::<u64>(), b in any::<u64>()) {
        seed_independence(&f, a, b)?;
    }

    #[test]
    fn indices_are_conjugation_and_tau_invariant(g in finite_index_generators(), c in sl2_word()) {
        conjugation_invariance(&g, &c)?;
    }

    #[test]
    fn chi_is_multiplicative(
        a in roots(),
        b in roots(),
        c in -3i64..=3,
        r in 0i64..=4,
        k in prop::sample::select(vec![-2, -1, 1, 2]),
    ) {
        chi_multiplicative(&a, &b, c, r, k)?;
    }

    #[test]
    fn product_of_lassos_matches_infinity(f in family()) {
        product_law(&f)?;
    }

    #[test]
    fn permutations_act_symplectically((a, b) in permutation_pair()) {
        symplectic(&a, &b)?;
    }
}
