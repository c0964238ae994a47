//! Property tests for the structural invariants.

use proptest::prelude::*;

use ukd_core::determinacy::{
    ir_index, is_uniquely_determined, is_uniquely_determined_via_inverse, window_path, WindowPath,
};
use ukd_core::overlap::realize_path;
use ukd_core::{Limits, Permutation};

fn arb_permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_n)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<u32>>()).prop_shuffle())
        .prop_map(|values| Permutation::new(values).unwrap())
}

proptest! {
    #[test]
    fn display_parse_round_trip(p in arb_permutation(12)) {
        let rendered = p.to_string();
        let reparsed: Permutation = rendered.parse().unwrap();
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn inverse_is_an_involution(p in arb_permutation(10)) {
        prop_assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn complement_is_an_involution(p in arb_permutation(10)) {
        prop_assert_eq!(p.complement().complement(), p);
    }

    #[test]
    fn positions_of_values_are_entries_of_the_inverse(p in arb_permutation(10)) {
        let inv = p.inverse();
        let n = p.len() as u32;
        for x in 1..=n {
            for y in 1..=n {
                let via_positions = p.distance(x, y).unwrap();
                let via_inverse = inv.values()[x as usize - 1]
                    .abs_diff(inv.values()[y as usize - 1]) as usize;
                prop_assert_eq!(via_positions, via_inverse);
            }
        }
    }

    #[test]
    fn criteria_agree(p in arb_permutation(9), k in 1usize..=9) {
        prop_assert_eq!(
            is_uniquely_determined(&p, k),
            is_uniquely_determined_via_inverse(&p, k)
        );
    }

    #[test]
    fn determinability_is_monotone_in_k(p in arb_permutation(9), k in 1usize..=8) {
        if is_uniquely_determined(&p, k) {
            prop_assert!(is_uniquely_determined(&p, k + 1));
        }
    }

    #[test]
    fn the_language_is_factorial(p in arb_permutation(8), k in 2usize..=4) {
        // Factors of a uniquely k-determined permutation stay determined.
        if is_uniquely_determined(&p, k) {
            let n = p.len();
            for i in 1..=n {
                for j in i..=n {
                    let factor = p.factor_pattern(i, j).unwrap();
                    prop_assert!(is_uniquely_determined(&factor, k));
                }
            }
        }
    }

    #[test]
    fn ir_index_is_the_threshold(p in arb_permutation(9)) {
        let ir = ir_index(&p);
        prop_assert!(ir <= p.len().max(1));
        prop_assert!(is_uniquely_determined(&p, ir));
        if ir > 1 {
            prop_assert!(!is_uniquely_determined(&p, ir - 1));
        }
    }

    #[test]
    fn window_paths_satisfy_the_overlap_invariant(p in arb_permutation(9), k in 1usize..=9) {
        prop_assume!(k <= p.len());
        let path = window_path(&p, k).unwrap();
        prop_assert_eq!(path.nodes().len(), p.len() - k + 1);
        // Re-validating through the constructor re-checks every overlap.
        prop_assert!(WindowPath::new(k, path.nodes().to_vec()).is_ok());
    }

    #[test]
    fn realizations_contain_their_source(p in arb_permutation(7), k in 2usize..=7) {
        prop_assume!(k <= p.len());
        let limits = Limits::default();
        let path = window_path(&p, k).unwrap();
        let realization = realize_path(&path, &limits).unwrap();
        prop_assert!(realization.permutations().contains(&p));
        // Uniquely determined inputs are alone in their class.
        if is_uniquely_determined(&p, k) {
            prop_assert_eq!(realization.permutations().len(), 1);
        }
    }
}
