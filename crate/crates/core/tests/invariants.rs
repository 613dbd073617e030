//! Property tests for the structural invariants.

use proptest::prelude::*;

use domperm::board::{board, board_to_permutation};
use domperm::gen::{random_perm321, random_stouter, rng_from_seed};
use domperm::pattern::{contains, contains_pattern};
use domperm::perm::Permutation;
use domperm::points::{plot, points_to_permutation, shear};
use domperm::stouter::{
    decompose_regions, interval_allocate, is_dyadic, pow2ceil, skew_sum, validate, verify_facts,
};

fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

proptest! {
    #[test]
    fn inverse_involutive(p in arb_perm(40)) {
        prop_assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn board_roundtrips(p in arb_perm(40)) {
        prop_assert_eq!(board_to_permutation(&board(&p)).unwrap(), p);
    }

    #[test]
    fn plot_roundtrips(p in arb_perm(40)) {
        prop_assert_eq!(points_to_permutation(&plot(&p)).unwrap(), p.clone());
        prop_assert_eq!(points_to_permutation(&shear(&plot(&p))).unwrap(), p);
    }

    #[test]
    fn containment_closed_under_inverse(t in arb_perm(8), p in arb_perm(4)) {
        prop_assert_eq!(contains(&t, &p), contains(&t.inverse(), &p.inverse()));
    }

    #[test]
    fn containment_transitive(t in arb_perm(7), mid in arb_perm(5), p in arb_perm(3)) {
        if contains(&t, &mid) && contains(&mid, &p) {
            prop_assert!(contains(&t, &p));
        }
    }

    #[test]
    fn found_embeddings_validate(t in arb_perm(8), p in arb_perm(4)) {
        if let Some(emb) = contains_pattern(&t, &p) {
            prop_assert!(emb.validate(&t, &p).is_ok());
        }
    }

    #[test]
    fn allocator_is_dyadic_contiguous(sizes in prop::collection::vec(1u64..20, 1..10)) {
        let n = pow2ceil(sizes.iter().sum());
        let ivs = interval_allocate(&sizes, n).unwrap();
        prop_assert_eq!(ivs.len(), sizes.len());
        let mut prev_end = 0u64;
        for (iv, &want) in ivs.iter().zip(&sizes) {
            prop_assert!(is_dyadic(iv.0, iv.1, 4 * n));
            prop_assert_eq!(iv.0, prev_end + 1);
            prop_assert!(iv.1 - iv.0 + 1 >= want.max(2));
            prop_assert!(iv.1 <= 4 * n);
            prev_end = iv.1;
        }
    }

    #[test]
    fn skew_sum_sizes_and_order(a in arb_perm(6), b in arb_perm(6)) {
        let s = skew_sum(&a, &b);
        prop_assert_eq!(s.len(), a.len() + b.len());
        // every value of the first part lies above every value of the second
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                prop_assert!(s.at(i) > s.at(a.len() + j));
            }
        }
    }

    #[test]
    fn random_321_avoids(seed in 0u64..500, n in 1usize..60) {
        let p = random_perm321(n, &mut rng_from_seed(seed));
        prop_assert!(!contains(&p, &"3 2 1".parse().unwrap()));
    }

    #[test]
    fn stouter_generator_decomposes(seed in 0u64..200, n in 2usize..60) {
        let g = random_stouter(n, &mut rng_from_seed(seed)).unwrap();
        prop_assert!(validate(&g).ok);
        let d = decompose_regions(&g).unwrap();
        prop_assert!(verify_facts(&g, &d).unwrap().is_ok());
        // decomposition partitions the vertex set
        let total: usize = d.blocks.iter().map(|b| b.red_size() + b.blue_size()).sum();
        prop_assert_eq!(total, g.to_dag().unwrap().n());
    }
}
