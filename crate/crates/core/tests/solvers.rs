//! Minimum-arrangement solvers against exhaustive search and each other.

use depsyn::generate::{exhaustive_trees, random_tree, TreeKind};
use depsyn::linarr::{
    min_sum_edge_lengths_planar, min_sum_edge_lengths_projective,
    min_sum_edge_lengths_unconstrained, sum_edge_lengths, DminPlanar, DminProjective,
    DminUnconstrained,
};
use depsyn::{FreeTree, Tree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn free_trees(n: usize) -> impl Iterator<Item = FreeTree> {
    exhaustive_trees(TreeKind::UNLABELED_FREE, n).map(|t| t.as_free().clone())
}

#[test]
fn unconstrained_solvers_match_exhaustive_up_to_eight() {
    for n in 1..=8 {
        for t in free_trees(n) {
            let exact = min_sum_edge_lengths_unconstrained(&t, DminUnconstrained::EXHAUSTIVE)
                .unwrap()
                .value;
            for alg in [DminUnconstrained::Shiloach, DminUnconstrained::Chung2] {
                let r = min_sum_edge_lengths_unconstrained(&t, alg).unwrap();
                assert_eq!(r.value, exact, "{alg:?} on {:?}", t.edges());
                assert_eq!(sum_edge_lengths(&t, &r.arrangement).unwrap(), r.value);
            }
        }
    }
}

#[test]
fn chung_matches_shiloach_on_all_trees_up_to_fourteen() {
    for n in 9..=14 {
        for t in free_trees(n) {
            let a = min_sum_edge_lengths_unconstrained(&t, DminUnconstrained::Shiloach).unwrap();
            let b = min_sum_edge_lengths_unconstrained(&t, DminUnconstrained::Chung2).unwrap();
            assert_eq!(a.value, b.value, "n={n} {:?}", t.edges());
            assert_eq!(sum_edge_lengths(&t, &b.arrangement).unwrap(), b.value);
        }
    }
}

#[test]
fn chung_matches_shiloach_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = 15 + (rand::Rng::gen_range(&mut rng, 0..45));
        let t = random_tree(TreeKind::LABELED_FREE, n, &mut rng);
        let t = t.as_free();
        let a = min_sum_edge_lengths_unconstrained(t, DminUnconstrained::Shiloach).unwrap();
        let b = min_sum_edge_lengths_unconstrained(t, DminUnconstrained::Chung2).unwrap();
        assert_eq!(a.value, b.value, "n={n} {:?}", t.edges());
        assert_eq!(sum_edge_lengths(t, &b.arrangement).unwrap(), b.value);
        assert_eq!(sum_edge_lengths(t, &a.arrangement).unwrap(), a.value);
    }
}

#[test]
fn planar_and_projective_match_exhaustive_up_to_eight() {
    for n in 1..=8 {
        for t in free_trees(n) {
            let planar = min_sum_edge_lengths_planar(&t, DminPlanar::HsAlemany).unwrap();
            let exact = min_sum_edge_lengths_planar(&t, DminPlanar::EXHAUSTIVE).unwrap();
            assert_eq!(planar.value, exact.value);
            for root in t.vertices() {
                let r = t.root_at(root).unwrap();
                let fast = min_sum_edge_lengths_projective(&r, DminProjective::GtAlemany).unwrap();
                let slow = min_sum_edge_lengths_projective(&r, DminProjective::EXHAUSTIVE).unwrap();
                assert_eq!(fast.value, slow.value);
                assert!(fast.value >= planar.value);
            }
        }
    }
}
