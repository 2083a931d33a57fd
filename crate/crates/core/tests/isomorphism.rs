use std::collections::HashMap;

use depsyn::generate::{exhaustive_trees, random_tree, seeded_rng, TreeKind};
use depsyn::utilities::{
    are_isomorphic, are_isomorphic_free, canonical_code, canonical_code_free, IsomorphismMode,
};
use depsyn::{RootedTree, Tree};
use rand::seq::SliceRandom;
use rand::Rng;

fn relabel(t: &RootedTree, perm: &[usize]) -> RootedTree {
    let mut heads = vec![0; t.num_vertices()];
    for v in t.vertices() {
        heads[perm[v] - 1] = t.parent(v).map_or(0, |p| perm[p]);
    }
    RootedTree::from_head_vector(&heads).unwrap()
}

#[test]
fn relabeling_preserves_codes() {
    let mut rng = seeded_rng(21);
    for _ in 0..300 {
        let n = rng.gen_range(1..=120);
        let t = random_tree(TreeKind::LABELED_ROOTED, n, &mut rng);
        let t = t.as_rooted().unwrap();
        let mut perm: Vec<usize> = (0..=n).collect();
        perm[1..].shuffle(&mut rng);
        let u = relabel(t, &perm);
        assert_eq!(canonical_code(t), canonical_code(&u));
        assert_eq!(
            canonical_code_free(t.as_free()),
            canonical_code_free(u.as_free())
        );
        assert!(are_isomorphic(t, &u, IsomorphismMode::Rooted));
        // moving the root keeps the free tree
        let other = t.as_free().root_at(rng.gen_range(1..=n)).unwrap();
        assert!(are_isomorphic(t, &other, IsomorphismMode::Free));
        assert!(are_isomorphic_free(t.as_free(), other.as_free()));
    }
}

#[test]
fn rootings_group_into_free_classes() {
    // every rooted class on n vertices is a rooting of exactly one free class
    for n in 1..=10 {
        let free: HashMap<_, usize> = exhaustive_trees(TreeKind::UNLABELED_FREE, n)
            .map(|t| (canonical_code_free(t.as_free()), 0))
            .collect();
        let mut free = free;
        for t in exhaustive_trees(TreeKind::UNLABELED_ROOTED, n) {
            *free
                .get_mut(&canonical_code_free(t.as_free()))
                .expect("rooted tree maps to a listed free class") += 1;
        }
        assert!(free.values().all(|&k| k >= 1), "n={n}");
    }
}

#[test]
fn small_codes() {
    let hv = |s: &str| s.parse::<depsyn::HeadVector>().unwrap().to_tree();
    assert_eq!(canonical_code(&hv("0")).as_str(), "10");
    assert_eq!(canonical_code(&hv("0 1 1")).as_str(), "110100");
    assert_eq!(canonical_code(&hv("0 1 2")).as_str(), "111000");
    // a path rooted at its end and at its middle: same free tree only
    assert!(!are_isomorphic(
        &hv("0 1 2"),
        &hv("2 0 2"),
        IsomorphismMode::Rooted
    ));
    assert!(are_isomorphic(
        &hv("0 1 2"),
        &hv("2 0 2"),
        IsomorphismMode::Free
    ));
    assert!(!are_isomorphic(
        &hv("0 1"),
        &hv("0 1 1"),
        IsomorphismMode::Free
    ));
}
