use std::collections::HashSet;

use depsyn::generate::{
    count_trees, exhaustive_arrangements, exhaustive_trees, random_arrangement, random_tree,
    seeded_rng, Constraint, TreeKind,
};
use depsyn::linarr::{classify_arrangement, num_crossings, CrossingAlgorithm};
use depsyn::utilities::{canonical_code, canonical_code_free};
use depsyn::{HeadVector, Tree};
use num_bigint::BigUint;
use rand::Rng;

// Unlabeled rooted and free trees by number of vertices, from n = 1.
const ROOTED: [u64; 13] = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766, 12486];
const FREE: [u64; 14] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159];

#[test]
fn unlabeled_streams_are_distinct_classes() {
    for (i, &expected) in ROOTED.iter().enumerate() {
        let n = i + 1;
        let codes: HashSet<_> = exhaustive_trees(TreeKind::UNLABELED_ROOTED, n)
            .map(|t| canonical_code(t.as_rooted().unwrap()))
            .collect();
        assert_eq!(codes.len() as u64, expected, "rooted n={n}");
        assert_eq!(
            count_trees(TreeKind::UNLABELED_ROOTED, n),
            BigUint::from(expected)
        );
    }
    for (i, &expected) in FREE.iter().enumerate() {
        let n = i + 1;
        let mut len = 0;
        let codes: HashSet<_> = exhaustive_trees(TreeKind::UNLABELED_FREE, n)
            .inspect(|_| len += 1)
            .map(|t| canonical_code_free(t.as_free()))
            .collect();
        assert_eq!(len, expected, "free n={n}");
        assert_eq!(codes.len() as u64, expected, "free n={n}");
    }
}

#[test]
fn large_counts() {
    assert_eq!(
        count_trees(TreeKind::UNLABELED_FREE, 30).to_string(),
        "14830871802"
    );
    assert_eq!(
        count_trees(TreeKind::UNLABELED_ROOTED, 30).to_string(),
        "354426847597"
    );
    assert_eq!(
        count_trees(TreeKind::LABELED_FREE, 20),
        BigUint::from(20u32).pow(18)
    );
    assert_eq!(
        count_trees(TreeKind::LABELED_ROOTED, 20),
        BigUint::from(20u32).pow(19)
    );
    assert_eq!(
        count_trees(TreeKind::UNLABELED_FREE, 0),
        BigUint::from(0u32)
    );
}

#[test]
fn random_trees_are_valid_and_reproducible() {
    let mut rng = seeded_rng(3);
    for kind in TreeKind::ALL {
        for _ in 0..200 {
            let n = rng.gen_range(1..=80);
            let t = random_tree(kind, n, &mut rng);
            assert_eq!(t.num_vertices(), n);
            assert_eq!(t.as_free().num_edges(), n - 1);
            assert_eq!(t.as_rooted().is_some(), kind.is_rooted());
            if let Some(r) = t.as_rooted() {
                let hv: HeadVector = r.to_head_vector().to_string().parse().unwrap();
                assert_eq!(&hv.to_tree(), r);
            }
        }
        let draw = |seed| {
            let mut rng = seeded_rng(seed);
            (0..50)
                .map(|_| random_tree(kind, 40, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(17), draw(17), "{kind}");
        assert_ne!(draw(17), draw(18), "{kind}");
    }
}

#[test]
fn large_unlabeled_samples_cover_many_classes() {
    // At n = 10 there are 106 free and 719 rooted classes; 5000 draws should hit
    // nearly all free classes.
    let mut rng = seeded_rng(4);
    let free: HashSet<_> = (0..5000)
        .map(|_| canonical_code_free(random_tree(TreeKind::UNLABELED_FREE, 10, &mut rng).as_free()))
        .collect();
    assert!(free.len() >= 100, "{}", free.len());
}

#[test]
fn random_arrangements_respect_constraints() {
    let mut rng = seeded_rng(5);
    for _ in 0..300 {
        let n = rng.gen_range(1..=40);
        let t = random_tree(TreeKind::LABELED_ROOTED, n, &mut rng);
        let r = t.as_rooted().unwrap();
        let planar = random_arrangement(r.as_free(), Constraint::Planar, &mut rng).unwrap();
        assert_eq!(
            num_crossings(r, &planar, CrossingAlgorithm::Sweep).unwrap(),
            0
        );
        let projective = random_arrangement(r, Constraint::Projective, &mut rng).unwrap();
        assert!(classify_arrangement(r, &projective).unwrap().projective);
        let any = random_arrangement(r, Constraint::Unconstrained, &mut rng).unwrap();
        assert_eq!(any.len(), n);
    }
}

#[test]
fn projective_needs_a_root() {
    let t = depsyn::FreeTree::path(4);
    assert!(exhaustive_arrangements(&t, Constraint::Projective, 8).is_err());
    assert!(random_arrangement(&t, Constraint::Projective, &mut seeded_rng(0)).is_err());
    assert!(
        exhaustive_arrangements(&depsyn::FreeTree::path(13), Constraint::Unconstrained, 12)
            .is_err()
    );
}
