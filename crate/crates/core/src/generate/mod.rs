//! Exhaustive and uniformly random generation of trees and of linear
//! arrangements, with exact counts.
//!
//! Random generators take any [`rand::Rng`]; the crate's own samplers seed a
//! [`rand_chacha::ChaCha8Rng`] so that a seed fixes the sample sequence.

mod arrangements;
mod counting;
mod exhaustive_trees;
mod random_trees;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphs::{FreeTree, RootedTree, Tree, Vertex};

pub use arrangements::{
    exhaustive_arrangements, num_planar_arrangements, num_projective_arrangements,
    random_arrangement, AllArrangements, AnyTree, Constraint, DEFAULT_ARRANGEMENT_BOUND,
};
pub use exhaustive_trees::{
    AllLabeledFreeTrees, AllLabeledRootedTrees, AllUnlabeledFreeTrees, AllUnlabeledRootedTrees,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Labeling {
    Labeled,
    Unlabeled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rooting {
    Free,
    Rooted,
}

/// One of the four families of trees on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeKind {
    pub labeling: Labeling,
    pub rooting: Rooting,
}

impl TreeKind {
    pub const LABELED_FREE: TreeKind = TreeKind::new(Labeling::Labeled, Rooting::Free);
    pub const LABELED_ROOTED: TreeKind = TreeKind::new(Labeling::Labeled, Rooting::Rooted);
    pub const UNLABELED_FREE: TreeKind = TreeKind::new(Labeling::Unlabeled, Rooting::Free);
    pub const UNLABELED_ROOTED: TreeKind = TreeKind::new(Labeling::Unlabeled, Rooting::Rooted);
    pub const ALL: [TreeKind; 4] = [
        TreeKind::LABELED_FREE,
        TreeKind::LABELED_ROOTED,
        TreeKind::UNLABELED_FREE,
        TreeKind::UNLABELED_ROOTED,
    ];

    pub const fn new(labeling: Labeling, rooting: Rooting) -> Self {
        TreeKind { labeling, rooting }
    }

    pub fn is_rooted(self) -> bool {
        self.rooting == Rooting::Rooted
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labeling = match self.labeling {
            Labeling::Labeled => "labeled",
            Labeling::Unlabeled => "unlabeled",
        };
        let rooting = match self.rooting {
            Rooting::Free => "free",
            Rooting::Rooted => "rooted",
        };
        write!(f, "{labeling}-{rooting}")
    }
}

impl FromStr for TreeKind {
    type Err = String;

    /// Accepts `labeled-free`, `labeled-rooted`, `unlabeled-free` and
    /// `unlabeled-rooted`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TreeKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| {
                format!(
                    "unknown tree kind {s:?}; expected one of labeled-free, labeled-rooted, \
                     unlabeled-free, unlabeled-rooted"
                )
            })
    }
}

/// A generated tree; rooted kinds yield rooted trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratedTree {
    Free(FreeTree),
    Rooted(RootedTree),
}

impl GeneratedTree {
    pub fn as_free(&self) -> &FreeTree {
        match self {
            GeneratedTree::Free(t) => t,
            GeneratedTree::Rooted(t) => t.as_free(),
        }
    }

    pub fn as_rooted(&self) -> Option<&RootedTree> {
        match self {
            GeneratedTree::Free(_) => None,
            GeneratedTree::Rooted(t) => Some(t),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.as_free().num_vertices()
    }
}

/// The crate's random stream: ChaCha8 seeded from a `u64`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of trees of `kind` on `n` vertices.
pub fn count_trees(kind: TreeKind, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::default();
    }
    match (kind.labeling, kind.rooting) {
        (Labeling::Labeled, Rooting::Free) => {
            if n == 1 {
                BigUint::one()
            } else {
                BigUint::from(n).pow(n as u32 - 2)
            }
        }
        (Labeling::Labeled, Rooting::Rooted) => BigUint::from(n).pow(n as u32 - 1),
        (Labeling::Unlabeled, Rooting::Free) => counting::free_count(n),
        (Labeling::Unlabeled, Rooting::Rooted) => counting::rooted_counts(n)[n].clone(),
    }
}

/// Streams every tree of `kind` on `n` vertices exactly once (unlabeled kinds:
/// one representative per isomorphism class).
pub fn exhaustive_trees(kind: TreeKind, n: usize) -> ExhaustiveTrees {
    match (kind.labeling, kind.rooting) {
        (Labeling::Labeled, Rooting::Free) => {
            ExhaustiveTrees::LabeledFree(AllLabeledFreeTrees::new(n))
        }
        (Labeling::Labeled, Rooting::Rooted) => {
            ExhaustiveTrees::LabeledRooted(AllLabeledRootedTrees::new(n))
        }
        (Labeling::Unlabeled, Rooting::Free) => {
            ExhaustiveTrees::UnlabeledFree(AllUnlabeledFreeTrees::new(n))
        }
        (Labeling::Unlabeled, Rooting::Rooted) => {
            ExhaustiveTrees::UnlabeledRooted(AllUnlabeledRootedTrees::new(n))
        }
    }
}

#[derive(Debug, Clone)]
pub enum ExhaustiveTrees {
    LabeledFree(AllLabeledFreeTrees),
    LabeledRooted(AllLabeledRootedTrees),
    UnlabeledFree(AllUnlabeledFreeTrees),
    UnlabeledRooted(AllUnlabeledRootedTrees),
}

impl Iterator for ExhaustiveTrees {
    type Item = GeneratedTree;

    fn next(&mut self) -> Option<GeneratedTree> {
        match self {
            ExhaustiveTrees::LabeledFree(it) => it.next().map(GeneratedTree::Free),
            ExhaustiveTrees::LabeledRooted(it) => it.next().map(GeneratedTree::Rooted),
            ExhaustiveTrees::UnlabeledFree(it) => it.next().map(GeneratedTree::Free),
            ExhaustiveTrees::UnlabeledRooted(it) => it.next().map(GeneratedTree::Rooted),
        }
    }
}

/// A tree drawn uniformly at random among the trees of `kind` on `n >= 1`
/// vertices.
///
/// Labeled free trees decode a uniform Prüfer sequence; labeled rooted trees
/// add a uniform root. Unlabeled rooted trees follow the counting-based
/// recursive method of Nijenhuis and Wilf; unlabeled free trees use Wilf's
/// extension, which splits on whether the tree has one or two centroids.
pub fn random_tree<R: Rng + ?Sized>(kind: TreeKind, n: usize, rng: &mut R) -> GeneratedTree {
    assert!(n >= 1, "trees need at least one vertex");
    match (kind.labeling, kind.rooting) {
        (Labeling::Labeled, Rooting::Free) => {
            GeneratedTree::Free(random_trees::labeled_free(n, rng))
        }
        (Labeling::Labeled, Rooting::Rooted) => {
            let free = random_trees::labeled_free(n, rng);
            let root = rng.gen_range(1..=n);
            GeneratedTree::Rooted(free.root_at(root).expect("root within 1..=n"))
        }
        (Labeling::Unlabeled, Rooting::Free) => {
            GeneratedTree::Free(random_trees::unlabeled_free(n, rng))
        }
        (Labeling::Unlabeled, Rooting::Rooted) => {
            GeneratedTree::Rooted(random_trees::unlabeled_rooted(n, rng))
        }
    }
}

/// Decodes a Prüfer sequence over `1..=n` of length `n - 2` into its
/// labeled tree, in linear time.
///
/// # Panics
///
/// If an entry lies outside `1..=seq.len() + 2`.
pub fn prufer_decode(seq: &[usize]) -> FreeTree {
    let n = seq.len() + 2;
    assert!(
        seq.iter().all(|&x| (1..=n).contains(&x)),
        "Prüfer entries must lie in 1..={n}"
    );
    let mut degree = vec![1usize; n + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (1..=n).find(|&v| degree[v] == 1).expect("some leaf");
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if x < ptr && degree[x] == 1 {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n));
    FreeTree::from_edge_list(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Builds the rooted tree with the given preorder depth sequence
/// (`levels[0] = 0` for the root); vertex `i + 1` has depth `levels[i]`.
pub(crate) fn tree_from_levels(levels: &[usize]) -> RootedTree {
    let mut heads = vec![0usize; levels.len()];
    // last[d] = most recent vertex seen at depth d
    let mut last: Vec<Vertex> = Vec::with_capacity(levels.len());
    for (i, &l) in levels.iter().enumerate() {
        last.truncate(l);
        if l > 0 {
            heads[i] = last[l - 1];
        }
        last.push(i + 1);
    }
    RootedTree::from_head_vector(&heads).expect("level sequences encode trees")
}
