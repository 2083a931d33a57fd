//! Exhaustive and uniformly random linear arrangements, unconstrained,
//! planar or projective.
//!
//! A projective arrangement is determined by an ordering, for every vertex,
//! of its unit: the vertex itself together with the intervals of its
//! children's subtrees. A planar arrangement of a free tree is a projective
//! arrangement of the tree rooted at whichever vertex occupies position 1,
//! so enumerating or sampling planar arrangements reduces to projective ones
//! with the root pinned to the front.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graphs::{Arrangement, FreeTree, RootedTree, Tree, Vertex};
use crate::MetricError;

/// Default upper bound on `n` for exhaustive arrangement streams.
pub const DEFAULT_ARRANGEMENT_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    Unconstrained,
    Planar,
    Projective,
}

impl FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unconstrained" => Ok(Constraint::Unconstrained),
            "planar" => Ok(Constraint::Planar),
            "projective" => Ok(Constraint::Projective),
            _ => Err(format!(
                "unknown constraint {s:?}; expected unconstrained, planar or projective"
            )),
        }
    }
}

/// A borrowed tree of either kind.
#[derive(Debug, Clone, Copy)]
pub enum AnyTree<'a> {
    Free(&'a FreeTree),
    Rooted(&'a RootedTree),
}

impl<'a> From<&'a FreeTree> for AnyTree<'a> {
    fn from(t: &'a FreeTree) -> Self {
        AnyTree::Free(t)
    }
}

impl<'a> From<&'a RootedTree> for AnyTree<'a> {
    fn from(t: &'a RootedTree) -> Self {
        AnyTree::Rooted(t)
    }
}

impl<'a> AnyTree<'a> {
    pub fn free(self) -> &'a FreeTree {
        match self {
            AnyTree::Free(t) => t,
            AnyTree::Rooted(t) => t.as_free(),
        }
    }

    fn rooted(self, constraint: Constraint) -> Result<&'a RootedTree, MetricError> {
        match self {
            AnyTree::Rooted(t) => Ok(t),
            AnyTree::Free(_) => Err(MetricError::KindMismatch(format!("{constraint:?}"))),
        }
    }
}

/// Streams every arrangement of `t` satisfying `constraint` exactly once.
///
/// Projective arrangements need a rooted tree. Fails with
/// `SizeLimitExceeded` when `n > bound`.
pub fn exhaustive_arrangements<'a>(
    t: impl Into<AnyTree<'a>>,
    constraint: Constraint,
    bound: usize,
) -> Result<AllArrangements, MetricError> {
    let t = t.into();
    let n = t.free().num_vertices();
    if n > bound {
        return Err(MetricError::SizeLimitExceeded { n, bound });
    }
    Ok(match constraint {
        Constraint::Unconstrained => AllArrangements::Unconstrained(Permutations::new(n)),
        Constraint::Projective => {
            AllArrangements::Projective(ProjectiveStream::new(t.rooted(constraint)?, false))
        }
        Constraint::Planar => {
            let free = t.free().clone();
            let first = ProjectiveStream::new(&free.root_at(1).expect("n >= 1"), true);
            AllArrangements::Planar {
                tree: free,
                root: 1,
                current: first,
            }
        }
    })
}

/// A uniformly random arrangement of `t` satisfying `constraint`.
pub fn random_arrangement<'a, R: Rng + ?Sized>(
    t: impl Into<AnyTree<'a>>,
    constraint: Constraint,
    rng: &mut R,
) -> Result<Arrangement, MetricError> {
    let t = t.into();
    let n = t.free().num_vertices();
    match constraint {
        Constraint::Unconstrained => {
            let mut order: Vec<Vertex> = (0..=n).collect();
            order[1..].shuffle(rng);
            Ok(Arrangement::from_order_unchecked(order))
        }
        Constraint::Projective => {
            let t = t.rooted(constraint)?;
            let mut units = Units::new(t, false);
            units.shuffle(rng);
            Ok(units.arrangement())
        }
        Constraint::Planar => {
            // Every root admits prod_v deg(v)! arrangements with the root
            // first, so the root is uniform.
            let root = rng.gen_range(1..=n);
            let rooted = t.free().root_at(root).expect("root within 1..=n");
            let mut units = Units::new(&rooted, true);
            units.shuffle(rng);
            Ok(units.arrangement())
        }
    }
}

/// `prod_v (c_v + 1)!` over out-degrees `c_v`.
pub fn num_projective_arrangements(t: &RootedTree) -> BigUint {
    t.vertices()
        .map(|v| factorial(t.out_degree(v) + 1))
        .product()
}

/// `n prod_v deg(v)!`.
pub fn num_planar_arrangements<T: Tree + ?Sized>(t: &T) -> BigUint {
    let n = t.num_vertices();
    if n == 1 {
        return BigUint::one();
    }
    BigUint::from(n)
        * t.vertices()
            .map(|v| factorial(t.degree(v)))
            .product::<BigUint>()
}

fn factorial(k: usize) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

#[derive(Debug, Clone)]
pub enum AllArrangements {
    Unconstrained(Permutations),
    Projective(ProjectiveStream),
    Planar {
        tree: FreeTree,
        root: Vertex,
        current: ProjectiveStream,
    },
}

impl Iterator for AllArrangements {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        match self {
            AllArrangements::Unconstrained(p) => p.next(),
            AllArrangements::Projective(p) => p.next(),
            AllArrangements::Planar {
                tree,
                root,
                current,
            } => loop {
                if let Some(a) = current.next() {
                    return Some(a);
                }
                if *root == tree.num_vertices() {
                    return None;
                }
                *root += 1;
                *current = ProjectiveStream::new(&tree.root_at(*root).expect("in range"), true);
            },
        }
    }
}

/// All permutations of `1..=n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Permutations {
    order: Vec<Vertex>,
    done: bool,
}

impl Permutations {
    fn new(n: usize) -> Self {
        Permutations {
            order: (0..=n).collect(),
            done: n == 0,
        }
    }
}

impl Iterator for Permutations {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        if self.done {
            return None;
        }
        let a = Arrangement::from_order_unchecked(self.order.clone());
        self.done = !next_permutation(&mut self.order[1..]);
        Some(a)
    }
}

/// Rearranges `xs` into the next permutation in lexicographic order;
/// returns false, leaving `xs` sorted, after the last one.
fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        xs.reverse();
        return false;
    };
    let j = xs
        .iter()
        .rposition(|x| *x > xs[i])
        .expect("xs[i + 1] > xs[i]");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Per-vertex unit orderings of a rooted tree.
#[derive(Debug, Clone)]
struct Units {
    root: Vertex,
    n: usize,
    /// `unit[v]` lists `v` and its children; with `root_first`, the root's
    /// unit holds only its children and the root is emitted before them.
    unit: Vec<Vec<Vertex>>,
    root_first: bool,
}

impl Units {
    fn new(t: &RootedTree, root_first: bool) -> Self {
        let n = t.num_vertices();
        let mut unit = vec![Vec::new(); n + 1];
        for v in 1..=n {
            if !(root_first && v == t.root()) {
                unit[v].push(v);
            }
            unit[v].extend_from_slice(t.children(v));
            unit[v].sort_unstable();
        }
        Units {
            root: t.root(),
            n,
            unit,
            root_first,
        }
    }

    fn shuffle<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for u in &mut self.unit {
            u.shuffle(rng);
        }
    }

    /// Odometer step over all unit orderings; false once every combination
    /// has been visited (units are then back in sorted order).
    fn advance(&mut self) -> bool {
        self.unit.iter_mut().any(|u| next_permutation(u))
    }

    fn arrangement(&self) -> Arrangement {
        let mut order = Vec::with_capacity(self.n + 1);
        order.push(0);
        if self.root_first {
            order.push(self.root);
        }
        // (vertex, expand): expand a child's unit, or emit the vertex itself.
        let mut stack: Vec<(Vertex, bool)> = vec![(self.root, true)];
        while let Some((v, expand)) = stack.pop() {
            if !expand {
                order.push(v);
                continue;
            }
            for &w in self.unit[v].iter().rev() {
                stack.push((w, w != v));
            }
        }
        Arrangement::from_order_unchecked(order)
    }
}

#[derive(Debug, Clone)]
pub struct ProjectiveStream {
    units: Units,
    done: bool,
}

impl ProjectiveStream {
    fn new(t: &RootedTree, root_first: bool) -> Self {
        ProjectiveStream {
            units: Units::new(t, root_first),
            done: false,
        }
    }
}

impl Iterator for ProjectiveStream {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        if self.done {
            return None;
        }
        let a = self.units.arrangement();
        self.done = !self.units.advance();
        Some(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linarr::{classify_arrangement, num_crossings, CrossingAlgorithm};
    use std::collections::HashSet;

    fn all(t: AnyTree, c: Constraint) -> Vec<Arrangement> {
        exhaustive_arrangements(t, c, DEFAULT_ARRANGEMENT_BOUND)
            .unwrap()
            .collect()
    }

    #[test]
    fn small_counts() {
        let p3 = FreeTree::path(3);
        assert_eq!(all((&p3).into(), Constraint::Unconstrained).len(), 6);
        assert_eq!(all((&p3).into(), Constraint::Planar).len(), 6);
        let hub = FreeTree::star(3).root_at(1).unwrap();
        assert_eq!(all((&hub).into(), Constraint::Projective).len(), 6);
        let chain = RootedTree::chain(3);
        assert_eq!(all((&chain).into(), Constraint::Projective).len(), 4);
    }

    #[test]
    fn streams_are_distinct_and_valid() {
        let t = "2 3 0 3 2 7 5"
            .parse::<crate::HeadVector>()
            .unwrap()
            .to_tree();
        let proj = all((&t).into(), Constraint::Projective);
        let distinct: HashSet<Vec<usize>> = proj.iter().map(|a| a.positions().to_vec()).collect();
        assert_eq!(distinct.len(), proj.len());
        assert_eq!(BigUint::from(proj.len()), num_projective_arrangements(&t));
        assert!(proj
            .iter()
            .all(|a| classify_arrangement(&t, a).unwrap().projective));
        let planar = all(t.as_free().into(), Constraint::Planar);
        let distinct: HashSet<Vec<usize>> = planar.iter().map(|a| a.positions().to_vec()).collect();
        assert_eq!(distinct.len(), planar.len());
        assert_eq!(BigUint::from(planar.len()), num_planar_arrangements(&t));
        assert!(planar
            .iter()
            .all(|a| num_crossings(&t, a, CrossingAlgorithm::Sweep).unwrap() == 0));
    }

    #[test]
    fn projective_needs_root_and_bound_applies() {
        let p = FreeTree::path(3);
        assert!(matches!(
            exhaustive_arrangements(&p, Constraint::Projective, 10),
            Err(MetricError::KindMismatch(_))
        ));
        assert_eq!(
            exhaustive_arrangements(&p, Constraint::Unconstrained, 2).unwrap_err(),
            MetricError::SizeLimitExceeded { n: 3, bound: 2 }
        );
    }

    #[test]
    fn next_permutation_cycles() {
        let mut xs = [1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut xs) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(xs, [1, 2, 3]);
    }
}
