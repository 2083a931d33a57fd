//! Minimum projective and planar arrangements in `O(n log n)`.
//!
//! In a projective arrangement each vertex and the blocks of its children's
//! subtrees form contiguous intervals. The edge from a vertex to a child block
//! spans the blocks between them, and the edge from the vertex to its own head
//! spans every block on the head's side. Sorting children by decreasing size
//! and alternating sides, starting on the side away from the head, places
//! the largest blocks where they are spanned the fewest times.

use crate::graphs::{Arrangement, FreeTree, RootedTree, Tree, Vertex};
use crate::linarr::sum_edge_lengths_unchecked;
use crate::properties::centroid;

use super::MinArrangementResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    /// The root of the whole tree.
    Free,
    /// The head lies to the left of this block.
    HeadLeft,
    /// The head lies to the right of this block.
    HeadRight,
}

pub(super) fn projective(t: &RootedTree) -> MinArrangementResult {
    let size = t.subtree_sizes();
    let n = t.num_vertices();
    let mut order: Vec<Vertex> = Vec::with_capacity(n + 1);
    order.push(0);
    // Explicit stack of blocks still to emit, processed left to right.
    enum Item {
        Block(Vertex, Side),
        Single(Vertex),
    }
    let mut stack = vec![Item::Block(t.root(), Side::Free)];
    while let Some(item) = stack.pop() {
        let (v, side) = match item {
            Item::Single(v) => {
                order.push(v);
                continue;
            }
            Item::Block(v, side) => (v, side),
        };
        let mut kids: Vec<Vertex> = t.children(v).to_vec();
        kids.sort_unstable_by(|&a, &b| size[b].cmp(&size[a]).then(a.cmp(&b)));
        // Indices alternate sides, the first one going to `first_right`.
        let first_right = side == Side::HeadLeft;
        let mut left: Vec<Vertex> = Vec::new();
        let mut right: Vec<Vertex> = Vec::new();
        for (i, &c) in kids.iter().enumerate() {
            if (i % 2 == 0) == first_right {
                right.push(c);
            } else {
                left.push(c);
            }
        }
        // `left` is outer to inner; `right` is outer to inner as well.
        // Push in reverse emission order.
        for &c in &right {
            stack.push(Item::Block(c, Side::HeadLeft));
        }
        stack.push(Item::Single(v));
        for &c in left.iter().rev() {
            stack.push(Item::Block(c, Side::HeadRight));
        }
    }
    let arrangement = Arrangement::from_order_unchecked(order);
    MinArrangementResult {
        value: sum_edge_lengths_unchecked(t, &arrangement),
        arrangement,
    }
}

/// A minimum planar arrangement is a minimum projective arrangement of the
/// tree rooted at a centroidal vertex.
pub(super) fn planar(t: &FreeTree) -> MinArrangementResult {
    centroid(t)
        .vertices
        .iter()
        .map(|&c| projective(&t.root_at(c).expect("centroid is a vertex")))
        .min_by_key(|r| r.value)
        .expect("a tree has at least one centroidal vertex")
}
