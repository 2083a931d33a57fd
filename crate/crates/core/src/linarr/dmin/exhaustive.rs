//! Brute-force minima over all `n!` arrangements, optionally filtered.

use crate::graphs::{Arrangement, Tree, Vertex};
use crate::linarr::{crossings, sum_edge_lengths_unchecked};

use super::MinArrangementResult;

/// Visits every permutation of `1..=n` as a vertex order (Heap's algorithm).
pub(crate) fn for_each_order(n: usize, mut visit: impl FnMut(&[Vertex])) {
    let mut order: Vec<Vertex> = (0..=n).collect();
    let mut c = vec![0usize; n];
    visit(&order);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(1, i + 1);
            } else {
                order.swap(c[i] + 1, i + 1);
            }
            visit(&order);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Minimum of `D` over the arrangements accepted by `keep`.
pub(crate) fn minimum<T: Tree + ?Sized>(
    t: &T,
    mut keep: impl FnMut(&Arrangement) -> bool,
) -> Option<MinArrangementResult> {
    let mut best: Option<MinArrangementResult> = None;
    for_each_order(t.num_vertices(), |order| {
        let a = Arrangement::from_order_unchecked(order.to_vec());
        let d = sum_edge_lengths_unchecked(t, &a);
        if best.as_ref().is_some_and(|b| b.value <= d) || !keep(&a) {
            return;
        }
        best = Some(MinArrangementResult {
            value: d,
            arrangement: a,
        });
    });
    best
}

pub(crate) fn is_planar<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> bool {
    let spans: Vec<(usize, usize)> = t
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (a.position(u), a.position(v));
            (p.min(q), p.max(q))
        })
        .collect();
    spans
        .iter()
        .enumerate()
        .all(|(i, &e)| spans[i + 1..].iter().all(|&f| !crossings::cross(e, f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut seen = HashSet::new();
        for_each_order(5, |o| {
            assert!(seen.insert(o.to_vec()));
        });
        assert_eq!(seen.len(), 120);
        let mut count = 0;
        for_each_order(1, |_| count += 1);
        assert_eq!(count, 1);
    }
}
