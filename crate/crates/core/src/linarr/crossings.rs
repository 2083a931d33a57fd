use crate::graphs::{Arrangement, Tree};
use crate::MetricError;

/// Algorithm used to count edge crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingAlgorithm {
    /// Tests every pair of edges, `O(m^2)`.
    BrutePairs,
    /// Left-to-right sweep with a Fenwick tree over open edges, `O(n log n)`.
    Sweep,
}

/// Number of pairs of edges whose endpoints interleave in the arrangement.
pub fn num_crossings<T: Tree + ?Sized>(
    t: &T,
    a: &Arrangement,
    algorithm: CrossingAlgorithm,
) -> Result<u64, MetricError> {
    super::check_size(t, a)?;
    Ok(match algorithm {
        CrossingAlgorithm::BrutePairs => brute_pairs(t, a),
        CrossingAlgorithm::Sweep => sweep(t, a),
    })
}

fn spans<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> Vec<(usize, usize)> {
    t.edges()
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (a.position(u), a.position(v));
            (p.min(q), p.max(q))
        })
        .collect()
}

/// Proper interleaving of two position intervals.
pub(crate) fn cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn brute_pairs<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> u64 {
    let spans = spans(t, a);
    let mut count = 0;
    for (i, &e) in spans.iter().enumerate() {
        for &f in &spans[i + 1..] {
            count += u64::from(cross(e, f));
        }
    }
    count
}

fn sweep<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> u64 {
    let n = a.len();
    // closing[q] = left endpoints of edges whose right endpoint is q
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut opening = vec![0u32; n + 1];
    for (lo, hi) in spans(t, a) {
        closing[hi].push(lo);
        opening[lo] += 1;
    }
    // Fenwick tree indexed by the left endpoint of still-open edges.
    let mut open = Fenwick::new(n);
    let mut count = 0;
    for q in 1..=n {
        for &lo in &closing[q] {
            open.add(lo, -1);
        }
        // Edges opened strictly inside (lo, q) that are still open end after q.
        for &lo in &closing[q] {
            count += (open.prefix(q - 1) - open.prefix(lo)) as u64;
        }
        if opening[q] > 0 {
            open.add(q, i64::from(opening[q]));
        }
    }
    count
}

struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, mut i: usize, delta: i64) {
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn prefix(&self, mut i: usize) -> i64 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}
