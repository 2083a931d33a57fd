//! Exact tree counts with unbounded integers.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Memoized counts of unlabeled rooted trees: `rooted[k]` trees on `k` vertices.
struct RootedCounts {
    rooted: Vec<BigUint>,
}

fn rooted_table() -> &'static Mutex<RootedCounts> {
    static TABLE: OnceLock<Mutex<RootedCounts>> = OnceLock::new();
    TABLE.get_or_init(|| {
        Mutex::new(RootedCounts {
            rooted: vec![BigUint::zero(), BigUint::one()],
        })
    })
}

/// `r_1..=r_n` (index 0 unused, equal to 0).
///
/// Uses `(k - 1) r_k = sum_{j >= 1} sum_{d >= 1, jd <= k - 1} d r_d r_{k - jd}`.
pub(crate) fn rooted_counts(n: usize) -> Vec<BigUint> {
    let mut table = rooted_table().lock().expect("count table poisoned");
    let rooted = &mut table.rooted;
    while rooted.len() <= n {
        let k = rooted.len();
        let mut total = BigUint::zero();
        for d in 1..k {
            let weight = &rooted[d] * d;
            let mut j = 1;
            while j * d < k {
                total += &weight * &rooted[k - j * d];
                j += 1;
            }
        }
        rooted.push(total / (k - 1));
    }
    rooted[..=n].to_vec()
}

/// `a[k]` = rooted trees on `k` vertices whose root subtrees all have at
/// most `max_branch` vertices, for `k` in `0..=n`.
pub(crate) fn bounded_branch_counts(n: usize, max_branch: usize) -> Vec<BigUint> {
    let rooted = rooted_counts(n);
    let mut a = vec![BigUint::zero(); n + 1];
    if n >= 1 {
        a[1] = BigUint::one();
    }
    for k in 2..=n {
        let mut total = BigUint::zero();
        for d in 1..k.min(max_branch + 1) {
            let weight = &rooted[d] * d;
            let mut j = 1;
            while j * d < k {
                total += &weight * &a[k - j * d];
                j += 1;
            }
        }
        a[k] = total / (k - 1);
    }
    a
}

/// Unlabeled free trees on `n` vertices.
///
/// Trees with one centroid are counted as rooted trees whose branches all
/// have fewer than `n / 2` vertices; trees with two centroids are unordered
/// pairs of rooted trees on `n / 2` vertices joined by an edge.
pub(crate) fn free_count(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let unicentroidal = bounded_branch_counts(n, (n - 1) / 2)[n].clone();
    unicentroidal + bicentroidal_count(n)
}

pub(crate) fn bicentroidal_count(n: usize) -> BigUint {
    if !n.is_multiple_of(2) {
        return BigUint::zero();
    }
    let half = &rooted_counts(n / 2)[n / 2];
    half * (half + 1u32) / 2u32
}
