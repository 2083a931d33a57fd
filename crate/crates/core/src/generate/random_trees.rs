//! Uniform random trees.

use num_bigint::{BigUint, RandBigInt};
use rand::Rng;

use crate::graphs::{FreeTree, RootedTree};
use crate::utilities::canonical_code;

use super::counting::{bicentroidal_count, bounded_branch_counts, rooted_counts};
use super::prufer_decode;

const NO_PARENT: usize = usize::MAX;

pub(super) fn labeled_free<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FreeTree {
    match n {
        1 => FreeTree::singleton(),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
            prufer_decode(&seq)
        }
    }
}

pub(super) fn unlabeled_rooted<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RootedTree {
    let rooted = rooted_counts(n);
    to_rooted(&ranrut(n, &rooted, &rooted, n, rng))
}

pub(super) fn unlabeled_free<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FreeTree {
    if n <= 2 {
        return FreeTree::path(n);
    }
    let rooted = rooted_counts(n);
    let bounded = bounded_branch_counts(n, (n - 1) / 2);
    let two_centroids = bicentroidal_count(n);
    let total = &bounded[n] + &two_centroids;
    if rng.gen_biguint_below(&total) < two_centroids {
        bicentroidal(n, &rooted, rng)
    } else {
        // One centroid: every branch at the root has at most (n - 1) / 2 vertices.
        to_rooted(&ranrut(n, &bounded, &rooted, (n - 1) / 2, rng)).to_free()
    }
}

/// Two rooted trees on `n / 2` vertices joined at their roots, uniform over
/// unordered pairs with repetition.
fn bicentroidal<R: Rng + ?Sized>(n: usize, rooted: &[BigUint], rng: &mut R) -> FreeTree {
    let half = n / 2;
    let r = &rooted[half];
    // r(r + 1) / 2 pairs, r of which repeat a tree.
    let pairs = r * (r + 1u32) / 2u32;
    let (a, b) = if rng.gen_biguint_below(&pairs) < *r {
        let a = ranrut(half, rooted, rooted, half, rng);
        (a.clone(), a)
    } else {
        loop {
            let a = ranrut(half, rooted, rooted, half, rng);
            let b = ranrut(half, rooted, rooted, half, rng);
            if canonical_code(&to_rooted(&a)) != canonical_code(&to_rooted(&b)) {
                break (a, b);
            }
        }
    };
    let mut parent = a;
    parent.extend(b.iter().map(|&p| if p == NO_PARENT { 0 } else { p + half }));
    to_rooted(&parent).to_free()
}

/// Counting-based recursive sampler over rooted trees on `n` vertices whose
/// root branches have at most `max_branch` vertices; `counts` counts those
/// trees and `rooted` counts all rooted trees.
///
/// Returns 0-based parent indices with the root at index 0.
fn ranrut<R: Rng + ?Sized>(
    n: usize,
    counts: &[BigUint],
    rooted: &[BigUint],
    max_branch: usize,
    rng: &mut R,
) -> Vec<usize> {
    if n == 1 {
        return vec![NO_PARENT];
    }
    // (n - 1) counts[n] = sum over (j, d) of d rooted[d] counts[n - jd].
    let total = &counts[n] * (n - 1);
    let mut x = rng.gen_biguint_below(&total);
    let (j, d) = 'pick: {
        for d in (1..n).filter(|&d| d <= max_branch) {
            let weight = &rooted[d] * d;
            let mut j = 1;
            while j * d < n {
                let w = &weight * &counts[n - j * d];
                if x < w {
                    break 'pick (j, d);
                }
                x -= w;
                j += 1;
            }
        }
        unreachable!("weights sum to (n - 1) * counts[n]");
    };
    let mut parent = ranrut(n - j * d, counts, rooted, max_branch, rng);
    let branch = ranrut(d, rooted, rooted, d, rng);
    for _ in 0..j {
        let offset = parent.len();
        parent.extend(
            branch
                .iter()
                .map(|&p| if p == NO_PARENT { 0 } else { p + offset }),
        );
    }
    parent
}

fn to_rooted(parent: &[usize]) -> RootedTree {
    let heads: Vec<usize> = parent
        .iter()
        .map(|&p| if p == NO_PARENT { 0 } else { p + 1 })
        .collect();
    RootedTree::from_head_vector(&heads).expect("sampler builds trees")
}
