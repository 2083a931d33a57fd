//! Minimum sum of edge lengths, unconstrained, planar and projective.
//!
//! Every solver returns one optimal arrangement; which one, among several
//! optima, is not part of the contract.

pub(crate) mod exhaustive;
mod projective;
mod unconstrained;

use crate::graphs::{Arrangement, FreeTree, RootedTree, Tree};
use crate::MetricError;

/// Default upper bound on `n` for the brute-force solvers (`10!` arrangements).
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinArrangementResult {
    pub value: u64,
    pub arrangement: Arrangement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DminUnconstrained {
    /// Shiloach's recursive scheme with the corrected anchored case; every
    /// admissible split is evaluated over memoized subproblems.
    Shiloach,
    /// Chung's quadratic algorithm; splits are decided from subtree sizes.
    Chung2,
    Exhaustive {
        bound: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DminPlanar {
    /// Optimal projective arrangement of the tree rooted at its centroid.
    HsAlemany,
    Exhaustive {
        bound: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DminProjective {
    /// Children placed alternately around their head by decreasing size.
    GtAlemany,
    Exhaustive {
        bound: usize,
    },
}

impl DminUnconstrained {
    pub const EXHAUSTIVE: Self = DminUnconstrained::Exhaustive {
        bound: DEFAULT_EXHAUSTIVE_BOUND,
    };
}

impl DminPlanar {
    pub const EXHAUSTIVE: Self = DminPlanar::Exhaustive {
        bound: DEFAULT_EXHAUSTIVE_BOUND,
    };
}

impl DminProjective {
    pub const EXHAUSTIVE: Self = DminProjective::Exhaustive {
        bound: DEFAULT_EXHAUSTIVE_BOUND,
    };
}

fn check_bound(n: usize, bound: usize) -> Result<(), MetricError> {
    if n > bound {
        return Err(MetricError::SizeLimitExceeded { n, bound });
    }
    Ok(())
}

pub fn min_sum_edge_lengths_unconstrained(
    t: &FreeTree,
    algorithm: DminUnconstrained,
) -> Result<MinArrangementResult, MetricError> {
    let (value, arrangement) = match algorithm {
        DminUnconstrained::Shiloach => unconstrained::solve(t, unconstrained::Strategy::Shiloach),
        DminUnconstrained::Chung2 => unconstrained::solve(t, unconstrained::Strategy::Chung),
        DminUnconstrained::Exhaustive { bound } => {
            check_bound(t.num_vertices(), bound)?;
            let best = exhaustive::minimum(t, |_| true).expect("at least one arrangement");
            return Ok(best);
        }
    };
    Ok(MinArrangementResult { value, arrangement })
}

pub fn min_sum_edge_lengths_planar(
    t: &FreeTree,
    algorithm: DminPlanar,
) -> Result<MinArrangementResult, MetricError> {
    match algorithm {
        DminPlanar::HsAlemany => Ok(projective::planar(t)),
        DminPlanar::Exhaustive { bound } => {
            check_bound(t.num_vertices(), bound)?;
            Ok(exhaustive::minimum(t, |a| exhaustive::is_planar(t, a))
                .expect("identity-like planar arrangements always exist"))
        }
    }
}

pub fn min_sum_edge_lengths_projective(
    t: &RootedTree,
    algorithm: DminProjective,
) -> Result<MinArrangementResult, MetricError> {
    match algorithm {
        DminProjective::GtAlemany => Ok(projective::projective(t)),
        DminProjective::Exhaustive { bound } => {
            check_bound(t.num_vertices(), bound)?;
            Ok(
                exhaustive::minimum(t, |a| crate::linarr::is_projective(t, a))
                    .expect("projective arrangements always exist"),
            )
        }
    }
}
