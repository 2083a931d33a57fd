//! Metrics that depend on the linear arrangement of a tree, and minimum
//! sum of edge lengths under three constraint regimes.

mod crossings;
pub mod dmin;
mod flux;

pub use crossings::{num_crossings, CrossingAlgorithm};
pub use dmin::{
    min_sum_edge_lengths_planar, min_sum_edge_lengths_projective,
    min_sum_edge_lengths_unconstrained, DminPlanar, DminProjective, DminUnconstrained,
    MinArrangementResult, DEFAULT_EXHAUSTIVE_BOUND,
};
pub use flux::{flux, FluxProfile, GapFlux};

use crate::graphs::{Arrangement, RootedTree, Tree};
use crate::{MetricError, Rational};

pub(crate) fn check_size<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> Result<(), MetricError> {
    if t.num_vertices() != a.len() {
        return Err(MetricError::SizeMismatch {
            tree: t.num_vertices(),
            arrangement: a.len(),
        });
    }
    Ok(())
}

/// Sum of edge lengths `D`, the length of `{u, v}` being `|pos(u) - pos(v)|`.
pub fn sum_edge_lengths<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> Result<u64, MetricError> {
    check_size(t, a)?;
    Ok(sum_edge_lengths_unchecked(t, a))
}

pub(crate) fn sum_edge_lengths_unchecked<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> u64 {
    t.edges()
        .iter()
        .map(|&(u, v)| a.position(u).abs_diff(a.position(v)) as u64)
        .sum()
}

/// Formal classes an arrangement may belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ArrangementFlags {
    pub projective: bool,
    pub planar: bool,
    pub one_endpoint_crossing: bool,
}

/// `planar` iff there are no crossings; `projective` iff planar and no edge
/// covers the root; 1-endpoint-crossing iff, for every edge, the edges that
/// cross it share a vertex.
pub fn classify_arrangement(
    t: &RootedTree,
    a: &Arrangement,
) -> Result<ArrangementFlags, MetricError> {
    check_size(t, a)?;
    let planar = num_crossings(t, a, CrossingAlgorithm::Sweep)? == 0;
    Ok(ArrangementFlags {
        projective: planar && !root_covered(t, a),
        planar,
        one_endpoint_crossing: planar || is_one_endpoint_crossing(t, a),
    })
}

pub(crate) fn root_covered(t: &RootedTree, a: &Arrangement) -> bool {
    let r = a.position(t.root());
    t.edges().iter().any(|&(u, v)| {
        let (lo, hi) = ordered(a.position(u), a.position(v));
        lo < r && r < hi
    })
}

pub(crate) fn is_projective(t: &RootedTree, a: &Arrangement) -> bool {
    !root_covered(t, a) && num_crossings(t, a, CrossingAlgorithm::Sweep).unwrap_or(1) == 0
}

fn ordered(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

fn is_one_endpoint_crossing<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> bool {
    let spans: Vec<_> = t
        .edges()
        .iter()
        .map(|&(u, v)| ordered(a.position(u), a.position(v)))
        .collect();
    spans.iter().all(|&e| {
        // Positions shared by every edge crossing `e` (None = none seen yet).
        let mut common: Option<[usize; 2]> = None;
        for &f in &spans {
            if !crossings::cross(e, f) {
                continue;
            }
            let ends = [f.0, f.1];
            common = Some(match common {
                None => ends,
                Some(c) => {
                    let keep = |x: usize| if ends.contains(&x) { x } else { 0 };
                    [keep(c[0]), keep(c[1])]
                }
            });
            if common == Some([0, 0]) {
                return false;
            }
        }
        true
    })
}

/// Share of dependencies whose head precedes the dependent.
pub fn head_initial_ratio(t: &RootedTree, a: &Arrangement) -> Result<Rational, MetricError> {
    check_size(t, a)?;
    if t.num_edges() == 0 {
        return Err(MetricError::NoEdges);
    }
    let initial = t
        .edges()
        .iter()
        .filter(|&&(h, d)| a.position(h) < a.position(d))
        .count();
    Ok(Rational::new(initial as i64, t.num_edges() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FreeTree;

    pub(crate) fn hv(s: &str) -> RootedTree {
        s.parse::<crate::HeadVector>().unwrap().to_tree()
    }

    #[test]
    fn sum_of_lengths() {
        let nested = hv("3 3 0 5 3 7 5 10 10 7");
        assert_eq!(
            sum_edge_lengths(&nested, &Arrangement::identity(10)),
            Ok(15)
        );
        let crossed = hv("2 3 0 3 2 7 5 4 3");
        assert_eq!(
            sum_edge_lengths(&crossed, &Arrangement::identity(9)),
            Ok(19)
        );
        assert_eq!(
            sum_edge_lengths(&FreeTree::path(3), &Arrangement::identity(3)),
            Ok(2)
        );
        assert!(matches!(
            sum_edge_lengths(&FreeTree::path(3), &Arrangement::identity(4)),
            Err(MetricError::SizeMismatch {
                tree: 3,
                arrangement: 4
            })
        ));
    }

    #[test]
    fn classification() {
        let nested = hv("3 3 0 5 3 7 5 10 10 7");
        let flags = classify_arrangement(&nested, &Arrangement::identity(10)).unwrap();
        assert_eq!(
            flags,
            ArrangementFlags {
                projective: true,
                planar: true,
                one_endpoint_crossing: true
            }
        );
        let crossed = hv("2 3 0 3 2 7 5 4 3");
        let flags = classify_arrangement(&crossed, &Arrangement::identity(9)).unwrap();
        assert_eq!(flags, ArrangementFlags::default());

        let p3 = FreeTree::path(3).root_at(2).unwrap();
        let a = Arrangement::from_order(&[2, 1, 3]).unwrap();
        assert!(classify_arrangement(&p3, &a).unwrap().projective);
        // Planar but root covered.
        let chain = RootedTree::chain(3);
        let a = Arrangement::from_order(&[2, 1, 3]).unwrap();
        let flags = classify_arrangement(&chain, &a).unwrap();
        assert!(flags.planar && !flags.projective);
    }

    #[test]
    fn one_endpoint_crossing_with_shared_vertex() {
        // Edge (1,3) crossed by (2,4) and (2,5): both share vertex 2.
        let t = FreeTree::from_edge_list(5, &[(1, 3), (2, 4), (2, 5), (3, 4)])
            .unwrap()
            .root_at(1)
            .unwrap();
        let flags = classify_arrangement(&t, &Arrangement::identity(5)).unwrap();
        assert!(!flags.planar);
        assert!(flags.one_endpoint_crossing);
    }

    #[test]
    fn head_initial() {
        let crossed = hv("2 3 0 3 2 7 5 4 3");
        assert_eq!(
            head_initial_ratio(&crossed, &Arrangement::identity(9)),
            Ok(Rational::new(5, 8))
        );
        assert_eq!(
            head_initial_ratio(&RootedTree::chain(3), &Arrangement::identity(3)),
            Ok(Rational::from_integer(1))
        );
        assert_eq!(
            head_initial_ratio(&hv("2 3 0"), &Arrangement::identity(3)),
            Ok(Rational::from_integer(0))
        );
        assert_eq!(
            head_initial_ratio(&hv("0"), &Arrangement::identity(1)),
            Err(MetricError::NoEdges)
        );
    }
}
