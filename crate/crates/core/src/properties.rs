//! Structural metrics that do not depend on word order, and closed-form
//! expectations over uniformly random unconstrained arrangements.

use crate::graphs::{RootedTree, Tree, Vertex};
use crate::{MetricError, Rational};

/// Number of unordered pairs of edges that share no vertex.
pub fn num_independent_edge_pairs<T: Tree + ?Sized>(t: &T) -> u64 {
    let m = t.num_edges() as u64;
    let shared: u64 = t
        .vertices()
        .map(|v| {
            let k = t.degree(v) as u64;
            k * k.saturating_sub(1) / 2
        })
        .sum();
    m * m.saturating_sub(1) / 2 - shared
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeKind {
    Total,
    In,
    Out,
}

/// `<k^m>`, the m-th moment about zero of the degree sequence.
pub fn degree_moment<T: Tree + ?Sized>(t: &T, m: u32) -> Rational {
    moment(t.vertices().map(|v| t.degree(v)), t.num_vertices(), m)
}

/// Degree moment over total, in- or out-degrees of a rooted tree.
pub fn degree_moment_rooted(t: &RootedTree, m: u32, kind: DegreeKind) -> Rational {
    let n = t.num_vertices();
    match kind {
        DegreeKind::Total => degree_moment(t, m),
        DegreeKind::In => moment(t.vertices().map(|v| t.in_degree(v)), n, m),
        DegreeKind::Out => moment(t.vertices().map(|v| t.out_degree(v)), n, m),
    }
}

fn moment(degrees: impl Iterator<Item = usize>, n: usize, m: u32) -> Rational {
    let total: i64 = degrees.map(|k| (k as i64).pow(m)).sum();
    Rational::new(total, n as i64)
}

/// Hubiness: second degree moment rescaled so that paths score 0 and stars 1.
pub fn hubiness<T: Tree + ?Sized>(t: &T) -> Result<Rational, MetricError> {
    let n = t.num_vertices() as i64;
    if n < 4 {
        return Err(MetricError::TooSmall {
            n: n as usize,
            min: 4,
        });
    }
    let k2 = degree_moment(t, 2);
    let path = Rational::new(4 * n - 6, n);
    let star = Rational::from_integer(n - 1);
    Ok((k2 - path) / (star - path))
}

/// Mean depth of the non-root vertices.
pub fn mean_hierarchical_distance(t: &RootedTree) -> Result<Rational, MetricError> {
    if t.num_edges() == 0 {
        return Err(MetricError::NoEdges);
    }
    let total: usize = t.depths().iter().sum();
    Ok(Rational::new(total as i64, t.num_edges() as i64))
}

/// One or two central (or centroidal) vertices; two are always adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentreResult {
    pub vertices: Vec<Vertex>,
}

/// Vertices of minimum eccentricity, found by peeling leaves layer by layer.
pub fn centre<T: Tree + ?Sized>(t: &T) -> CentreResult {
    let n = t.num_vertices();
    let mut degree: Vec<usize> = (0..=n)
        .map(|v| if v == 0 { 0 } else { t.degree(v) })
        .collect();
    let mut removed = vec![false; n + 1];
    let mut layer: Vec<Vertex> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &w in t.neighbors(v) {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    CentreResult {
        vertices: (1..=n).filter(|&v| !removed[v]).collect(),
    }
}

/// Vertices whose removal leaves the smallest largest component.
pub fn centroid<T: Tree + ?Sized>(t: &T) -> CentreResult {
    let n = t.num_vertices();
    let (order, parent) = bfs(t, 1);
    let mut size = vec![1usize; n + 1];
    for &v in order.iter().rev() {
        if parent[v] != 0 {
            size[parent[v]] += size[v];
        }
    }
    let heaviest = |v: Vertex| -> usize {
        t.neighbors(v)
            .iter()
            .map(|&w| if w == parent[v] { n - size[v] } else { size[w] })
            .max()
            .unwrap_or(0)
    };
    let best = t.vertices().map(heaviest).min().unwrap_or(0);
    CentreResult {
        vertices: t.vertices().filter(|&v| heaviest(v) == best).collect(),
    }
}

fn bfs<T: Tree + ?Sized>(t: &T, root: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    let n = t.num_vertices();
    let mut parent = vec![0; n + 1];
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &v in t.neighbors(u) {
            if v != parent[u] {
                parent[v] = u;
                order.push(v);
            }
        }
        i += 1;
    }
    (order, parent)
}

/// Membership in the classic tree-shape classes. A tree may belong to several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TreeShapeFlags {
    pub linear: bool,
    pub star: bool,
    /// A star with exactly one edge subdivided (`n >= 4`).
    pub quasistar: bool,
    pub bistar: bool,
    pub caterpillar: bool,
    pub spider: bool,
}

pub fn tree_shape<T: Tree + ?Sized>(t: &T) -> TreeShapeFlags {
    let n = t.num_vertices();
    let deg = |v: Vertex| t.degree(v);
    let max_degree = t.vertices().map(deg).max().unwrap_or(0);
    let bistar = n == 1 || t.edges().iter().any(|&(u, v)| deg(u) + deg(v) == n);
    TreeShapeFlags {
        linear: max_degree <= 2,
        star: max_degree + 1 == n,
        quasistar: n >= 4 && t.vertices().any(|v| deg(v) + 2 == n),
        bistar,
        caterpillar: is_caterpillar(t),
        spider: t.vertices().filter(|&v| deg(v) >= 3).count() <= 1,
    }
}

/// Removing the leaves leaves a path (or nothing).
fn is_caterpillar<T: Tree + ?Sized>(t: &T) -> bool {
    let inner = |v: Vertex| t.degree(v) > 1;
    t.vertices()
        .filter(|&v| inner(v))
        .all(|v| t.neighbors(v).iter().filter(|&&w| inner(w)).count() <= 2)
}

/// `E[D] = (n^2 - 1) / 3` over uniformly random arrangements.
pub fn expected_sum_edge_lengths<T: Tree + ?Sized>(t: &T) -> Result<Rational, MetricError> {
    let n = t.num_vertices() as i64;
    if n < 2 {
        return Err(MetricError::NoEdges);
    }
    Ok(Rational::new((n - 1) * (n + 1), 3))
}

/// `E[C] = Q / 3` over uniformly random arrangements: each pair of
/// independent edges crosses in 8 of the 24 relative orders of its endpoints.
pub fn expected_num_crossings<T: Tree + ?Sized>(t: &T) -> Result<Rational, MetricError> {
    if t.num_vertices() < 2 {
        return Err(MetricError::NoEdges);
    }
    Ok(Rational::new(num_independent_edge_pairs(t) as i64, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FreeTree;
    use crate::HeadVector;

    fn hv(s: &str) -> RootedTree {
        s.parse::<HeadVector>().unwrap().to_tree()
    }

    fn brute_q<T: Tree>(t: &T) -> u64 {
        let e = t.edges();
        let mut q = 0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let (a, b) = e[i];
                let (c, d) = e[j];
                q += u64::from(a != c && a != d && b != c && b != d);
            }
        }
        q
    }

    #[test]
    fn independent_pairs() {
        assert_eq!(num_independent_edge_pairs(&FreeTree::path(4)), 1);
        assert_eq!(num_independent_edge_pairs(&FreeTree::star(7)), 0);
        let crossed = hv("2 3 0 3 2 7 5 4 3");
        assert_eq!(brute_q(&crossed), 19);
        assert_eq!(num_independent_edge_pairs(&crossed), 19);
        assert_eq!(num_independent_edge_pairs(&FreeTree::singleton()), 0);
    }

    #[test]
    fn degree_moments() {
        let t = hv("3 3 0 5 3 7 5 10 10 7");
        for m in 1..4 {
            assert_eq!(
                degree_moment_rooted(&t, m, DegreeKind::In),
                Rational::new(9, 10)
            );
        }
        assert_eq!(
            degree_moment(&FreeTree::star(5), 2),
            Rational::from_integer(4)
        );
        assert_eq!(degree_moment(&FreeTree::path(4), 2), Rational::new(10, 4));
        // Out-degree first moment is also (n-1)/n.
        assert_eq!(
            degree_moment_rooted(&t, 1, DegreeKind::Out),
            Rational::new(9, 10)
        );
    }

    #[test]
    fn hubiness_extremes() {
        for n in 4..10 {
            assert_eq!(hubiness(&FreeTree::path(n)), Ok(Rational::from_integer(0)));
            assert_eq!(hubiness(&FreeTree::star(n)), Ok(Rational::from_integer(1)));
        }
        assert_eq!(
            hubiness(&FreeTree::path(3)),
            Err(MetricError::TooSmall { n: 3, min: 4 })
        );
    }

    #[test]
    fn hierarchical_distance() {
        let hub = FreeTree::star(6).root_at(1).unwrap();
        assert_eq!(
            mean_hierarchical_distance(&hub),
            Ok(Rational::from_integer(1))
        );
        assert_eq!(
            mean_hierarchical_distance(&hv("3 3 0 5 3 7 5 10 10 7")),
            Ok(Rational::new(21, 9))
        );
        assert_eq!(
            mean_hierarchical_distance(&RootedTree::chain(4)),
            Ok(Rational::from_integer(2))
        );
        assert_eq!(
            mean_hierarchical_distance(&hv("0")),
            Err(MetricError::NoEdges)
        );
    }

    #[test]
    fn centres_and_centroids() {
        assert_eq!(centre(&FreeTree::path(5)).vertices, vec![3]);
        assert_eq!(centroid(&FreeTree::path(5)).vertices, vec![3]);
        assert_eq!(centre(&FreeTree::path(4)).vertices, vec![2, 3]);
        assert_eq!(centroid(&FreeTree::path(4)).vertices, vec![2, 3]);
        assert_eq!(centre(&FreeTree::star(5)).vertices, vec![1]);
        assert_eq!(centroid(&FreeTree::star(5)).vertices, vec![1]);
        assert_eq!(centre(&FreeTree::singleton()).vertices, vec![1]);
        assert_eq!(centre(&FreeTree::path(2)).vertices, vec![1, 2]);
        // Centre and centroid differ: a long path with a broom at one end.
        let t =
            FreeTree::from_edge_list(8, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7), (5, 8)])
                .unwrap();
        assert_eq!(centre(&t).vertices, vec![3, 4]);
        assert_eq!(centroid(&t).vertices, vec![4, 5]);
    }

    #[test]
    fn shapes() {
        let p6 = tree_shape(&FreeTree::path(6));
        assert!(p6.linear && p6.caterpillar && p6.spider);
        assert!(!p6.star && !p6.quasistar && !p6.bistar);
        let s6 = tree_shape(&FreeTree::star(6));
        assert!(s6.star && s6.bistar && s6.caterpillar && s6.spider && !s6.linear);
        let crossed = tree_shape(&hv("2 3 0 3 2 7 5 4 3"));
        assert!(crossed.caterpillar && !crossed.star);
        // Star S5 with one edge subdivided.
        let q = FreeTree::from_edge_list(6, &[(1, 2), (1, 3), (1, 4), (1, 5), (5, 6)]).unwrap();
        let f = tree_shape(&q);
        assert!(f.quasistar && f.bistar && !f.star);
        // Spider with two long legs is not a caterpillar.
        let spider =
            FreeTree::from_edge_list(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).unwrap();
        let f = tree_shape(&spider);
        assert!(f.spider && !f.caterpillar);
    }

    #[test]
    fn expectations() {
        let p3 = FreeTree::path(3);
        assert_eq!(expected_sum_edge_lengths(&p3), Ok(Rational::new(8, 3)));
        assert_eq!(
            expected_sum_edge_lengths(&FreeTree::path(2)),
            Ok(Rational::from_integer(1))
        );
        assert_eq!(
            expected_sum_edge_lengths(&FreeTree::path(10)),
            Ok(Rational::from_integer(33))
        );
        assert_eq!(
            expected_num_crossings(&FreeTree::path(4)),
            Ok(Rational::new(1, 3))
        );
        assert_eq!(
            expected_num_crossings(&FreeTree::star(6)),
            Ok(Rational::from_integer(0))
        );
        assert_eq!(
            expected_num_crossings(&hv("2 3 0 3 2 7 5 4 3")),
            Ok(Rational::new(19, 3))
        );
        assert_eq!(expected_num_crossings(&hv("0")), Err(MetricError::NoEdges));
    }
}
