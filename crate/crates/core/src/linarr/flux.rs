use crate::graphs::{Arrangement, Tree};
use crate::{MetricError, Rational};

/// Flux at the gap between positions `g` and `g + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapFlux {
    /// Edges spanning the gap.
    pub size: usize,
    /// Largest set of pairwise vertex-disjoint spanning edges.
    pub weight: usize,
}

/// Flux of every gap, `gaps[g - 1]` for gap `g` in `1..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FluxProfile {
    pub gaps: Vec<GapFlux>,
}

impl FluxProfile {
    pub fn max_size(&self) -> usize {
        self.gaps.iter().map(|g| g.size).max().unwrap_or(0)
    }

    pub fn max_weight(&self) -> usize {
        self.gaps.iter().map(|g| g.weight).max().unwrap_or(0)
    }

    pub fn mean_size(&self) -> Rational {
        let total: usize = self.gaps.iter().map(|g| g.size).sum();
        Rational::new(total as i64, self.gaps.len() as i64)
    }

    pub fn mean_weight(&self) -> Rational {
        let total: usize = self.gaps.iter().map(|g| g.weight).sum();
        Rational::new(total as i64, self.gaps.len() as i64)
    }

    pub fn total_size(&self) -> u64 {
        self.gaps.iter().map(|g| g.size as u64).sum()
    }
}

/// Dependency flux at each inter-word gap.
pub fn flux<T: Tree + ?Sized>(t: &T, a: &Arrangement) -> Result<FluxProfile, MetricError> {
    super::check_size(t, a)?;
    let n = t.num_vertices();
    if n < 2 {
        return Err(MetricError::NoEdges);
    }
    // Edges as position pairs (lo, hi).
    let spans: Vec<(usize, usize)> = t
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (a.position(u), a.position(v));
            (p.min(q), p.max(q))
        })
        .collect();
    let mut matcher = ForestMatcher::new(n);
    let mut active: Vec<(usize, usize)> = Vec::new();
    let gaps = (1..n)
        .map(|g| {
            active.clear();
            active.extend(spans.iter().filter(|&&(lo, hi)| lo <= g && g < hi));
            GapFlux {
                size: active.len(),
                weight: matcher.max_matching(&active),
            }
        })
        .collect();
    Ok(FluxProfile { gaps })
}

/// Maximum matching on a forest by repeatedly matching a leaf to its neighbour.
struct ForestMatcher {
    degree: Vec<usize>,
    incident: Vec<Vec<usize>>,
    matched: Vec<bool>,
}

impl ForestMatcher {
    fn new(n: usize) -> Self {
        ForestMatcher {
            degree: vec![0; n + 1],
            incident: vec![Vec::new(); n + 1],
            matched: vec![false; n + 1],
        }
    }

    fn max_matching(&mut self, edges: &[(usize, usize)]) -> usize {
        for (i, &(u, v)) in edges.iter().enumerate() {
            self.incident[u].push(i);
            self.incident[v].push(i);
        }
        let mut leaves: Vec<usize> = Vec::new();
        for &(u, v) in edges {
            self.degree[u] = self.incident[u].len();
            self.degree[v] = self.incident[v].len();
        }
        for &(u, v) in edges {
            for w in [u, v] {
                if self.degree[w] == 1 && !leaves.contains(&w) {
                    leaves.push(w);
                }
            }
        }
        let mut size = 0;
        while let Some(leaf) = leaves.pop() {
            if self.matched[leaf] || self.degree[leaf] == 0 {
                continue;
            }
            // The one live neighbour of the leaf.
            let Some(partner) = self.incident[leaf]
                .iter()
                .map(|&e| other(edges[e], leaf))
                .find(|&w| !self.matched[w])
            else {
                continue;
            };
            self.matched[leaf] = true;
            self.matched[partner] = true;
            size += 1;
            for &e in &self.incident[partner] {
                let w = other(edges[e], partner);
                if !self.matched[w] {
                    self.degree[w] -= 1;
                    if self.degree[w] == 1 {
                        leaves.push(w);
                    }
                }
            }
        }
        for &(u, v) in edges {
            for w in [u, v] {
                self.incident[w].clear();
                self.degree[w] = 0;
                self.matched[w] = false;
            }
        }
        size
    }
}

fn other((u, v): (usize, usize), w: usize) -> usize {
    if u == w {
        v
    } else {
        u
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FreeTree;
    use crate::linarr::sum_edge_lengths;
    use crate::HeadVector;

    #[test]
    fn crossed_sentence_gap_two() {
        let t = "2 3 0 3 2 7 5 4 3".parse::<HeadVector>().unwrap().to_tree();
        let f = flux(&t, &Arrangement::identity(9)).unwrap();
        assert_eq!(f.gaps[1], GapFlux { size: 2, weight: 1 });
        assert_eq!(f.total_size(), 19);
    }

    #[test]
    fn path_and_singleton() {
        let f = flux(&FreeTree::path(3), &Arrangement::identity(3)).unwrap();
        assert_eq!(f.gaps[0], GapFlux { size: 1, weight: 1 });
        assert_eq!(
            flux(&FreeTree::singleton(), &Arrangement::identity(1)),
            Err(MetricError::NoEdges)
        );
    }

    #[test]
    fn weight_is_a_matching() {
        // Edges spanning gap 2 of P4 arranged as 1 3 2 4 ... well, star-like flux:
        // star with hub at position 1 - all spanning edges share the hub.
        let s = FreeTree::star(6);
        let f = flux(&s, &Arrangement::identity(6)).unwrap();
        assert!(f.gaps.iter().all(|g| g.weight == 1));
        assert_eq!(f.max_size(), 5);
        // Reversed path: 1..n at positions n..1, a path arranged as 1 3 5 2 4 6.
        let p = FreeTree::path(6);
        let a = Arrangement::from_order(&[1, 3, 5, 2, 4, 6]).unwrap();
        let f = flux(&p, &a).unwrap();
        assert_eq!(f.total_size(), sum_edge_lengths(&p, &a).unwrap());
        // gap 3: spanned by all five edges; path 1-2-3-4-5-6 has a matching of 3.
        assert_eq!(f.gaps[2], GapFlux { size: 5, weight: 3 });
    }
}
