//! Minimum linear arrangement of free trees without constraints.
//!
//! Both solvers share the same recursive layout. A tree is either free
//! (unanchored) or anchored at a vertex `r`, meaning an external edge leaves
//! `r` towards one end of the block; the cost of an anchored block is its
//! sum of edge lengths plus the number of block vertices between `r` and
//! that end.
//!
//! Let `u` be the centroid (unanchored) or the anchor (anchored), and let
//! `T_0, T_1, ...` be the subtrees hanging from `u` by decreasing size.
//!
//! * Unanchored, `p = 0`: cut the edge to `T_0`, lay out `T_0` anchored on
//!   its right end followed by the rest anchored on its left end.
//! * Unanchored, `p >= 1`: `T_0, T_2, .., T_{2p-2}` go to the left (outer to
//!   inner), `T_1, T_3, .., T_{2p-1}` to the right, and the remaining tree
//!   around `u` is solved unanchored in the middle. Since `u` has `p` edges
//!   on each side, the middle's cost does not depend on where `u` lands.
//! * Anchored at `p >= 0`: `2p + 1` subtrees leave; the `p` odd-indexed ones
//!   go on the anchor side and the `p + 1` even-indexed ones on the far side,
//!   and the remaining tree is again solved unanchored.
//!
//! The solvers differ in how `p` is chosen. [`Strategy::Chung`] computes it
//! from subtree sizes alone. [`Strategy::Shiloach`] evaluates every
//! admissible `p` with memoized subproblems and keeps the cheapest.

use std::collections::HashMap;

use crate::graphs::{Arrangement, FreeTree, Tree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Strategy {
    Chung,
    Shiloach,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Anchor {
    None,
    /// External edge leaves from the left end of the block.
    Left,
    /// External edge leaves from the right end of the block.
    Right,
}

/// Forest with removable edges plus scratch space for traversals.
struct Forest {
    adjacency: Vec<Vec<Vertex>>,
    parent: Vec<Vertex>,
    size: Vec<usize>,
    order: Vec<Vertex>,
}

impl Forest {
    fn new(t: &FreeTree) -> Self {
        let n = t.num_vertices();
        Forest {
            adjacency: (0..=n)
                .map(|v| {
                    if v == 0 {
                        Vec::new()
                    } else {
                        t.neighbors(v).to_vec()
                    }
                })
                .collect(),
            parent: vec![0; n + 1],
            size: vec![0; n + 1],
            order: Vec::with_capacity(n),
        }
    }

    fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.adjacency[u].retain(|&w| w != v);
        self.adjacency[v].retain(|&w| w != u);
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
    }

    /// Fills `order`, `parent` and `size` for the component of `root`,
    /// oriented away from `root`. Returns the component size.
    fn orient(&mut self, root: Vertex) -> usize {
        self.order.clear();
        self.order.push(root);
        self.parent[root] = 0;
        let mut i = 0;
        while i < self.order.len() {
            let u = self.order[i];
            for j in 0..self.adjacency[u].len() {
                let v = self.adjacency[u][j];
                if v != self.parent[u] {
                    self.parent[v] = u;
                    self.order.push(v);
                }
            }
            i += 1;
        }
        for i in (0..self.order.len()).rev() {
            let u = self.order[i];
            self.size[u] = 1 + self.adjacency[u]
                .iter()
                .filter(|&&v| v != self.parent[u])
                .map(|&v| self.size[v])
                .sum::<usize>();
        }
        self.order.len()
    }

    fn centroid(&mut self, v: Vertex) -> Vertex {
        let n = self.orient(v);
        let mut u = v;
        loop {
            let heavy = self.adjacency[u]
                .iter()
                .copied()
                .find(|&w| w != self.parent[u] && self.size[w] * 2 > n);
            match heavy {
                Some(w) => u = w,
                None => return u,
            }
        }
    }

    /// Subtrees hanging from `u` as `(size, neighbour)`, largest first.
    fn branches(&mut self, u: Vertex) -> (usize, Vec<(usize, Vertex)>) {
        let n = self.orient(u);
        let mut ord: Vec<(usize, Vertex)> = self.adjacency[u]
            .iter()
            .map(|&v| (self.size[v], v))
            .collect();
        ord.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        (n, ord)
    }

    fn component_key(&mut self, v: Vertex, anchor: Option<Vertex>) -> Vec<Vertex> {
        self.orient(v);
        let mut key = self.order.clone();
        key.sort_unstable();
        if let Some(r) = anchor {
            key.push(r);
        }
        key
    }
}

/// Largest admissible `p` for which the subtree left in the middle is still
/// too large to be worth keeping there, or 0.
///
/// With `rest` the size of the middle once `T_0..=T_{2p}` are removed, the
/// unanchored rule keeps `p` while `n_{2p} > floor((rest + 2) / 2)` and the
/// anchored rule while `n_{2p+1} > floor((rest + 1) / 2)`.
fn chung_p(n: usize, sizes: &[usize], anchor: Anchor) -> usize {
    let k = sizes.len();
    match anchor {
        Anchor::None => {
            let mut p = k / 2;
            while p > 0 {
                let idx = 2 * p;
                if idx < k {
                    let removed: usize = sizes[..=idx].iter().sum();
                    let rest = n - removed;
                    if sizes[idx] > (rest + 2) / 2 {
                        return p;
                    }
                }
                p -= 1;
            }
            0
        }
        Anchor::Left | Anchor::Right => {
            let mut p = k.saturating_sub(1) / 2;
            while p > 0 {
                let idx = 2 * p + 1;
                if idx < k {
                    let removed: usize = sizes[..=idx].iter().sum();
                    let rest = n - removed;
                    if sizes[idx] > rest.div_ceil(2) {
                        return p;
                    }
                }
                p -= 1;
            }
            0
        }
    }
}

struct Solver {
    forest: Forest,
    position: Vec<usize>,
    strategy: Strategy,
    /// Best `(cost, p)` per component, for the exhaustive-`p` strategy.
    memo: HashMap<Vec<Vertex>, (u64, usize)>,
}

impl Solver {
    /// Lays out the component of `v` starting at position `start` and returns
    /// its (anchored) cost.
    fn place(&mut self, v: Vertex, anchor: Anchor, start: usize) -> u64 {
        let (u, n, ord) = self.pivot(v, anchor);
        if n == 1 {
            self.position[u] = start;
            return 0;
        }
        let p = match self.strategy {
            Strategy::Chung => {
                let sizes: Vec<usize> = ord.iter().map(|o| o.0).collect();
                chung_p(n, &sizes, anchor)
            }
            Strategy::Shiloach => self.best(v, anchor).1,
        };
        match anchor {
            Anchor::None if p == 0 => {
                let (n0, v0) = ord[0];
                self.forest.remove_edge(u, v0);
                let c1 = self.place(v0, Anchor::Right, start);
                let c2 = self.place(u, Anchor::Left, start + n0);
                self.forest.add_edge(u, v0);
                c1 + c2 + 1
            }
            _ => self.place_sides(u, n, &ord, p, anchor, start),
        }
    }

    /// Centroid or anchor of the component of `v`, with its subtrees.
    fn pivot(&mut self, v: Vertex, anchor: Anchor) -> (Vertex, usize, Vec<(usize, Vertex)>) {
        let u = match anchor {
            Anchor::None => self.forest.centroid(v),
            _ => v,
        };
        let (n, ord) = self.forest.branches(u);
        (u, n, ord)
    }

    fn place_sides(
        &mut self,
        u: Vertex,
        n: usize,
        ord: &[(usize, Vertex)],
        p: usize,
        anchor: Anchor,
        start: usize,
    ) -> u64 {
        let moved = match anchor {
            Anchor::None => 2 * p,
            _ => 2 * p + 1,
        };
        for &(_, w) in &ord[..moved] {
            self.forest.remove_edge(u, w);
        }
        let removed: usize = ord[..moved].iter().map(|o| o.0).sum();
        let middle = n - removed;
        // Indices of subtrees on the left, outer to inner, and on the right,
        // inner to outer, for a block anchored on its left end (or free).
        let (mut near, mut far): (Vec<usize>, Vec<usize>) = match anchor {
            Anchor::None => (
                (0..moved).step_by(2).collect(),
                (1..moved).step_by(2).collect(),
            ),
            _ => (
                (1..moved).step_by(2).collect(),
                (0..moved).step_by(2).collect(),
            ),
        };
        far.reverse();
        let mut cost: u64 = 0;
        let mut pos = start;
        if anchor == Anchor::Right {
            // Mirror image: the anchor side is on the right.
            std::mem::swap(&mut near, &mut far);
            near.reverse();
            far.reverse();
        }
        for &i in &near {
            cost += self.place(ord[i].1, Anchor::Right, pos);
            pos += ord[i].0;
        }
        cost += self.place(u, Anchor::None, pos);
        pos += middle;
        for &i in &far {
            cost += self.place(ord[i].1, Anchor::Left, pos);
            pos += ord[i].0;
        }
        debug_assert_eq!(pos, start + n);
        cost += side_cost(ord, p, middle, anchor);
        for &(_, w) in &ord[..moved] {
            self.forest.add_edge(u, w);
        }
        cost
    }

    /// Cost and choice of `p` minimizing over every admissible value.
    fn best(&mut self, v: Vertex, anchor: Anchor) -> (u64, usize) {
        let key_anchor = match anchor {
            Anchor::None => None,
            _ => Some(v),
        };
        let key = self.forest.component_key(v, key_anchor);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let (u, n, ord) = self.pivot(v, anchor);
        let result = if n == 1 {
            (0, 0)
        } else {
            let k = ord.len();
            let side: Vec<u64> = ord
                .iter()
                .map(|&(_, w)| {
                    self.forest.remove_edge(u, w);
                    let c = self.best(w, Anchor::Left).0;
                    self.forest.add_edge(u, w);
                    c
                })
                .collect();
            let mut best = (u64::MAX, 0);
            match anchor {
                Anchor::None => {
                    let (_, v0) = ord[0];
                    self.forest.remove_edge(u, v0);
                    let rest = self.best(u, Anchor::Left).0;
                    self.forest.add_edge(u, v0);
                    best = (side[0] + rest + 1, 0);
                    for p in 1..=k / 2 {
                        let c = self.middle_cost(u, n, &ord, &side, p, anchor);
                        if c < best.0 {
                            best = (c, p);
                        }
                    }
                }
                _ => {
                    for p in 0..=(k - 1) / 2 {
                        let c = self.middle_cost(u, n, &ord, &side, p, anchor);
                        if c < best.0 {
                            best = (c, p);
                        }
                    }
                }
            }
            best
        };
        self.memo.insert(key, result);
        result
    }

    fn middle_cost(
        &mut self,
        u: Vertex,
        n: usize,
        ord: &[(usize, Vertex)],
        side: &[u64],
        p: usize,
        anchor: Anchor,
    ) -> u64 {
        let moved = match anchor {
            Anchor::None => 2 * p,
            _ => 2 * p + 1,
        };
        for &(_, w) in &ord[..moved] {
            self.forest.remove_edge(u, w);
        }
        let middle = n - ord[..moved].iter().map(|o| o.0).sum::<usize>();
        let c = self.best(u, Anchor::None).0;
        for &(_, w) in &ord[..moved] {
            self.forest.add_edge(u, w);
        }
        c + side[..moved].iter().sum::<u64>() + side_cost(ord, p, middle, anchor)
    }
}

/// Lengths contributed by the edges from the pivot to the moved subtrees
/// (and by the anchor), beyond the subtrees' own anchored costs.
fn side_cost(ord: &[(usize, Vertex)], p: usize, middle: usize, anchor: Anchor) -> u64 {
    let p = p as u64;
    let middle = middle as u64;
    match anchor {
        Anchor::None => {
            let spans: u64 = ord[..2 * p as usize]
                .iter()
                .enumerate()
                .map(|(i, o)| (i / 2) as u64 * o.0 as u64)
                .sum();
            spans + p * (middle + 1)
        }
        _ => {
            let spans: u64 = ord[..2 * p as usize + 1]
                .iter()
                .enumerate()
                .map(|(i, o)| i.div_ceil(2) as u64 * o.0 as u64)
                .sum();
            spans + (p + 1) * (middle + 1) - 1
        }
    }
}

pub(crate) fn solve(t: &FreeTree, strategy: Strategy) -> (u64, Arrangement) {
    let n = t.num_vertices();
    let mut solver = Solver {
        forest: Forest::new(t),
        position: vec![0; n + 1],
        strategy,
        memo: HashMap::new(),
    };
    let cost = solver.place(1, Anchor::None, 1);
    let mut order = vec![0; n + 1];
    for v in 1..=n {
        order[solver.position[v]] = v;
    }
    (cost, Arrangement::from_order_unchecked(order))
}
