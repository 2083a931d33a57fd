//! Tree types, head vectors and linear arrangements.
//!
//! Vertices are 1-based everywhere: vertex `i` of a tree built from a head
//! vector is the word at sentence position `i`. Internally every per-vertex
//! table has length `n + 1` and slot 0 is unused, so vertex ids index the
//! tables directly.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use thiserror::Error;

/// Vertex identifier, in `1..=n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("empty head vector")]
    Empty,
    #[error("head vector has no root (no entry equal to 0)")]
    NoRoot,
    #[error("head vector has {count} roots (entries equal to 0)")]
    MultipleRoots { count: usize },
    #[error("word {index} is its own head")]
    SelfHead { index: usize },
    #[error("head {head} of word {index} is out of range 0..={n}")]
    OutOfRange { index: usize, head: usize, n: usize },
    #[error("head vector contains a cycle")]
    Cycle,
    #[error("invalid token {token:?} in head vector")]
    BadToken { token: String },
    #[error("edge set does not form a tree")]
    NotATree,
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("a tree needs at least one vertex")]
    NoVertices,
    #[error("not a permutation of 1..={n}")]
    NotAPermutation { n: usize },
}

/// Read access shared by free and rooted trees.
pub trait Tree {
    fn num_vertices(&self) -> usize;

    /// Neighbours of `v`, ignoring any orientation.
    fn neighbors(&self, v: Vertex) -> &[Vertex];

    /// Edges in a fixed order. For rooted trees each pair is `(head, dependent)`.
    fn edges(&self) -> &[(Vertex, Vertex)];

    fn num_edges(&self) -> usize {
        self.num_vertices().saturating_sub(1)
    }

    fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.num_vertices()
    }
}

/// Undirected tree on vertices `1..=n`. Two trees are equal when they have
/// the same vertices and the same edge set, whatever the edge order.
#[derive(Debug, Clone)]
pub struct FreeTree {
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl FreeTree {
    /// The tree with a single vertex and no edges.
    pub fn singleton() -> Self {
        FreeTree {
            adjacency: vec![Vec::new(), Vec::new()],
            edges: Vec::new(),
        }
    }

    /// Builds a free tree from `n - 1` edges over `1..=n`.
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adjacency[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        if edges.len() != n - 1 || !is_connected(&adjacency) {
            return Err(GraphError::NotATree);
        }
        Ok(FreeTree {
            adjacency,
            edges: edges.to_vec(),
        })
    }

    /// Orients the tree away from `root`.
    pub fn root_at(&self, root: Vertex) -> Result<RootedTree, GraphError> {
        let n = self.num_vertices();
        if root == 0 || root > n {
            return Err(GraphError::VertexOutOfRange { vertex: root, n });
        }
        let mut parent = vec![0; n + 1];
        let mut seen = vec![false; n + 1];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        Ok(RootedTree::from_parents(self.clone(), root, parent))
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edge_list(n.max(1), &edges).expect("path graph is a tree")
    }

    /// Star with hub 1.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (2..=n).map(|i| (1, i)).collect();
        Self::from_edge_list(n.max(1), &edges).expect("star graph is a tree")
    }

    /// Applies the vertex relabeling `v -> relabel[v]` (slot 0 ignored).
    pub fn relabeled(&self, relabel: &[Vertex]) -> Self {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        Self::from_edge_list(self.num_vertices(), &edges).expect("relabeling preserves treeness")
    }
}

impl FreeTree {
    fn edge_set(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges
    }
}

impl PartialEq for FreeTree {
    fn eq(&self, other: &Self) -> bool {
        self.num_vertices() == other.num_vertices() && self.edge_set() == other.edge_set()
    }
}

impl Eq for FreeTree {}

impl Hash for FreeTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num_vertices().hash(state);
        self.edge_set().hash(state);
    }
}

impl Tree for FreeTree {
    fn num_vertices(&self) -> usize {
        self.adjacency.len() - 1
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }
}

fn is_connected(adjacency: &[Vec<Vertex>]) -> bool {
    let n = adjacency.len() - 1;
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1];
    seen[1] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// A free tree with a designated root; edges point from head to dependent.
/// Equality compares the head of every vertex.
#[derive(Debug, Clone)]
pub struct RootedTree {
    free: FreeTree,
    root: Vertex,
    parent: Vec<Vertex>,
    children: Vec<Vec<Vertex>>,
    arcs: Vec<(Vertex, Vertex)>,
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root && self.parent == other.parent
    }
}

impl Eq for RootedTree {}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.root.hash(state);
        self.parent.hash(state);
    }
}

impl RootedTree {
    fn from_parents(free: FreeTree, root: Vertex, parent: Vec<Vertex>) -> Self {
        let n = free.num_vertices();
        let mut children = vec![Vec::new(); n + 1];
        let mut arcs = Vec::with_capacity(n.saturating_sub(1));
        for v in 1..=n {
            if v != root {
                children[parent[v]].push(v);
                arcs.push((parent[v], v));
            }
        }
        RootedTree {
            free,
            root,
            parent,
            children,
            arcs,
        }
    }

    /// Parses a head vector: entry `i` (1-based) is the head of word `i`,
    /// 0 marks the root.
    pub fn from_head_vector(heads: &[usize]) -> Result<Self, GraphError> {
        let n = heads.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let roots = heads.iter().filter(|&&h| h == 0).count();
        match roots {
            0 => return Err(GraphError::NoRoot),
            1 => {}
            count => return Err(GraphError::MultipleRoots { count }),
        }
        for (i, &h) in heads.iter().enumerate() {
            let index = i + 1;
            if h > n {
                return Err(GraphError::OutOfRange { index, head: h, n });
            }
            if h == index {
                return Err(GraphError::SelfHead { index });
            }
        }
        // One root and n - 1 arcs: it's a tree iff every word reaches the root.
        let mut parent = vec![0; n + 1];
        parent[1..].copy_from_slice(heads);
        let root = heads.iter().position(|&h| h == 0).unwrap() + 1;
        let mut state = vec![0u8; n + 1]; // 0 unvisited, 1 on current walk, 2 reaches root
        state[root] = 2;
        for start in 1..=n {
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                v = parent[v];
            }
            if state[v] == 1 {
                return Err(GraphError::Cycle);
            }
            let mut v = start;
            while state[v] == 1 {
                state[v] = 2;
                v = parent[v];
            }
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        let mut edges = Vec::with_capacity(n - 1);
        for v in 1..=n {
            if v != root {
                adjacency[v].push(parent[v]);
                adjacency[parent[v]].push(v);
                edges.push((parent[v], v));
            }
        }
        let free = FreeTree { adjacency, edges };
        Ok(Self::from_parents(free, root, parent))
    }

    pub fn to_head_vector(&self) -> HeadVector {
        HeadVector(self.parent[1..].to_vec())
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    /// Head of `v`, `None` for the root.
    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        (v != self.root).then(|| self.parent[v])
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.children[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        usize::from(v != self.root)
    }

    pub fn as_free(&self) -> &FreeTree {
        &self.free
    }

    pub fn to_free(&self) -> FreeTree {
        self.free.clone()
    }

    /// Depth of every vertex (root at depth 0), indexed by vertex.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.num_vertices() + 1];
        for v in self.bfs_order() {
            for &c in &self.children[v] {
                depth[c] = depth[v] + 1;
            }
        }
        depth
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> Vec<Vertex> {
        let mut order = Vec::with_capacity(self.num_vertices());
        order.push(self.root);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            order.extend_from_slice(&self.children[v]);
            i += 1;
        }
        order
    }

    /// Number of vertices in the subtree of every vertex, indexed by vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.num_vertices() + 1];
        size[0] = 0;
        for &v in self.bfs_order().iter().rev() {
            if v != self.root {
                size[self.parent[v]] += size[v];
            }
        }
        size
    }

    /// Chain `1 -> 2 -> ... -> n` rooted at 1.
    pub fn chain(n: usize) -> Self {
        FreeTree::path(n).root_at(1).expect("vertex 1 exists")
    }
}

impl Tree for RootedTree {
    fn num_vertices(&self) -> usize {
        self.free.num_vertices()
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.free.neighbors(v)
    }

    fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }
}

/// Validated head vector. Displays as space-separated integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeadVector(Vec<usize>);

impl HeadVector {
    pub fn heads(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_tree(&self) -> RootedTree {
        RootedTree::from_head_vector(&self.0).expect("head vector validated on construction")
    }
}

impl TryFrom<Vec<usize>> for HeadVector {
    type Error = GraphError;

    fn try_from(heads: Vec<usize>) -> Result<Self, Self::Error> {
        RootedTree::from_head_vector(&heads)?;
        Ok(HeadVector(heads))
    }
}

impl FromStr for HeadVector {
    type Err = GraphError;

    /// Whitespace-separated base-10 integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let heads = s
            .split_ascii_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| GraphError::BadToken {
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        HeadVector::try_from(heads)
    }
}

impl fmt::Display for HeadVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// Bijection between vertices and positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    position: Vec<usize>,
    inverse: Vec<Vertex>,
}

impl Arrangement {
    pub fn identity(n: usize) -> Self {
        let ids: Vec<usize> = (0..=n).collect();
        Arrangement {
            position: ids.clone(),
            inverse: ids,
        }
    }

    /// `positions[v - 1]` is the position of vertex `v`.
    pub fn from_positions(positions: &[usize]) -> Result<Self, GraphError> {
        let n = positions.len();
        let mut position = vec![0; n + 1];
        position[1..].copy_from_slice(positions);
        let inverse = invert(&position).ok_or(GraphError::NotAPermutation { n })?;
        Ok(Arrangement { position, inverse })
    }

    /// `order[p - 1]` is the vertex at position `p`.
    pub fn from_order(order: &[Vertex]) -> Result<Self, GraphError> {
        let n = order.len();
        let mut inverse = vec![0; n + 1];
        inverse[1..].copy_from_slice(order);
        let position = invert(&inverse).ok_or(GraphError::NotAPermutation { n })?;
        Ok(Arrangement { position, inverse })
    }

    pub(crate) fn from_order_unchecked(inverse: Vec<Vertex>) -> Self {
        let mut position = vec![0; inverse.len()];
        for (p, &v) in inverse.iter().enumerate().skip(1) {
            position[v] = p;
        }
        Arrangement { position, inverse }
    }

    pub fn len(&self) -> usize {
        self.position.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    pub fn vertex_at(&self, p: usize) -> Vertex {
        self.inverse[p]
    }

    /// Positions of vertices `1..=n` in vertex order.
    pub fn positions(&self) -> &[usize] {
        &self.position[1..]
    }

    /// Vertices at positions `1..=n` in position order.
    pub fn order(&self) -> &[Vertex] {
        &self.inverse[1..]
    }
}

fn invert(map: &[usize]) -> Option<Vec<usize>> {
    let n = map.len() - 1;
    let mut inv = vec![0; n + 1];
    for (i, &m) in map.iter().enumerate().skip(1) {
        if m == 0 || m > n || inv[m] != 0 {
            return None;
        }
        inv[m] = i;
    }
    Some(inv)
}
