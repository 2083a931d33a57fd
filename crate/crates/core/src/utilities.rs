//! Tree isomorphism through canonical codes.
//!
//! The code of a rooted tree is built bottom-up: a vertex's code is `1`,
//! followed by its children's codes in increasing lexicographic order, then
//! `0`. A single vertex has code `10`. Two rooted trees are isomorphic iff
//! their codes are equal. A free tree is encoded by rooting it at each centre
//! vertex and keeping the lexicographically smaller code.

use std::fmt;

use crate::graphs::{FreeTree, RootedTree, Tree, Vertex};
use crate::properties::centre;

/// Canonical string of `1`s and `0`s; see the module docs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsomorphismMode {
    Rooted,
    Free,
}

pub fn canonical_code(t: &RootedTree) -> CanonicalCode {
    CanonicalCode(code_from(t.as_free(), t.root()))
}

pub fn canonical_code_free(t: &FreeTree) -> CanonicalCode {
    let code = centre(t)
        .vertices
        .iter()
        .map(|&c| code_from(t, c))
        .min()
        .expect("trees have a centre");
    CanonicalCode(code)
}

/// Encodes `t` rooted at `root`, children before parents.
fn code_from<T: Tree + ?Sized>(t: &T, root: Vertex) -> String {
    let n = t.num_vertices();
    let mut parent = vec![0; n + 1];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in t.neighbors(v) {
            if w != parent[v] {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut child_codes: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[v]);
        kids.sort_unstable();
        let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        code.push('1');
        for k in &kids {
            code.push_str(k);
        }
        code.push('0');
        if v == root {
            return code;
        }
        child_codes[parent[v]].push(code);
    }
    unreachable!("the root is visited last")
}

/// Whether `a` and `b` are isomorphic; in free mode rootings are ignored.
/// Trees of different sizes are never isomorphic.
pub fn are_isomorphic(a: &RootedTree, b: &RootedTree, mode: IsomorphismMode) -> bool {
    match mode {
        IsomorphismMode::Rooted => {
            a.num_vertices() == b.num_vertices() && canonical_code(a) == canonical_code(b)
        }
        IsomorphismMode::Free => are_isomorphic_free(a.as_free(), b.as_free()),
    }
}

pub fn are_isomorphic_free(a: &FreeTree, b: &FreeTree) -> bool {
    if a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_code_free(a) == canonical_code_free(b)
}
