//! Lazy exhaustive enumeration of trees.

use crate::graphs::{FreeTree, RootedTree, Tree};

use super::{prufer_decode, tree_from_levels};

/// Every labeled free tree on `1..=n`, via Prüfer sequences in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct AllLabeledFreeTrees {
    n: usize,
    sequence: Vec<usize>,
    done: bool,
}

impl AllLabeledFreeTrees {
    pub fn new(n: usize) -> Self {
        AllLabeledFreeTrees {
            n,
            sequence: vec![1; n.saturating_sub(2)],
            done: n == 0,
        }
    }
}

impl Iterator for AllLabeledFreeTrees {
    type Item = FreeTree;

    fn next(&mut self) -> Option<FreeTree> {
        if self.done {
            return None;
        }
        let tree = match self.n {
            1 => FreeTree::singleton(),
            _ => prufer_decode(&self.sequence),
        };
        // Odometer increment over [1, n]^(n-2).
        self.done = true;
        for digit in self.sequence.iter_mut().rev() {
            if *digit < self.n {
                *digit += 1;
                self.done = false;
                break;
            }
            *digit = 1;
        }
        Some(tree)
    }
}

/// Every labeled rooted tree: each labeled free tree under every root.
#[derive(Debug, Clone)]
pub struct AllLabeledRootedTrees {
    free: AllLabeledFreeTrees,
    current: Option<FreeTree>,
    root: usize,
}

impl AllLabeledRootedTrees {
    pub fn new(n: usize) -> Self {
        let mut free = AllLabeledFreeTrees::new(n);
        let current = free.next();
        AllLabeledRootedTrees {
            free,
            current,
            root: 1,
        }
    }
}

impl Iterator for AllLabeledRootedTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        let tree = self.current.as_ref()?;
        let rooted = tree.root_at(self.root).expect("root within 1..=n");
        if self.root == tree.num_vertices() {
            self.root = 1;
            self.current = self.free.next();
        } else {
            self.root += 1;
        }
        Some(rooted)
    }
}

/// Every unlabeled rooted tree once, as canonical level sequences in
/// decreasing lexicographic order (Beyer and Hedetniemi), constant amortized
/// time per tree.
#[derive(Debug, Clone)]
pub struct AllUnlabeledRootedTrees {
    /// Depth of the vertex at each preorder index; `levels[0] = 0` is the root.
    levels: Vec<usize>,
    done: bool,
}

impl AllUnlabeledRootedTrees {
    pub fn new(n: usize) -> Self {
        AllUnlabeledRootedTrees {
            levels: (0..n).collect(),
            done: n == 0,
        }
    }
}

impl Iterator for AllUnlabeledRootedTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.done {
            return None;
        }
        let tree = tree_from_levels(&self.levels);
        let levels = &mut self.levels;
        match levels.iter().rposition(|&l| l > 1) {
            None => self.done = true,
            Some(p) => {
                let q = levels[..p]
                    .iter()
                    .rposition(|&l| l == levels[p] - 1)
                    .expect("a shallower vertex precedes p");
                let shift = p - q;
                for i in p..levels.len() {
                    levels[i] = levels[i - shift];
                }
            }
        }
        Some(tree)
    }
}

/// Every unlabeled free tree once, in constant amortized time per tree
/// (Wright, Richmond, Odlyzko and McKay). Trees are produced as level
/// sequences rooted at a centre.
#[derive(Debug, Clone)]
pub struct AllUnlabeledFreeTrees {
    n: usize,
    /// 1-based level sequence (root level 1) and parent indices.
    level: Vec<i64>,
    parent: Vec<i64>,
    p: i64,
    q: i64,
    h1: i64,
    h2: i64,
    r: i64,
    c: i64,
    first: bool,
    done: bool,
}

const INF: i64 = i64::MAX;

impl AllUnlabeledFreeTrees {
    pub fn new(n: usize) -> Self {
        let mut gen = AllUnlabeledFreeTrees {
            n,
            level: vec![0; n + 2],
            parent: vec![0; n + 2],
            p: 0,
            q: 0,
            h1: 0,
            h2: 0,
            r: 0,
            c: 0,
            first: true,
            done: n == 0,
        };
        if n >= 4 {
            gen.init();
        }
        gen
    }

    fn init(&mut self) {
        let n = self.n as i64;
        let k = n / 2 + 1;
        self.p = if n == 4 { 3 } else { n };
        self.q = n - 1;
        self.h1 = k;
        self.h2 = n;
        self.r = k;
        self.c = if n % 2 == 0 { n + 1 } else { INF };
        for i in 1..=k {
            self.parent[i as usize] = i - 1;
            self.level[i as usize] = i;
        }
        self.parent[(k + 1) as usize] = 1;
        self.level[(k + 1) as usize] = 2;
        for i in k + 2..=n {
            self.parent[i as usize] = i - 1;
            self.level[i as usize] = i - k + 1;
        }
    }

    fn current(&self) -> FreeTree {
        let levels: Vec<usize> = (1..=self.n).map(|i| self.level[i] as usize - 1).collect();
        tree_from_levels(&levels).to_free()
    }

    fn advance(&mut self) {
        let n = self.n as i64;
        let l = |s: &Self, i: i64| s.level[i as usize];
        if self.q == 0 {
            self.done = true;
            return;
        }
        let mut fixit = false;
        if self.c == n + 1
            || (self.p == self.h2
                && ((l(self, self.h1) == l(self, self.h2) + 1 && n - self.h2 > self.r - self.h1)
                    || (l(self, self.h1) == l(self, self.h2)
                        && n - self.h2 + 1 < self.r - self.h1)))
        {
            if l(self, self.r) > 3 {
                self.p = self.r;
                self.q = self.parent[self.r as usize];
                if self.h1 == self.r {
                    self.h1 -= 1;
                }
                fixit = true;
            } else {
                self.p = self.r;
                self.r -= 1;
                self.q = 2;
            }
        }

        let mut need_r = false;
        let mut need_c = false;
        let mut need_h2 = false;
        if self.p <= self.h1 {
            self.h1 = self.p - 1;
        }
        if self.p <= self.r {
            need_r = true;
        } else if self.p <= self.h2 {
            need_h2 = true;
        } else if l(self, self.h2) == l(self, self.h1) - 1 && n - self.h2 == self.r - self.h1 {
            if self.p <= self.c {
                need_c = true;
            }
        } else {
            self.c = INF;
        }

        let old_p = self.p;
        let delta = self.q - self.p;
        let old_lq = l(self, self.q);
        let old_wq = self.parent[self.q as usize];
        self.p = INF;

        for i in old_p..=n {
            let iu = i as usize;
            self.level[iu] = self.level[(i + delta) as usize];
            if self.level[iu] == 2 {
                self.parent[iu] = 1;
            } else {
                self.p = i;
                self.q = if self.level[iu] == old_lq {
                    old_wq
                } else {
                    self.parent[(i + delta) as usize] - delta
                };
                self.parent[iu] = self.q;
            }
            if need_r && self.level[iu] == 2 {
                need_r = false;
                need_h2 = true;
                self.r = i - 1;
            }
            if need_h2 && self.level[iu] <= self.level[iu - 1] && i > self.r + 1 {
                need_h2 = false;
                self.h2 = i - 1;
                if l(self, self.h2) == l(self, self.h1) - 1 && n - self.h2 == self.r - self.h1 {
                    need_c = true;
                } else {
                    self.c = INF;
                }
            }
            if need_c {
                if self.level[iu] != l(self, self.h1 - self.h2 + i) - 1 {
                    need_c = false;
                    self.c = i;
                } else {
                    self.c = i + 1;
                }
            }
        }

        if fixit {
            self.r = n - self.h1 + 1;
            for i in self.r + 1..=n {
                self.level[i as usize] = i - self.r + 1;
                self.parent[i as usize] = i - 1;
            }
            self.parent[(self.r + 1) as usize] = 1;
            self.h2 = n;
            self.p = n;
            self.q = self.p - 1;
            self.c = INF;
        } else {
            if self.p == INF {
                self.p = if l(self, old_p - 1) != 2 {
                    old_p - 1
                } else {
                    old_p - 2
                };
                self.q = self.parent[self.p as usize];
            }
            if need_h2 {
                self.h2 = n;
                self.c = if l(self, self.h2) == l(self, self.h1) - 1 && self.h1 == self.r {
                    n + 1
                } else {
                    INF
                };
            }
        }
    }
}

impl Iterator for AllUnlabeledFreeTrees {
    type Item = FreeTree;

    fn next(&mut self) -> Option<FreeTree> {
        if self.done {
            return None;
        }
        if self.n <= 3 {
            self.done = true;
            return Some(FreeTree::path(self.n));
        }
        if !self.first {
            self.advance();
            if self.done {
                return None;
            }
        }
        self.first = false;
        Some(self.current())
    }
}
