//! Disjoint-set forest with union by size and path compression.
//!
//! Elements are dense `usize` ids created by [`DsuForest::make_set`]. On equal
//! sizes the smaller root id wins, so component labels are reproducible.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DsuError {
    #[error("element {0} is not a root")]
    NotARoot(usize),
    #[error("cannot union root {0} with itself")]
    SameRoot(usize),
    #[error("element {0} does not exist")]
    Unknown(usize),
}

#[derive(Debug, Clone, Default)]
pub struct DsuForest {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DsuForest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Forest with singletons `0..n`.
    pub fn with_len(n: usize) -> Self {
        DsuForest {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn make_set(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn is_root(&self, e: usize) -> bool {
        self.parent.get(e) == Some(&e)
    }

    pub fn find(&mut self, e: usize) -> usize {
        let mut root = e;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = e;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Root of `e` without compressing the path.
    pub fn find_immutable(&self, e: usize) -> usize {
        let mut root = e;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        root
    }

    /// Number of parent links between `e` and its root.
    pub fn depth(&self, e: usize) -> usize {
        let mut d = 0;
        let mut cur = e;
        while self.parent[cur] != cur {
            cur = self.parent[cur];
            d += 1;
        }
        d
    }

    /// Links two distinct roots; the larger component's root becomes the root
    /// of the union (smaller id on a tie). Returns the new root.
    pub fn union(&mut self, a: usize, b: usize) -> Result<usize, DsuError> {
        for x in [a, b] {
            if x >= self.parent.len() {
                return Err(DsuError::Unknown(x));
            }
            if self.parent[x] != x {
                return Err(DsuError::NotARoot(x));
            }
        }
        if a == b {
            return Err(DsuError::SameRoot(a));
        }
        let (winner, loser) = match self.size[a].cmp(&self.size[b]) {
            std::cmp::Ordering::Greater => (a, b),
            std::cmp::Ordering::Less => (b, a),
            std::cmp::Ordering::Equal => (a.min(b), a.max(b)),
        };
        self.parent[loser] = winner;
        self.size[winner] += self.size[loser];
        Ok(winner)
    }

    /// Finds both roots and unions them if they differ.
    pub fn union_elements(&mut self, a: usize, b: usize) -> Option<usize> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            None
        } else {
            Some(self.union(ra, rb).expect("both are distinct roots"))
        }
    }

    pub fn component_size(&mut self, e: usize) -> usize {
        let r = self.find(e);
        self.size[r]
    }
}
