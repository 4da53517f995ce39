use crate::dsu::DsuForest;
use crate::error::{Error, Result};
use crate::model::DistanceMatrix;

/// A spanning tree of the distance graph over a matrix's taxa.
///
/// Edges are stored as `(u, v)` taxon-index pairs with `u < v`, sorted, with
/// weights read from the source matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    taxa: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
}

impl SpanningTree {
    /// Validates that `pairs` span the matrix taxa without a cycle.
    pub fn new(d: &DistanceMatrix, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = d.len();
        let mut dsu = DsuForest::with_len(n);
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for (a, b) in pairs {
            if a >= n || b >= n || a == b {
                return Err(Error::SpanningTree(format!("bad edge ({a}, {b})")));
            }
            let (ra, rb) = (dsu.find(a), dsu.find(b));
            if ra == rb {
                return Err(Error::SpanningTree(format!(
                    "edge {}-{} closes a cycle",
                    d.taxon(a),
                    d.taxon(b)
                )));
            }
            dsu.union(ra, rb)?;
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            edges.push((u, v, d.get(u, v)));
        }
        if edges.len() + 1 != n.max(1) {
            return Err(Error::SpanningTree(format!(
                "{} edges do not span {} taxa",
                edges.len(),
                n
            )));
        }
        edges.sort_by_key(|x| (x.0, x.1));
        Ok(SpanningTree {
            taxa: d.taxa().to_vec(),
            edges,
        })
    }

    /// Builds from taxon-name pairs.
    pub fn from_names<'a>(
        d: &DistanceMatrix,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let idx = pairs
            .into_iter()
            .map(|(a, b)| Ok((d.require_index(a)?, d.require_index(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, idx)
    }

    pub fn taxa(&self) -> &[String] {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taxa.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Edge endpoints as index pairs, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(u, v, _)| (u, v)).collect()
    }

    /// Edges as name pairs, each pair ordered lexicographically, sorted.
    pub fn edge_names(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(u, v, _)| {
                let (a, b) = (&self.taxa[u], &self.taxa[v]);
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|&(u, v, _)| (u, v).cmp(&key))
            .is_ok()
    }

    pub fn has_edge_named(&self, a: &str, b: &str) -> bool {
        let pos = |t: &str| self.taxa.iter().position(|x| x == t);
        match (pos(a), pos(b)) {
            (Some(x), Some(y)) => self.has_edge(x, y),
            _ => false,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.taxa.len()];
        for &(u, v, _) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.taxa.len()];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Taxon indices of degree one.
    pub fn leaves(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == 1)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> DistanceMatrix {
        let names = ["a", "b", "c", "d"].map(String::from).to_vec();
        let m = [
            [0.0, 2.0, 3.0, 3.0],
            [2.0, 0.0, 3.0, 3.0],
            [3.0, 3.0, 0.0, 2.0],
            [3.0, 3.0, 2.0, 0.0],
        ];
        DistanceMatrix::from_fn(names, |i, j| m[i][j]).unwrap()
    }

    #[test]
    fn validates_spanning() {
        let d = q();
        assert!(SpanningTree::from_names(&d, [("a", "b"), ("c", "d")]).is_err());
        assert!(SpanningTree::from_names(&d, [("a", "b"), ("b", "a"), ("c", "d")]).is_err());
        let t = SpanningTree::from_names(&d, [("a", "b"), ("c", "d"), ("c", "a")]).unwrap();
        assert_eq!(t.total_weight(), 7.0);
        assert!(t.has_edge_named("a", "c"));
        assert!(!t.has_edge_named("b", "d"));
    }

    #[test]
    fn single_taxon_tree_is_empty() {
        let d = DistanceMatrix::new(vec!["x".into()], vec![0.0]).unwrap();
        let t = SpanningTree::new(&d, []).unwrap();
        assert!(t.edges().is_empty());
    }
}
