use std::collections::HashMap;

use crate::error::{Error, Result};

/// Symmetric matrix of pairwise distances between taxa.
///
/// Taxa keep the order they were given in; that order is the matrix index
/// used throughout the crate (`usize` taxon indices).
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    taxa: Vec<String>,
    index: HashMap<String, usize>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from row-major `values` (`n * n` entries).
    ///
    /// Requires a zero diagonal, strictly positive off-diagonal entries, unique
    /// taxon names and symmetry within [`crate::DEFAULT_TOL`] (relative to the
    /// entry magnitude); the stored matrix is the symmetrized average.
    pub fn new(taxa: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = taxa.len();
        if values.len() != n * n {
            return Err(Error::Matrix(format!(
                "{} taxa need {} entries, got {}",
                n,
                n * n,
                values.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, t) in taxa.iter().enumerate() {
            if index.insert(t.clone(), i).is_some() {
                return Err(Error::Matrix(format!("duplicate taxon {t:?}")));
            }
        }
        let mut values = values;
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::Matrix(format!(
                    "row {} has non-zero diagonal {}",
                    taxa[i],
                    values[i * n + i]
                )));
            }
            for j in (i + 1)..n {
                let a = values[i * n + j];
                let b = values[j * n + i];
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::Matrix(format!(
                        "row {} col {} is not finite",
                        taxa[i], taxa[j]
                    )));
                }
                if (a - b).abs() > crate::DEFAULT_TOL * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::Matrix(format!(
                        "row {} col {} mismatch ({a} vs {b})",
                        taxa[j], taxa[i]
                    )));
                }
                let m = 0.5 * (a + b);
                if !(m > 0.0) {
                    return Err(Error::Matrix(format!(
                        "row {} col {} must be positive, got {m}",
                        taxa[i], taxa[j]
                    )));
                }
                values[i * n + j] = m;
                values[j * n + i] = m;
            }
        }
        Ok(DistanceMatrix {
            taxa,
            index,
            values,
        })
    }

    /// Builds a matrix by evaluating `f(i, j)` for `i < j`.
    pub fn from_fn(taxa: Vec<String>, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let n = taxa.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                values[i * n + j] = d;
                values[j * n + i] = d;
            }
        }
        Self::new(taxa, values)
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taxa.is_empty()
    }

    pub fn taxa(&self) -> &[String] {
        &self.taxa
    }

    pub fn taxon(&self, i: usize) -> &str {
        &self.taxa[i]
    }

    pub fn index_of(&self, taxon: &str) -> Option<usize> {
        self.index.get(taxon).copied()
    }

    pub(crate) fn require_index(&self, taxon: &str) -> Result<usize> {
        self.index_of(taxon)
            .ok_or_else(|| Error::TaxonMismatch(format!("unknown taxon {taxon:?}")))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.taxa.len() + j]
    }

    /// Distance between two named taxa.
    pub fn distance(&self, a: &str, b: &str) -> Result<f64> {
        Ok(self.get(self.require_index(a)?, self.require_index(b)?))
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.taxa.len();
        &self.values[i * n..(i + 1) * n]
    }

    /// All `n(n-1)/2` edges of the distance graph, sorted by weight and grouped
    /// into weight classes. Weights within `tol` of a class's first (smallest)
    /// weight share the class.
    pub fn weight_classes(&self, tol: f64) -> WeightClasses {
        let n = self.len();
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push(WeightedEdge {
                    u,
                    v,
                    weight: self.get(u, v),
                });
            }
        }
        edges.sort_unstable_by(|a, b| {
            a.weight
                .total_cmp(&b.weight)
                .then(a.u.cmp(&b.u))
                .then(a.v.cmp(&b.v))
        });
        let mut class_of = Vec::with_capacity(edges.len());
        let mut representatives: Vec<f64> = Vec::new();
        for e in &edges {
            match representatives.last() {
                Some(&rep) if e.weight - rep <= tol => {}
                _ => representatives.push(e.weight),
            }
            class_of.push(representatives.len() - 1);
        }
        WeightClasses {
            edges,
            class_of,
            representatives,
        }
    }
}

/// One edge of the distance graph, `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Edges of a distance graph sorted by weight, with tolerance-grouped classes.
#[derive(Debug, Clone)]
pub struct WeightClasses {
    edges: Vec<WeightedEdge>,
    class_of: Vec<usize>,
    representatives: Vec<f64>,
}

impl WeightClasses {
    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    /// Class index of the `k`-th sorted edge.
    pub fn class_of(&self, k: usize) -> usize {
        self.class_of[k]
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Smallest weight of each class, ascending.
    pub fn representatives(&self) -> &[f64] {
        &self.representatives
    }

    /// Iterates `(representative weight, edges)` per class in ascending order.
    pub fn classes(&self) -> impl Iterator<Item = (f64, &[WeightedEdge])> + '_ {
        let mut start = 0;
        (0..self.representatives.len()).map(move |c| {
            let mut end = start;
            while end < self.edges.len() && self.class_of[end] == c {
                end += 1;
            }
            let slice = &self.edges[start..end];
            start = end;
            (self.representatives[c], slice)
        })
    }

    /// Map from unordered taxon pair to class index.
    pub fn class_lookup(&self, n: usize) -> Vec<usize> {
        let mut lookup = vec![usize::MAX; n * n];
        for (k, e) in self.edges.iter().enumerate() {
            lookup[e.u * n + e.v] = self.class_of[k];
            lookup[e.v * n + e.u] = self.class_of[k];
        }
        lookup
    }
}
