//! Vertex-ranked minimum spanning trees.
//!
//! Edges of the distance graph are ordered by weight, then by the smaller
//! endpoint rank, then by the larger endpoint rank. Under a bijective ranking
//! this is a strict total order on the edges of a complete graph, so Kruskal
//! over it yields exactly one spanning tree (the VRMST) for each ranking.
//! Rank 1 is the highest rank.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::dsu::DsuForest;
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, PhyloTree, SpanningTree, VertexId, VertexRanking, WeightedEdge};
use crate::DEFAULT_TOL;

/// Sort key realizing the vertex-ranked edge order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeOrderKey {
    pub weight: f64,
    pub rmin: usize,
    pub rmax: usize,
}

impl Eq for EdgeOrderKey {}

impl Ord for EdgeOrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.rmin.cmp(&other.rmin))
            .then(self.rmax.cmp(&other.rmax))
    }
}

impl PartialOrd for EdgeOrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl EdgeOrderKey {
    pub fn new(weight: f64, ru: usize, rv: usize) -> Self {
        EdgeOrderKey {
            weight,
            rmin: ru.min(rv),
            rmax: ru.max(rv),
        }
    }
}

/// Order key of edge `{u, v}` under ranking `r`.
pub fn edge_order_key(
    u: &str,
    v: &str,
    d: &DistanceMatrix,
    r: &VertexRanking,
) -> Result<EdgeOrderKey> {
    if u == v {
        return Err(Error::SelfEdge(u.to_string()));
    }
    let rank = |t: &str| {
        r.rank(t)
            .ok_or_else(|| Error::Ranking(format!("taxon {t:?} has no rank")))
    };
    Ok(EdgeOrderKey::new(d.distance(u, v)?, rank(u)?, rank(v)?))
}

/// Edges of the distance graph in vertex-ranked order. Weights within `tol`
/// of each other are treated as equal; the key's weight is the class
/// representative.
pub fn vertex_ranked_order(d: &DistanceMatrix, ranks: &[usize], tol: f64) -> Vec<WeightedEdge> {
    let classes = d.weight_classes(tol);
    let reps = classes.representatives();
    let mut keyed: Vec<(EdgeOrderKey, WeightedEdge)> = classes
        .edges()
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            (
                EdgeOrderKey::new(reps[classes.class_of(k)], ranks[e.u], ranks[e.v]),
                e,
            )
        })
        .collect();
    keyed.sort_unstable_by_key(|a| a.0);
    keyed.into_iter().map(|(_, e)| e).collect()
}

/// Kruskal over an already ordered edge sequence; returns accepted pairs.
pub(crate) fn kruskal_scan(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let mut dsu = DsuForest::with_len(n);
    let mut accepted = Vec::with_capacity(n.saturating_sub(1));
    for (u, v) in edges {
        if accepted.len() + 1 >= n {
            break;
        }
        if dsu.union_elements(u, v).is_some() {
            accepted.push((u, v));
        }
    }
    accepted
}

/// The vertex-ranked MST of `d` under ranking `r`.
pub fn kruskal_vertex_ranked(d: &DistanceMatrix, r: &VertexRanking) -> Result<SpanningTree> {
    kruskal_vertex_ranked_with_tol(d, r, DEFAULT_TOL)
}

pub fn kruskal_vertex_ranked_with_tol(
    d: &DistanceMatrix,
    r: &VertexRanking,
    tol: f64,
) -> Result<SpanningTree> {
    let ranks = r.rank_vector(d)?;
    let order = vertex_ranked_order(d, &ranks, tol);
    let accepted = kruskal_scan(d.len(), order.iter().map(|e| (e.u, e.v)));
    SpanningTree::new(d, accepted)
}

/// Kruskal with a caller-chosen scan order.
///
/// `tie_order` must list every edge of the distance graph exactly once,
/// nondecreasing by weight (within [`DEFAULT_TOL`]). This reaches any MST,
/// including ones no vertex ranking produces.
pub fn kruskal_plain(d: &DistanceMatrix, tie_order: &[(&str, &str)]) -> Result<SpanningTree> {
    let n = d.len();
    let expected = n * n.saturating_sub(1) / 2;
    if tie_order.len() != expected {
        return Err(Error::EdgeOrder(format!(
            "expected {expected} edges, got {}",
            tie_order.len()
        )));
    }
    let mut seen = HashSet::with_capacity(expected);
    let mut pairs = Vec::with_capacity(expected);
    let mut last = f64::NEG_INFINITY;
    for &(a, b) in tie_order {
        let (u, v) = (d.require_index(a)?, d.require_index(b)?);
        if u == v {
            return Err(Error::SelfEdge(a.to_string()));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::EdgeOrder(format!("edge {a}-{b} listed twice")));
        }
        let w = d.get(u, v);
        if w < last - DEFAULT_TOL {
            return Err(Error::EdgeOrder(format!(
                "edge {a}-{b} (weight {w}) follows a heavier edge ({last})"
            )));
        }
        last = last.max(w);
        pairs.push((u, v));
    }
    SpanningTree::new(d, kruskal_scan(n, pairs))
}

/// Surrogate vertex of every tree vertex: among the labeled vertices closest
/// to it, the highest ranked one.
#[derive(Debug, Clone)]
pub struct SurrogateMap {
    surrogate: Vec<VertexId>,
    names: Vec<String>,
}

impl SurrogateMap {
    /// Surrogate (a labeled vertex id) of tree vertex `v`.
    pub fn get(&self, v: VertexId) -> VertexId {
        self.surrogate[v]
    }

    pub fn get_named(&self, name: &str) -> Option<&str> {
        let v = self.names.iter().position(|n| n == name)?;
        Some(&self.names[self.surrogate[v]])
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.surrogate
    }

    /// Hidden vertices whose surrogate is `labeled`.
    pub fn inverse(&self, labeled: VertexId) -> Vec<VertexId> {
        self.surrogate
            .iter()
            .enumerate()
            .filter(|&(v, &s)| s == labeled && v != labeled)
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn surrogate_map(tree: &PhyloTree, r: &VertexRanking) -> Result<SurrogateMap> {
    surrogate_map_with_tol(tree, r, DEFAULT_TOL)
}

/// Distances within `tol` of the minimum count as closest.
pub fn surrogate_map_with_tol(tree: &PhyloTree, r: &VertexRanking, tol: f64) -> Result<SurrogateMap> {
    let labeled = tree.labeled_ids();
    let ranks = labeled
        .iter()
        .map(|&l| {
            r.rank(tree.name(l))
                .ok_or_else(|| Error::Ranking(format!("taxon {:?} has no rank", tree.name(l))))
        })
        .collect::<Result<Vec<usize>>>()?;
    // dist_to[k][v]: distance from labeled[k] to vertex v.
    let dist_to: Vec<Vec<f64>> = labeled.iter().map(|&l| tree.distances_from(l)).collect();
    let surrogate = (0..tree.len())
        .map(|v| {
            if tree.is_labeled(v) {
                return v;
            }
            let closest = dist_to
                .iter()
                .map(|d| d[v])
                .fold(f64::INFINITY, f64::min);
            let best = (0..labeled.len())
                .filter(|&k| dist_to[k][v] - closest <= tol)
                .min_by_key(|&k| ranks[k])
                .expect("tree has a labeled vertex");
            labeled[best]
        })
        .collect();
    Ok(SurrogateMap {
        surrogate,
        names: tree.vertices().iter().map(|v| v.name.clone()).collect(),
    })
}
