//! Edge-weighted, generally labeled phylogenetic trees.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

/// Vertex identifier inside a [`PhyloTree`]; an index into [`PhyloTree::vertices`].
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    /// Labeled vertices are observed taxa; the rest are hidden ancestors.
    pub labeled: bool,
}

/// An unrooted phylogenetic tree with labeled and hidden vertices.
///
/// Construction validates that the graph is a tree with strictly positive edge
/// lengths, that at least one vertex is labeled, that vertex names are unique
/// and that every hidden vertex has degree at least three. Labeled vertices may
/// be internal (generally labeled trees). Use [`TreeBuilder`] when degree-two
/// hidden vertices arise during construction.
#[derive(Debug, Clone)]
pub struct PhyloTree {
    vertices: Vec<Vertex>,
    adjacency: Vec<Vec<(VertexId, f64)>>,
    index: HashMap<String, VertexId>,
}

impl PhyloTree {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(VertexId, VertexId, f64)>) -> Result<Self> {
        let adjacency = check_tree_shape(vertices.len(), &edges, |i| vertices[i].name.clone())?;
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.name.clone(), i).is_some() {
                return Err(Error::Structure(format!("duplicate vertex name {:?}", v.name)));
            }
        }
        if !vertices.iter().any(|v| v.labeled) {
            return Err(Error::Structure("tree has no labeled vertex".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            let deg = adjacency[i].len();
            if !v.labeled && deg < 3 {
                return Err(Error::Structure(format!(
                    "hidden vertex {:?} has degree {deg}, expected at least 3",
                    v.name
                )));
            }
        }
        Ok(PhyloTree {
            vertices,
            adjacency,
            index,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn id_of(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: VertexId) -> &str {
        &self.vertices[id].name
    }

    pub fn is_labeled(&self, id: VertexId) -> bool {
        self.vertices[id].labeled
    }

    pub fn neighbors(&self, id: VertexId) -> &[(VertexId, f64)] {
        &self.adjacency[id]
    }

    pub fn degree(&self, id: VertexId) -> usize {
        self.adjacency[id].len()
    }

    /// Ids of labeled vertices, in vertex order.
    pub fn labeled_ids(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&i| self.vertices[i].labeled).collect()
    }

    /// Names of labeled vertices, in vertex order.
    pub fn taxa(&self) -> Vec<String> {
        self.labeled_ids()
            .into_iter()
            .map(|i| self.vertices[i].name.clone())
            .collect()
    }

    /// Every edge once, as `(u, v, length)` with `u < v`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, f64)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &(v, len) in nbrs {
                if u < v {
                    out.push((u, v, len));
                }
            }
        }
        out
    }

    /// Path lengths from `source` to every vertex.
    pub fn distances_from(&self, source: VertexId) -> Vec<f64> {
        let mut dist = vec![f64::NAN; self.len()];
        dist[source] = 0.0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(v, len) in &self.adjacency[u] {
                if dist[v].is_nan() {
                    dist[v] = dist[u] + len;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Vertices on the path from `a` to `b`, both ends included.
    pub fn path(&self, a: VertexId, b: VertexId) -> Vec<VertexId> {
        let mut parent = vec![usize::MAX; self.len()];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            if u == b {
                break;
            }
            for &(v, _) in &self.adjacency[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Number of edges on the longest path of the tree.
    pub fn diameter_edges(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let hops = |s: VertexId| {
            let mut depth = vec![usize::MAX; self.len()];
            depth[s] = 0;
            let mut queue = VecDeque::from([s]);
            let mut last = s;
            while let Some(u) = queue.pop_front() {
                last = u;
                for &(v, _) in &self.adjacency[u] {
                    if depth[v] == usize::MAX {
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            (last, depth[last])
        };
        let (far, _) = hops(0);
        hops(far).1
    }

    /// Copy of the tree with hidden vertices renamed through `rename`.
    pub fn rename_hidden(&self, mut rename: impl FnMut(&str) -> String) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                name: if v.labeled { v.name.clone() } else { rename(&v.name) },
                labeled: v.labeled,
            })
            .collect();
        PhyloTree::new(vertices, self.edges())
    }
}

/// Validates that `edges` form a spanning tree over `n` vertices with positive
/// lengths; returns the adjacency lists.
fn check_tree_shape(
    n: usize,
    edges: &[(VertexId, VertexId, f64)],
    name: impl Fn(usize) -> String,
) -> Result<Vec<Vec<(VertexId, f64)>>> {
    if n == 0 {
        return Err(Error::Structure("tree has no vertices".into()));
    }
    if edges.len() != n - 1 {
        return Err(Error::Structure(format!(
            "{} vertices need {} edges, got {}",
            n,
            n - 1,
            edges.len()
        )));
    }
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v, len) in edges {
        if u >= n || v >= n {
            return Err(Error::Structure(format!("edge ({u}, {v}) out of range")));
        }
        if u == v {
            return Err(Error::Structure(format!("self loop at {:?}", name(u))));
        }
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::Structure(format!(
                "edge {:?}-{:?} has non-positive length {len}",
                name(u),
                name(v)
            )));
        }
        adjacency[u].push((v, len));
        adjacency[v].push((u, len));
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &(v, _) in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    if count != n {
        // n - 1 edges and disconnected implies a cycle somewhere as well.
        return Err(Error::Structure(format!(
            "graph is disconnected or cyclic ({count} of {n} vertices reachable)"
        )));
    }
    Ok(adjacency)
}

/// Incremental tree construction that tolerates degree-two hidden vertices.
///
/// [`TreeBuilder::build`] suppresses every degree-two hidden vertex by merging
/// its two incident edges, then validates the result as a [`PhyloTree`].
/// Hidden vertices added without a name get `h1`, `h2`, ... (skipping names
/// already in use).
#[derive(Debug, Default, Clone)]
pub struct TreeBuilder {
    names: Vec<Option<String>>,
    labeled: Vec<bool>,
    edges: Vec<(VertexId, VertexId, f64)>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_labeled(&mut self, name: impl Into<String>) -> VertexId {
        self.names.push(Some(name.into()));
        self.labeled.push(true);
        self.names.len() - 1
    }

    pub fn add_hidden(&mut self) -> VertexId {
        self.names.push(None);
        self.labeled.push(false);
        self.names.len() - 1
    }

    pub fn add_named_hidden(&mut self, name: impl Into<String>) -> VertexId {
        self.names.push(Some(name.into()));
        self.labeled.push(false);
        self.names.len() - 1
    }

    pub fn set_labeled(&mut self, id: VertexId, name: impl Into<String>) {
        self.names[id] = Some(name.into());
        self.labeled[id] = true;
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, length: f64) {
        self.edges.push((u, v, length));
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_labeled(&self, id: VertexId) -> bool {
        self.labeled[id]
    }

    pub fn build(self) -> Result<PhyloTree> {
        let n = self.names.len();
        let display = |i: usize| {
            self.names[i]
                .clone()
                .unwrap_or_else(|| format!("<hidden #{i}>"))
        };
        let adjacency = check_tree_shape(n, &self.edges, display)?;
        let mut adj: Vec<HashMap<VertexId, f64>> = adjacency
            .into_iter()
            .map(|nbrs| nbrs.into_iter().collect())
            .collect();
        let mut alive = vec![true; n];
        for x in 0..n {
            if self.labeled[x] || adj[x].len() != 2 {
                continue;
            }
            let pair: Vec<(VertexId, f64)> = adj[x].iter().map(|(&k, &v)| (k, v)).collect();
            let (a, la) = pair[0];
            let (b, lb) = pair[1];
            adj[a].remove(&x);
            adj[b].remove(&x);
            adj[a].insert(b, la + lb);
            adj[b].insert(a, la + lb);
            adj[x].clear();
            alive[x] = false;
        }
        let mut taken: HashSet<String> = self.names.iter().flatten().cloned().collect();
        let mut new_id = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        let mut counter = 0usize;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            let name = match &self.names[i] {
                Some(name) => name.clone(),
                None => loop {
                    counter += 1;
                    let candidate = format!("h{counter}");
                    if taken.insert(candidate.clone()) {
                        break candidate;
                    }
                },
            };
            new_id[i] = vertices.len();
            vertices.push(Vertex {
                name,
                labeled: self.labeled[i],
            });
        }
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for (u, nbrs) in adj.iter().enumerate() {
            for (&v, &len) in nbrs {
                if u < v {
                    edges.push((new_id[u], new_id[v], len));
                }
            }
        }
        edges.sort_by_key(|a| (a.0, a.1));
        PhyloTree::new(vertices, edges)
    }
}
