//! CLGrouping: tree reconstruction from a spanning tree of the distance graph.
//!
//! Starting from the spanning tree `M` as the working tree, each internal
//! vertex `v` of `M` is visited in ascending taxon order. Its group is `v`
//! together with its current neighbors, which may include hidden vertices
//! introduced by earlier groups. Neighbor joining over the group yields a
//! small generally labeled tree `T_v` that replaces the star around `v`.
//!
//! A hidden vertex `h` created while visiting `v` is anchored at `v`; its
//! distance to any other vertex `k` is `d(v, k) - d(v, h)`. When `M` is a
//! vertex-ranked MST of tree-additive distances, the output is the generating
//! tree.

mod nj;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, PhyloTree, SpanningTree, TreeBuilder};
use crate::DEFAULT_TOL;

/// A reconstructed tree, flagged when the distances were found inconsistent
/// with any tree along the way.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub tree: PhyloTree,
    pub non_additive: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct ClgOptions {
    /// Edges shorter than this are contracted; negative estimates beyond it
    /// are flagged.
    pub epsilon: f64,
    /// Reconstruct non-adjacent groups concurrently.
    pub parallel: bool,
}

impl Default for ClgOptions {
    fn default() -> Self {
        ClgOptions {
            epsilon: DEFAULT_TOL,
            parallel: false,
        }
    }
}

/// Internal vertices of `m` (degree at least two) in ascending taxon order.
pub fn vertex_groups(m: &SpanningTree) -> Vec<usize> {
    let mut internal: Vec<usize> = m
        .degrees()
        .iter()
        .enumerate()
        .filter(|&(_, &deg)| deg >= 2)
        .map(|(i, _)| i)
        .collect();
    internal.sort_by(|&a, &b| m.taxa()[a].cmp(&m.taxa()[b]));
    internal
}

/// Neighbor joining on `sub`, contracting edges shorter than `epsilon` so that
/// taxa may end up internal.
pub fn nj_generally_labeled(sub: &DistanceMatrix, epsilon: f64) -> Result<Reconstruction> {
    let m = sub.len();
    if m < 2 {
        return Err(Error::Reconstruction("neighbor joining needs at least two taxa".into()));
    }
    let flat: Vec<f64> = (0..m).flat_map(|i| sub.row(i).iter().copied()).collect();
    let joined = nj::join(&flat, m, epsilon);
    if let Some(&(a, b)) = joined.merged_members.first() {
        return Err(Error::Reconstruction(format!(
            "taxa {} and {} coincide",
            sub.taxon(a),
            sub.taxon(b)
        )));
    }
    let mut builder = TreeBuilder::new();
    for t in sub.taxa() {
        builder.add_labeled(t.clone());
    }
    for _ in 0..joined.extra {
        builder.add_hidden();
    }
    for &(u, v, w) in &joined.edges {
        builder.add_edge(u, v, w);
    }
    Ok(Reconstruction {
        tree: builder.build()?,
        non_additive: joined.negative_length,
    })
}

/// Distances over taxa and introduced hidden vertices.
///
/// Ids `0..n` are the matrix taxa; hidden vertices get `n..` in creation order.
/// Each hidden vertex stores only its anchor taxon and the distance to it.
#[derive(Debug, Clone)]
pub struct DistanceStore<'a> {
    d: &'a DistanceMatrix,
    anchors: Vec<(usize, f64)>,
}

impl<'a> DistanceStore<'a> {
    pub fn new(d: &'a DistanceMatrix) -> Self {
        DistanceStore {
            d,
            anchors: Vec::new(),
        }
    }

    pub fn taxa_count(&self) -> usize {
        self.d.len()
    }

    pub fn len(&self) -> usize {
        self.d.len() + self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn add_hidden(&mut self, anchor: usize, anchor_distance: f64) -> usize {
        assert!(anchor < self.d.len(), "anchors are taxa");
        self.anchors.push((anchor, anchor_distance));
        self.len() - 1
    }

    pub fn is_hidden(&self, x: usize) -> bool {
        x >= self.d.len()
    }

    /// Anchor taxon and anchor distance of hidden vertex `h`.
    pub fn anchor(&self, h: usize) -> Option<(usize, f64)> {
        h.checked_sub(self.d.len()).and_then(|k| self.anchors.get(k).copied())
    }

    /// Distance between any two vertices, exact under additivity. May be
    /// negative when the distances are not tree-additive.
    pub fn get(&self, x: usize, y: usize) -> f64 {
        if x == y {
            return 0.0;
        }
        let (x, y) = (x.min(y), x.max(y));
        match (self.anchor(x), self.anchor(y)) {
            (None, None) => self.d.get(x, y),
            (None, Some(_)) => self.extend_hidden_distance(y, x),
            // the older vertex's anchor carries the formula
            (Some(_), Some(_)) => self.extend_hidden_distance(x, y),
            (Some(_), None) => unreachable!("taxa precede hidden vertices"),
        }
    }

    /// `d(v, k) - d(v, h)` for hidden `h` anchored at `v`, and `d(v, h)` when
    /// `k` is `v` itself.
    pub fn extend_hidden_distance(&self, h: usize, k: usize) -> f64 {
        let (v, dvh) = self.anchor(h).expect("h is hidden");
        let dvk = match self.anchor(k) {
            None if k == v => return dvh,
            None => self.d.get(v, k),
            Some((w, dwk)) if w == v => dwk,
            Some((w, dwk)) => self.d.get(w, v) - dwk,
        };
        dvk - dvh
    }
}

/// One group ready for neighbor joining.
struct GroupInput {
    center: usize,
    members: Vec<usize>,
    dist: Vec<f64>,
}

struct State<'a> {
    store: DistanceStore<'a>,
    adj: Vec<BTreeMap<usize, f64>>,
    epsilon: f64,
    non_additive: bool,
}

impl<'a> State<'a> {
    fn new(d: &'a DistanceMatrix, m: &[(usize, usize, f64)], epsilon: f64) -> Self {
        let mut adj = vec![BTreeMap::new(); d.len()];
        for &(u, v, w) in m {
            adj[u].insert(v, w);
            adj[v].insert(u, w);
        }
        State {
            store: DistanceStore::new(d),
            adj,
            epsilon,
            non_additive: false,
        }
    }

    fn group(&mut self, center: usize) -> GroupInput {
        let mut members = vec![center];
        members.extend(self.adj[center].keys().copied());
        members.sort_unstable();
        let k = members.len();
        let mut dist = vec![0.0; k * k];
        for a in 0..k {
            for b in a + 1..k {
                let mut v = self.store.get(members[a], members[b]);
                if v < -self.epsilon {
                    self.non_additive = true;
                }
                v = v.max(0.0);
                dist[a * k + b] = v;
                dist[b * k + a] = v;
            }
        }
        GroupInput {
            center,
            members,
            dist,
        }
    }

    fn is_current(&self, g: &GroupInput) -> bool {
        g.members.len() == self.adj[g.center].len() + 1
            && g.members
                .iter()
                .all(|&x| x == g.center || self.adj[g.center].contains_key(&x))
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
    }

    fn add_edge(&mut self, a: usize, b: usize, w: f64) {
        self.adj[a].insert(b, w);
        self.adj[b].insert(a, w);
    }

    /// Replaces the star around the group's center by the joined tree.
    fn splice(&mut self, g: &GroupInput, joined: &nj::Joined) -> Result<()> {
        let center = g.center;
        for &x in &g.members {
            if x != center {
                self.remove_edge(center, x);
            }
        }
        let mut local_to_global = g.members.clone();
        for &(kept, absorbed) in &joined.merged_members {
            let (k, a) = (g.members[kept], g.members[absorbed]);
            if !self.store.is_hidden(a) {
                let d = self.store.d;
                return Err(Error::Reconstruction(format!(
                    "taxa {} and {} coincide",
                    d.taxon(k),
                    d.taxon(a)
                )));
            }
            self.non_additive = true;
            let moved: Vec<(usize, f64)> = std::mem::take(&mut self.adj[a]).into_iter().collect();
            for (y, w) in moved {
                self.adj[y].remove(&a);
                self.add_edge(k, y, w);
            }
            local_to_global[absorbed] = k;
        }
        let center_local = g.members.iter().position(|&x| x == center).expect("center is a member");
        let from_center = joined.distances_from(center_local);
        for local in joined.members..joined.members + joined.extra {
            local_to_global.push(self.store.add_hidden(center, from_center[local]));
            self.adj.push(BTreeMap::new());
        }
        for &(u, v, w) in &joined.edges {
            self.add_edge(local_to_global[u], local_to_global[v], w);
        }
        Ok(())
    }

    fn run_group(&mut self, center: usize) -> Result<()> {
        let g = self.group(center);
        let joined = nj::join(&g.dist, g.members.len(), self.epsilon);
        self.absorb(&g, &joined)
    }

    fn absorb(&mut self, g: &GroupInput, joined: &nj::Joined) -> Result<()> {
        if joined.negative_length {
            self.non_additive = true;
        }
        self.splice(g, joined)
    }

    fn into_tree(self) -> Result<PhyloTree> {
        let d = self.store.d;
        let mut builder = TreeBuilder::new();
        let mut ids = vec![usize::MAX; self.adj.len()];
        for (x, id) in ids.iter_mut().enumerate() {
            if x < d.len() {
                *id = builder.add_labeled(d.taxon(x));
            } else if !self.adj[x].is_empty() {
                *id = builder.add_hidden();
            }
        }
        for (u, nbrs) in self.adj.iter().enumerate() {
            for (&v, &w) in nbrs {
                if u < v {
                    builder.add_edge(ids[u], ids[v], w);
                }
            }
        }
        builder.build()
    }
}

/// Reconstructs the tree behind `d` from spanning tree `m`.
pub fn clgrouping(d: &DistanceMatrix, m: &SpanningTree, epsilon: f64) -> Result<Reconstruction> {
    clgrouping_with(
        d,
        m,
        &ClgOptions {
            epsilon,
            ..Default::default()
        },
    )
}

pub fn clgrouping_with(d: &DistanceMatrix, m: &SpanningTree, opts: &ClgOptions) -> Result<Reconstruction> {
    let to_d = m
        .taxa()
        .iter()
        .map(|t| d.require_index(t))
        .collect::<Result<Vec<usize>>>()?;
    if m.len() != d.len() {
        return Err(Error::TaxonMismatch(format!(
            "spanning tree has {} taxa, matrix has {}",
            m.len(),
            d.len()
        )));
    }
    let edges: Vec<(usize, usize, f64)> = m
        .edges()
        .iter()
        .map(|&(u, v, w)| (to_d[u], to_d[v], w))
        .collect();
    let order: Vec<usize> = vertex_groups(m).into_iter().map(|i| to_d[i]).collect();
    let mut state = State::new(d, &edges, opts.epsilon);
    if opts.parallel {
        run_in_waves(&mut state, order)?;
    } else {
        for center in order {
            state.run_group(center)?;
        }
    }
    let non_additive = state.non_additive;
    if non_additive {
        log::warn!("distances are not tree-additive; reconstruction may differ from any generating tree");
    }
    Ok(Reconstruction {
        tree: state.into_tree()?,
        non_additive,
    })
}

/// Each wave takes pending centers in visiting order, skipping any adjacent to
/// one already taken. Such groups touch disjoint edges, so they are joined
/// concurrently and spliced in order.
fn run_in_waves(state: &mut State<'_>, order: Vec<usize>) -> Result<()> {
    let mut pending = order;
    while !pending.is_empty() {
        let mut wave: Vec<usize> = Vec::new();
        let mut rest = Vec::new();
        for c in pending {
            if wave.iter().any(|&w| state.adj[w].contains_key(&c)) {
                rest.push(c);
            } else {
                wave.push(c);
            }
        }
        let inputs: Vec<GroupInput> = wave.iter().map(|&c| state.group(c)).collect();
        let epsilon = state.epsilon;
        let joined: Vec<nj::Joined> = inputs
            .par_iter()
            .map(|g| nj::join(&g.dist, g.members.len(), epsilon))
            .collect();
        for (g, j) in inputs.iter().zip(&joined) {
            if state.is_current(g) {
                state.absorb(g, j)?;
            } else {
                // an earlier splice merged one of this group's members
                state.run_group(g.center)?;
            }
        }
        pending = rest;
    }
    Ok(())
}
