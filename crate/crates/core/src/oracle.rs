//! Brute-force references used to check the fast algorithms.
//!
//! Everything here is exponential in the number of taxa and refuses inputs
//! above a hard size guard. MST enumeration works on integer weight-class
//! indices rather than raw weights: the set of minimum spanning trees depends
//! only on the relative order of the edge weights, so this is exact.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::mlvrmst::{self, DeltaMax};
use crate::model::{count_leaves, DistanceMatrix, SpanningTree, VertexRanking};
use crate::vrmst::{kruskal_vertex_ranked_with_tol, EdgeOrderKey};
use crate::DEFAULT_TOL;

/// Largest input accepted by [`enumerate_msts`] and [`delta_max_bruteforce`].
pub const MST_ENUMERATION_LIMIT: usize = 10;
/// Largest input accepted by the `n!` ranking sweeps.
pub const RANKING_SWEEP_LIMIT: usize = 8;

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeGuard { n, limit })
    } else {
        Ok(())
    }
}

/// Every minimum spanning tree of the distance graph.
pub fn enumerate_msts(d: &DistanceMatrix) -> Result<Vec<SpanningTree>> {
    enumerate_msts_with_tol(d, DEFAULT_TOL)
}

pub fn enumerate_msts_with_tol(d: &DistanceMatrix, tol: f64) -> Result<Vec<SpanningTree>> {
    let n = d.len();
    guard(n, MST_ENUMERATION_LIMIT)?;
    if n <= 1 {
        return Ok(vec![SpanningTree::new(d, [])?]);
    }
    let classes = d.weight_classes(tol);
    let lookup = classes.class_lookup(n);
    let weight = |u: usize, v: usize| lookup[u * n + v] as u64;
    let target = prim_total(n, weight);

    let edges: Vec<(usize, usize, u64)> = classes
        .edges()
        .iter()
        .map(|e| (e.u, e.v, weight(e.u, e.v)))
        .collect();
    let mut prefix = vec![0u64; edges.len() + 1];
    for (i, e) in edges.iter().enumerate() {
        prefix[i + 1] = prefix[i] + e.2;
    }

    let mut search = Enumeration {
        n,
        edges: &edges,
        prefix: &prefix,
        target,
        comp: (0..n).collect(),
        chosen: Vec::with_capacity(n - 1),
        found: Vec::new(),
    };
    search.descend(0, 0);
    search
        .found
        .into_iter()
        .map(|pairs| SpanningTree::new(d, pairs))
        .collect()
}

/// O(n^2) Prim returning the minimum total weight.
fn prim_total(n: usize, weight: impl Fn(usize, usize) -> u64) -> u64 {
    let mut in_tree = vec![false; n];
    let mut best = vec![u64::MAX; n];
    best[0] = 0;
    let mut total = 0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by_key(|&v| best[v])
            .unwrap();
        in_tree[u] = true;
        total += best[u];
        for v in 0..n {
            if !in_tree[v] {
                best[v] = best[v].min(weight(u, v));
            }
        }
    }
    total
}

struct Enumeration<'a> {
    n: usize,
    edges: &'a [(usize, usize, u64)],
    prefix: &'a [u64],
    target: u64,
    comp: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    found: Vec<Vec<(usize, usize)>>,
}

impl Enumeration<'_> {
    fn descend(&mut self, i: usize, weight: u64) {
        let need = self.n - 1 - self.chosen.len();
        if need == 0 {
            if weight == self.target {
                self.found.push(self.chosen.clone());
            }
            return;
        }
        // Any completion uses `need` more edges, each at least as heavy as the
        // next ones in sorted order.
        if i + need > self.edges.len() || weight + self.prefix[i + need] - self.prefix[i] > self.target {
            return;
        }
        let (u, v, w) = self.edges[i];
        let (cu, cv) = (self.comp[u], self.comp[v]);
        if cu == cv {
            self.descend(i + 1, weight);
            return;
        }
        let saved = self.comp.clone();
        for c in self.comp.iter_mut() {
            if *c == cv {
                *c = cu;
            }
        }
        self.chosen.push((u, v));
        self.descend(i + 1, weight + w);
        self.chosen.pop();
        self.comp = saved;

        if self.connectable_without(i) {
            self.descend(i + 1, weight);
        }
    }

    /// Whether the edges after `i` can still connect the current components.
    fn connectable_without(&self, i: usize) -> bool {
        // Every component label is itself a member of its component, so the
        // labels already form a union-find forest of depth one.
        let mut label = self.comp.clone();
        let find = |label: &mut Vec<usize>, mut x: usize| {
            while label[x] != x {
                label[x] = label[label[x]];
                x = label[x];
            }
            x
        };
        let mut groups: BTreeSet<usize> = self.comp.iter().copied().collect();
        for &(u, v, _) in &self.edges[i + 1..] {
            let (a, b) = (find(&mut label, u), find(&mut label, v));
            if a != b {
                label[a.max(b)] = a.min(b);
                groups.remove(&a.max(b));
                if groups.len() == 1 {
                    return true;
                }
            }
        }
        groups.len() == 1
    }
}

/// Maximum degree of every taxon over all minimum spanning trees.
pub fn delta_max_bruteforce(d: &DistanceMatrix) -> Result<DeltaMax> {
    let msts = enumerate_msts(d)?;
    let mut best = vec![0usize; d.len()];
    for t in &msts {
        for (i, deg) in t.degrees().into_iter().enumerate() {
            best[i] = best[i].max(deg);
        }
    }
    Ok(DeltaMax::new(d.taxa().to_vec(), best))
}

/// Vertex-ranked MST by Prim's algorithm over the strict edge order.
///
/// Under a bijective ranking the vertex-ranked order has no ties, so the MST
/// is unique and Prim reaches the same tree as Kruskal by a different route.
pub fn prim_vertex_ranked(d: &DistanceMatrix, ranks: &[usize], tol: f64) -> Vec<(usize, usize)> {
    let n = d.len();
    if n <= 1 {
        return Vec::new();
    }
    let classes = d.weight_classes(tol);
    let reps = classes.representatives();
    let lookup = classes.class_lookup(n);
    let key = |u: usize, v: usize| EdgeOrderKey::new(reps[lookup[u * n + v]], ranks[u], ranks[v]);

    let mut in_tree = vec![false; n];
    let mut best: Vec<Option<(EdgeOrderKey, usize)>> = vec![None; n];
    in_tree[0] = true;
    for v in 1..n {
        best[v] = Some((key(0, v), 0));
    }
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].unwrap().0.cmp(&best[b].unwrap().0))
            .unwrap();
        let (_, from) = best[u].unwrap();
        in_tree[u] = true;
        edges.push((from.min(u), from.max(u)));
        for v in 0..n {
            if !in_tree[v] {
                let k = key(u, v);
                if best[v].is_none_or(|(b, _)| k < b) {
                    best[v] = Some((k, u));
                }
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Minimum leaf count over the VRMSTs of all `n!` rankings, with the first
/// ranking (in permutation order of the matrix taxa) that attains it.
pub fn min_leaf_vrmst_bruteforce(d: &DistanceMatrix) -> Result<(usize, VertexRanking)> {
    let n = d.len();
    guard(n, RANKING_SWEEP_LIMIT)?;
    let mut best: Option<(usize, Vec<usize>)> = None;
    for perm in (0..n).permutations(n) {
        let ranks = ranks_from_permutation(&perm);
        let edges = prim_vertex_ranked(d, &ranks, DEFAULT_TOL);
        let leaves = leaf_count(n, &edges);
        if best.as_ref().is_none_or(|(b, _)| leaves < *b) {
            best = Some((leaves, perm));
        }
    }
    let (leaves, perm) = best.expect("at least one permutation");
    let witness = VertexRanking::from_order(perm.iter().map(|&i| d.taxon(i).to_string()))?;
    Ok((leaves, witness))
}

/// Distinct VRMST edge sets over all rankings.
pub fn all_vrmsts(d: &DistanceMatrix) -> Result<HashSet<Vec<(usize, usize)>>> {
    let n = d.len();
    guard(n, RANKING_SWEEP_LIMIT)?;
    Ok((0..n)
        .permutations(n)
        .map(|perm| prim_vertex_ranked(d, &ranks_from_permutation(&perm), DEFAULT_TOL))
        .collect())
}

/// `perm[k]` receives rank `k + 1`.
fn ranks_from_permutation(perm: &[usize]) -> Vec<usize> {
    let mut ranks = vec![0; perm.len()];
    for (k, &i) in perm.iter().enumerate() {
        ranks[i] = k + 1;
    }
    ranks
}

fn leaf_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut deg = vec![0; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().filter(|&&x| x == 1).count()
}

/// Whether `members` induces a connected subgraph of `tree`.
pub fn induces_connected(tree: &SpanningTree, members: &[usize]) -> bool {
    if members.len() <= 1 {
        return true;
    }
    let inside: HashSet<usize> = members.iter().copied().collect();
    let adj = tree.neighbors();
    let mut seen = HashSet::from([members[0]]);
    let mut stack = vec![members[0]];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if inside.contains(&v) && seen.insert(v) {
                stack.push(v);
            }
        }
    }
    seen.len() == inside.len()
}

/// Outcome of one brute-force check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs every brute-force check on a small matrix.
pub fn verify_properties(d: &DistanceMatrix) -> Result<Vec<Check>> {
    guard(d.len(), RANKING_SWEEP_LIMIT)?;
    let result = mlvrmst::mlvrmst(d)?;
    let sweep = &result.sweep;
    let msts = enumerate_msts(d)?;
    let mut checks = Vec::new();

    checks.push(Check {
        name: "laminar-family",
        passed: sweep.family.is_laminar(),
        detail: format!("{} sets", sweep.family.sets().len()),
    });

    let disconnected = msts
        .iter()
        .flat_map(|t| sweep.family.sets().iter().map(move |s| (t, s)))
        .filter(|(t, s)| !induces_connected(t, &s.members))
        .count();
    checks.push(Check {
        name: "family-connected",
        passed: disconnected == 0,
        detail: format!("{} MSTs, {disconnected} disconnected set inductions", msts.len()),
    });

    let brute = delta_max_bruteforce(d)?;
    checks.push(Check {
        name: "delta-max",
        passed: brute == sweep.delta_max,
        detail: format!("sweep {:?} brute force {:?}", sweep.delta_max.as_slice(), brute.as_slice()),
    });

    let vrmsts = all_vrmsts(d)?;
    let mst_sets: HashSet<Vec<(usize, usize)>> = msts.iter().map(|t| t.pairs()).collect();
    let outside = vrmsts.iter().filter(|t| !mst_sets.contains(*t)).count();
    checks.push(Check {
        name: "vrmsts-are-msts",
        passed: outside == 0,
        detail: format!("{} distinct VRMSTs, {outside} not minimum", vrmsts.len()),
    });

    let global = kruskal_vertex_ranked_with_tol(d, &result.ranking, DEFAULT_TOL)?;
    checks.push(Check {
        name: "output-identity",
        passed: global == result.tree,
        detail: "per-component selection equals global vertex-ranked Kruskal".into(),
    });

    let (min_leaves, _) = min_leaf_vrmst_bruteforce(d)?;
    let got = count_leaves(&result.tree);
    checks.push(Check {
        name: "minimum-leaves",
        passed: got == min_leaves,
        detail: format!("mlvrmst {got} leaves, brute force {min_leaves}"),
    });
    Ok(checks)
}
