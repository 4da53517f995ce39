//! Seeded generators for caterpillar, balanced and random trees.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a seed
//! names the same tree on every platform. Random lengths lie on a 1/1024 grid
//! in `[0.1, 2.0]`, which keeps every path sum exact in `f64`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, PhyloTree, TreeBuilder, VertexId};

/// Denominator of the length grid.
pub const LENGTH_GRID: f64 = 1024.0;

/// Largest supported balanced-tree depth.
pub const MAX_BALANCED_DEPTH: u32 = 16;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_length(rng: &mut impl Rng) -> f64 {
    rng.gen_range(103..=2048) as f64 / LENGTH_GRID
}

/// Caterpillar over `n` taxa: a hidden backbone `h1..h(n-2)` with two taxa on
/// each end and one on every inner backbone vertex.
///
/// With `clock`, the tree is built rooted beside the deepest backbone vertex
/// with increasing node heights, so all taxa are equidistant from the root.
pub fn gen_caterpillar(n: usize, clock: bool, seed: u64) -> Result<PhyloTree> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("caterpillar needs at least 3 taxa, got {n}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut b = TreeBuilder::new();
    let taxa: Vec<VertexId> = (1..=n).map(|i| b.add_labeled(format!("t{i}"))).collect();
    // u[0] joins t1,t2; u[k] joins u[k-1] and t(k+2); the last one is the root.
    let u: Vec<VertexId> = (0..n - 1).map(|_| b.add_hidden()).collect();
    let mut height = vec![0.0; n - 1];
    for k in 0..n - 1 {
        let below = if k == 0 { 0.0 } else { height[k - 1] };
        height[k] = below + random_length(&mut rng);
    }
    let edge = |b: &mut TreeBuilder, rng: &mut ChaCha8Rng, child: VertexId, child_h: f64, k: usize| {
        let len = if clock { height[k] - child_h } else { random_length(rng) };
        b.add_edge(child, u[k], len);
    };
    edge(&mut b, &mut rng, taxa[0], 0.0, 0);
    edge(&mut b, &mut rng, taxa[1], 0.0, 0);
    for k in 1..n - 1 {
        edge(&mut b, &mut rng, u[k - 1], height[k - 1], k);
        edge(&mut b, &mut rng, taxa[k + 1], 0.0, k);
    }
    b.build()
}

/// Complete binary tree with `2^depth` taxa, unrooted.
pub fn gen_balanced(depth: u32, clock: bool, seed: u64) -> Result<PhyloTree> {
    if depth == 0 || depth > MAX_BALANCED_DEPTH {
        return Err(Error::InvalidParameter(format!(
            "balanced depth must be in 1..={MAX_BALANCED_DEPTH}, got {depth}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut b = TreeBuilder::new();
    let mut level: Vec<(VertexId, f64)> = (1..=1usize << depth)
        .map(|i| (b.add_labeled(format!("t{i}")), 0.0))
        .collect();
    while level.len() > 1 {
        let mut up = Vec::with_capacity(level.len() / 2);
        for pair in level.chunks(2) {
            let p = b.add_hidden();
            let h = pair[0].1.max(pair[1].1) + random_length(&mut rng);
            for &(c, ch) in pair {
                let len = if clock { h - ch } else { random_length(&mut rng) };
                b.add_edge(c, p, len);
            }
            up.push((p, h));
        }
        level = up;
    }
    b.build()
}

#[derive(Debug, Clone, Copy)]
pub struct RandomTreeOptions {
    /// Turn new internal vertices into taxa.
    pub general_labels: bool,
    /// Chance that a new internal vertex becomes a taxon.
    pub label_probability: f64,
    /// Draw lengths uniformly from `1..=k` instead of the fine grid. Small `k`
    /// makes many tied distances.
    pub integer_lengths: Option<u32>,
}

impl Default for RandomTreeOptions {
    fn default() -> Self {
        RandomTreeOptions {
            general_labels: false,
            label_probability: 0.3,
            integer_lengths: None,
        }
    }
}

/// Random tree by sequential attachment: each step subdivides a uniformly
/// chosen edge and hangs a new taxon from the new vertex.
pub fn gen_random(n: usize, general_labels: bool, seed: u64) -> Result<PhyloTree> {
    gen_random_with(
        n,
        &RandomTreeOptions {
            general_labels,
            ..Default::default()
        },
        seed,
    )
}

pub fn gen_random_with(n: usize, opts: &RandomTreeOptions, seed: u64) -> Result<PhyloTree> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("random tree needs at least 2 taxa, got {n}")));
    }
    if !(0.0..=1.0).contains(&opts.label_probability) {
        return Err(Error::InvalidParameter(format!(
            "label probability must be in [0, 1], got {}",
            opts.label_probability
        )));
    }
    if opts.integer_lengths == Some(0) {
        return Err(Error::InvalidParameter("integer length bound must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let length = |rng: &mut ChaCha8Rng| match opts.integer_lengths {
        Some(k) => rng.gen_range(1..=k) as f64,
        None => random_length(rng),
    };
    let mut b = TreeBuilder::new();
    let mut labeled = 0usize;
    let mut next_taxon = |b: &mut TreeBuilder, id: Option<VertexId>| {
        labeled += 1;
        let name = format!("t{labeled}");
        match id {
            Some(id) => {
                b.set_labeled(id, name);
                id
            }
            None => b.add_labeled(name),
        }
    };
    let first = next_taxon(&mut b, None);
    let second = next_taxon(&mut b, None);
    let mut edges = vec![(first, second, length(&mut rng))];
    let mut count = 2;
    while count < n {
        let k = rng.gen_range(0..edges.len());
        let (u, v, _) = edges[k];
        let x = b.add_hidden();
        edges[k] = (u, x, length(&mut rng));
        edges.push((x, v, length(&mut rng)));
        let leaf = next_taxon(&mut b, None);
        edges.push((x, leaf, length(&mut rng)));
        count += 1;
        if opts.general_labels && count < n && rng.gen_bool(opts.label_probability) {
            next_taxon(&mut b, Some(x));
            count += 1;
        }
    }
    for (u, v, w) in edges {
        b.add_edge(u, v, w);
    }
    b.build()
}

/// A uniformly random ranking order of `taxa`.
pub fn random_order<T: Clone>(taxa: &[T], rng: &mut impl Rng) -> Vec<T> {
    let mut order = taxa.to_vec();
    order.shuffle(rng);
    order
}

/// Three-point condition: in every triple the two largest distances agree.
pub fn is_ultrametric(d: &DistanceMatrix, tol: f64) -> bool {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut s = [d.get(i, j), d.get(i, k), d.get(j, k)];
                s.sort_by(f64::total_cmp);
                if s[2] - s[1] > tol {
                    return false;
                }
            }
        }
    }
    true
}
