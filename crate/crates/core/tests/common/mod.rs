//! Fixtures and seeded corpora shared by the integration tests.
#![allow(dead_code)]

use phylo_vrmst::model::{additive_distances, DistanceMatrix, PhyloTree};
use phylo_vrmst::simgen::{gen_balanced, gen_caterpillar, gen_random_with, RandomTreeOptions};
use phylo_vrmst::treeio::parse_newick;

pub const QUARTET: &str = "(a:1,b:1,(c:1,d:1):1);";
/// Cherries (l1,l2) and (l4,l5) joined through a vertex that carries l3 at
/// distance 2. Every cross-cherry distance and every distance to l3 is 4.
pub const W: &str = "((l1:1,l2:1):1,l3:2,(l4:1,l5:1):1);";

pub fn quartet() -> PhyloTree {
    parse_newick(QUARTET).unwrap()
}

pub fn w_tree() -> PhyloTree {
    parse_newick(W).unwrap()
}

pub fn has_labeled_internal(t: &PhyloTree) -> bool {
    t.labeled_ids().iter().any(|&v| t.degree(v) > 1)
}

/// 200 trees with 4 to 20 taxa: generally labeled and plain random trees on
/// the fine length grid, tie-rich random trees with integer lengths, and
/// caterpillars and balanced trees.
pub fn consistency_corpus() -> Vec<PhyloTree> {
    (0..200u64)
        .map(|i| {
            let n = 4 + (i as usize * 7) % 17;
            let seed = 1000 + i;
            match i % 5 {
                0 | 1 => gen_random_with(
                    n,
                    &RandomTreeOptions {
                        general_labels: true,
                        ..Default::default()
                    },
                    seed,
                ),
                2 => gen_random_with(n, &RandomTreeOptions::default(), seed),
                3 => gen_random_with(
                    n,
                    &RandomTreeOptions {
                        general_labels: i % 2 == 0,
                        integer_lengths: Some(2),
                        ..Default::default()
                    },
                    seed,
                ),
                _ if i % 2 == 0 => gen_caterpillar(n, i % 4 == 0, seed),
                _ => gen_balanced(2 + (i as u32 / 5) % 3, i % 3 == 0, seed),
            }
            .unwrap()
        })
        .collect()
}

/// Additive matrices with 3 to 8 taxa, mostly with heavily tied distances,
/// plus the quartet and W.
pub fn small_corpus() -> Vec<DistanceMatrix> {
    let mut out = vec![additive_distances(&quartet()), additive_distances(&w_tree())];
    for i in 0..60u64 {
        let n = 3 + (i as usize) % 6;
        let opts = RandomTreeOptions {
            general_labels: i % 3 == 0,
            integer_lengths: if i % 4 == 3 { None } else { Some(1 + (i as u32 % 3)) },
            ..Default::default()
        };
        out.push(additive_distances(&gen_random_with(n, &opts, 5000 + i).unwrap()));
    }
    for n in [4, 6, 8] {
        out.push(additive_distances(&gen_caterpillar(n, true, n as u64).unwrap()));
    }
    out.push(additive_distances(&gen_balanced(3, true, 8).unwrap()));
    out
}
