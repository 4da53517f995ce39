//! Shared fixtures for unit tests.

use crate::model::{additive_distances, DistanceMatrix, PhyloTree, TreeBuilder};

/// Quartet a,b | c,d with unit edges.
pub fn quartet() -> PhyloTree {
    let mut b = TreeBuilder::new();
    let ids: Vec<_> = ["a", "b", "c", "d"].iter().map(|n| b.add_labeled(*n)).collect();
    let h1 = b.add_named_hidden("h1");
    let h2 = b.add_named_hidden("h2");
    b.add_edge(ids[0], h1, 1.0);
    b.add_edge(ids[1], h1, 1.0);
    b.add_edge(h1, h2, 1.0);
    b.add_edge(ids[2], h2, 1.0);
    b.add_edge(ids[3], h2, 1.0);
    b.build().unwrap()
}

pub fn quartet_matrix() -> DistanceMatrix {
    additive_distances(&quartet())
}

/// Five-taxon tree with cherries (l1,l2) and (l4,l5) joined through h3, which
/// also carries l3 at distance 2.
pub fn w_tree() -> PhyloTree {
    let mut b = TreeBuilder::new();
    let l: Vec<_> = ["l1", "l2", "l3", "l4", "l5"]
        .iter()
        .map(|n| b.add_labeled(*n))
        .collect();
    let h1 = b.add_named_hidden("h1");
    let h2 = b.add_named_hidden("h2");
    let h3 = b.add_named_hidden("h3");
    b.add_edge(l[0], h1, 1.0);
    b.add_edge(l[1], h1, 1.0);
    b.add_edge(h1, h3, 1.0);
    b.add_edge(l[2], h3, 2.0);
    b.add_edge(h3, h2, 1.0);
    b.add_edge(l[3], h2, 1.0);
    b.add_edge(l[4], h2, 1.0);
    b.build().unwrap()
}

pub fn w_matrix() -> DistanceMatrix {
    additive_distances(&w_tree())
}
