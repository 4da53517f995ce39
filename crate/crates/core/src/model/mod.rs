//! Core domain types: phylogenetic trees, distance matrices, vertex rankings
//! and spanning trees of the distance graph, plus the additive-distance
//! computations that tie them together.

mod matrix;
mod ranking;
mod spanning;
mod tree;

pub use matrix::{DistanceMatrix, WeightClasses, WeightedEdge};
pub use ranking::VertexRanking;
pub use spanning::SpanningTree;
pub use tree::{PhyloTree, TreeBuilder, Vertex, VertexId};

use crate::error::{Error, Result};

/// Path-length distances between every pair of labeled vertices of `tree`.
///
/// Taxa appear in the tree's vertex order.
pub fn additive_distances(tree: &PhyloTree) -> DistanceMatrix {
    let labeled = tree.labeled_ids();
    let n = labeled.len();
    let mut values = vec![0.0; n * n];
    for (i, &src) in labeled.iter().enumerate() {
        let dist = tree.distances_from(src);
        for (j, &dst) in labeled.iter().enumerate() {
            values[i * n + j] = dist[dst];
        }
    }
    let taxa = labeled.iter().map(|&i| tree.name(i).to_string()).collect();
    // Distinct vertices of a positive-length tree are at positive distance.
    DistanceMatrix::new(taxa, values).expect("tree distances form a valid matrix")
}

/// Four-point condition: for every four taxa, the two largest of the three
/// pairwise sums agree within `tol`.
pub fn check_additivity(d: &DistanceMatrix, tol: f64) -> bool {
    let n = d.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = d.get(i, j);
            for k in (j + 1)..n {
                let (dik, djk) = (d.get(i, k), d.get(j, k));
                for l in (k + 1)..n {
                    let mut s = [
                        dij + d.get(k, l),
                        dik + d.get(j, l),
                        d.get(i, l) + djk,
                    ];
                    s.sort_by(f64::total_cmp);
                    if s[2] - s[1] > tol {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether two trees over the same taxa induce the same distances within `tol`.
///
/// Tree-additive distances determine a positive-length tree uniquely, so this
/// is tree equality up to the names of hidden vertices.
pub fn trees_equal(t1: &PhyloTree, t2: &PhyloTree, tol: f64) -> Result<bool> {
    let d1 = additive_distances(t1);
    let d2 = additive_distances(t2);
    matrices_equal(&d1, &d2, tol)
}

/// Entrywise comparison of two matrices over the same taxon set (in any order).
pub fn matrices_equal(d1: &DistanceMatrix, d2: &DistanceMatrix, tol: f64) -> Result<bool> {
    Ok(max_abs_difference(d1, d2)? <= tol)
}

/// Largest entrywise absolute difference between two matrices over the same taxa.
pub fn max_abs_difference(d1: &DistanceMatrix, d2: &DistanceMatrix) -> Result<f64> {
    if d1.len() != d2.len() {
        return Err(Error::TaxonMismatch(format!(
            "{} taxa vs {} taxa",
            d1.len(),
            d2.len()
        )));
    }
    let map = d1
        .taxa()
        .iter()
        .map(|t| {
            d2.index_of(t)
                .ok_or_else(|| Error::TaxonMismatch(format!("taxon {t:?} missing from second tree")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut worst: f64 = 0.0;
    for i in 0..d1.len() {
        for j in (i + 1)..d1.len() {
            worst = worst.max((d1.get(i, j) - d2.get(map[i], map[j])).abs());
        }
    }
    Ok(worst)
}

/// Number of degree-one vertices of a spanning tree.
pub fn count_leaves(t: &SpanningTree) -> usize {
    t.leaves().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{quartet, quartet_matrix, w_tree};

    #[test]
    fn quartet_distances() {
        let d = additive_distances(&quartet());
        assert_eq!(d.distance("a", "b").unwrap(), 2.0);
        assert_eq!(d.distance("a", "c").unwrap(), 3.0);
        assert_eq!(d.distance("c", "d").unwrap(), 2.0);
        assert_eq!(d.distance("b", "d").unwrap(), 3.0);
    }

    #[test]
    fn single_edge_distance() {
        let mut b = TreeBuilder::new();
        let x = b.add_labeled("a");
        let y = b.add_labeled("b");
        b.add_edge(x, y, 5.0);
        let d = additive_distances(&b.build().unwrap());
        assert_eq!(d.distance("a", "b").unwrap(), 5.0);
    }

    #[test]
    fn w_tree_distances() {
        let d = additive_distances(&w_tree());
        for (a, b) in [("l1", "l2"), ("l4", "l5")] {
            assert_eq!(d.distance(a, b).unwrap(), 2.0);
        }
        for a in ["l1", "l2"] {
            for b in ["l3", "l4", "l5"] {
                assert_eq!(d.distance(a, b).unwrap(), 4.0, "{a} {b}");
            }
        }
        assert_eq!(d.distance("l3", "l4").unwrap(), 4.0);
        assert_eq!(d.distance("l3", "l5").unwrap(), 4.0);
    }

    #[test]
    fn four_point_condition() {
        let d = quartet_matrix();
        assert!(check_additivity(&d, 1e-9));

        let three = DistanceMatrix::from_fn(vec!["x".into(), "y".into(), "z".into()], |i, j| {
            [[0.0, 1.0, 5.0], [1.0, 0.0, 4.5], [5.0, 4.5, 0.0]][i][j]
        })
        .unwrap();
        assert!(check_additivity(&three, 1e-9));

        let perturbed = DistanceMatrix::from_fn(d.taxa().to_vec(), |i, j| {
            if (i, j) == (0, 2) {
                3.5
            } else {
                d.get(i, j)
            }
        })
        .unwrap();
        assert!(!check_additivity(&perturbed, 1e-9));
    }

    #[test]
    fn trees_equal_ignores_hidden_names() {
        let q = quartet();
        let renamed = q.rename_hidden(|n| format!("x_{n}")).unwrap();
        assert!(trees_equal(&q, &renamed, 1e-9).unwrap());
    }

    #[test]
    fn trees_equal_detects_length_change() {
        let mut b = TreeBuilder::new();
        let ids: Vec<_> = ["a", "b", "c", "d"].iter().map(|n| b.add_labeled(*n)).collect();
        let h1 = b.add_hidden();
        let h2 = b.add_hidden();
        b.add_edge(ids[0], h1, 1.0);
        b.add_edge(ids[1], h1, 1.0);
        b.add_edge(h1, h2, 2.0);
        b.add_edge(ids[2], h2, 1.0);
        b.add_edge(ids[3], h2, 1.0);
        let longer = b.build().unwrap();
        assert_eq!(additive_distances(&longer).distance("a", "c").unwrap(), 4.0);
        assert!(!trees_equal(&quartet(), &longer, 1e-9).unwrap());
    }

    #[test]
    fn trees_equal_rejects_different_taxa() {
        let mut b = TreeBuilder::new();
        let x = b.add_labeled("a");
        let y = b.add_labeled("z");
        b.add_edge(x, y, 1.0);
        let other = b.build().unwrap();
        assert!(trees_equal(&quartet(), &other, 1e-9).is_err());
    }

    #[test]
    fn leaf_counts() {
        let d = quartet_matrix();
        let path = SpanningTree::from_names(&d, [("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(count_leaves(&path), 2);
        let star = SpanningTree::from_names(&d, [("a", "b"), ("a", "c"), ("a", "d")]).unwrap();
        assert_eq!(count_leaves(&star), 3);
        let t = SpanningTree::from_names(&d, [("a", "b"), ("c", "d"), ("a", "c")]).unwrap();
        assert_eq!(count_leaves(&t), 2);
        let leaves: Vec<&str> = t.leaves().iter().map(|&i| d.taxon(i)).collect();
        assert_eq!(leaves, vec!["b", "d"]);
    }
}
