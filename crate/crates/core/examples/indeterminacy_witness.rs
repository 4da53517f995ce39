//! Two MSTs of the same matrix: an arbitrary one leads CLGrouping astray,
//! any vertex-ranked one does not.

use itertools::Itertools;
use phylo_vrmst::clgrouping::clgrouping;
use phylo_vrmst::model::{additive_distances, max_abs_difference, trees_equal, VertexRanking};
use phylo_vrmst::treeio::{parse_newick, write_edge_list, write_newick};
use phylo_vrmst::vrmst::{kruskal_plain, kruskal_vertex_ranked};

fn main() -> phylo_vrmst::Result<()> {
    let w = parse_newick("((l1:1,l2:1):1,l3:2,(l4:1,l5:1):1);")?;
    let d = additive_distances(&w);

    // ties broken by hand so that l2, not l3, ends up central
    let order = [
        ("l1", "l2"), ("l4", "l5"), ("l2", "l3"), ("l1", "l4"), ("l1", "l3"),
        ("l1", "l5"), ("l2", "l4"), ("l2", "l5"), ("l3", "l4"), ("l3", "l5"),
    ];
    let plain = kruskal_plain(&d, &order)?;
    let bad = clgrouping(&d, &plain, 1e-9)?;
    println!("plain MST:\n{}", write_edge_list(&plain));
    println!("gives {}", write_newick(&bad.tree));
    println!("max distance error {}\n", max_abs_difference(&additive_distances(&bad.tree), &d)?);

    let mut good = 0;
    let perms: Vec<_> = d.taxa().iter().cloned().permutations(d.len()).collect();
    for p in &perms {
        let m = kruskal_vertex_ranked(&d, &VertexRanking::from_order(p.clone())?)?;
        good += trees_equal(&clgrouping(&d, &m, 1e-9)?.tree, &w, 1e-9)? as usize;
    }
    println!("vertex-ranked MSTs reconstructing W: {good}/{}", perms.len());
    Ok(())
}
