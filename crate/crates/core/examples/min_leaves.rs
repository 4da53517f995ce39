//! The minimum-leaf VRMST against a brute force over every ranking.

use phylo_vrmst::mlvrmst::{mlvrmst, report};
use phylo_vrmst::model::{additive_distances, count_leaves, VertexRanking};
use phylo_vrmst::oracle::min_leaf_vrmst_bruteforce;
use phylo_vrmst::simgen::gen_caterpillar;
use phylo_vrmst::vrmst::kruskal_vertex_ranked;

fn main() -> phylo_vrmst::Result<()> {
    let d = additive_distances(&gen_caterpillar(7, true, 3)?);
    let res = mlvrmst(&d)?;
    println!("{}", report(&d, &res));

    let by_id = kruskal_vertex_ranked(&d, &VertexRanking::by_id(d.taxa().iter().cloned())?)?;
    let (best, _) = min_leaf_vrmst_bruteforce(&d)?;
    println!("leaves: id ranking {}, mlvrmst {}, brute force {best}", count_leaves(&by_id), count_leaves(&res.tree));
    Ok(())
}
