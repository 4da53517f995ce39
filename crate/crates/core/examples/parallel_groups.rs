//! Sequential and parallel CLGrouping on a large tree.

use std::time::Instant;

use phylo_vrmst::clgrouping::{clgrouping_with, vertex_groups, ClgOptions};
use phylo_vrmst::mlvrmst::{mlvrmst_with, MlvrmstOptions};
use phylo_vrmst::model::{additive_distances, trees_equal};
use phylo_vrmst::simgen::gen_random;

fn main() -> phylo_vrmst::Result<()> {
    let t = gen_random(400, true, 11)?;
    let d = additive_distances(&t);
    let m = mlvrmst_with(&d, &MlvrmstOptions { parallel: true, ..Default::default() })?.tree;
    println!("{} groups to resolve", vertex_groups(&m).len());

    let mut trees = Vec::new();
    for parallel in [false, true] {
        let start = Instant::now();
        let rec = clgrouping_with(&d, &m, &ClgOptions { parallel, ..Default::default() })?;
        println!("parallel={parallel}: {:.2?}", start.elapsed());
        trees.push(rec.tree);
    }
    println!("identical: {}", trees_equal(&trees[0], &trees[1], 1e-12)?);
    println!("correct: {}", trees_equal(&trees[0], &t, 1e-6)?);
    Ok(())
}
