//! Reconstruct a four-taxon tree from its additive distances.

use phylo_vrmst::clgrouping::clgrouping;
use phylo_vrmst::mlvrmst::mlvrmst;
use phylo_vrmst::model::{additive_distances, trees_equal};
use phylo_vrmst::treeio::{parse_newick, write_edge_list, write_newick, write_phylip};

fn main() -> phylo_vrmst::Result<()> {
    let truth = parse_newick("(a:1,b:1,(c:1,d:1):1);")?;
    let d = additive_distances(&truth);
    print!("{}", write_phylip(&d)?);

    let res = mlvrmst(&d)?;
    println!("\nminimum-leaf MST, ranking {:?}", res.ranking.order());
    print!("{}", write_edge_list(&res.tree));

    let rec = clgrouping(&d, &res.tree, 1e-9)?;
    println!("\nreconstructed {}", write_newick(&rec.tree));
    println!("matches input: {}", trees_equal(&rec.tree, &truth, 1e-9)?);
    Ok(())
}
