//! Newick, PHYLIP, edge list and ranking formats, and what a parse error
//! looks like.

use phylo_vrmst::model::additive_distances;
use phylo_vrmst::simgen::gen_random;
use phylo_vrmst::treeio::{
    parse_newick, read_edge_list, read_phylip, read_ranking, write_edge_list, write_newick, write_phylip,
    write_ranking,
};
use phylo_vrmst::vrmst::kruskal_vertex_ranked;

fn main() -> phylo_vrmst::Result<()> {
    let t = gen_random(6, true, 4)?;
    let text = write_newick(&t);
    println!("{text}");
    assert_eq!(write_newick(&parse_newick(&text)?), text);

    let d = additive_distances(&t);
    let phylip = write_phylip(&d)?;
    print!("\n{phylip}");
    assert_eq!(read_phylip(&phylip)?, d);

    let r = read_ranking("# taxon\trank\nt3\t1\nt1\t2\nt2\t3\nt4\t4\nt5\t5\nt6\t6\n")?;
    print!("\n{}", write_ranking(&r));
    let m = kruskal_vertex_ranked(&d, &r)?;
    let edges = write_edge_list(&m);
    print!("\n{edges}");
    assert_eq!(read_edge_list(&edges, &d)?, m);

    match parse_newick("(a:1,(b:1,c:x):1);") {
        Err(e) => println!("\n{e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
