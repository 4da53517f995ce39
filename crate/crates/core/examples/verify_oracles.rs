//! Brute-force checks on small tie-heavy matrices.

use phylo_vrmst::model::additive_distances;
use phylo_vrmst::oracle::{enumerate_msts, verify_properties};
use phylo_vrmst::simgen::{gen_random_with, RandomTreeOptions};

fn main() -> phylo_vrmst::Result<()> {
    let opts = RandomTreeOptions { general_labels: true, integer_lengths: Some(1), ..Default::default() };
    for seed in 0..4 {
        let d = additive_distances(&gen_random_with(7, &opts, seed)?);
        println!("seed {seed}: {} MSTs", enumerate_msts(&d)?.len());
        for c in verify_properties(&d)? {
            println!("  {}\t{}\t{}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
    }
    Ok(())
}
