//! Simulate, measure, reconstruct and compare over a batch of random trees.
//!
//! `cargo run --release --example simulate_pipeline -- 200 40`

use std::time::Instant;

use phylo_vrmst::clgrouping::clgrouping;
use phylo_vrmst::mlvrmst::mlvrmst;
use phylo_vrmst::model::{additive_distances, trees_equal};
use phylo_vrmst::simgen::gen_random;

fn main() -> phylo_vrmst::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let trees = args.next().unwrap_or(100);
    let n = args.next().unwrap_or(30);

    let start = Instant::now();
    let mut ok = 0;
    for seed in 0..trees as u64 {
        let t = gen_random(n, seed % 2 == 0, seed)?;
        let d = additive_distances(&t);
        let m = mlvrmst(&d)?.tree;
        ok += trees_equal(&clgrouping(&d, &m, 1e-9)?.tree, &t, 1e-6)? as usize;
    }
    println!("{ok}/{trees} trees with {n} taxa reconstructed in {:.2?}", start.elapsed());
    Ok(())
}
