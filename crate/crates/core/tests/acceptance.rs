//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use phylo_vrmst::clgrouping::{clgrouping, clgrouping_with, ClgOptions};
use phylo_vrmst::mlvrmst::{mlvrmst, weight_class_sweep};
use phylo_vrmst::model::{
    additive_distances, count_leaves, max_abs_difference, trees_equal, DistanceMatrix, PhyloTree, VertexRanking,
};
use phylo_vrmst::oracle::{delta_max_bruteforce, enumerate_msts, induces_connected, min_leaf_vrmst_bruteforce};
use phylo_vrmst::simgen::{gen_balanced, gen_caterpillar, gen_random_with, random_order, RandomTreeOptions};
use phylo_vrmst::vrmst::{kruskal_plain, kruskal_vertex_ranked, surrogate_map};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn random_ranking(d: &DistanceMatrix, rng: &mut ChaCha8Rng) -> VertexRanking {
    VertexRanking::from_order(random_order(d.taxa(), rng)).unwrap()
}

fn consistency(corpus: &[PhyloTree]) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let general = corpus.iter().filter(|t| common::has_labeled_internal(t)).count();
    let mut ok = 0;
    let mut first_failure = None;
    for (i, t) in corpus.iter().enumerate() {
        let d = additive_distances(t);
        let m = kruskal_vertex_ranked(&d, &random_ranking(&d, &mut rng)).unwrap();
        match clgrouping(&d, &m, 1e-9) {
            Ok(r) if trees_equal(&r.tree, t, 1e-6).unwrap() => ok += 1,
            other => {
                first_failure.get_or_insert(format!("tree {i}: {:?}", other.map(|r| r.non_additive)));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        ok == corpus.len() && general >= 50 && secs < 60.0,
        format!(
            "{ok}/{} reconstructed, {general} generally labeled, {secs:.2}s{}",
            corpus.len(),
            first_failure.map(|f| format!(", first failure {f}")).unwrap_or_default()
        ),
    )
}

fn indeterminacy_witness() -> Outcome {
    let w = common::w_tree();
    let d = additive_distances(&w);
    let plain = kruskal_plain(
        &d,
        &[
            ("l1", "l2"),
            ("l4", "l5"),
            ("l2", "l3"),
            ("l1", "l4"),
            ("l1", "l3"),
            ("l1", "l5"),
            ("l2", "l4"),
            ("l2", "l5"),
            ("l3", "l4"),
            ("l3", "l5"),
        ],
    )
    .unwrap();
    let bad = clgrouping(&d, &plain, 1e-9).unwrap();
    let diff = max_abs_difference(&additive_distances(&bad.tree), &d).unwrap();
    let mut exact = 0;
    let mut total = 0;
    for perm in d.taxa().iter().cloned().permutations(d.len()) {
        total += 1;
        let m = kruskal_vertex_ranked(&d, &VertexRanking::from_order(perm).unwrap()).unwrap();
        if trees_equal(&clgrouping(&d, &m, 1e-9).unwrap().tree, &w, 1e-9).unwrap() {
            exact += 1;
        }
    }
    outcome(
        diff > 0.1 && exact == total,
        format!("plain MST max entry difference {diff}, {exact}/{total} rankings reconstruct W"),
    )
}

fn minimality(corpus: &[DistanceMatrix]) -> Outcome {
    let start = Instant::now();
    let mut ok = 0;
    let mut mismatches = Vec::new();
    for (i, d) in corpus.iter().enumerate() {
        let got = count_leaves(&mlvrmst(d).unwrap().tree);
        let (best, _) = min_leaf_vrmst_bruteforce(d).unwrap();
        if got == best {
            ok += 1;
        } else {
            mismatches.push(format!("#{i} n={} got {got} min {best}", d.len()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        ok == corpus.len() && ok >= 50 && secs < 300.0,
        format!("{ok}/{} at the brute-force minimum, {secs:.2}s {}", corpus.len(), mismatches.join("; ")),
    )
}

fn delta_max(corpus: &[DistanceMatrix]) -> Outcome {
    let ok = corpus
        .iter()
        .filter(|d| weight_class_sweep(d).delta_max == delta_max_bruteforce(d).unwrap())
        .count();
    outcome(ok == corpus.len() && ok >= 50, format!("{ok}/{} agree with MST enumeration", corpus.len()))
}

fn laminar(corpus: &[DistanceMatrix]) -> Outcome {
    let mut ok = 0;
    let mut msts_seen = 0;
    for d in corpus {
        let family = weight_class_sweep(d).family;
        let msts = enumerate_msts(d).unwrap();
        msts_seen += msts.len();
        let connected = msts
            .iter()
            .all(|t| family.sets().iter().all(|s| induces_connected(t, &s.members)));
        if family.is_laminar() && connected {
            ok += 1;
        }
    }
    outcome(
        ok == corpus.len() && ok >= 50,
        format!("{ok}/{} laminar and connected in all {msts_seen} enumerated MSTs", corpus.len()),
    )
}

fn closed_form_leaves() -> Outcome {
    let mut failures = Vec::new();
    for n in [5, 8, 12, 16] {
        let t = gen_caterpillar(n, true, 60 + n as u64).unwrap();
        let m = mlvrmst(&additive_distances(&t)).unwrap().tree;
        let leaves = count_leaves(&m);
        let internal = n - leaves;
        if leaves != 2 || internal != n - 2 {
            failures.push(format!("caterpillar n={n}: {leaves} leaves, {internal} internal"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut rankings = 0;
    for depth in [2u32, 3, 4] {
        let t = gen_balanced(depth, true, 70 + depth as u64).unwrap();
        let d = additive_distances(&t);
        let half = d.len() / 2;
        for _ in 0..25 {
            rankings += 1;
            let leaves = count_leaves(&kruskal_vertex_ranked(&d, &random_ranking(&d, &mut rng)).unwrap());
            if leaves != half {
                failures.push(format!("balanced L={}: {leaves} leaves", d.len()));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "4 caterpillars, {rankings} balanced rankings{}",
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
        ),
    )
}

fn complexity() -> Outcome {
    let mut times = Vec::new();
    for (k, n) in [128usize, 256, 512].into_iter().enumerate() {
        let opts = RandomTreeOptions::default();
        let d = additive_distances(&gen_random_with(n, &opts, 900 + k as u64).unwrap());
        let mut best = Duration::MAX;
        for _ in 0..3 {
            let start = Instant::now();
            let r = mlvrmst(&d).unwrap();
            best = best.min(start.elapsed());
            assert_eq!(r.tree.len(), n);
        }
        times.push(best.as_secs_f64());
    }
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1] / w[0]).collect();
    outcome(
        ratios.iter().all(|&r| r <= 5.0) && times[2] < 30.0,
        format!(
            "times {:.4}s {:.4}s {:.4}s, ratios {:.2} {:.2}",
            times[0], times[1], times[2], ratios[0], ratios[1]
        ),
    )
}

fn parallel_determinism(corpus: &[PhyloTree]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ok = 0;
    for t in corpus {
        let d = additive_distances(t);
        let m = kruskal_vertex_ranked(&d, &random_ranking(&d, &mut rng)).unwrap();
        let seq = clgrouping_with(&d, &m, &ClgOptions::default()).unwrap();
        let par = clgrouping_with(
            &d,
            &m,
            &ClgOptions {
                parallel: true,
                ..Default::default()
            },
        )
        .unwrap();
        if trees_equal(&seq.tree, &par.tree, 1e-12).unwrap() {
            ok += 1;
        }
    }
    outcome(ok == corpus.len(), format!("{ok}/{} parallel equals sequential", corpus.len()))
}

/// Surrogates are constant along the path to the surrogate, and tree edges
/// between different surrogates contract exactly onto the VRMST.
fn surrogate_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = 0;
    let mut failures = Vec::new();
    for i in 0..100u64 {
        let n = 3 + (i as usize) % 10;
        let opts = RandomTreeOptions {
            general_labels: i % 2 == 0,
            integer_lengths: if i % 3 == 0 { Some(2) } else { None },
            ..Default::default()
        };
        let t = gen_random_with(n, &opts, 7000 + i).unwrap();
        let d = additive_distances(&t);
        let r = random_ranking(&d, &mut rng);
        let vrmst = kruskal_vertex_ranked(&d, &r).unwrap();
        let sg = surrogate_map(&t, &r).unwrap();
        let idx = |v: usize| d.index_of(t.name(v)).unwrap();

        let path_ok = (0..t.len()).all(|h| t.path(h, sg.get(h)).iter().all(|&x| sg.get(x) == sg.get(h)));
        let mut contracted: Vec<(usize, usize)> = t
            .edges()
            .iter()
            .filter(|&&(a, b, _)| sg.get(a) != sg.get(b))
            .map(|&(a, b, _)| {
                let (x, y) = (idx(sg.get(a)), idx(sg.get(b)));
                (x.min(y), x.max(y))
            })
            .collect();
        let adjacent_ok = contracted.iter().all(|&(x, y)| vrmst.has_edge(x, y));
        contracted.sort_unstable();
        let exact = contracted == vrmst.pairs();
        if path_ok && adjacent_ok && exact {
            ok += 1;
        } else {
            failures.push(format!("pair {i}: path {path_ok} adjacent {adjacent_ok} contraction {exact}"));
        }
    }
    outcome(ok == 100, format!("{ok}/100 (tree, ranking) pairs {}", failures.join("; ")))
}

fn main() {
    let consistency_trees = common::consistency_corpus();
    let small = common::small_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 consistency", Box::new(|| consistency(&consistency_trees))),
        ("2 indeterminacy witness", Box::new(indeterminacy_witness)),
        ("3 minimum leaves", Box::new(|| minimality(&small))),
        ("4 delta_max", Box::new(|| delta_max(&small))),
        ("5 laminar family", Box::new(|| laminar(&small))),
        ("6 closed-form leaf counts", Box::new(closed_form_leaves)),
        ("7 complexity", Box::new(complexity)),
        ("8 parallel determinism", Box::new(|| parallel_determinism(&consistency_trees))),
        ("9 surrogate properties", Box::new(surrogate_properties)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let o = check();
        if !o.passed {
            failed += 1;
        }
        println!("{} [{name}] {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
