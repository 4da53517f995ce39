//! Minimum-leaf vertex-ranked MSTs.
//!
//! A single sweep over the weight classes of the distance graph computes, for
//! every taxon, its maximum degree over all MSTs (`delta_max`), the laminar
//! family of threshold components, and the partition of candidate edges into
//! *fixed* edges (present in every MST) and *flexible* component graphs. Taxa
//! are then ranked by ascending `delta_max` and Kruskal is run independently
//! inside each flexible component graph. For tree-additive input the result is
//! a vertex-ranked MST with the fewest leaves.
//!
//! Component labels are DSU roots captured before any union in the class, so
//! they are taxon indices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dsu::DsuForest;
use crate::error::Result;
use crate::model::{check_additivity, count_leaves, DistanceMatrix, SpanningTree, VertexRanking};
use crate::vrmst::{kruskal_scan, EdgeOrderKey};
use crate::DEFAULT_TOL;

/// Maximum MST degree per taxon, aligned with the matrix taxa.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaMax {
    taxa: Vec<String>,
    values: Vec<usize>,
}

impl DeltaMax {
    pub fn new(taxa: Vec<String>, values: Vec<usize>) -> Self {
        assert_eq!(taxa.len(), values.len());
        DeltaMax { taxa, values }
    }

    pub fn get(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn get_named(&self, taxon: &str) -> Option<usize> {
        let i = self.taxa.iter().position(|t| t == taxon)?;
        Some(self.values[i])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }

    pub fn taxa(&self) -> &[String] {
        &self.taxa
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.taxa.iter().map(String::as_str).zip(self.values.iter().copied())
    }
}

/// A candidate edge together with the pre-union components of its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentEdge {
    pub u: usize,
    pub v: usize,
    pub comp_u: usize,
    pub comp_v: usize,
}

/// Multigraph over the components joined by one weight class into one new
/// component. Only recorded when it has a cycle or parallel edges; otherwise
/// all its edges are fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentGraph {
    pub weight: f64,
    /// Root of the merged component after the class's unions.
    pub label: usize,
    /// Pre-union component labels, sorted.
    pub components: Vec<usize>,
    pub edges: Vec<ComponentEdge>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaminarSet {
    /// Weight of the class after which this component exists; `0.0` for the
    /// initial singletons.
    pub threshold: f64,
    /// Sorted taxon indices.
    pub members: Vec<usize>,
}

/// Vertex sets of the threshold components over all weight classes, plus the
/// singletons and the full taxon set.
#[derive(Debug, Clone, PartialEq)]
pub struct LaminarFamily {
    n: usize,
    sets: Vec<LaminarSet>,
}

impl LaminarFamily {
    pub fn sets(&self) -> &[LaminarSet] {
        &self.sets
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, members: &[usize]) -> bool {
        let mut m = members.to_vec();
        m.sort_unstable();
        self.sets.iter().any(|s| s.members == m)
    }

    /// Any two sets are disjoint or one contains the other.
    pub fn is_laminar(&self) -> bool {
        let bits: Vec<Vec<bool>> = self
            .sets
            .iter()
            .map(|s| {
                let mut b = vec![false; self.n];
                for &x in &s.members {
                    b[x] = true;
                }
                b
            })
            .collect();
        for i in 0..self.sets.len() {
            for j in i + 1..self.sets.len() {
                let (small, large) = if self.sets[i].members.len() <= self.sets[j].members.len() {
                    (i, j)
                } else {
                    (j, i)
                };
                let members = &self.sets[small].members;
                let shared = members.iter().filter(|&&x| bits[large][x]).count();
                if shared != 0 && shared != members.len() {
                    return false;
                }
            }
        }
        true
    }
}

/// Everything the weight-class sweep computes.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightClassSweep {
    /// Edges present in every MST, as sorted `(u, v)` with `u < v`.
    pub fixed_edges: Vec<(usize, usize)>,
    /// Flexible component graphs in class order, then label order.
    pub component_graphs: Vec<ComponentGraph>,
    pub delta_max: DeltaMax,
    pub family: LaminarFamily,
}

impl WeightClassSweep {
    /// All flexible edges as sorted `(u, v)` pairs.
    pub fn flexible_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .component_graphs
            .iter()
            .flat_map(|g| g.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))))
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn weight_class_sweep(d: &DistanceMatrix) -> WeightClassSweep {
    weight_class_sweep_with_tol(d, DEFAULT_TOL)
}

pub fn weight_class_sweep_with_tol(d: &DistanceMatrix, tol: f64) -> WeightClassSweep {
    let n = d.len();
    let classes = d.weight_classes(tol);
    let mut dsu = DsuForest::with_len(n);
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut delta = vec![0usize; n];
    let mut comp_nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut touched: Vec<usize> = Vec::new();
    let mut fixed = Vec::new();
    let mut graphs = Vec::new();
    let mut sets: Vec<LaminarSet> = (0..n)
        .map(|i| LaminarSet {
            threshold: 0.0,
            members: vec![i],
        })
        .collect();

    for (weight, edges) in classes.classes() {
        let mut class_edges = Vec::new();
        for e in edges {
            let (cu, cv) = (dsu.find(e.u), dsu.find(e.v));
            if cu == cv {
                continue;
            }
            class_edges.push(ComponentEdge {
                u: e.u,
                v: e.v,
                comp_u: cu,
                comp_v: cv,
            });
            for (x, c) in [(e.u, cv), (e.v, cu)] {
                if comp_nbrs[x].is_empty() {
                    touched.push(x);
                }
                comp_nbrs[x].push(c);
            }
        }
        if class_edges.is_empty() {
            continue;
        }
        for x in touched.drain(..) {
            let nb = &mut comp_nbrs[x];
            nb.sort_unstable();
            nb.dedup();
            delta[x] += nb.len();
            nb.clear();
        }
        for e in &class_edges {
            let (ra, rb) = (dsu.find(e.comp_u), dsu.find(e.comp_v));
            if ra != rb {
                let root = dsu.union(ra, rb).expect("distinct roots");
                let loser = if root == ra { rb } else { ra };
                let moved = std::mem::take(&mut members[loser]);
                members[root].extend(moved);
            }
        }
        let mut groups: BTreeMap<usize, Vec<ComponentEdge>> = BTreeMap::new();
        for e in class_edges {
            groups.entry(dsu.find(e.u)).or_default().push(e);
        }
        for (label, group) in groups {
            let mut comps: Vec<usize> = group.iter().flat_map(|e| [e.comp_u, e.comp_v]).collect();
            comps.sort_unstable();
            comps.dedup();
            // Connected by construction, so simple and acyclic iff it is a tree.
            if group.len() + 1 == comps.len() {
                fixed.extend(group.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))));
            } else {
                graphs.push(ComponentGraph {
                    weight,
                    label,
                    components: comps,
                    edges: group,
                });
            }
            let mut m = members[label].clone();
            m.sort_unstable();
            sets.push(LaminarSet {
                threshold: weight,
                members: m,
            });
        }
    }
    fixed.sort_unstable();
    WeightClassSweep {
        fixed_edges: fixed,
        component_graphs: graphs,
        delta_max: DeltaMax::new(d.taxa().to_vec(), delta),
        family: LaminarFamily { n, sets },
    }
}

/// The laminar family of threshold components of the distance graph.
pub fn laminar_family(d: &DistanceMatrix) -> LaminarFamily {
    weight_class_sweep(d).family
}

/// Ranks taxa by ascending `delta_max`; ties go to the smaller taxon id.
pub fn rank_from_delta(delta: &DeltaMax) -> VertexRanking {
    let mut order: Vec<(usize, &str)> = delta.iter().map(|(t, v)| (v, t)).collect();
    order.sort();
    VertexRanking::from_order(order.into_iter().map(|(_, t)| t.to_string()))
        .expect("taxa are unique")
}

/// Outcome of the four-point check run alongside the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Additivity {
    Additive,
    /// The tree is still a valid VRMST but leaf minimality is not guaranteed.
    NonAdditive,
    /// Skipped because the input exceeds [`MlvrmstOptions::additivity_check_limit`].
    Unchecked,
}

#[derive(Debug, Clone, Copy)]
pub struct MlvrmstOptions {
    pub tol: f64,
    /// Run per-component Kruskal on the rayon pool.
    pub parallel: bool,
    /// Largest taxon count for which the O(n^4) four-point check runs.
    pub additivity_check_limit: usize,
}

impl Default for MlvrmstOptions {
    fn default() -> Self {
        MlvrmstOptions {
            tol: DEFAULT_TOL,
            parallel: false,
            additivity_check_limit: 64,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MlvrmstResult {
    pub tree: SpanningTree,
    pub ranking: VertexRanking,
    pub sweep: WeightClassSweep,
    pub additivity: Additivity,
}

impl MlvrmstResult {
    pub fn delta_max(&self) -> &DeltaMax {
        &self.sweep.delta_max
    }

    pub fn leaves(&self) -> usize {
        count_leaves(&self.tree)
    }
}

pub fn mlvrmst(d: &DistanceMatrix) -> Result<MlvrmstResult> {
    mlvrmst_with(d, &MlvrmstOptions::default())
}

pub fn mlvrmst_with(d: &DistanceMatrix, opts: &MlvrmstOptions) -> Result<MlvrmstResult> {
    let sweep = weight_class_sweep_with_tol(d, opts.tol);
    let ranking = rank_from_delta(&sweep.delta_max);
    let ranks = ranking.rank_vector(d)?;

    let select = |g: &ComponentGraph| select_in_component(g, &ranks);
    let selected: Vec<Vec<(usize, usize)>> = if opts.parallel {
        sweep.component_graphs.par_iter().map(select).collect()
    } else {
        sweep.component_graphs.iter().map(select).collect()
    };
    let edges = sweep
        .fixed_edges
        .iter()
        .copied()
        .chain(selected.into_iter().flatten());
    let tree = SpanningTree::new(d, edges)?;

    let additivity = if d.len() > opts.additivity_check_limit {
        Additivity::Unchecked
    } else {
        let scale = (0..d.len())
            .flat_map(|i| d.row(i).iter().copied())
            .fold(1.0f64, f64::max);
        if check_additivity(d, opts.tol * scale) {
            Additivity::Additive
        } else {
            log::warn!("distances are not tree-additive; leaf minimality is not guaranteed");
            Additivity::NonAdditive
        }
    };
    Ok(MlvrmstResult {
        tree,
        ranking,
        sweep,
        additivity,
    })
}

/// Kruskal restricted to one component graph. Every edge has the class weight,
/// so the order is by the endpoint ranks of the original edge.
fn select_in_component(g: &ComponentGraph, ranks: &[usize]) -> Vec<(usize, usize)> {
    let mut keyed: Vec<(EdgeOrderKey, &ComponentEdge)> = g
        .edges
        .iter()
        .map(|e| (EdgeOrderKey::new(g.weight, ranks[e.u], ranks[e.v]), e))
        .collect();
    keyed.sort_unstable_by_key(|a| a.0);
    let local = |c: usize| g.components.binary_search(&c).expect("component label");
    let accepted = kruskal_scan(
        g.components.len(),
        keyed.iter().map(|(_, e)| (local(e.comp_u), local(e.comp_v))),
    );
    // Map accepted component pairs back to the original edges by scan order.
    let mut out = Vec::with_capacity(accepted.len());
    let mut it = accepted.into_iter().peekable();
    for (_, e) in keyed {
        match it.peek() {
            Some(&(a, b)) if (a, b) == (local(e.comp_u), local(e.comp_v)) => {
                out.push((e.u.min(e.v), e.u.max(e.v)));
                it.next();
            }
            _ => {}
        }
    }
    out
}

/// Line-oriented diagnostic report: key/value header and tab-separated blocks.
pub fn report(d: &DistanceMatrix, result: &MlvrmstResult) -> String {
    let name = |i: usize| d.taxon(i);
    let mut s = String::new();
    let additivity = match result.additivity {
        Additivity::Additive => "additive",
        Additivity::NonAdditive => "non-additive",
        Additivity::Unchecked => "unchecked",
    };
    writeln!(s, "taxa\t{}", d.len()).unwrap();
    writeln!(s, "leaves\t{}", result.leaves()).unwrap();
    writeln!(s, "additivity\t{additivity}").unwrap();
    writeln!(s, "\n[delta_max]\ntaxon\tdelta_max\trank").unwrap();
    for taxon in result.ranking.order() {
        let i = d.index_of(taxon).unwrap();
        writeln!(s, "{taxon}\t{}\t{}", result.delta_max().get(i), result.ranking.rank(taxon).unwrap()).unwrap();
    }
    writeln!(s, "\n[fixed_edges]\nu\tv\tweight").unwrap();
    for &(u, v) in &result.sweep.fixed_edges {
        writeln!(s, "{}\t{}\t{}", name(u), name(v), d.get(u, v)).unwrap();
    }
    writeln!(s, "\n[flexible_edges]\nweight\tcomponent\tu\tv\tcomp_u\tcomp_v\tselected").unwrap();
    for g in &result.sweep.component_graphs {
        for e in &g.edges {
            let chosen = result.tree.has_edge(e.u, e.v);
            writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                g.weight,
                name(g.label),
                name(e.u),
                name(e.v),
                name(e.comp_u),
                name(e.comp_v),
                if chosen { "yes" } else { "no" }
            )
            .unwrap();
        }
    }
    writeln!(s, "\n[laminar_family]\nthreshold\tsize\tmembers").unwrap();
    for set in result.sweep.family.sets() {
        let members: Vec<&str> = set.members.iter().map(|&i| name(i)).collect();
        writeln!(s, "{}\t{}\t{}", set.threshold, set.members.len(), members.join(",")).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{quartet_matrix, w_matrix};
    use crate::vrmst::kruskal_vertex_ranked;

    fn idx(d: &DistanceMatrix, a: &str, b: &str) -> (usize, usize) {
        let (x, y) = (d.index_of(a).unwrap(), d.index_of(b).unwrap());
        (x.min(y), x.max(y))
    }

    #[test]
    fn sweep_on_w() {
        let d = w_matrix();
        let s = weight_class_sweep(&d);
        let delta: Vec<(&str, usize)> = s.delta_max.iter().collect();
        assert_eq!(delta, vec![("l1", 3), ("l2", 3), ("l3", 2), ("l4", 3), ("l5", 3)]);
        assert_eq!(s.fixed_edges, vec![idx(&d, "l1", "l2"), idx(&d, "l4", "l5")]);
        assert_eq!(s.component_graphs.len(), 1);
        let g = &s.component_graphs[0];
        assert_eq!(g.weight, 4.0);
        assert_eq!(g.edges.len(), 8);
        assert_eq!(g.components.len(), 3);
    }

    #[test]
    fn sweep_on_quartet() {
        let d = quartet_matrix();
        let s = weight_class_sweep(&d);
        assert_eq!(s.delta_max.as_slice(), &[2, 2, 2, 2]);
        assert_eq!(s.fixed_edges, vec![idx(&d, "a", "b"), idx(&d, "c", "d")]);
        assert_eq!(s.component_graphs.len(), 1);
        assert_eq!(s.component_graphs[0].weight, 3.0);
        assert_eq!(s.component_graphs[0].edges.len(), 4);
    }

    #[test]
    fn distinct_weights_are_all_fixed() {
        let names: Vec<String> = ["p", "q", "r", "s"].map(String::from).to_vec();
        let w = [[0., 1., 2., 4.], [1., 0., 3., 5.], [2., 3., 0., 6.], [4., 5., 6., 0.]];
        let d = DistanceMatrix::from_fn(names, |i, j| w[i][j]).unwrap();
        let s = weight_class_sweep(&d);
        assert!(s.component_graphs.is_empty());
        assert_eq!(s.fixed_edges.len(), 3);
        let mst = SpanningTree::new(&d, s.fixed_edges.clone()).unwrap();
        assert_eq!(s.delta_max.as_slice(), mst.degrees().as_slice());
    }

    #[test]
    fn ranking_from_delta() {
        let d = w_matrix();
        let r = rank_from_delta(&weight_class_sweep(&d).delta_max);
        assert_eq!(r.order(), vec!["l3", "l1", "l2", "l4", "l5"]);

        let flat = DeltaMax::new(vec!["b".into(), "a".into(), "c".into()], vec![1, 1, 1]);
        assert_eq!(rank_from_delta(&flat).order(), vec!["a", "b", "c"]);

        let mixed = DeltaMax::new(vec!["x".into(), "y".into(), "z".into()], vec![5, 1, 3]);
        let r = rank_from_delta(&mixed);
        assert_eq!((r.rank("y"), r.rank("z"), r.rank("x")), (Some(1), Some(2), Some(3)));
    }

    #[test]
    fn mlvrmst_on_w() {
        let d = w_matrix();
        let res = mlvrmst(&d).unwrap();
        assert_eq!(
            res.tree.edge_names(),
            vec![
                ("l1".into(), "l2".into()),
                ("l1".into(), "l3".into()),
                ("l3".into(), "l4".into()),
                ("l4".into(), "l5".into()),
            ]
        );
        assert_eq!(res.leaves(), 2);
        assert_eq!(res.additivity, Additivity::Additive);
        let l1_first = VertexRanking::from_order(["l1", "l2", "l3", "l4", "l5"]).unwrap();
        assert_eq!(count_leaves(&kruskal_vertex_ranked(&d, &l1_first).unwrap()), 3);
    }

    #[test]
    fn mlvrmst_on_quartet() {
        let d = quartet_matrix();
        let res = mlvrmst(&d).unwrap();
        assert_eq!(res.leaves(), 2);
        assert_eq!(res.tree, kruskal_vertex_ranked(&d, &res.ranking).unwrap());
    }

    #[test]
    fn parallel_selection_is_identical() {
        let d = w_matrix();
        let seq = mlvrmst(&d).unwrap();
        let par = mlvrmst_with(&d, &MlvrmstOptions { parallel: true, ..Default::default() }).unwrap();
        assert_eq!(seq.tree, par.tree);
    }

    #[test]
    fn non_additive_input_is_flagged() {
        let d = quartet_matrix();
        let bent = DistanceMatrix::from_fn(d.taxa().to_vec(), |i, j| {
            if (i, j) == (0, 2) { 3.5 } else { d.get(i, j) }
        })
        .unwrap();
        let res = mlvrmst(&bent).unwrap();
        assert_eq!(res.additivity, Additivity::NonAdditive);
        assert_eq!(res.tree, kruskal_vertex_ranked(&bent, &res.ranking).unwrap());
    }

    #[test]
    fn laminar_family_of_fixtures() {
        let d = w_matrix();
        let f = laminar_family(&d);
        assert_eq!(f.sets().len(), 5 + 3);
        let i = |t: &str| d.index_of(t).unwrap();
        assert!(f.contains(&[i("l1"), i("l2")]));
        assert!(f.contains(&[i("l4"), i("l5")]));
        assert!(f.contains(&(0..5).collect::<Vec<_>>()));
        assert!(f.is_laminar());

        let q = quartet_matrix();
        let f = laminar_family(&q);
        assert_eq!(f.sets().len(), 4 + 3);
        assert!(f.contains(&[0, 1]) && f.contains(&[2, 3]) && f.contains(&[0, 1, 2, 3]));

        let names: Vec<String> = ["p", "q", "r"].map(String::from).to_vec();
        let w = [[0., 1., 2.], [1., 0., 3.], [2., 3., 0.]];
        let chain = laminar_family(&DistanceMatrix::from_fn(names, |i, j| w[i][j]).unwrap());
        let sizes: Vec<usize> = chain.sets().iter().map(|s| s.members.len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 2, 3]);
    }

    #[test]
    fn single_and_two_taxa() {
        let one = DistanceMatrix::new(vec!["x".into()], vec![0.0]).unwrap();
        let r = mlvrmst(&one).unwrap();
        assert!(r.tree.edges().is_empty());
        let two = DistanceMatrix::from_fn(vec!["x".into(), "y".into()], |_, _| 2.0).unwrap();
        let r = mlvrmst(&two).unwrap();
        assert_eq!(r.tree.pairs(), vec![(0, 1)]);
        assert_eq!(r.delta_max().as_slice(), &[1, 1]);
    }

    #[test]
    fn report_lists_sections() {
        let d = w_matrix();
        let text = report(&d, &mlvrmst(&d).unwrap());
        for section in ["[delta_max]", "[fixed_edges]", "[flexible_edges]", "[laminar_family]"] {
            assert!(text.contains(section), "{section}");
        }
        assert!(text.contains("l3\t2\t1\n"));
    }
}
