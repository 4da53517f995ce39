//! Neighbor joining with contraction of near-zero edges.
//!
//! Nodes `0..m` are the input members; joined nodes get ids `m..`. After the
//! join, every edge shorter than `epsilon` is contracted. A contracted node is
//! represented by a member when one is involved (the member becomes internal,
//! giving a generally labeled tree), otherwise by the smaller new id.

use crate::dsu::DsuForest;

/// Output of [`join`] after contraction.
#[derive(Debug, Clone)]
pub(crate) struct Joined {
    /// Number of input members.
    pub members: usize,
    /// Number of surviving joined nodes, numbered `members..members + extra`.
    pub extra: usize,
    pub edges: Vec<(usize, usize, f64)>,
    /// Pairs of members contracted together, as `(kept, absorbed)` with
    /// `kept < absorbed`.
    pub merged_members: Vec<(usize, usize)>,
    /// Some branch-length estimate fell below `-epsilon`.
    pub negative_length: bool,
}

impl Joined {
    /// Path distances from node `src` to every node.
    pub fn distances_from(&self, src: usize) -> Vec<f64> {
        let total = self.members + self.extra;
        let mut adj = vec![Vec::new(); total];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        let mut dist = vec![f64::NAN; total];
        dist[src] = 0.0;
        let mut stack = vec![src];
        while let Some(x) = stack.pop() {
            for &(y, w) in &adj[x] {
                if dist[y].is_nan() {
                    dist[y] = dist[x] + w;
                    stack.push(y);
                }
            }
        }
        dist
    }
}

/// Neighbor joining on the row-major `m x m` matrix `dist`.
///
/// Ties in the Q criterion go to the first pair in active order.
pub(crate) fn join(dist: &[f64], m: usize, epsilon: f64) -> Joined {
    assert_eq!(dist.len(), m * m);
    let cap = 2 * m;
    let mut d = vec![vec![0.0; cap]; cap];
    for i in 0..m {
        for j in 0..m {
            d[i][j] = dist[i * m + j];
        }
    }
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut active: Vec<usize> = (0..m).collect();
    let mut next = m;

    while active.len() > 3 {
        let r = active.len();
        let sums: Vec<f64> = active
            .iter()
            .map(|&i| active.iter().map(|&k| d[i][k]).sum())
            .collect();
        let mut best = (f64::INFINITY, 0, 1);
        for a in 0..r {
            for b in a + 1..r {
                let q = (r as f64 - 2.0) * d[active[a]][active[b]] - sums[a] - sums[b];
                if q < best.0 {
                    best = (q, a, b);
                }
            }
        }
        let (_, a, b) = best;
        let (i, j) = (active[a], active[b]);
        let u = next;
        next += 1;
        let li = d[i][j] / 2.0 + (sums[a] - sums[b]) / (2.0 * (r as f64 - 2.0));
        let lj = d[i][j] - li;
        for &k in &active {
            if k != i && k != j {
                let v = (d[i][k] + d[j][k] - d[i][j]) / 2.0;
                d[u][k] = v;
                d[k][u] = v;
            }
        }
        edges.push((i, u, li));
        edges.push((j, u, lj));
        active.remove(b);
        active.remove(a);
        active.push(u);
    }
    match active[..] {
        [a, b, c] => {
            let u = next;
            next += 1;
            edges.push((a, u, (d[a][b] + d[a][c] - d[b][c]) / 2.0));
            edges.push((b, u, (d[a][b] + d[b][c] - d[a][c]) / 2.0));
            edges.push((c, u, (d[a][c] + d[b][c] - d[a][b]) / 2.0));
        }
        [a, b] => edges.push((a, b, d[a][b])),
        _ => {}
    }
    contract(m, next, edges, epsilon)
}

fn contract(m: usize, total: usize, edges: Vec<(usize, usize, f64)>, epsilon: f64) -> Joined {
    let mut negative_length = false;
    // rep[root] is the preferred node of the component: smallest id, which is
    // a member whenever the component contains one.
    let mut dsu = DsuForest::with_len(total);
    let mut rep: Vec<usize> = (0..total).collect();
    let mut merged_members = Vec::new();
    for &(u, v, w) in &edges {
        if w < -epsilon {
            negative_length = true;
        }
        if w < epsilon {
            let (ru, rv) = (dsu.find(u), dsu.find(v));
            let (pu, pv) = (rep[ru], rep[rv]);
            if pu < m && pv < m {
                merged_members.push((pu.min(pv), pu.max(pv)));
            }
            let root = dsu.union(ru, rv).expect("tree edges join distinct components");
            rep[root] = pu.min(pv);
        }
    }
    let mut renumber = vec![usize::MAX; total];
    let mut extra = 0;
    for x in 0..total {
        let r = rep[dsu.find(x)];
        if r == x {
            renumber[x] = if x < m {
                x
            } else {
                extra += 1;
                m + extra - 1
            };
        }
    }
    let kept = edges
        .into_iter()
        .filter(|&(_, _, w)| w >= epsilon)
        .map(|(u, v, w)| {
            let (a, b) = (renumber[rep[dsu.find(u)]], renumber[rep[dsu.find(v)]]);
            (a.min(b), a.max(b), w)
        })
        .collect();
    Joined {
        members: m,
        extra,
        edges: kept,
        merged_members,
        negative_length,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut e: Vec<(usize, usize, f64)>) -> Vec<(usize, usize, f64)> {
        e.sort_by_key(|a| (a.0, a.1));
        e
    }

    #[test]
    fn three_point_star() {
        let j = join(&[0., 2., 3., 2., 0., 3., 3., 3., 0.], 3, 1e-9);
        assert_eq!(j.extra, 1);
        assert_eq!(sorted(j.edges), vec![(0, 3, 1.0), (1, 3, 1.0), (2, 3, 2.0)]);
    }

    #[test]
    fn zero_edge_makes_member_internal() {
        let j = join(&[0., 1., 1., 1., 0., 2., 1., 2., 0.], 3, 1e-9);
        assert_eq!(j.extra, 0);
        assert_eq!(sorted(j.edges), vec![(0, 1, 1.0), (0, 2, 1.0)]);
        assert!(j.merged_members.is_empty());
    }

    #[test]
    fn quartet_join() {
        // a,b | c,d with unit edges
        let d = [0., 2., 3., 3., 2., 0., 3., 3., 3., 3., 0., 2., 3., 3., 2., 0.];
        let j = join(&d, 4, 1e-9);
        assert_eq!(j.extra, 2);
        assert_eq!(j.edges.len(), 5);
        assert!(j.edges.iter().all(|e| (e.2 - 1.0).abs() < 1e-12));
        let from_a = j.distances_from(0);
        assert_eq!(&from_a[..4], &[0., 2., 3., 3.]);
    }

    #[test]
    fn two_members() {
        let j = join(&[0., 4., 4., 0.], 2, 1e-9);
        assert_eq!(j.edges, vec![(0, 1, 4.0)]);
    }

    #[test]
    fn coincident_members_are_reported() {
        let j = join(&[0., 0., 1., 0., 0., 1., 1., 1., 0.], 3, 1e-9);
        assert_eq!(j.merged_members, vec![(0, 1)]);
    }

    #[test]
    fn negative_estimate_is_flagged() {
        // violates the triangle inequality
        let j = join(&[0., 1., 5., 1., 0., 1., 5., 1., 0.], 3, 1e-9);
        assert!(j.negative_length);
    }
}
