//! Text formats: Newick trees, PHYLIP square matrices, tab-separated spanning
//! tree edge lists and ranking files.
//!
//! Numbers are written in the shortest decimal form that reads back to the
//! same `f64`, so every writer round-trips exactly.

mod newick;

pub use newick::{parse_newick, write_newick};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, SpanningTree, VertexRanking};

/// Relative tolerance when checking edge-list weights against the matrix.
pub const EDGE_WEIGHT_RTOL: f64 = 1e-6;

/// Meaningful lines with their 1-based line numbers; blank lines and `#`
/// comments are skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim_start().is_empty() && !l.trim_start().starts_with('#'))
}

fn column_of(line: &str, field: &str) -> usize {
    // `field` is a subslice of `line`
    field.as_ptr() as usize - line.as_ptr() as usize + 1
}

/// Reads a square PHYLIP matrix: a taxon count, then one row per taxon with
/// the name followed by `n` whitespace-separated distances.
pub fn read_phylip(text: &str) -> Result<DistanceMatrix> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let n: usize = first
        .split_whitespace()
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(first_no, 1, format!("expected taxon count, found {first:?}")))?;
    let mut taxa = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n * n);
    let mut last_line = first_no;
    for row in 0..n {
        let Some((no, line)) = lines.next() else {
            return Err(Error::parse(
                last_line + 1,
                1,
                format!("expected {n} rows, found {row}"),
            ));
        };
        last_line = no;
        let mut fields = line.split_whitespace();
        let name = fields.next().expect("line is not blank");
        let mut count = 0;
        for field in fields {
            count += 1;
            if count > n {
                return Err(Error::parse(no, column_of(line, field), format!("row {name} has more than {n} values")));
            }
            let v: f64 = field.parse().map_err(|_| {
                Error::parse(no, column_of(line, field), format!("row {name}: invalid distance {field:?}"))
            })?;
            values.push(v);
        }
        if count < n {
            return Err(Error::parse(no, line.len() + 1, format!("row {name} has {count} values, expected {n}")));
        }
        taxa.push(name.to_string());
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, 1, format!("more than {n} rows")));
    }
    DistanceMatrix::new(taxa, values)
}

pub fn write_phylip(d: &DistanceMatrix) -> Result<String> {
    let mut out = format!("{}\n", d.len());
    for i in 0..d.len() {
        let name = d.taxon(i);
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(Error::Matrix(format!("taxon {name:?} cannot be written in PHYLIP")));
        }
        out.push_str(name);
        for v in d.row(i) {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    Ok(out)
}

/// One `u<TAB>v<TAB>weight` line per edge.
pub fn write_edge_list(m: &SpanningTree) -> String {
    let mut out = String::new();
    for &(u, v, w) in m.edges() {
        out.push_str(&format!("{}\t{}\t{w}\n", m.taxa()[u], m.taxa()[v]));
    }
    out
}

/// Reads an edge list over the taxa of `d`. A weight column, when present,
/// must agree with `d` to a relative [`EDGE_WEIGHT_RTOL`].
pub fn read_edge_list(text: &str, d: &DistanceMatrix) -> Result<SpanningTree> {
    let mut pairs = Vec::new();
    for (no, line) in content_lines(text) {
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::parse(no, 1, "expected u<TAB>v<TAB>weight"));
        }
        let index = |f: &str| {
            d.index_of(f)
                .ok_or_else(|| Error::parse(no, column_of(line, f), format!("unknown taxon {f:?}")))
        };
        let (u, v) = (index(fields[0])?, index(fields[1])?);
        if let Some(&wf) = fields.get(2) {
            let col = column_of(line, wf);
            let w: f64 = wf
                .parse()
                .map_err(|_| Error::parse(no, col, format!("invalid weight {wf:?}")))?;
            let expected = if u == v { 0.0 } else { d.get(u, v) };
            if (w - expected).abs() > EDGE_WEIGHT_RTOL * expected.abs().max(1.0) {
                return Err(Error::parse(
                    no,
                    col,
                    format!("weight {w} disagrees with distance {expected}"),
                ));
            }
        }
        pairs.push((u, v));
    }
    SpanningTree::new(d, pairs)
}

/// One `taxon<TAB>rank` line per taxon.
pub fn read_ranking(text: &str) -> Result<VertexRanking> {
    let mut ranks = BTreeMap::new();
    for (no, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [taxon, rank] = fields[..] else {
            return Err(Error::parse(no, 1, "expected taxon<TAB>rank"));
        };
        let r: usize = rank
            .parse()
            .map_err(|_| Error::parse(no, column_of(line, rank), format!("invalid rank {rank:?}")))?;
        if ranks.insert(taxon.to_string(), r).is_some() {
            return Err(Error::parse(no, 1, format!("taxon {taxon:?} ranked twice")));
        }
    }
    VertexRanking::from_ranks(ranks)
}

pub fn write_ranking(r: &VertexRanking) -> String {
    r.order()
        .into_iter()
        .enumerate()
        .map(|(i, t)| format!("{t}\t{}\n", i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{quartet_matrix, w_matrix};

    #[test]
    fn phylip_round_trip() {
        for d in [quartet_matrix(), w_matrix()] {
            let text = write_phylip(&d).unwrap();
            assert_eq!(read_phylip(&text).unwrap(), d);
        }
        let odd = DistanceMatrix::from_fn(vec!["p".into(), "q".into()], |_, _| 0.1 + 0.2).unwrap();
        assert_eq!(read_phylip(&write_phylip(&odd).unwrap()).unwrap(), odd);
    }

    #[test]
    fn phylip_single_taxon() {
        let d = read_phylip("1\nx 0\n").unwrap();
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn phylip_errors() {
        let asym = "3\na 0 1 2\nb 1 0 1\nc 3 1 0\n";
        let err = read_phylip(asym).unwrap_err().to_string();
        assert!(err.contains("row c col a mismatch"), "{err}");
        assert!(read_phylip("2\na 1 1\nb 1 0\n").unwrap_err().to_string().contains("row a"));
        assert!(matches!(read_phylip("3\na 0 1 1\nb 1 0 1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(read_phylip("2\na 0 1\nb 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(
            read_phylip("2\na 0 x\nb 1 0\n"),
            Err(Error::Parse { line: 2, column: 5, .. })
        ));
        assert!(matches!(read_phylip(""), Err(Error::Parse { .. })));
        assert!(matches!(read_phylip("2\na 0 1\nb 1 0\nc 1 1\n"), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let d = w_matrix();
        let m = SpanningTree::from_names(&d, [("l1", "l2"), ("l1", "l3"), ("l3", "l4"), ("l4", "l5")]).unwrap();
        let text = write_edge_list(&m);
        assert!(text.starts_with("l1\tl2\t2\n"));
        assert_eq!(read_edge_list(&text, &d).unwrap(), m);
        let unweighted = "l1\tl2\nl1\tl3\nl3\tl4\nl4\tl5\n";
        assert_eq!(read_edge_list(unweighted, &d).unwrap(), m);
    }

    #[test]
    fn edge_list_errors() {
        let d = quartet_matrix();
        assert!(matches!(
            read_edge_list("a\tb\t2\na\tz\t3\n", &d),
            Err(Error::Parse { line: 2, column: 3, .. })
        ));
        assert!(matches!(
            read_edge_list("a\tb\t2.5\n", &d),
            Err(Error::Parse { line: 1, column: 5, .. })
        ));
        assert!(matches!(read_edge_list("a\tb\t2\n", &d), Err(Error::SpanningTree(_))));
    }

    #[test]
    fn ranking_files() {
        let r = read_ranking("b\t1\na\t2\n# comment\nc 3\n").unwrap();
        assert_eq!(r.order(), vec!["b", "a", "c"]);
        assert_eq!(read_ranking(&write_ranking(&r)).unwrap(), r);
        assert!(read_ranking("a\t1\nb\t1\n").is_err());
        assert!(matches!(read_ranking("a\tx\n"), Err(Error::Parse { line: 1, column: 3, .. })));
    }
}
