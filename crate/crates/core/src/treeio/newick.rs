//! Newick reader and writer.
//!
//! Trees are unrooted: a degree-two unlabeled root is suppressed on parse.
//! Internal node labels mark labeled internal vertices; unlabeled internal
//! nodes are hidden. Every non-root node needs a positive branch length; a
//! root length is accepted and ignored. A lone `a;` (or `a:5;`) is a
//! single-taxon tree, while `(a:5);` is rejected because its root would be a
//! hidden leaf.
//!
//! Labels may be single-quoted, with `''` for a literal quote. The parser is
//! iterative, so nesting depth is bounded only by memory.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{PhyloTree, TreeBuilder, VertexId};

struct Node {
    parent: Option<usize>,
    label: Option<String>,
    length: Option<f64>,
    /// Byte offset where the node starts, for error reporting.
    at: usize,
    children: usize,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

fn is_delim(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | ',' | ':' | ';' | '[' | ']' | '\'')
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let before = &self.text[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        Error::parse(line, column, message)
    }

    fn label(&mut self) -> Result<Option<String>> {
        self.skip_ws();
        if self.peek() == Some('\'') {
            let start = self.pos;
            self.pos += 1;
            let mut out = String::new();
            loop {
                match self.peek() {
                    None => return Err(self.error(start, "unterminated quoted label")),
                    Some('\'') => {
                        self.pos += 1;
                        if self.peek() == Some('\'') {
                            out.push('\'');
                            self.pos += 1;
                        } else {
                            return Ok(Some(out));
                        }
                    }
                    Some(c) => {
                        out.push(c);
                        self.pos += c.len_utf8();
                    }
                }
            }
        }
        let start = self.pos;
        while let Some(c) = self.peek() {
            if is_delim(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        Ok((self.pos > start).then(|| self.text[start..self.pos].to_string()))
    }

    fn length(&mut self) -> Result<Option<f64>> {
        self.skip_ws();
        if self.peek() != Some(':') {
            return Ok(None);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if is_delim(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        let token = &self.text[start..self.pos];
        if token.is_empty() {
            return Err(self.error(start, "missing branch length after ':'"));
        }
        let value: f64 = token
            .parse()
            .map_err(|_| self.error(start, format!("invalid branch length {token:?}")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(self.error(start, format!("branch length must be positive, got {token}")));
        }
        Ok(Some(value))
    }
}

pub fn parse_newick(text: &str) -> Result<PhyloTree> {
    let mut cur = Cursor { text, pos: 0 };
    let mut nodes: Vec<Node> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    let new_node = |nodes: &mut Vec<Node>, open: &[usize], at: usize| {
        let parent = open.last().copied();
        if let Some(p) = parent {
            nodes[p].children += 1;
        }
        nodes.push(Node {
            parent,
            label: None,
            length: None,
            at,
            children: 0,
        });
        nodes.len() - 1
    };

    // Each iteration reads one node start, then everything up to the next one.
    'outer: loop {
        cur.skip_ws();
        let at = cur.pos;
        match cur.peek() {
            Some('(') => {
                cur.pos += 1;
                let id = new_node(&mut nodes, &open, at);
                open.push(id);
                continue;
            }
            Some(c) if !is_delim(c) || c == '\'' => {
                let id = new_node(&mut nodes, &open, at);
                nodes[id].label = cur.label()?;
                nodes[id].length = cur.length()?;
            }
            Some(c) => return Err(cur.error(at, format!("expected '(' or a label, found {c:?}"))),
            None => return Err(cur.error(at, "unexpected end of input")),
        }
        loop {
            cur.skip_ws();
            let at = cur.pos;
            match cur.peek() {
                Some(',') if !open.is_empty() => {
                    cur.pos += 1;
                    continue 'outer;
                }
                Some(')') => {
                    let Some(id) = open.pop() else {
                        return Err(cur.error(at, "unbalanced ')'"));
                    };
                    cur.pos += 1;
                    nodes[id].label = cur.label()?;
                    nodes[id].length = cur.length()?;
                }
                Some(';') if open.is_empty() => {
                    cur.pos += 1;
                    cur.skip_ws();
                    if cur.pos < text.len() {
                        return Err(cur.error(cur.pos, "trailing content after ';'"));
                    }
                    break 'outer;
                }
                Some(';') | None if !open.is_empty() => {
                    let last = *open.last().unwrap();
                    return Err(cur.error(nodes[last].at, "unclosed '('"));
                }
                None => return Err(cur.error(at, "missing ';'")),
                Some(c) => return Err(cur.error(at, format!("unexpected {c:?}"))),
            }
        }
    }

    let mut builder = TreeBuilder::new();
    let mut seen: HashSet<&str> = HashSet::new();
    let mut ids: Vec<VertexId> = Vec::with_capacity(nodes.len());
    for node in &nodes {
        match &node.label {
            Some(label) => {
                if !seen.insert(label) {
                    return Err(cur.error(node.at, format!("duplicate label {label:?}")));
                }
                ids.push(builder.add_labeled(label.clone()));
            }
            None if node.children == 0 => {
                return Err(cur.error(node.at, "leaf without a label"));
            }
            None => ids.push(builder.add_hidden()),
        }
    }
    for (i, node) in nodes.iter().enumerate() {
        if let Some(p) = node.parent {
            let Some(len) = node.length else {
                return Err(cur.error(node.at, "missing branch length"));
            };
            builder.add_edge(ids[p], ids[i], len);
        }
    }
    builder.build()
}

fn quote(label: &str) -> String {
    if !label.is_empty() && !label.chars().any(is_delim) {
        label.to_string()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}

/// Writes `tree` rooted at its first hidden vertex, or at its first vertex if
/// every vertex is labeled. Lengths use the shortest exact decimal form.
pub fn write_newick(tree: &PhyloTree) -> String {
    let root = (0..tree.len())
        .find(|&v| !tree.is_labeled(v))
        .unwrap_or(0);
    let label = |v: VertexId| {
        if tree.is_labeled(v) {
            quote(tree.name(v))
        } else {
            String::new()
        }
    };
    let mut out = String::new();
    // (vertex, parent, incoming length, next child index)
    let mut stack: Vec<(VertexId, Option<VertexId>, f64, usize)> = vec![(root, None, 0.0, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, parent, len, next) = *top;
        let children: Vec<(VertexId, f64)> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&(c, _)| Some(c) != parent)
            .collect();
        if children.is_empty() {
            out.push_str(&label(v));
        } else if next < children.len() {
            out.push(if next == 0 { '(' } else { ',' });
            top.3 += 1;
            let (c, w) = children[next];
            stack.push((c, Some(v), w, 0));
            continue;
        } else {
            out.push(')');
            out.push_str(&label(v));
        }
        if parent.is_some() {
            out.push_str(&format!(":{len}"));
        }
        stack.pop();
    }
    out.push(';');
    out
}
