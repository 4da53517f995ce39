//! Vertex-ranked minimum spanning trees over additive distance matrices, and
//! CLGrouping tree reconstruction on top of them.
//!
//! An additive matrix can have many MSTs when distances tie, and CLGrouping
//! only recovers the true tree from some of them. Ranking the taxa and
//! breaking every tie by endpoint rank ([`vrmst`]) picks an MST that always
//! works. [`mlvrmst`] chooses the ranking that minimizes leaves, which keeps
//! the CLGrouping groups large and few. [`oracle`] holds brute-force checks
//! for small inputs, [`simgen`] seeded test trees, [`treeio`] the file
//! formats.
//!
//! ```
//! use phylo_vrmst::{clgrouping::clgrouping, mlvrmst::mlvrmst, model::*, treeio::parse_newick};
//!
//! let t = parse_newick("(a:1,b:1,(c:1,d:1):1);").unwrap();
//! let d = additive_distances(&t);
//! let m = mlvrmst(&d).unwrap().tree;
//! let rec = clgrouping(&d, &m, 1e-9).unwrap();
//! assert!(trees_equal(&rec.tree, &t, 1e-9).unwrap());
//! ```

pub mod cli;
pub mod clgrouping;
pub mod dsu;
pub mod error;
pub mod mlvrmst;
pub mod model;
pub mod oracle;
pub mod simgen;
pub mod treeio;
pub mod vrmst;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};

/// Default tolerance for distance and weight comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
