use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::model::DistanceMatrix;

/// A bijection from taxa to ranks `1..=n`.
///
/// Rank 1 is the *highest* rank: "highest ranked" always means the minimal
/// rank value. Every tie that the crate breaks by rank prefers the smaller
/// value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRanking {
    ranks: BTreeMap<String, usize>,
}

impl VertexRanking {
    /// Ranks taxa in the given order: the first gets rank 1.
    pub fn from_order<I, S>(order: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut ranks = BTreeMap::new();
        for (i, t) in order.into_iter().enumerate() {
            let t = t.into();
            if ranks.insert(t.clone(), i + 1).is_some() {
                return Err(Error::Ranking(format!("taxon {t:?} listed twice")));
            }
        }
        Ok(VertexRanking { ranks })
    }

    /// Wraps an explicit taxon → rank map, checking it is a bijection onto `1..=n`.
    pub fn from_ranks(ranks: BTreeMap<String, usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = HashSet::with_capacity(n);
        for (t, &r) in &ranks {
            if r == 0 || r > n {
                return Err(Error::Ranking(format!("rank {r} of {t:?} outside 1..={n}")));
            }
            if !seen.insert(r) {
                return Err(Error::Ranking(format!("rank {r} assigned twice")));
            }
        }
        Ok(VertexRanking { ranks })
    }

    /// Ranks taxa by ascending (lexicographic) id.
    pub fn by_id<I, S>(taxa: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = taxa.into_iter().map(Into::into).collect();
        names.sort();
        Self::from_order(names)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, taxon: &str) -> Option<usize> {
        self.ranks.get(taxon).copied()
    }

    /// Taxa from highest to lowest rank.
    pub fn order(&self) -> Vec<&str> {
        let mut v: Vec<(&str, usize)> = self.ranks.iter().map(|(t, &r)| (t.as_str(), r)).collect();
        v.sort_by_key(|&(_, r)| r);
        v.into_iter().map(|(t, _)| t).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.ranks.iter().map(|(t, &r)| (t.as_str(), r))
    }

    /// Ranks aligned with the matrix taxon indices. Fails unless the ranking
    /// covers exactly the matrix taxa.
    pub fn rank_vector(&self, d: &DistanceMatrix) -> Result<Vec<usize>> {
        if self.ranks.len() != d.len() {
            return Err(Error::Ranking(format!(
                "ranking covers {} taxa, matrix has {}",
                self.ranks.len(),
                d.len()
            )));
        }
        d.taxa()
            .iter()
            .map(|t| {
                self.rank(t)
                    .ok_or_else(|| Error::Ranking(format!("taxon {t:?} has no rank")))
            })
            .collect()
    }
}
