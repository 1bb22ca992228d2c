//! The S-order: lexicographic comparison of moment sequences, and ranked
//! catalogs built on it.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moments::{walk_moments, walk_moments_to, MomentSequence};
use crate::tree::{CanonicalCode, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("moment sequences of different lengths ({left} vs {right}) are not comparable")]
    LengthMismatch { left: usize, right: usize },
    #[error("catalog mixes tree orders {expected} and {found}")]
    MixedOrders { expected: usize, found: usize },
    #[error("catalog is empty")]
    EmptyCatalog,
    #[error("k = {k} is outside 1..={size}")]
    KOutOfRange { k: usize, size: usize },
    #[error("cutting the last {k} trees splits rank {rank}: {inside} tied tree(s) inside, {outside} outside")]
    BoundaryTie {
        k: usize,
        rank: usize,
        inside: usize,
        outside: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SOrdering {
    Before,
    Equal,
    After,
}

impl SOrdering {
    pub fn reverse(self) -> SOrdering {
        match self {
            SOrdering::Before => SOrdering::After,
            SOrdering::Equal => SOrdering::Equal,
            SOrdering::After => SOrdering::Before,
        }
    }
}

impl From<Ordering> for SOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => SOrdering::Before,
            Ordering::Equal => SOrdering::Equal,
            Ordering::Greater => SOrdering::After,
        }
    }
}

fn check_lengths(a: &MomentSequence, b: &MomentSequence) -> Result<(), OrderError> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(OrderError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        })
    }
}

/// `Before` iff the first differing moment of `a` is smaller.
pub fn cmp_s(a: &MomentSequence, b: &MomentSequence) -> Result<SOrdering, OrderError> {
    check_lengths(a, b)?;
    Ok(a.values().cmp(b.values()).into())
}

/// Index of the first differing moment, or `None` when `a =_s b`.
pub fn first_difference(
    a: &MomentSequence,
    b: &MomentSequence,
) -> Result<Option<usize>, OrderError> {
    check_lengths(a, b)?;
    Ok(a.values().iter().zip(b.values()).position(|(x, y)| x != y))
}

#[derive(Debug, Clone)]
pub struct RankedEntry {
    pub tree: Tree,
    pub moments: MomentSequence,
    pub code: CanonicalCode,
    pub rank: usize,
}

/// Trees in ascending S-order. Equal sequences share a rank and are ordered
/// by canonical code; ranks are `1..=rank_count()` without gaps.
#[derive(Debug, Clone)]
pub struct RankedCatalog {
    entries: Vec<RankedEntry>,
}

impl RankedCatalog {
    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<RankedEntry> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank_count(&self) -> usize {
        self.entries.last().map_or(0, |e| e.rank)
    }

    /// Entries holding the S-order maximum.
    pub fn last(&self) -> Option<&RankedEntry> {
        self.entries.last()
    }
}

fn check_orders<'a>(trees: impl IntoIterator<Item = &'a Tree>) -> Result<(), OrderError> {
    let mut iter = trees.into_iter();
    if let Some(first) = iter.next() {
        let n = first.n();
        if let Some(bad) = iter.find(|t| t.n() != n) {
            return Err(OrderError::MixedOrders {
                expected: n,
                found: bad.n(),
            });
        }
    }
    Ok(())
}

/// Computes moments in parallel and ranks. The result does not depend on the
/// input order.
pub fn rank_catalog(trees: Vec<Tree>) -> Result<RankedCatalog, OrderError> {
    check_orders(&trees)?;
    let with_moments = trees
        .into_par_iter()
        .map(|t| {
            let m = walk_moments(&t);
            (t, m)
        })
        .collect();
    rank_with_moments(with_moments)
}

/// Like [`rank_catalog`] but compares `S_0..S_{max_power}` instead of
/// stopping at `S_{n-1}`.
pub fn rank_catalog_to(trees: Vec<Tree>, max_power: usize) -> Result<RankedCatalog, OrderError> {
    check_orders(&trees)?;
    let with_moments = trees
        .into_par_iter()
        .map(|t| {
            let m = walk_moments_to(&t, max_power);
            (t, m)
        })
        .collect();
    rank_with_moments(with_moments)
}

/// Ranks trees whose moment sequences are already known.
pub fn rank_with_moments(items: Vec<(Tree, MomentSequence)>) -> Result<RankedCatalog, OrderError> {
    check_orders(items.iter().map(|(t, _)| t))?;
    let mut entries: Vec<RankedEntry> = items
        .into_par_iter()
        .map(|(tree, moments)| {
            let code = tree.canonical_code();
            RankedEntry {
                tree,
                moments,
                code,
                rank: 0,
            }
        })
        .collect();
    entries.par_sort_by(|a, b| {
        a.moments
            .values()
            .cmp(b.moments.values())
            .then_with(|| a.code.cmp(&b.code))
            .then_with(|| a.tree.edges().cmp(b.tree.edges()))
    });
    let mut rank = 0;
    for i in 0..entries.len() {
        if i == 0 || entries[i].moments != entries[i - 1].moments {
            rank += 1;
        }
        entries[i].rank = rank;
    }
    Ok(RankedCatalog { entries })
}

/// The `k` S-order-largest trees, ascending (the `k`-th last first). A tie
/// class that the cut would split is reported instead of cut arbitrarily.
pub fn last_k(catalog: &RankedCatalog, k: usize) -> Result<Vec<Tree>, OrderError> {
    let entries = catalog.entries();
    if entries.is_empty() {
        return Err(OrderError::EmptyCatalog);
    }
    if k == 0 || k > entries.len() {
        return Err(OrderError::KOutOfRange {
            k,
            size: entries.len(),
        });
    }
    let start = entries.len() - k;
    if start > 0 && entries[start - 1].rank == entries[start].rank {
        let rank = entries[start].rank;
        let inside = entries[start..]
            .iter()
            .take_while(|e| e.rank == rank)
            .count();
        let outside = entries[..start]
            .iter()
            .rev()
            .take_while(|e| e.rank == rank)
            .count();
        return Err(OrderError::BoundaryTie {
            k,
            rank,
            inside,
            outside,
        });
    }
    Ok(entries[start..].iter().map(|e| e.tree.clone()).collect())
}

/// A class of trees with identical moment sequences.
#[derive(Debug, Clone)]
pub struct SClass {
    pub moments: MomentSequence,
    pub members: Vec<Tree>,
    /// Set when the class holds at least two non-isomorphic trees.
    pub has_comoment_mates: bool,
}

/// Groups trees by exact moment-sequence equality, in ascending S-order.
pub fn equal_s_classes(trees: Vec<Tree>) -> Result<Vec<SClass>, OrderError> {
    let catalog = rank_catalog(trees)?;
    let mut classes: Vec<SClass> = Vec::new();
    let mut last_rank = 0;
    for e in catalog.into_entries() {
        if e.rank != last_rank {
            last_rank = e.rank;
            classes.push(SClass {
                moments: e.moments,
                members: vec![e.tree],
                has_comoment_mates: false,
            });
        } else {
            let class = classes.last_mut().expect("class opened on first entry");
            if !class.members.iter().any(|m| m.is_isomorphic(&e.tree)) {
                class.has_comoment_mates = true;
            }
            class.members.push(e.tree);
        }
    }
    Ok(classes)
}
