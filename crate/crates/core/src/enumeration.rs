//! Free-tree enumeration and the bipartition classes `T(n; p, q)`.
//!
//! Two backends produce the same sorted list of canonically labeled trees:
//!
//! * [`Backend::Successor`] walks level sequences with the
//!   Wright-Richmond-Odlyzko-McKay successor rule, emitting each free tree
//!   once without any isomorphism rejection.
//! * [`Backend::Reference`] decodes every Prüfer sequence and deduplicates by
//!   canonical code. Past [`PRUFER_LIMIT`] vertices the `n^(n-2)` sweep is
//!   replaced by one-leaf growth of the previous order, also deduplicated by
//!   code.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::tree::{CanonicalCode, Tree};

pub const DEFAULT_CAP: usize = 18;

/// Largest order for which the reference backend sweeps all Prüfer sequences.
pub const PRUFER_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("order {n} exceeds the enumeration cap {cap}; raise the cap explicitly to continue")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid bipartition query (n={n}, p={p}, q={q}): need 1 <= p <= q and p + q = n")]
    InvalidQuery { n: usize, p: usize, q: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Successor,
    Reference,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationConfig {
    pub cap: usize,
    pub backend: Backend,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            cap: DEFAULT_CAP,
            backend: Backend::Successor,
        }
    }
}

impl EnumerationConfig {
    pub fn with_cap(cap: usize) -> Self {
        EnumerationConfig {
            cap,
            ..Default::default()
        }
    }

    fn check(&self, n: usize) -> Result<(), EnumerationError> {
        if n == 0 {
            Err(EnumerationError::EmptyOrder)
        } else if n > self.cap {
            Err(EnumerationError::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// The class of `n`-vertex trees whose color classes have sizes `p <= q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeClassQuery {
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl TreeClassQuery {
    pub fn new(p: usize, q: usize) -> Result<Self, EnumerationError> {
        let query = TreeClassQuery { n: p + q, p, q };
        query.validate()?;
        Ok(query)
    }

    fn validate(&self) -> Result<(), EnumerationError> {
        if self.p >= 1 && self.p <= self.q && self.p + self.q == self.n {
            Ok(())
        } else {
            Err(EnumerationError::InvalidQuery {
                n: self.n,
                p: self.p,
                q: self.q,
            })
        }
    }
}

/// Every free tree on `n` vertices, canonically labeled and sorted by code.
pub fn free_trees(n: usize) -> Result<Vec<Tree>, EnumerationError> {
    free_trees_with(n, &EnumerationConfig::default())
}

pub fn free_trees_with(
    n: usize,
    config: &EnumerationConfig,
) -> Result<Vec<Tree>, EnumerationError> {
    config.check(n)?;
    let codes: Vec<CanonicalCode> = match config.backend {
        Backend::Successor => {
            let mut codes: Vec<CanonicalCode> = successor_trees(n)
                .par_bridge()
                .map(|t| t.canonical_code())
                .collect();
            codes.par_sort_unstable();
            codes
        }
        Backend::Reference => reference_codes(n).into_iter().collect(),
    };
    Ok(codes.into_par_iter().map(|c| c.to_tree()).collect())
}

/// Trees of `free_trees(n)` whose bipartition is exactly `(p, q)`.
pub fn trees_with_bipartition(query: &TreeClassQuery) -> Result<Vec<Tree>, EnumerationError> {
    trees_with_bipartition_with(query, &EnumerationConfig::default())
}

pub fn trees_with_bipartition_with(
    query: &TreeClassQuery,
    config: &EnumerationConfig,
) -> Result<Vec<Tree>, EnumerationError> {
    query.validate()?;
    let all = free_trees_with(query.n, config)?;
    Ok(all
        .into_par_iter()
        .filter(|t| t.bipartition().sizes() == (query.p, query.q))
        .collect())
}

/// Streams one tree per isomorphism class, in generator order and with
/// generator labels (vertex 0 is a center).
pub fn successor_trees(n: usize) -> SuccessorTrees {
    let layout = match n {
        0 => None,
        1 => Some(vec![0]),
        _ => Some((0..=n / 2).chain(1..n.div_ceil(2)).collect()),
    };
    SuccessorTrees {
        layout,
        single: n == 1,
    }
}

pub struct SuccessorTrees {
    layout: Option<Vec<usize>>,
    single: bool,
}

impl Iterator for SuccessorTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.single {
            self.single = false;
            self.layout = None;
            return Some(Tree::from_edges(1, &[]).expect("single vertex"));
        }
        let candidate = self.layout.take()?;
        let layout = next_free_layout(candidate)?;
        let tree = layout_to_tree(&layout);
        self.layout = next_rooted_layout(&layout, None);
        Some(tree)
    }
}

/// Next level sequence in reverse lexicographic order of rooted trees,
/// changing positions `p..` (defaults to the last position above depth 1).
fn next_rooted_layout(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits a level sequence into the first subtree of the root (shifted up
/// one level) and the rest of the tree.
fn split_layout(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == 1)
        .nth(1)
        .map(|(i, _)| i)
        .unwrap_or(layout.len());
    let left = layout[1..m].iter().map(|d| d - 1).collect();
    let rest = std::iter::once(0)
        .chain(layout[m..].iter().copied())
        .collect();
    (left, rest)
}

/// Advances `candidate` to the next level sequence that is the canonical
/// center-rooted form of a free tree.
fn next_free_layout(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split_layout(&candidate);
        let left_height = left.iter().copied().max().unwrap_or(0);
        let rest_height = rest.iter().copied().max().unwrap_or(0);
        let valid = rest_height > left_height
            || (rest_height == left_height
                && (left.len() < rest.len() || (left.len() == rest.len() && left <= rest)));
        if valid {
            return Some(candidate);
        }
        let p = left.len();
        let mut next = next_rooted_layout(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split_layout(&next);
            let h = new_left.iter().copied().max().unwrap_or(0);
            let len = next.len();
            for (slot, depth) in next[len - (h + 1)..].iter_mut().zip(1..=h + 1) {
                *slot = depth;
            }
        }
        candidate = next;
    }
}

fn layout_to_tree(layout: &[usize]) -> Tree {
    let mut parent = vec![None; layout.len()];
    let mut stack: Vec<usize> = vec![0];
    for i in 1..layout.len() {
        while layout[*stack.last().unwrap()] >= layout[i] {
            stack.pop();
        }
        parent[i] = stack.last().copied();
        stack.push(i);
    }
    Tree::from_parents(&parent).expect("level sequence encodes a tree")
}

/// Decodes a Prüfer sequence over `0..n` into a labeled tree on `n` vertices.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Tree {
    assert!(
        n >= 2 && seq.len() == n - 2,
        "Prüfer sequence length must be n - 2"
    );
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if x < ptr && degree[x] == 1 {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Tree::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Canonical codes of all labeled trees on `n` vertices, via every Prüfer
/// sequence. Cost is `n^(n-2)` decodes.
pub fn prufer_codes(n: usize) -> BTreeSet<CanonicalCode> {
    match n {
        0 => BTreeSet::new(),
        1 => BTreeSet::from([Tree::from_edges(1, &[]).unwrap().canonical_code()]),
        _ => {
            let total = (n as u64).pow(n as u32 - 2);
            (0..total)
                .into_par_iter()
                .fold(BTreeSet::new, |mut acc, index| {
                    let mut seq = vec![0usize; n - 2];
                    let mut x = index;
                    for slot in seq.iter_mut() {
                        *slot = (x % n as u64) as usize;
                        x /= n as u64;
                    }
                    acc.insert(prufer_decode(n, &seq).canonical_code());
                    acc
                })
                .reduce(BTreeSet::new, |mut a, b| {
                    a.extend(b);
                    a
                })
        }
    }
}

/// Codes of the trees obtained by attaching one leaf anywhere on each input.
pub fn grow_by_leaf<'a>(trees: impl IntoIterator<Item = &'a Tree>) -> BTreeSet<CanonicalCode> {
    let mut out = BTreeSet::new();
    for t in trees {
        let n = t.n();
        let base: Vec<(usize, usize)> = t.edges().collect();
        for v in 0..n {
            let mut edges = base.clone();
            edges.push((v, n));
            out.insert(
                Tree::from_edges(n + 1, &edges)
                    .expect("leaf growth")
                    .canonical_code(),
            );
        }
    }
    out
}

fn reference_codes(n: usize) -> BTreeSet<CanonicalCode> {
    if n <= PRUFER_LIMIT {
        return prufer_codes(n);
    }
    let mut codes = prufer_codes(PRUFER_LIMIT);
    for _ in PRUFER_LIMIT..n {
        let trees: Vec<Tree> = codes.iter().map(CanonicalCode::to_tree).collect();
        codes = grow_by_leaf(&trees);
    }
    codes
}
