//! Spectral moments `S_k = trace(A^k)` of trees and the subgraph counts that
//! determine the low moments.
//!
//! `S_0` is `n` (the trace of the identity). On a tree every odd moment is
//! zero and the cyclic subgraph terms that appear in the general moment
//! expansions vanish identically, so `s5_formula` is the constant zero and
//! `s4_formula`/`s6_formula` keep only their acyclic terms.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::Tree;

/// Largest pattern order accepted by [`count_subgraph_bruteforce`].
pub const MAX_PATTERN_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("pattern has {0} vertices; brute-force counting is limited to {MAX_PATTERN_ORDER}")]
    PatternTooLarge(usize),
}

/// `(S_0, ..., S_{len-1})` as exact integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentSequence(Vec<BigUint>);

impl MomentSequence {
    pub fn new(values: Vec<BigUint>) -> Self {
        MomentSequence(values)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&BigUint> {
        self.0.get(k)
    }

    /// Decimal strings, the serialization used by every output format.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.0.iter().map(|v| v.to_str_radix(10)).collect()
    }

    pub fn from_decimal_strings<S: AsRef<str>>(items: &[S]) -> Option<Self> {
        items
            .iter()
            .map(|s| BigUint::parse_bytes(s.as_ref().as_bytes(), 10))
            .collect::<Option<Vec<_>>>()
            .map(MomentSequence)
    }
}

impl fmt::Debug for MomentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(|v| v.to_string()))
            .finish()
    }
}

impl Serialize for MomentSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MomentSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        MomentSequence::from_decimal_strings(&items)
            .ok_or_else(|| serde::de::Error::custom("moment is not a nonnegative decimal integer"))
    }
}

/// `S_0..S_{n-1}` by iterated multiplication with the adjacency matrix.
pub fn walk_moments(tree: &Tree) -> MomentSequence {
    walk_moments_to(tree, tree.n() - 1)
}

/// `S_0..S_{max_power}`; used for cross-checks beyond the `n - 1` cut.
pub fn walk_moments_to(tree: &Tree, max_power: usize) -> MomentSequence {
    match native_traces(tree, max_power) {
        Some(values) => MomentSequence(values.into_iter().map(BigUint::from).collect()),
        None => MomentSequence(big_traces(tree, max_power)),
    }
}

/// `M <- M * A` exploits that column `j` of `M * A` is the sum of the columns
/// of `M` indexed by the neighbors of `j`. Returns `None` on `u64` overflow.
fn native_traces(tree: &Tree, max_power: usize) -> Option<Vec<u64>> {
    let n = tree.n();
    let mut m = vec![0u64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    let mut next = vec![0u64; n * n];
    let mut out = Vec::with_capacity(max_power + 1);
    out.push(n as u64);
    for _ in 1..=max_power {
        for i in 0..n {
            let row = &m[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = 0u64;
                for &l in tree.neighbors(j) {
                    acc = acc.checked_add(row[l])?;
                }
                next[i * n + j] = acc;
            }
        }
        std::mem::swap(&mut m, &mut next);
        let trace = (0..n).try_fold(0u64, |acc, i| acc.checked_add(m[i * n + i]))?;
        out.push(trace);
    }
    Some(out)
}

fn big_traces(tree: &Tree, max_power: usize) -> Vec<BigUint> {
    let n = tree.n();
    let mut m: Vec<BigUint> = (0..n * n)
        .map(|idx| {
            if idx / n == idx % n {
                BigUint::from(1u8)
            } else {
                BigUint::zero()
            }
        })
        .collect();
    let mut out = Vec::with_capacity(max_power + 1);
    out.push(BigUint::from(n));
    for _ in 1..=max_power {
        let mut next = vec![BigUint::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigUint::zero();
                for &l in tree.neighbors(j) {
                    acc += &m[i * n + l];
                }
                next[i * n + j] = acc;
            }
        }
        m = next;
        out.push((0..n).map(|i| &m[i * n + i]).sum());
    }
    out
}

/// Counts of the acyclic patterns `P_2, P_3, P_4, K_{1,3}` in a tree. The
/// cyclic patterns (`C_3..C_6`, `U_4`, `U_5`, `E_4`, `E_5`) never occur in a
/// tree and are exposed as constant zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphCounts {
    pub p2: u64,
    pub p3: u64,
    pub p4: u64,
    pub k13: u64,
}

impl SubgraphCounts {
    pub fn of(tree: &Tree) -> Self {
        SubgraphCounts {
            p2: count_p2(tree),
            p3: count_p3(tree),
            p4: count_p4(tree),
            k13: count_k13(tree),
        }
    }

    /// Every cyclic pattern count; identically zero on trees.
    pub const fn cyclic(&self) -> u64 {
        0
    }
}

fn choose2(d: u64) -> u64 {
    d * d.saturating_sub(1) / 2
}

fn choose3(d: u64) -> u64 {
    d * d.saturating_sub(1) * d.saturating_sub(2) / 6
}

fn assert_acyclic(tree: &Tree) {
    assert_eq!(
        tree.edge_count() + 1,
        tree.n(),
        "subgraph formulas are only valid on trees"
    );
}

pub fn count_p2(tree: &Tree) -> u64 {
    tree.edge_count() as u64
}

/// `sum_v C(d(v), 2)`.
pub fn count_p3(tree: &Tree) -> u64 {
    (0..tree.n()).map(|v| choose2(tree.degree(v) as u64)).sum()
}

/// `sum_{uv} (d(u) - 1)(d(v) - 1)`, exact on triangle-free graphs.
pub fn count_p4(tree: &Tree) -> u64 {
    assert_acyclic(tree);
    tree.edges()
        .map(|(u, v)| (tree.degree(u) as u64 - 1) * (tree.degree(v) as u64 - 1))
        .sum()
}

/// `sum_v C(d(v), 3)`.
pub fn count_k13(tree: &Tree) -> u64 {
    (0..tree.n()).map(|v| choose3(tree.degree(v) as u64)).sum()
}

/// `S_4 = 2 phi(P_2) + 4 phi(P_3)` on a tree (`phi(C_4) = 0`).
pub fn s4_formula(tree: &Tree) -> BigUint {
    assert_acyclic(tree);
    let c = SubgraphCounts::of(tree);
    BigUint::from(2 * c.p2) + BigUint::from(4 * c.p3) + BigUint::from(8 * c.cyclic())
}

/// `S_5` is a combination of triangle, `U_4` and `C_5` counts: zero on a tree.
pub fn s5_formula(tree: &Tree) -> BigUint {
    assert_acyclic(tree);
    let c = SubgraphCounts::of(tree);
    BigUint::from(30 * c.cyclic() + 10 * c.cyclic() + 10 * c.cyclic())
}

/// `S_6 = 2 phi(P_2) + 12 phi(P_3) + 6 phi(P_4) + 12 phi(K_{1,3})` on a tree.
pub fn s6_formula(tree: &Tree) -> BigUint {
    assert_acyclic(tree);
    let c = SubgraphCounts::of(tree);
    BigUint::from(2 * c.p2)
        + BigUint::from(12 * c.p3)
        + BigUint::from(6 * c.p4)
        + BigUint::from(12 * c.k13)
}

/// Number of subgraphs of `host` isomorphic to `pattern`, by trying every
/// edge subset of the pattern's size and testing every vertex bijection.
pub fn count_subgraph_bruteforce(host: &Tree, pattern: &Tree) -> Result<u64, MomentError> {
    let k = pattern.n();
    if k > MAX_PATTERN_ORDER {
        return Err(MomentError::PatternTooLarge(k));
    }
    if k == 1 {
        return Ok(host.n() as u64);
    }
    let host_edges: Vec<(usize, usize)> = host.edges().collect();
    let pattern_edges: Vec<(usize, usize)> = pattern.edges().collect();
    let perms = permutations(k);
    let mut count = 0;
    for_each_subset(host_edges.len(), k - 1, &mut |subset| {
        let mut vertices: Vec<usize> = subset
            .iter()
            .flat_map(|&e| [host_edges[e].0, host_edges[e].1])
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != k {
            return;
        }
        let mut adj = [[false; MAX_PATTERN_ORDER]; MAX_PATTERN_ORDER];
        for &e in subset {
            let (u, v) = host_edges[e];
            let a = vertices.binary_search(&u).unwrap();
            let b = vertices.binary_search(&v).unwrap();
            adj[a][b] = true;
            adj[b][a] = true;
        }
        if perms
            .iter()
            .any(|perm| pattern_edges.iter().all(|&(u, v)| adj[perm[u]][perm[v]]))
        {
            count += 1;
        }
    });
    Ok(count)
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Convenience for tests and reports: a moment as `u64` when it fits.
pub fn moment_u64(m: &MomentSequence, k: usize) -> Option<u64> {
    m.get(k).and_then(ToPrimitive::to_u64)
}
