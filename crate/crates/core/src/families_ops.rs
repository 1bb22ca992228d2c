//! Near-double-star families `B^{k,l}` and `D^{k,l}`, the two leaf-moving
//! operations that raise the S-order, and their inverses.
//!
//! Vertex labels of a family member:
//!
//! * `0` is the hub, the center carrying the modifications (the white center
//!   for `B`, the black one for `D`), `1` is the other center;
//! * when `k >= 1`, `2` is the branch vertex `x` on the hub, followed by its
//!   `k` leaves;
//! * then the `l` extended leaves of the hub, each immediately followed by
//!   its pendant vertex;
//! * then the plain leaves of the hub, then the leaves of the other center.
//!
//! Colors: class `p` is "white", class `q` is "black".

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moments::count_p3;
use crate::tree::{CanonicalCode, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("need 1 <= p <= q, got p = {p}, q = {q}")]
    InvalidSizes { p: usize, q: usize },
    #[error("double star needs p >= 2, got p = {p} (that class is a star)")]
    DegenerateDoubleStar { p: usize },
    #[error(
        "k + l = {sum} exceeds {limit}: the other center would need a negative number of leaves"
    )]
    TooManyMoved { sum: usize, limit: usize },
    #[error("hub of degree {degree} cannot hold the branch vertex and {l} extended leaves besides the other center")]
    HubTooSmall { degree: usize, l: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub l: usize,
}

impl FamilyParams {
    pub fn new(p: usize, q: usize, k: usize, l: usize) -> Self {
        FamilyParams { p, q, k, l }
    }
}

/// `B^{0,0}`: adjacent centers of degrees `q` and `p`, everything else a leaf.
pub fn double_star(p: usize, q: usize) -> Result<Tree, FamilyError> {
    if p < 2 {
        return Err(FamilyError::DegenerateDoubleStar { p });
    }
    family_b(FamilyParams::new(p, q, 0, 0))
}

pub fn family_b(params: FamilyParams) -> Result<Tree, FamilyError> {
    family(Family::B, params)
}

pub fn family_d(params: FamilyParams) -> Result<Tree, FamilyError> {
    family(Family::D, params)
}

pub fn family(kind: Family, params: FamilyParams) -> Result<Tree, FamilyError> {
    let FamilyParams { p, q, k, l } = params;
    if p == 0 || p > q {
        return Err(FamilyError::InvalidSizes { p, q });
    }
    // hub degree equals the size of the opposite class
    let (hub_degree, hub_class) = match kind {
        Family::B => (q, p),
        Family::D => (p, q),
    };
    let limit = hub_class - 1;
    if k + l > limit {
        return Err(FamilyError::TooManyMoved { sum: k + l, limit });
    }
    let branch = usize::from(k >= 1);
    if 1 + branch + l > hub_degree {
        return Err(FamilyError::HubTooSmall {
            degree: hub_degree,
            l,
        });
    }
    let plain = hub_degree - 1 - branch - l;
    let other_leaves = limit - k - l;

    let mut edges = vec![(0, 1)];
    let mut next = 2;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    if k >= 1 {
        let x = fresh();
        edges.push((0, x));
        for _ in 0..k {
            edges.push((x, fresh()));
        }
    }
    for _ in 0..l {
        let y = fresh();
        edges.push((0, y));
        edges.push((y, fresh()));
    }
    for _ in 0..plain {
        edges.push((0, fresh()));
    }
    for _ in 0..other_leaves {
        edges.push((1, fresh()));
    }
    let n = next;
    let tree = Tree::from_edges(n, &edges).expect("family construction yields a tree");
    assert_eq!(
        tree.bipartition().sizes(),
        (p, q),
        "family member has the wrong bipartition"
    );
    Ok(tree)
}

/// Vertices `u, v, w` naming an application site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpSite {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl OpSite {
    pub fn new(u: usize, v: usize, w: usize) -> Self {
        OpSite { u, v, w }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpKind {
    /// Moves one pendant edge `uv` to `uw`, with `w` two steps from `v`.
    One,
    /// Moves the leaves of a pendant star centered at `v` onto `w`.
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("vertex {vertex} out of range for a tree on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("site vertices must be distinct: {site:?}")]
    NotDistinct { site: OpSite },
    #[error("{a} and {b} are not adjacent")]
    NotAdjacent { a: usize, b: usize },
    #[error("u = {u} must be a leaf, has degree {degree}")]
    NotALeaf { u: usize, degree: usize },
    #[error("dist(v, w) must be 2, is {distance}")]
    DistanceNotTwo { distance: usize },
    #[error("d(w) = {dw} is smaller than d(v) = {dv}")]
    TargetDegreeTooSmall { dw: usize, dv: usize },
    #[error("d(w) = {dw} must be at least 2")]
    TargetIsLeaf { dw: usize },
    #[error("neighbor {z} of v is not a leaf")]
    PendantNotLeaf { z: usize },
    #[error("v carries {k} leaves besides u, need at least 2")]
    TooFewPendants { k: usize },
}

fn check_site(t: &Tree, site: OpSite) -> Result<(), OpError> {
    let n = t.n();
    for vertex in [site.u, site.v, site.w] {
        if vertex >= n {
            return Err(OpError::VertexOutOfRange { vertex, n });
        }
    }
    if site.u == site.v || site.v == site.w || site.u == site.w {
        return Err(OpError::NotDistinct { site });
    }
    Ok(())
}

fn rebuild(t: &Tree, removed: &[(usize, usize)], added: &[(usize, usize)]) -> Tree {
    let key = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let mut edges: Vec<(usize, usize)> = t
        .edges()
        .filter(|&e| !removed.iter().any(|&r| key(r) == e))
        .collect();
    edges.extend(added.iter().copied());
    Tree::from_edges(t.n(), &edges).expect("operation preserves the tree property")
}

pub fn check_op1(t: &Tree, site: OpSite) -> Result<(), OpError> {
    check_site(t, site)?;
    let OpSite { u, v, w } = site;
    if !t.has_edge(u, v) {
        return Err(OpError::NotAdjacent { a: u, b: v });
    }
    if !t.is_leaf(u) {
        return Err(OpError::NotALeaf {
            u,
            degree: t.degree(u),
        });
    }
    let distance = t.distances_from(v)[w];
    if distance != 2 {
        return Err(OpError::DistanceNotTwo { distance });
    }
    if t.degree(w) < t.degree(v) {
        return Err(OpError::TargetDegreeTooSmall {
            dw: t.degree(w),
            dv: t.degree(v),
        });
    }
    Ok(())
}

/// `T - uv + uw`.
pub fn apply_op1(t: &Tree, site: OpSite) -> Result<Tree, OpError> {
    check_op1(t, site)?;
    let OpSite { u, v, w } = site;
    let out = rebuild(t, &[(u, v)], &[(u, w)]);
    debug_assert_eq!(
        count_p3(&out) as i64 - count_p3(t) as i64,
        t.degree(w) as i64 - t.degree(v) as i64 + 1
    );
    Ok(out)
}

pub fn check_op2(t: &Tree, site: OpSite) -> Result<usize, OpError> {
    check_site(t, site)?;
    let OpSite { u, v, w } = site;
    if !t.has_edge(u, w) {
        return Err(OpError::NotAdjacent { a: u, b: w });
    }
    if t.degree(w) < 2 {
        return Err(OpError::TargetIsLeaf { dw: t.degree(w) });
    }
    if !t.has_edge(u, v) {
        return Err(OpError::NotAdjacent { a: u, b: v });
    }
    if let Some(&z) = t.neighbors(v).iter().find(|&&z| z != u && !t.is_leaf(z)) {
        return Err(OpError::PendantNotLeaf { z });
    }
    let k = t.degree(v) - 1;
    if k < 2 {
        return Err(OpError::TooFewPendants { k });
    }
    Ok(k)
}

/// Deletes every edge `vz` with `z` in `N(v) \ {u}` and adds `wz` instead.
pub fn apply_op2(t: &Tree, site: OpSite) -> Result<Tree, OpError> {
    let k = check_op2(t, site)?;
    let OpSite { u, v, w } = site;
    let moved: Vec<usize> = t.neighbors(v).iter().copied().filter(|&z| z != u).collect();
    let removed: Vec<_> = moved.iter().map(|&z| (v, z)).collect();
    let added: Vec<_> = moved.iter().map(|&z| (w, z)).collect();
    let out = rebuild(t, &removed, &added);
    debug_assert_eq!(count_p3(&out) - count_p3(t), (k * (t.degree(w) - 1)) as u64);
    Ok(out)
}

pub fn apply(t: &Tree, kind: OpKind, site: OpSite) -> Result<Tree, OpError> {
    match kind {
        OpKind::One => apply_op1(t, site),
        OpKind::Two => apply_op2(t, site),
    }
}

/// Every legal Operation I site, in lexicographic `(u, v, w)` order.
pub fn op1_sites(t: &Tree) -> Vec<OpSite> {
    let mut sites = Vec::new();
    for u in 0..t.n() {
        if !t.is_leaf(u) {
            continue;
        }
        let v = t.neighbors(u)[0];
        for w in t.second_neighbors(v) {
            if t.degree(w) >= t.degree(v) {
                sites.push(OpSite { u, v, w });
            }
        }
    }
    sites
}

/// Every legal Operation II site, in lexicographic `(u, v, w)` order.
pub fn op2_sites(t: &Tree) -> Vec<OpSite> {
    let mut sites = Vec::new();
    for u in 0..t.n() {
        for &v in t.neighbors(u) {
            let pendants = t.neighbors(v).iter().filter(|&&z| z != u);
            if t.degree(v) < 3 || !pendants.clone().all(|&z| t.is_leaf(z)) {
                continue;
            }
            for &w in t.neighbors(u) {
                if w != v && t.degree(w) >= 2 {
                    sites.push(OpSite { u, v, w });
                }
            }
        }
    }
    sites.sort_unstable();
    sites
}

/// All sites, Operation II first, each kind in lexicographic order.
pub fn all_sites(t: &Tree) -> Vec<(OpKind, OpSite)> {
    op2_sites(t)
        .into_iter()
        .map(|s| (OpKind::Two, s))
        .chain(op1_sites(t).into_iter().map(|s| (OpKind::One, s)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("no operation applies to a tree that is not the double star: {tree:?}")]
    Stuck { tree: Tree },
}

/// One step of an ascent chain: the site used and the resulting tree.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub kind: OpKind,
    pub site: OpSite,
    pub tree: Tree,
}

/// Applies the first available site until none remain. Returns the steps
/// taken; an empty list means `t` is already the S-order maximum of its class.
pub fn ascend_steps(t: &Tree) -> Result<Vec<ChainStep>, ChainError> {
    let (p, q) = t.bipartition().sizes();
    let target = if p >= 2 {
        double_star(p, q).ok().map(|d| d.canonical_code())
    } else {
        None
    };
    let is_top = |x: &Tree| match &target {
        Some(code) => x.canonical_code() == *code,
        // p = 1 leaves only the star
        None => true,
    };
    let mut steps: Vec<ChainStep> = Vec::new();
    let mut current = t.clone();
    while !is_top(&current) {
        let Some(&(kind, site)) = all_sites(&current).first() else {
            return Err(ChainError::Stuck { tree: current });
        };
        let next = apply(&current, kind, site).expect("scanned site is legal");
        steps.push(ChainStep {
            kind,
            site,
            tree: next.clone(),
        });
        current = next;
    }
    Ok(steps)
}

/// `T = T_0, T_1, ..., T_m` ending at the double star of `T`'s class.
pub fn ascend_chain(t: &Tree) -> Result<Vec<Tree>, ChainError> {
    let steps = ascend_steps(t)?;
    Ok(std::iter::once(t.clone())
        .chain(steps.into_iter().map(|s| s.tree))
        .collect())
}

fn dedup(candidates: Vec<Tree>) -> Vec<Tree> {
    let unique: BTreeMap<CanonicalCode, Tree> = candidates
        .into_iter()
        .map(|t| (t.canonical_code(), t))
        .collect();
    unique.into_values().collect()
}

/// Trees `T` (up to isomorphism, sorted by canonical code) with a site where
/// Operation I produces `x`.
pub fn preimages_op1(x: &Tree) -> Vec<Tree> {
    let candidates: Vec<Tree> = (0..x.n())
        .into_par_iter()
        .filter(|&a| x.is_leaf(a))
        .flat_map_iter(|a| {
            let c = x.neighbors(a)[0];
            x.second_neighbors(c)
                .into_iter()
                .filter(move |&b| x.degree(c) >= x.degree(b) + 2)
                .map(move |b| {
                    let t = rebuild(x, &[(a, c)], &[(a, b)]);
                    debug_assert!(apply_op1(&t, OpSite::new(a, b, c)).is_ok_and(|y| y == *x));
                    t
                })
        })
        .collect();
    dedup(candidates)
}

/// Trees `T` (up to isomorphism, sorted by canonical code) with a site where
/// Operation II produces `x`: for every edge `uw` and leaf `v` of `u`, the
/// first `k >= 2` leaves of `w` move back onto `v`, keeping `d(w) >= 2`.
pub fn preimages_op2(x: &Tree) -> Vec<Tree> {
    let candidates: Vec<Tree> = (0..x.n())
        .into_par_iter()
        .flat_map_iter(|u| {
            let mut out = Vec::new();
            for &w in x.neighbors(u) {
                let leaves: Vec<usize> = x
                    .neighbors(w)
                    .iter()
                    .copied()
                    .filter(|&z| x.is_leaf(z))
                    .collect();
                for &v in x.neighbors(u).iter().filter(|&&v| v != w && x.is_leaf(v)) {
                    for k in 2..=leaves.len() {
                        if x.degree(w) < k + 2 {
                            break;
                        }
                        let removed: Vec<_> = leaves[..k].iter().map(|&z| (w, z)).collect();
                        let added: Vec<_> = leaves[..k].iter().map(|&z| (v, z)).collect();
                        let t = rebuild(x, &removed, &added);
                        debug_assert!(apply_op2(&t, OpSite::new(u, v, w)).is_ok_and(|y| y == *x));
                        out.push(t);
                    }
                }
            }
            out
        })
        .collect();
    dedup(candidates)
}

/// Whether some tree in `set` is isomorphic to `t`.
pub fn contains_isomorphic(set: &[Tree], t: &Tree) -> bool {
    let code = t.canonical_code();
    set.iter().any(|s| s.canonical_code() == code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{count_k13, s4_formula, walk_moments_to};
    use num_bigint::BigUint;

    fn c2(n: usize) -> u64 {
        (n * n.saturating_sub(1) / 2) as u64
    }

    fn c3(n: usize) -> u64 {
        if n < 3 {
            0
        } else {
            (n * (n - 1) * (n - 2) / 6) as u64
        }
    }

    fn b(p: usize, q: usize, k: usize, l: usize) -> Tree {
        family_b(FamilyParams::new(p, q, k, l)).unwrap()
    }

    fn d(p: usize, q: usize, k: usize, l: usize) -> Tree {
        family_d(FamilyParams::new(p, q, k, l)).unwrap()
    }

    #[test]
    fn double_star_examples() {
        let t = double_star(4, 4).unwrap();
        let mut degs = t.degree_sequence();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 1, 1, 1, 4, 4]);
        assert_eq!(count_p3(&t), 12);
        assert_eq!(t.diameter(), 3);
        assert_eq!(
            s4_formula(&double_star(4, 6).unwrap()),
            BigUint::from(102u32)
        );
        assert_eq!(
            walk_moments_to(&double_star(4, 6).unwrap(), 4).get(4),
            Some(&BigUint::from(102u32))
        );
        assert_eq!(
            double_star(1, 3),
            Err(FamilyError::DegenerateDoubleStar { p: 1 })
        );
        assert_eq!(
            family_b(FamilyParams::new(5, 4, 0, 0)),
            Err(FamilyError::InvalidSizes { p: 5, q: 4 })
        );
    }

    #[test]
    fn p3_anchor_identities() {
        for p in 4..=12 {
            for q in p..=12 {
                assert_eq!(count_p3(&b(p, q, 0, 0)), c2(p) + c2(q));
                assert_eq!(count_p3(&b(p, q, 0, 1)), c2(p - 1) + c2(q) + 1);
                assert_eq!(count_p3(&b(p, q, 0, 2)), c2(p - 2) + c2(q) + 2);
                assert_eq!(count_p3(&b(p, q, 2, 0)), c2(p - 2) + c2(q) + c2(3));
                assert_eq!(count_p3(&b(p, q, 3, 0)), c2(p - 3) + c2(q) + c2(4));
                assert_eq!(count_p3(&b(p, q, 2, 1)), c2(p - 3) + c2(q) + c2(3) + 1);
                assert_eq!(count_p3(&d(p, q, 0, 1)), c2(p) + c2(q - 1) + 1);
                assert_eq!(count_p3(&d(p, q, 2, 0)), c2(p) + c2(q - 2) + 3);
                for t in [b(p, q, 2, 1), d(p, q, 2, 0), b(p, q, 3, 0)] {
                    assert_eq!(t.bipartition().sizes(), (p, q));
                }
            }
        }
    }

    #[test]
    fn k13_gap_between_extended_and_branched() {
        for p in 4..=12 {
            let q = p + 1;
            // the branch vertex of degree 4 contributes C(4,3) = 4 of its own
            let gap = count_k13(&b(p, q, 0, 2)) as i64 - count_k13(&b(p, q, 3, 0)) as i64;
            assert_eq!(gap, c2(p - 3) as i64 - 4);
            assert_eq!(count_k13(&b(p, q, 0, 2)), c3(p - 2) + c3(q));
        }
    }

    #[test]
    fn mirror_coincides_on_balanced_classes() {
        for p in 2..=8 {
            assert!(d(p, p, 0, 1).is_isomorphic(&b(p, p, 0, 1)));
            assert!(d(p, p, 0, 0).is_isomorphic(&b(p, p, 0, 0)));
        }
        assert!(!d(4, 6, 0, 1).is_isomorphic(&b(4, 6, 0, 1)));
        assert!(d(4, 6, 0, 0).is_isomorphic(&b(4, 6, 0, 0)));
    }

    #[test]
    fn branch_symmetry() {
        // x and the other center play interchangeable roles
        for p in 4..=9 {
            for k in 1..p - 1 {
                assert!(b(p, 9, k, 0).is_isomorphic(&b(p, 9, p - 1 - k, 0)));
            }
        }
    }

    #[test]
    fn parameter_limits() {
        assert!(matches!(
            family_b(FamilyParams::new(4, 6, 2, 2)),
            Err(FamilyError::TooManyMoved { sum: 4, limit: 3 })
        ));
        assert!(family_b(FamilyParams::new(4, 6, 0, 3)).is_ok());
        assert!(family_b(FamilyParams::new(4, 4, 0, 3)).is_ok());
        assert!(matches!(
            family_d(FamilyParams::new(3, 3, 1, 2)),
            Err(FamilyError::TooManyMoved { sum: 3, limit: 2 })
        ));
        assert!(matches!(
            family_d(FamilyParams::new(3, 6, 1, 2)),
            Err(FamilyError::HubTooSmall { degree: 3, l: 2 })
        ));
        assert!(family_b(FamilyParams::new(4, 6, 1, 0)).is_ok());
    }

    #[test]
    fn op1_on_path() {
        // P_5 as u-v-x-w-z
        let t = Tree::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let out = apply_op1(&t, OpSite::new(0, 1, 3)).unwrap();
        let fork = Tree::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(out.is_isomorphic(&fork));
        assert_eq!(s4_formula(&t), BigUint::from(20u32));
        assert_eq!(s4_formula(&out), BigUint::from(24u32));
        assert!(op1_sites(&t).contains(&OpSite::new(0, 1, 3)));
        assert_eq!(out.bipartition().sizes(), t.bipartition().sizes());
    }

    #[test]
    fn op1_errors_name_the_clause() {
        let t = Tree::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(
            apply_op1(&t, OpSite::new(4, 3, 1)),
            Err(OpError::TargetDegreeTooSmall { dw: 2, dv: 3 })
        );
        assert_eq!(
            apply_op1(&t, OpSite::new(1, 2, 4)),
            Err(OpError::NotALeaf { u: 1, degree: 2 })
        );
        assert_eq!(
            apply_op1(&t, OpSite::new(0, 2, 4)),
            Err(OpError::NotAdjacent { a: 0, b: 2 })
        );
        assert_eq!(
            apply_op1(&t, OpSite::new(0, 1, 4)),
            Err(OpError::DistanceNotTwo { distance: 3 })
        );
        assert_eq!(
            apply_op1(&t, OpSite::new(0, 1, 1)),
            Err(OpError::NotDistinct {
                site: OpSite::new(0, 1, 1)
            })
        );
        assert_eq!(
            apply_op1(&t, OpSite::new(0, 1, 9)),
            Err(OpError::VertexOutOfRange { vertex: 9, n: 6 })
        );
    }

    #[test]
    fn op2_minimal_case() {
        // v = 2 carries leaves 3, 4 and hangs off u = 1; w = 0 has one other neighbor
        let t = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (2, 4), (0, 5), (1, 6)]).unwrap();
        // u = 1, v = 2, w = 0 with d(w) = 2
        let site = OpSite::new(1, 2, 0);
        let out = apply_op2(&t, site).unwrap();
        assert_eq!(s4_formula(&out) - s4_formula(&t), BigUint::from(8u32));
        assert!(out.is_leaf(2));
        assert!(op2_sites(&t).contains(&site));
        let mut leafy = t.clone();
        leafy = rebuild(&leafy, &[(0, 5)], &[(2, 5)]);
        assert_eq!(
            apply_op2(&leafy, site),
            Err(OpError::TargetIsLeaf { dw: 1 })
        );
        let path = Tree::path(5);
        assert_eq!(
            apply_op2(&path, OpSite::new(1, 2, 0)),
            Err(OpError::TargetIsLeaf { dw: 1 })
        );
        assert_eq!(
            apply_op2(&path, OpSite::new(2, 1, 3)),
            Err(OpError::TooFewPendants { k: 1 })
        );
        assert_eq!(
            apply_op2(&path, OpSite::new(1, 2, 3)),
            Err(OpError::NotAdjacent { a: 1, b: 3 })
        );
    }

    #[test]
    fn scans_on_extremal_trees() {
        for (p, q) in [(2, 2), (3, 5), (4, 4), (4, 7)] {
            let t = double_star(p, q).unwrap();
            assert!(op1_sites(&t).is_empty());
            assert!(op2_sites(&t).is_empty());
        }
        let star = Tree::star(6);
        assert!(op1_sites(&star).is_empty());
        assert!(op2_sites(&star).is_empty());
    }

    #[test]
    fn chain_examples() {
        let top = double_star(4, 6).unwrap();
        assert_eq!(ascend_chain(&top).unwrap().len(), 1);
        let chain = ascend_chain(&b(4, 6, 0, 1)).unwrap();
        assert_eq!(chain.len(), 2);
        assert!(chain[1].is_isomorphic(&top));
        let chain = ascend_chain(&Tree::path(10)).unwrap();
        assert!(chain
            .last()
            .unwrap()
            .is_isomorphic(&double_star(5, 5).unwrap()));
        for pair in chain.windows(2) {
            assert!(walk_moments_to(&pair[0], 9) < walk_moments_to(&pair[1], 9));
        }
    }

    #[test]
    fn first_preimages_of_the_double_star() {
        let a1 = preimages_op1(&double_star(4, 6).unwrap());
        assert_eq!(a1.len(), 2);
        assert!(contains_isomorphic(&a1, &b(4, 6, 0, 1)));
        assert!(contains_isomorphic(&a1, &d(4, 6, 0, 1)));
        let a1 = preimages_op1(&double_star(5, 5).unwrap());
        assert_eq!(a1.len(), 1);
        assert!(contains_isomorphic(&a1, &b(5, 5, 0, 1)));
    }

    #[test]
    fn second_preimages_of_the_double_star() {
        // moving k of the p - 1 leaves gives B^{k,0}; k = p - 2 is B^{0,1} again
        let a2 = preimages_op2(&double_star(6, 7).unwrap());
        let expected = [
            b(6, 7, 2, 0),
            b(6, 7, 0, 1),
            d(6, 7, 2, 0),
            d(6, 7, 3, 0),
            d(6, 7, 0, 1),
        ];
        assert_eq!(a2.len(), expected.len());
        for t in &expected {
            assert!(contains_isomorphic(&a2, t));
        }
    }
}
