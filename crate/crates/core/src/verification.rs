//! Brute-force checks of the extremal trees of `T_n^{p,q}`: the predicted
//! last four in S-order, the closed-form gaps between the candidates, and the
//! preimage sets used to locate them.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::{
    trees_with_bipartition_with, EnumerationConfig, EnumerationError, TreeClassQuery,
};
use crate::families_ops::{
    contains_isomorphic, double_star, family, preimages_op1, preimages_op2, Family, FamilyError,
    FamilyParams,
};
use crate::graph6::to_graph6;
use crate::moments::{count_p3, walk_moments_to};
use crate::s_order::{first_difference, rank_catalog};
use crate::tree::Tree;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("(p, q) = ({p}, {q}) is outside the hypotheses 4 <= p <= q")]
    OutsideHypotheses { p: usize, q: usize },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("catalog for (p, q) = ({p}, {q}) has only {size} trees")]
    CatalogTooSmall { p: usize, q: usize, size: usize },
    #[error("expected one tree matching {name} in a preimage set, found {found}")]
    AmbiguousMember { name: &'static str, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    EqualPQ,
    PGreater,
    PEqualBoundary,
    PLess,
}

fn check_hypotheses(p: usize, q: usize) -> Result<(), VerifyError> {
    if p >= 4 && p <= q {
        Ok(())
    } else {
        Err(VerifyError::OutsideHypotheses { p, q })
    }
}

/// Compares `p` with `(q + 4) / 2` without dividing.
pub fn case_tag(p: usize, q: usize) -> Result<CaseTag, VerifyError> {
    check_hypotheses(p, q)?;
    Ok(if p == q {
        CaseTag::EqualPQ
    } else if 2 * p > q + 4 {
        CaseTag::PGreater
    } else if 2 * p == q + 4 {
        CaseTag::PEqualBoundary
    } else {
        CaseTag::PLess
    })
}

/// A named member `B^{k,l}` or `D^{k,l}` of a fixed class `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Member {
    pub family: Family,
    pub k: usize,
    pub l: usize,
}

impl Member {
    pub const fn b(k: usize, l: usize) -> Member {
        Member {
            family: Family::B,
            k,
            l,
        }
    }

    pub const fn d(k: usize, l: usize) -> Member {
        Member {
            family: Family::D,
            k,
            l,
        }
    }

    pub fn build(self, p: usize, q: usize) -> Result<Tree, FamilyError> {
        family(self.family, FamilyParams::new(p, q, self.k, self.l))
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::B => "B",
            Family::D => "D",
        };
        write!(f, "{name}^{{{},{}}}", self.k, self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub p: usize,
    pub q: usize,
    pub tag: CaseTag,
    /// Ascending: fourth-last first, the maximum last.
    pub predicted: [Member; 4],
}

pub fn predicted_last_four(p: usize, q: usize) -> Result<TheoremCase, VerifyError> {
    let tag = case_tag(p, q)?;
    let (b00, b01, b02, b20, d01) = (
        Member::b(0, 0),
        Member::b(0, 1),
        Member::b(0, 2),
        Member::b(2, 0),
        Member::d(0, 1),
    );
    let predicted = match tag {
        CaseTag::EqualPQ | CaseTag::PLess => [b02, b20, b01, b00],
        CaseTag::PGreater => [b20, d01, b01, b00],
        CaseTag::PEqualBoundary => [d01, b20, b01, b00],
    };
    Ok(TheoremCase {
        p,
        q,
        tag,
        predicted,
    })
}

/// Names `t` as a small `B`/`D` member of class `(p, q)` when it is one.
pub fn identify_member(t: &Tree, p: usize, q: usize) -> Option<Member> {
    let code = t.canonical_code();
    let limit = 3;
    [Family::B, Family::D]
        .into_iter()
        .flat_map(|family| {
            (0..=limit).flat_map(move |k| (0..=limit).map(move |l| Member { family, k, l }))
        })
        .find(|m| m.build(p, q).is_ok_and(|c| c.canonical_code() == code))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub tag: CaseTag,
    pub predicted: Vec<String>,
    pub predicted_graph6: Vec<String>,
    /// The brute-force last four, ascending.
    pub actual_graph6: Vec<String>,
    pub actual_names: Vec<Option<String>>,
    pub position_matches: Vec<bool>,
    /// First differing moment index between consecutive trees among the last
    /// five, lowest pair first; `None` marks a tie.
    pub separations: Vec<Option<usize>>,
    /// A tie class reaches across the fourth-last position.
    pub boundary_tie: bool,
    /// No two of the last four (nor the fourth and fifth last) share moments.
    pub strict: bool,
    pub catalog_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub passed: bool,
}

pub fn verify_theorem(
    p: usize,
    q: usize,
    config: &EnumerationConfig,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let case = predicted_last_four(p, q)?;
    let query = TreeClassQuery::new(p, q)?;
    let trees = trees_with_bipartition_with(&query, config)?;
    let catalog = rank_catalog(trees).expect("one order per class");
    let entries = catalog.entries();
    if entries.len() < 4 {
        return Err(VerifyError::CatalogTooSmall {
            p,
            q,
            size: entries.len(),
        });
    }
    let window = &entries[entries.len().saturating_sub(5)..];
    let separations: Vec<Option<usize>> = window
        .windows(2)
        .map(|pair| first_difference(&pair[0].moments, &pair[1].moments).expect("same order"))
        .collect();
    let top = &entries[entries.len() - 4..];
    let boundary_tie = entries.len() > 4 && entries[entries.len() - 5].rank == top[0].rank;
    let strict = separations.iter().all(Option::is_some);

    let predicted_trees = case
        .predicted
        .iter()
        .map(|m| m.build(p, q))
        .collect::<Result<Vec<_>, _>>()?;
    let position_matches: Vec<bool> = predicted_trees
        .iter()
        .zip(top)
        .map(|(want, got)| want.canonical_code() == got.code)
        .collect();
    let passed = strict && position_matches.iter().all(|&m| m);
    Ok(VerificationReport {
        n: p + q,
        p,
        q,
        tag: case.tag,
        predicted: case.predicted.iter().map(Member::to_string).collect(),
        predicted_graph6: predicted_trees.iter().map(to_graph6).collect(),
        actual_graph6: top.iter().map(|e| to_graph6(&e.tree)).collect(),
        actual_names: top
            .iter()
            .map(|e| identify_member(&e.tree, p, q).map(|m| m.to_string()))
            .collect(),
        position_matches,
        separations,
        boundary_tie,
        strict,
        catalog_size: entries.len(),
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
        passed,
    })
}

/// All `(p, q)` with `4 <= p <= q` and `p + q <= max_n`.
pub fn theorem_cells(max_n: usize) -> Vec<(usize, usize)> {
    (4..=max_n / 2)
        .flat_map(|p| (p..=max_n - p).map(move |q| (p, q)))
        .collect()
}

/// Runs [`verify_theorem`] on every cell, in cell order.
pub fn verify_all(
    max_n: usize,
    config: &EnumerationConfig,
) -> Vec<Result<VerificationReport, VerifyError>> {
    theorem_cells(max_n)
        .into_par_iter()
        .map(|(p, q)| verify_theorem(p, q, config))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    /// Whether the identity's hypothesis holds for this `(p, q)`.
    pub applies: bool,
    pub expected: i64,
    pub observed: i64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        !self.applies || self.expected == self.observed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub p: usize,
    pub q: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }
}

fn moment(t: &Tree, k: usize) -> BigInt {
    walk_moments_to(t, k).values()[k].clone().into()
}

fn gap(a: &Tree, b: &Tree, k: usize) -> i64 {
    i64::try_from(moment(a, k) - moment(b, k)).expect("gap fits in i64")
}

fn p3_gap(a: &Tree, b: &Tree) -> i64 {
    count_p3(a) as i64 - count_p3(b) as i64
}

fn degree_profile(t: &Tree) -> Vec<usize> {
    let mut d = t.degree_sequence();
    d.sort_unstable();
    d
}

/// Members of `set` with the sorted degree sequence of a double star whose
/// centers have degrees `p - 1` and `q - 1`, plus two vertices of degree 2.
fn two_path_members(set: &[Tree], p: usize, q: usize) -> Vec<Tree> {
    let mut want = vec![1; p + q - 4];
    want.extend([2, 2, p - 1, q - 1]);
    want.sort_unstable();
    set.iter()
        .filter(|t| degree_profile(t) == want)
        .cloned()
        .collect()
}

fn degree_two_adjacent(t: &Tree) -> bool {
    t.edges().any(|(a, b)| t.degree(a) == 2 && t.degree(b) == 2)
}

/// Two pendant paths of length 2 hanging off different vertices.
fn split_paths(t: &Tree) -> bool {
    let hubs: Vec<usize> = (0..t.n())
        .filter(|&v| t.degree(v) == 2)
        .filter_map(|v| t.neighbors(v).iter().copied().find(|&m| !t.is_leaf(m)))
        .collect();
    hubs.len() == 2 && hubs[0] != hubs[1] && !degree_two_adjacent(t)
}

fn path_shaped(t: &Tree) -> bool {
    split_paths(t) || degree_two_adjacent(t)
}

fn unique(mut found: Vec<Tree>, name: &'static str) -> Result<Tree, VerifyError> {
    if found.len() == 1 {
        Ok(found.pop().expect("one element"))
    } else {
        Err(VerifyError::AmbiguousMember {
            name,
            found: found.len(),
        })
    }
}

/// The trees called `C^1`, `E^1`, `F^1` in the proofs, recovered from the
/// preimage sets: `C^1` has two separate pendant paths of length 2, `E^1`
/// (from `B^{0,1}`) and `F^1` (from `D^{0,1}`) one pendant path of length 3.
pub struct PathVariants {
    pub c1: Tree,
    pub e1: Tree,
    pub f1: Tree,
}

pub fn path_variants(p: usize, q: usize) -> Result<PathVariants, VerifyError> {
    check_hypotheses(p, q)?;
    let b1 = preimages_op1(&Member::b(0, 1).build(p, q)?);
    let c1_set = preimages_op1(&Member::d(0, 1).build(p, q)?);
    let from_b = two_path_members(&b1, p, q);
    let from_d = two_path_members(&c1_set, p, q);
    let c1 = unique(
        from_b.iter().filter(|t| split_paths(t)).cloned().collect(),
        "C^1",
    )?;
    let e1 = unique(
        from_b.into_iter().filter(degree_two_adjacent).collect(),
        "E^1",
    )?;
    let f1 = unique(
        from_d.into_iter().filter(degree_two_adjacent).collect(),
        "F^1",
    )?;
    Ok(PathVariants { c1, e1, f1 })
}

/// The closed-form gaps between candidate trees, each computed from the
/// constructed trees. Gaps decided at `S_6` are checked where the `S_4` tie
/// they assume holds.
pub fn verify_key_inequalities(p: usize, q: usize) -> Result<IdentityReport, VerifyError> {
    check_hypotheses(p, q)?;
    let (pi, qi) = (p as i64, q as i64);
    let b01 = Member::b(0, 1).build(p, q)?;
    let b02 = Member::b(0, 2).build(p, q)?;
    let b20 = Member::b(2, 0).build(p, q)?;
    let b30 = Member::b(3, 0).build(p, q)?;
    let d01 = Member::d(0, 1).build(p, q)?;
    let d20 = Member::d(2, 0).build(p, q)?;
    let PathVariants { c1, e1, f1 } = path_variants(p, q)?;

    let check = |name: &str, applies: bool, expected: i64, observed: i64| IdentityCheck {
        name: name.to_string(),
        applies,
        expected,
        observed,
    };
    let checks = vec![
        check(
            "P3(B01) - P3(D01) = q - p",
            true,
            qi - pi,
            p3_gap(&b01, &d01),
        ),
        check(
            "P3(B20) - P3(D20) = 2(q - p)",
            true,
            2 * (qi - pi),
            p3_gap(&b20, &d20),
        ),
        check(
            "P3(C1) - P3(B02) = -(q - p + 1)",
            true,
            -(qi - pi + 1),
            p3_gap(&c1, &b02),
        ),
        check(
            "P3(E1) - P3(B02) = -(q - p + 1)",
            true,
            -(qi - pi + 1),
            p3_gap(&e1, &b02),
        ),
        check(
            "P3(D01) - P3(B20) = 2p - 4 - q",
            true,
            2 * pi - 4 - qi,
            p3_gap(&d01, &b20),
        ),
        check(
            "S6(D01) - S6(B20) = 3[1 - (q - 3)^2]",
            2 * p == q + 4,
            3 * (1 - (qi - 3).pow(2)),
            gap(&d01, &b20, 6),
        ),
        check(
            "S6(D01) - S6(B02) = 3[1 - (q - 2)^2]",
            2 * p == q + 3,
            3 * (1 - (qi - 2).pow(2)),
            gap(&d01, &b02, 6),
        ),
        check(
            "S6(B02) - S6(B30) = 6(p - 3)(p - 4)",
            p == 7,
            6 * (pi - 3) * (pi - 4),
            gap(&b02, &b30, 6),
        ),
        check(
            "S4(B20) - S4(F1) = 4(q - p + 2)",
            true,
            4 * (qi - pi + 2),
            gap(&b20, &f1, 4),
        ),
    ];
    Ok(IdentityReport { p, q, checks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofSetReport {
    pub p: usize,
    pub q: usize,
    pub checks: Vec<SetCheck>,
}

impl ProofSetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&SetCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn same_iso_set(a: &[Tree], b: &[Tree]) -> bool {
    let codes = |s: &[Tree]| {
        s.iter()
            .map(Tree::canonical_code)
            .collect::<std::collections::BTreeSet<_>>()
    };
    codes(a) == codes(b)
}

fn build_all(members: &[Member], p: usize, q: usize) -> Result<Vec<Tree>, VerifyError> {
    Ok(members
        .iter()
        .map(|m| m.build(p, q))
        .collect::<Result<Vec<_>, _>>()?)
}

/// `A_1`: trees one Operation I away from the double star.
pub fn first_set(p: usize, q: usize) -> Result<Vec<Tree>, VerifyError> {
    Ok(preimages_op1(&double_star(p, q)?))
}

/// The second-operation preimages of the double star that are not already
/// first-operation preimages, and those that are.
pub fn second_set(p: usize, q: usize) -> Result<(Vec<Tree>, Vec<Tree>), VerifyError> {
    let a1 = first_set(p, q)?;
    Ok(preimages_op2(&double_star(p, q)?)
        .into_iter()
        .partition(|t| !contains_isomorphic(&a1, t)))
}

pub fn predicted_second_set(p: usize, q: usize) -> Vec<Member> {
    let b = (2..=(p - 1) / 2).map(|k| Member::b(k, 0));
    let d = (2..=(q - 1) / 2).map(|k| Member::d(k, 0));
    b.chain(d).collect()
}

/// Reproduces the preimage sets used to locate the runners-up and compares
/// them with the stated membership lists.
pub fn verify_proof_sets(p: usize, q: usize) -> Result<ProofSetReport, VerifyError> {
    check_hypotheses(p, q)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, holds: bool, detail: String| {
        checks.push(SetCheck {
            name: name.to_string(),
            holds,
            detail,
        })
    };

    let a1 = first_set(p, q)?;
    let want_a1 = if p == q {
        vec![Member::b(0, 1)]
    } else {
        vec![Member::b(0, 1), Member::d(0, 1)]
    };
    push(
        "A1",
        same_iso_set(&a1, &build_all(&want_a1, p, q)?),
        format!("|A1| = {}", a1.len()),
    );

    let (a2, overlap) = second_set(p, q)?;
    let want_a2 = build_all(&predicted_second_set(p, q), p, q)?;
    push(
        "A2",
        same_iso_set(&a2, &want_a2),
        format!(
            "|A2| = {}, {} further preimage(s) already in A1",
            a2.len(),
            overlap.len()
        ),
    );

    let b20 = Member::b(2, 0).build(p, q)?;
    let b02 = Member::b(0, 2).build(p, q)?;
    let b1 = preimages_op1(&Member::b(0, 1).build(p, q)?);
    let two_paths: Vec<Tree> = two_path_members(&b1, p, q)
        .into_iter()
        .filter(path_shaped)
        .collect();
    let b1_ok = b1.len() == 4
        && contains_isomorphic(&b1, &b20)
        && contains_isomorphic(&b1, &b02)
        && two_paths.len() == 2
        && !two_paths[0].is_isomorphic(&two_paths[1]);
    push(
        "B1",
        b1_ok,
        format!(
            "|B1| = {}, {} member(s) share the C1/E1 degree sequence",
            b1.len(),
            two_paths.len()
        ),
    );

    if p < q {
        let c1_set = preimages_op1(&Member::d(0, 1).build(p, q)?);
        let d20 = Member::d(2, 0).build(p, q)?;
        let d02 = Member::d(0, 2).build(p, q)?;
        let two_paths: Vec<Tree> = two_path_members(&c1_set, p, q)
            .into_iter()
            .filter(path_shaped)
            .collect();
        let ok = c1_set.len() == 4
            && contains_isomorphic(&c1_set, &d20)
            && contains_isomorphic(&c1_set, &d02)
            && two_paths.len() == 2;
        push("C1", ok, format!("|C1| = {}", c1_set.len()));
    }

    let d1 = preimages_op1(&b20);
    let b21 = Member::b(2, 1).build(p, q)?;
    let b30 = Member::b(3, 0).build(p, q)?;
    let want_len = if p >= 7 { 5 } else { 4 };
    let ok = d1.len() == want_len
        && contains_isomorphic(&d1, &b21)
        && contains_isomorphic(&d1, &b02)
        && contains_isomorphic(&d1, &b30) == (p >= 7);
    push(
        "D1",
        ok,
        format!(
            "|D1| = {}, contains B30: {}",
            d1.len(),
            contains_isomorphic(&d1, &b30)
        ),
    );
    Ok(ProofSetReport { p, q, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_tags() {
        assert_eq!(case_tag(6, 7).unwrap(), CaseTag::PGreater);
        assert_eq!(case_tag(5, 6).unwrap(), CaseTag::PEqualBoundary);
        assert_eq!(case_tag(4, 6).unwrap(), CaseTag::PLess);
        assert_eq!(case_tag(5, 5).unwrap(), CaseTag::EqualPQ);
        assert!(matches!(
            case_tag(3, 6),
            Err(VerifyError::OutsideHypotheses { p: 3, q: 6 })
        ));
        assert!(matches!(
            case_tag(6, 5),
            Err(VerifyError::OutsideHypotheses { .. })
        ));
    }

    #[test]
    fn predicted_orders() {
        let c = predicted_last_four(6, 7).unwrap();
        assert_eq!(
            c.predicted,
            [
                Member::b(2, 0),
                Member::d(0, 1),
                Member::b(0, 1),
                Member::b(0, 0)
            ]
        );
        let c = predicted_last_four(5, 6).unwrap();
        assert_eq!(c.predicted[0], Member::d(0, 1));
        assert_eq!(Member::b(0, 2).to_string(), "B^{0,2}");
    }

    #[test]
    fn cells() {
        assert_eq!(theorem_cells(9), vec![(4, 4), (4, 5)]);
        assert_eq!(theorem_cells(16).len(), 25);
    }

    #[test]
    fn small_cell_reports() {
        let config = EnumerationConfig::default();
        let r = verify_theorem(5, 6, &config).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.actual_names[0].as_deref(), Some("D^{0,1}"));
        assert_eq!(r.separations.len(), 4);
        let r = verify_theorem(6, 7, &config).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.actual_names[1].as_deref(), Some("D^{0,1}"));
    }

    #[test]
    fn boundary_identity_example() {
        let r = verify_key_inequalities(5, 6).unwrap();
        let s6 = r
            .checks
            .iter()
            .find(|c| c.name.starts_with("S6(D01) - S6(B20)"))
            .unwrap();
        assert!(s6.applies);
        assert_eq!(s6.observed, -24);
        let r = verify_key_inequalities(4, 6).unwrap();
        assert_eq!(r.checks[0].observed, 2);
    }

    #[test]
    fn proof_set_examples() {
        assert_eq!(first_set(4, 6).unwrap().len(), 2);
        assert_eq!(first_set(5, 5).unwrap().len(), 1);
        let d1 = preimages_op1(&Member::b(2, 0).build(7, 8).unwrap());
        assert!(contains_isomorphic(
            &d1,
            &Member::b(3, 0).build(7, 8).unwrap()
        ));
    }

    #[test]
    fn runner_up_after_removing_the_maximum() {
        let trees =
            trees_with_bipartition_with(&TreeClassQuery::new(5, 6).unwrap(), &Default::default())
                .unwrap();
        let top = double_star(5, 6).unwrap();
        let reduced: Vec<Tree> = trees
            .into_iter()
            .filter(|t| !t.is_isomorphic(&top))
            .collect();
        let catalog = rank_catalog(reduced).unwrap();
        assert!(catalog
            .last()
            .unwrap()
            .tree
            .is_isomorphic(&Member::b(0, 1).build(5, 6).unwrap()));
    }
}
