//! Exact spectral moments of trees, S-order ranking, and brute-force checks
//! of the extremal trees of a fixed bipartition class.

pub use num_bigint;

pub mod catalog;
pub mod enumeration;
pub mod families_ops;
pub mod graph6;
pub mod moments;
pub mod s_order;
pub mod tree;
pub mod verification;

pub use catalog::{read_catalog, records_from_catalog, write_catalog, CatalogError, CatalogRecord};
pub use enumeration::{
    free_trees, free_trees_with, trees_with_bipartition, trees_with_bipartition_with, Backend,
    EnumerationConfig, EnumerationError, TreeClassQuery,
};
pub use families_ops::{
    apply_op1, apply_op2, ascend_chain, ascend_steps, double_star, family_b, family_d, op1_sites,
    op2_sites, preimages_op1, preimages_op2, ChainError, ChainStep, Family, FamilyError,
    FamilyParams, OpError, OpKind, OpSite,
};
pub use graph6::{from_graph6, to_graph6, Graph6Error};
pub use moments::{
    count_k13, count_p2, count_p3, count_p4, count_subgraph_bruteforce, s4_formula, s5_formula,
    s6_formula, walk_moments, walk_moments_to, MomentError, MomentSequence, SubgraphCounts,
};
pub use s_order::{
    cmp_s, equal_s_classes, first_difference, last_k, rank_catalog, rank_catalog_to,
    rank_with_moments, OrderError, RankedCatalog, RankedEntry, SClass, SOrdering,
};
pub use tree::{isomorphic, Bipartition, CanonicalCode, Tree, TreeError};
pub use verification::{
    case_tag, predicted_last_four, theorem_cells, verify_all, verify_key_inequalities,
    verify_proof_sets, verify_theorem, CaseTag, IdentityReport, Member, ProofSetReport,
    TheoremCase, VerificationReport, VerifyError,
};
