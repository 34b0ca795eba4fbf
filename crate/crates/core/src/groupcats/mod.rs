//! Finite groups and the categories built from their subgroups:
//! transporter, orbit, fusion, fusion-orbit and linking categories, with
//! the decompositions of their cohomology.

mod categories;
mod centric;
mod decomp;
mod group;
mod linking;

pub use categories::{
    build_category, group_categories, CategoryKind, CollectionSpec, GroupCategories, GroupCategory, MorphismClass, SubgroupCollection, MAX_COLLECTION,
};
pub use centric::{p_centric, CentricSubgroup};
pub use decomp::{
    centric_categories, chain_poset_check, decomposition_e2, linking_decomposition, oc_to_fbar, ChainPosetCheck, CollapseComparison, CollapseReport,
    DecompositionKind, DecompositionReport, LinkingDecompositionKind,
};
pub use group::{members, size, FiniteGroup, RawGroup, Subset, MAX_GROUP_ORDER};
pub use linking::{linking_system, AxiomCheck, LinkingSystem};
