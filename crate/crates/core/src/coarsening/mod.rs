//! Matching-based aggregation, prolongators and the multilevel hierarchy.

mod aggregation;
mod galerkin;
mod hierarchy;
mod prolongator;

pub use aggregation::{pairwise_aggregate, Aggregation};
pub use galerkin::{galerkin_by_aggregates, galerkin_by_aggregates_with};
pub use hierarchy::{
    build_hierarchy, coarsen, double_pairwise, hierarchy_stats, AggregationMode, CoarseStep,
    GalerkinPath, Hierarchy, HierarchyInfo, HierarchyStats, Level, PassSummary, SetupConfig,
};
pub use prolongator::{build_prolongator, restrict_vector};
