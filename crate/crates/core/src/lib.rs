//! Aggregation-based algebraic multigrid driven by approximate maximum
//! weight matching, applied as a preconditioner inside a flexible
//! conjugate gradient solver.
//!
//! The crate is organised bottom-up:
//!
//! * [`sparse`]: CSR storage and the kernels everything else builds on
//!   (SpMV with lane-group partitioning, transpose, hash SpGEMM, Galerkin
//!   triple product, ℓ1 diagonal).
//! * [`matching`]: compatible edge weights and the Suitor ½-approximate
//!   matching, plus an exhaustive oracle for small graphs.
//! * [`coarsening`]: pairwise aggregation, orthonormal piecewise-constant
//!   prolongators, double-pairwise composition and hierarchy setup.
//! * [`multigrid`]: ℓ1-Jacobi smoothing and V/W cycles.
//! * [`krylov`]: flexible PCG with fused reductions and paired updates.
//! * [`problems`] and [`mmio`]: test-problem generators and MatrixMarket I/O.
//!
//! Data-parallel loops go through [`exec`], which uses rayon when the
//! `parallel` feature is enabled and plain iteration otherwise.

pub mod blas;
pub mod coarsening;
pub mod error;
pub mod exec;
pub mod krylov;
pub mod matching;
pub mod mmio;
pub mod multigrid;
pub mod problems;
pub mod sparse;

pub use coarsening::{
    build_hierarchy, hierarchy_stats, AggregationMode, Hierarchy, HierarchyStats, SetupConfig,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use krylov::{pcg_solve, SolveConfig, SolveReport};
pub use multigrid::{AmgPreconditioner, CycleConfig, CycleKind};
pub use sparse::{CsrMatrix, LaneGroupPolicy};
