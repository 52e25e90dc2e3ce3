//! ℓ1-Jacobi smoothing and multigrid cycles over a [`Hierarchy`](crate::Hierarchy).

mod cycle;
mod smoother;

pub use cycle::{vcycle, wcycle, AmgPreconditioner, CycleConfig, CycleKind};
pub use smoother::{l1_jacobi_sweeps, l1_jacobi_sweeps_with};
