//! Flexible preconditioned conjugate gradient.

mod pcg;

pub use pcg::{pcg_solve, pcg_solve_observed, SolveConfig, SolveReport};

use crate::error::Result;

/// Action `z = B r` of a (possibly varying) preconditioner.
pub trait Preconditioner {
    fn apply(&mut self, r: &[f64], z: &mut [f64]) -> Result<()>;
}

/// `B = I`; turns the flexible method into plain CG.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityPreconditioner;

impl Preconditioner for IdentityPreconditioner {
    fn apply(&mut self, r: &[f64], z: &mut [f64]) -> Result<()> {
        z.copy_from_slice(r);
        Ok(())
    }
}

impl<P: Preconditioner + ?Sized> Preconditioner for &mut P {
    fn apply(&mut self, r: &[f64], z: &mut [f64]) -> Result<()> {
        (**self).apply(r, z)
    }
}
