use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::Preconditioner;
use crate::blas::{axpy, dot, fused_axpy_pair, fused_triple_dot, norm2};
use crate::error::{Error, Result};
use crate::sparse::{spmv_into, CsrMatrix, LaneGroupPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    /// Stop once `‖r‖₂ / ‖b‖₂ ≤ rtol`.
    pub rtol: f64,
    pub itmax: usize,
    /// Recompute `b - A u` every this many iterations and compare with the
    /// recursively updated residual.
    pub audit_interval: usize,
    pub audit_tol: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            rtol: 1e-6,
            itmax: 5000,
            audit_interval: 50,
            audit_tol: 1e-10,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rtol.is_nan() || self.rtol <= 0.0 {
            return Err(Error::InvalidConfig(format!("rtol {} must be positive", self.rtol)));
        }
        if self.itmax == 0 {
            return Err(Error::InvalidConfig("itmax must be at least 1".into()));
        }
        if self.audit_interval == 0 {
            return Err(Error::InvalidConfig("audit interval must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub iterations: usize,
    pub final_relres: f64,
    /// `‖r_i‖₂` for `i = 0..=iterations`.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    /// Filled in by callers that time the setup phase.
    pub setup_ms: f64,
    pub solve_ms: f64,
    /// Largest `‖r_i - (b - A u_i)‖ / ‖b‖` seen at an audit point.
    pub max_audit_deviation: f64,
    pub audit_tripped: bool,
}

/// Solve `A u = b` with the flexible PCG, starting from `u0`.
pub fn pcg_solve<P: Preconditioner>(
    a: &CsrMatrix,
    pc: &mut P,
    b: &[f64],
    u0: &[f64],
    cfg: &SolveConfig,
) -> Result<(Vec<f64>, SolveReport)> {
    pcg_solve_observed(a, pc, b, u0, cfg, |_, _, _| {})
}

/// As [`pcg_solve`], calling `observe(i, u_i, r_i)` after every update.
///
/// The recurrence keeps three inner products per iteration in one pass
/// (`w·r`, `w·v`, `w·q_{i-1}`) and updates `(d, u)` and `(q, r)` as fused
/// pairs. Residuals are subtracted so that `r_i = b - A u_i` holds.
pub fn pcg_solve_observed<P, F>(
    a: &CsrMatrix,
    pc: &mut P,
    b: &[f64],
    u0: &[f64],
    cfg: &SolveConfig,
    mut observe: F,
) -> Result<(Vec<f64>, SolveReport)>
where
    P: Preconditioner,
    F: FnMut(usize, &[f64], &[f64]),
{
    cfg.validate()?;
    if !a.is_square() {
        return Err(Error::dim("pcg (square)", a.nrows(), a.ncols()));
    }
    let n = a.nrows();
    if b.len() != n {
        return Err(Error::dim("pcg rhs", n, b.len()));
    }
    if u0.len() != n {
        return Err(Error::dim("pcg initial guess", n, u0.len()));
    }
    let start = Instant::now();
    let policy = LaneGroupPolicy::for_matrix(a);
    let mut report = SolveReport::default();

    let bnorm = norm2(b);
    if bnorm == 0.0 {
        report.residual_history.push(0.0);
        report.converged = true;
        report.solve_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok((vec![0.0; n], report));
    }
    let target = cfg.rtol * bnorm;

    let mut u = u0.to_vec();
    let mut r = vec![0.0; n];
    spmv_into(a, &u, &mut r, policy)?;
    for (ri, &bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    let mut rnorm = norm2(&r);
    report.residual_history.push(rnorm);

    let mut scratch = vec![0.0; n];
    let mut audit = |u: &[f64], r: &[f64], report: &mut SolveReport| {
        spmv_into(a, u, &mut scratch, policy).expect("square operator");
        let dev = scratch
            .iter()
            .zip(b)
            .zip(r)
            .map(|((&au, &bi), &ri)| (ri - (bi - au)).powi(2))
            .sum::<f64>()
            .sqrt()
            / bnorm;
        report.max_audit_deviation = report.max_audit_deviation.max(dev);
        if dev > cfg.audit_tol {
            report.audit_tripped = true;
        }
    };

    if rnorm > target {
        let mut w = vec![0.0; n];
        let mut v = vec![0.0; n];
        pc.apply(&r, &mut w)?;
        spmv_into(a, &w, &mut v, policy)?;
        let mut d = w.clone();
        let mut q = v.clone();
        let alpha = dot(&w, &r);
        let mut rho = dot(&w, &v);
        check_scalars(0, alpha, rho, rho)?;
        let step = alpha / rho;
        axpy(step, &d, &mut u);
        axpy(-step, &q, &mut r);
        let mut it = 1;
        rnorm = norm2(&r);
        report.residual_history.push(rnorm);
        observe(it, &u, &r);

        while rnorm > target && it < cfg.itmax {
            pc.apply(&r, &mut w)?;
            spmv_into(a, &w, &mut v, policy)?;
            let (alpha, beta, gamma) = fused_triple_dot(&w, &r, &v, &q)?;
            let conj = gamma / rho;
            let rho_next = beta - gamma * conj;
            check_scalars(it, alpha, beta, rho_next)?;
            let step = alpha / rho_next;
            fused_axpy_pair(&mut d, &w, -conj, &mut u, step);
            fused_axpy_pair(&mut q, &v, -conj, &mut r, -step);
            rho = rho_next;
            it += 1;
            rnorm = norm2(&r);
            report.residual_history.push(rnorm);
            observe(it, &u, &r);
            if it % cfg.audit_interval == 0 {
                audit(&u, &r, &mut report);
            }
        }
        report.iterations = it;
    }

    audit(&u, &r, &mut report);
    report.final_relres = rnorm / bnorm;
    report.converged = rnorm <= target;
    report.solve_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((u, report))
}

fn check_scalars(iteration: usize, alpha: f64, beta: f64, rho: f64) -> Result<()> {
    if !(alpha.is_finite() && beta.is_finite() && rho.is_finite()) {
        return Err(Error::Breakdown {
            iteration,
            reason: format!("non-finite scalar (alpha={alpha}, beta={beta}, rho={rho})"),
        });
    }
    if rho <= 0.0 {
        return Err(Error::Breakdown {
            iteration,
            reason: format!("rho = {rho} is not positive"),
        });
    }
    Ok(())
}
