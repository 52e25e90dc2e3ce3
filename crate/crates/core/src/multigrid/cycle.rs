use serde::{Deserialize, Serialize};

use super::smoother::l1_jacobi_sweeps_with;
use crate::coarsening::{Hierarchy, Level};
use crate::error::{Error, Result};
use crate::krylov::Preconditioner;
use crate::sparse::spmv_into;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleKind {
    V,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleConfig {
    pub kind: CycleKind,
    pub pre_sweeps: usize,
    pub post_sweeps: usize,
    /// ℓ1-Jacobi sweeps standing in for the coarsest-level solve.
    pub coarsest_sweeps: usize,
}

impl Default for CycleConfig {
    fn default() -> Self {
        CycleConfig {
            kind: CycleKind::V,
            pre_sweeps: 1,
            post_sweeps: 1,
            coarsest_sweeps: 20,
        }
    }
}

impl CycleConfig {
    pub fn with_kind(kind: CycleKind) -> Self {
        CycleConfig {
            kind,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coarsest_sweeps == 0 {
            return Err(Error::InvalidConfig(
                "coarsest_sweeps must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

struct LevelWork {
    res: Vec<f64>,
    tmp: Vec<f64>,
    b_coarse: Vec<f64>,
    x_coarse: Vec<f64>,
}

/// One multigrid cycle per application, with a preallocated workspace.
///
/// The hierarchy is borrowed read-only; several preconditioners may share it.
pub struct AmgPreconditioner<'h> {
    hierarchy: &'h Hierarchy,
    config: CycleConfig,
    work: Vec<LevelWork>,
}

impl<'h> AmgPreconditioner<'h> {
    pub fn new(hierarchy: &'h Hierarchy, config: CycleConfig) -> Result<Self> {
        config.validate()?;
        let levels = hierarchy.levels();
        let work = levels
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let nc = levels.get(k + 1).map_or(0, Level::size);
                LevelWork {
                    res: vec![0.0; l.size()],
                    tmp: vec![0.0; l.size()],
                    b_coarse: vec![0.0; nc],
                    x_coarse: vec![0.0; nc],
                }
            })
            .collect();
        Ok(AmgPreconditioner {
            hierarchy,
            config,
            work,
        })
    }

    pub fn config(&self) -> &CycleConfig {
        &self.config
    }

    /// Change sweep counts or cycle kind between applications.
    pub fn set_config(&mut self, config: CycleConfig) -> Result<()> {
        config.validate()?;
        self.config = config;
        Ok(())
    }

    pub fn hierarchy(&self) -> &Hierarchy {
        self.hierarchy
    }

    /// Run one cycle starting at `level` (0 = finest) on `b`, updating `x`
    /// in place from its current value.
    pub fn cycle_from(&mut self, level: usize, b: &[f64], x: &mut [f64]) -> Result<()> {
        let nl = self.hierarchy.nl();
        if level >= nl {
            return Err(Error::LevelOutOfRange { level, levels: nl });
        }
        let n = self.hierarchy.level(level).size();
        if b.len() != n {
            return Err(Error::dim("cycle rhs", n, b.len()));
        }
        if x.len() != n {
            return Err(Error::dim("cycle iterate", n, x.len()));
        }
        cycle(
            &self.hierarchy.levels()[level..],
            &mut self.work[level..],
            &self.config,
            b,
            x,
        );
        Ok(())
    }
}

impl Preconditioner for AmgPreconditioner<'_> {
    /// `z = B r`: one cycle with a zero initial guess.
    fn apply(&mut self, r: &[f64], z: &mut [f64]) -> Result<()> {
        z.fill(0.0);
        self.cycle_from(0, r, z)
    }
}

fn smooth(level: &Level, b: &[f64], x: &mut [f64], tmp: &mut [f64], sweeps: usize) {
    l1_jacobi_sweeps_with(
        level.a(),
        level.a_policy(),
        level.l1_diag(),
        b,
        x,
        tmp,
        sweeps,
    );
}

fn cycle(levels: &[Level], work: &mut [LevelWork], cfg: &CycleConfig, b: &[f64], x: &mut [f64]) {
    let level = &levels[0];
    let (ws, coarser) = work.split_first_mut().expect("one workspace per level");

    if levels.len() == 1 {
        x.fill(0.0);
        smooth(level, b, x, &mut ws.tmp, cfg.coarsest_sweeps);
        return;
    }

    let p = level.p().expect("non-coarsest level has a prolongator");
    let r = level.r().expect("non-coarsest level has a restriction");

    smooth(level, b, x, &mut ws.tmp, cfg.pre_sweeps);

    spmv_into(level.a(), x, &mut ws.res, level.a_policy()).expect("level dimensions");
    for (ri, &bi) in ws.res.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    spmv_into(r, &ws.res, &mut ws.b_coarse, level.r_policy()).expect("level dimensions");

    ws.x_coarse.fill(0.0);
    let visits = match cfg.kind {
        CycleKind::W if levels.len() > 2 => 2,
        _ => 1,
    };
    for _ in 0..visits {
        cycle(&levels[1..], coarser, cfg, &ws.b_coarse, &mut ws.x_coarse);
    }

    spmv_into(p, &ws.x_coarse, &mut ws.res, level.p_policy()).expect("level dimensions");
    for (xi, &ci) in x.iter_mut().zip(&ws.res) {
        *xi += ci;
    }

    smooth(level, b, x, &mut ws.tmp, cfg.post_sweeps);
}

fn run(h: &Hierarchy, level: usize, b: &[f64], x: &[f64], cfg: CycleConfig) -> Result<Vec<f64>> {
    let mut pc = AmgPreconditioner::new(h, cfg)?;
    let mut out = x.to_vec();
    pc.cycle_from(level, b, &mut out)?;
    Ok(out)
}

/// One V-cycle from `level` (0 = finest) with initial guess `x`.
pub fn vcycle(h: &Hierarchy, level: usize, b: &[f64], x: &[f64], cfg: &CycleConfig) -> Result<Vec<f64>> {
    run(h, level, b, x, CycleConfig { kind: CycleKind::V, ..*cfg })
}

/// One W-cycle: two coarse visits wherever the next level is not the coarsest.
pub fn wcycle(h: &Hierarchy, level: usize, b: &[f64], x: &[f64], cfg: &CycleConfig) -> Result<Vec<f64>> {
    run(h, level, b, x, CycleConfig { kind: CycleKind::W, ..*cfg })
}
