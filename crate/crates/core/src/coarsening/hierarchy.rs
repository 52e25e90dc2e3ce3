use serde::{Deserialize, Serialize};

use super::{build_prolongator, galerkin_by_aggregates, pairwise_aggregate, restrict_vector};
use crate::error::{Error, Result};
use crate::matching::{build_weights, suitor_match};
use crate::sparse::{galerkin_triple, l1_diagonal, spgemm, transpose, CsrMatrix, LaneGroupPolicy};

/// Number of pairwise matching passes composed per level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AggregationMode {
    Pairwise,
    DoublePairwise,
}

impl AggregationMode {
    pub fn passes(self) -> usize {
        match self {
            AggregationMode::Pairwise => 1,
            AggregationMode::DoublePairwise => 2,
        }
    }
}

/// How coarse operators are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GalerkinPath {
    /// Direct summation over aggregates (requires one entry per prolongator row).
    Aggregates,
    /// Transpose plus two general SpGEMMs.
    General,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetupConfig {
    pub max_levels: usize,
    /// The coarsest matrix may have at most `coarse_factor · n^{1/3}` rows.
    pub coarse_factor: f64,
    pub aggregation: AggregationMode,
    pub galerkin: GalerkinPath,
}

impl Default for SetupConfig {
    fn default() -> Self {
        SetupConfig {
            max_levels: 40,
            coarse_factor: 40.0,
            aggregation: AggregationMode::DoublePairwise,
            galerkin: GalerkinPath::Aggregates,
        }
    }
}

impl SetupConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_levels == 0 {
            return Err(Error::InvalidConfig("max_levels must be at least 1".into()));
        }
        if !(self.coarse_factor.is_finite() && self.coarse_factor > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "coarse factor {} must be positive",
                self.coarse_factor
            )));
        }
        Ok(())
    }

    /// Size bound for the coarsest matrix of a problem with `n` unknowns.
    pub fn coarse_bound(&self, n: usize) -> f64 {
        self.coarse_factor * (n as f64).cbrt()
    }
}

/// Outcome of one pairwise pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassSummary {
    pub n: usize,
    pub n_c: usize,
    pub n_p: usize,
    pub n_s: usize,
    pub zero_weight_edges: usize,
}

/// Result of coarsening one level.
#[derive(Debug, Clone)]
pub struct CoarseStep {
    pub p: CsrMatrix,
    pub a_coarse: CsrMatrix,
    pub w_coarse: Vec<f64>,
    pub passes: Vec<PassSummary>,
}

impl CoarseStep {
    pub fn n_coarse(&self) -> usize {
        self.a_coarse.nrows()
    }
}

fn galerkin(a: &CsrMatrix, p: &CsrMatrix, path: GalerkinPath) -> Result<CsrMatrix> {
    match path {
        GalerkinPath::Aggregates => galerkin_by_aggregates(a, p),
        GalerkinPath::General => galerkin_triple(a, p),
    }
}

/// Up to `passes` rounds of weights → Suitor → pairwise aggregation →
/// prolongator, each on the coarse matrix and restricted vector of the
/// previous round. Stops early once a round matches nothing; if the first
/// round does, `P` is the identity.
///
/// The returned coarse matrix is accumulated round by round, which equals
/// `P^T A P` for the composed `P`.
pub fn coarsen(
    a: &CsrMatrix,
    w: &[f64],
    passes: usize,
    path: GalerkinPath,
) -> Result<CoarseStep> {
    if w.len() != a.nrows() {
        return Err(Error::dim("coarsen", a.nrows(), w.len()));
    }
    let mut p_total: Option<CsrMatrix> = None;
    let mut a_k = a.clone();
    let mut w_k = w.to_vec();
    let mut summaries = Vec::with_capacity(passes);

    for _ in 0..passes {
        let graph = build_weights(&a_k, &w_k)?;
        let matching = suitor_match(&graph);
        let agg = pairwise_aggregate(&matching, a_k.nrows())?;
        summaries.push(PassSummary {
            n: agg.n(),
            n_c: agg.n_c(),
            n_p: agg.n_p(),
            n_s: agg.n_s(),
            zero_weight_edges: graph.zero_denominators(),
        });
        if agg.n_p() == 0 {
            break;
        }
        let p = build_prolongator(&agg, &w_k)?;
        a_k = galerkin(&a_k, &p, path)?;
        w_k = restrict_vector(&p, &w_k)?;
        p_total = Some(match p_total {
            None => p,
            Some(prev) => spgemm(&prev, &p)?,
        });
    }

    Ok(CoarseStep {
        p: p_total.unwrap_or_else(|| CsrMatrix::identity(a.nrows())),
        a_coarse: a_k,
        w_coarse: w_k,
        passes: summaries,
    })
}

/// Two composed pairwise passes; aggregates of up to four vertices.
pub fn double_pairwise(a: &CsrMatrix, w: &[f64]) -> Result<CoarseStep> {
    coarsen(a, w, 2, GalerkinPath::Aggregates)
}

/// One level of the hierarchy. Every level but the coarsest carries the
/// composed prolongator to the next level and its transpose.
#[derive(Debug, Clone)]
pub struct Level {
    a: CsrMatrix,
    p: Option<CsrMatrix>,
    r: Option<CsrMatrix>,
    l1_diag: Vec<f64>,
    w: Vec<f64>,
    a_policy: LaneGroupPolicy,
    p_policy: LaneGroupPolicy,
    r_policy: LaneGroupPolicy,
}

impl Level {
    fn new(a: CsrMatrix, w: Vec<f64>, p: Option<CsrMatrix>) -> Result<Self> {
        let l1_diag = l1_diagonal(&a)?;
        let r = p.as_ref().map(transpose);
        let a_policy = LaneGroupPolicy::for_matrix(&a);
        let p_policy = p.as_ref().map(LaneGroupPolicy::for_matrix).unwrap_or_default();
        let r_policy = r.as_ref().map(LaneGroupPolicy::for_matrix).unwrap_or_default();
        Ok(Level {
            a,
            p,
            r,
            l1_diag,
            w,
            a_policy,
            p_policy,
            r_policy,
        })
    }

    pub fn a(&self) -> &CsrMatrix {
        &self.a
    }

    pub fn p(&self) -> Option<&CsrMatrix> {
        self.p.as_ref()
    }

    pub fn r(&self) -> Option<&CsrMatrix> {
        self.r.as_ref()
    }

    pub fn l1_diag(&self) -> &[f64] {
        &self.l1_diag
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn size(&self) -> usize {
        self.a.nrows()
    }

    pub fn a_policy(&self) -> LaneGroupPolicy {
        self.a_policy
    }

    pub fn p_policy(&self) -> LaneGroupPolicy {
        self.p_policy
    }

    pub fn r_policy(&self) -> LaneGroupPolicy {
        self.r_policy
    }
}

/// Setup bookkeeping.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HierarchyInfo {
    pub sizes: Vec<usize>,
    pub nnz: Vec<usize>,
    pub coarse_bound: f64,
    /// Coarsening stopped because a level could not be reduced.
    pub stalled: bool,
    pub passes: Vec<Vec<PassSummary>>,
}

#[derive(Debug, Clone)]
pub struct Hierarchy {
    levels: Vec<Level>,
    info: HierarchyInfo,
}

impl Hierarchy {
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k]
    }

    /// Number of levels.
    pub fn nl(&self) -> usize {
        self.levels.len()
    }

    pub fn info(&self) -> &HierarchyInfo {
        &self.info
    }

    pub fn fine_size(&self) -> usize {
        self.levels[0].size()
    }
}

/// Setup phase: coarsen until the matrix fits under the size bound, the
/// level cap is reached, or a level cannot be reduced.
pub fn build_hierarchy(a: &CsrMatrix, w: &[f64], cfg: &SetupConfig) -> Result<Hierarchy> {
    cfg.validate()?;
    if !a.is_square() {
        return Err(Error::dim("build_hierarchy (square)", a.nrows(), a.ncols()));
    }
    if w.len() != a.nrows() {
        return Err(Error::dim("build_hierarchy", a.nrows(), w.len()));
    }
    if let Some((row, col)) = a.pattern_asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let bound = cfg.coarse_bound(a.nrows());
    let mut info = HierarchyInfo {
        coarse_bound: bound,
        ..Default::default()
    };
    let mut levels = Vec::new();
    let mut a_k = a.clone();
    let mut w_k = w.to_vec();

    loop {
        let n_k = a_k.nrows();
        info.sizes.push(n_k);
        info.nnz.push(a_k.nnz());
        if n_k as f64 <= bound || levels.len() + 1 >= cfg.max_levels {
            levels.push(Level::new(a_k, w_k, None)?);
            break;
        }
        let step = coarsen(&a_k, &w_k, cfg.aggregation.passes(), cfg.galerkin)?;
        info.passes.push(step.passes.clone());
        if step.n_coarse() >= n_k {
            info.stalled = true;
            levels.push(Level::new(a_k, w_k, None)?);
            break;
        }
        levels.push(Level::new(a_k, w_k, Some(step.p))?);
        a_k = step.a_coarse;
        w_k = step.w_coarse;
    }
    Ok(Hierarchy { levels, info })
}

/// Number of levels, operator complexity and average coarsening ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HierarchyStats {
    pub nl: usize,
    /// `Σ_k nnz(A^k) / nnz(A^1)`.
    pub vcmplx: f64,
    /// `(1/nl) Σ_{k≥2} n(A^{k-1}) / n(A^k)`.
    pub cratio: f64,
}

impl HierarchyStats {
    pub fn from_sizes(sizes: &[usize], nnz: &[usize]) -> Self {
        let nl = sizes.len();
        let vcmplx = if nl == 0 || nnz[0] == 0 {
            0.0
        } else {
            nnz.iter().sum::<usize>() as f64 / nnz[0] as f64
        };
        let cratio = if nl == 0 {
            0.0
        } else {
            sizes
                .windows(2)
                .map(|w| w[0] as f64 / w[1] as f64)
                .sum::<f64>()
                / nl as f64
        };
        HierarchyStats { nl, vcmplx, cratio }
    }
}

pub fn hierarchy_stats(h: &Hierarchy) -> HierarchyStats {
    HierarchyStats::from_sizes(&h.info.sizes, &h.info.nnz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::poisson_1d;

    #[test]
    fn stats_formulas() {
        let s = HierarchyStats::from_sizes(&[100], &[460]);
        assert_eq!((s.nl, s.vcmplx, s.cratio), (1, 1.0, 0.0));
        let s = HierarchyStats::from_sizes(&[100, 25, 7], &[100, 30, 10]);
        assert_eq!(s.nl, 3);
        assert!((s.vcmplx - 1.4).abs() < 1e-15);
        assert!((s.cratio - (4.0 + 25.0 / 7.0) / 3.0).abs() < 1e-15);
    }

    #[test]
    fn small_problem_needs_no_coarsening() {
        let a = poisson_1d(50);
        let h = build_hierarchy(&a, &vec![1.0; 50], &SetupConfig::default()).unwrap();
        assert_eq!(h.nl(), 1);
        assert!(h.level(0).p().is_none());
        assert!((h.info().coarse_bound - 40.0 * 50f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn single_vertex_is_left_alone() {
        let a = CsrMatrix::diag(&[3.0]);
        let step = double_pairwise(&a, &[2.0]).unwrap();
        assert_eq!(step.p.nrows(), 1);
        assert_eq!(step.p.ncols(), 1);
        assert_eq!(step.a_coarse.to_dense(), vec![vec![3.0]]);
        assert_eq!(step.n_coarse(), 1);
    }

    #[test]
    fn one_d_poisson_double_pairwise() {
        let a = poisson_1d(16);
        let step = double_pairwise(&a, &[1.0; 16]).unwrap();
        assert!(step.n_coarse() >= 4);
        assert_eq!(step.p.nrows(), 16);
        assert!((0..16).all(|i| step.p.row_nnz(i) == 1));
        assert_eq!(step.passes.len(), 2);
    }

    #[test]
    fn level_cap_respected() {
        let a = poisson_1d(2000);
        let cfg = SetupConfig {
            max_levels: 2,
            coarse_factor: 1.0,
            ..Default::default()
        };
        let h = build_hierarchy(&a, &vec![1.0; 2000], &cfg).unwrap();
        assert_eq!(h.nl(), 2);
    }

    #[test]
    fn bad_config_and_input() {
        let a = poisson_1d(4);
        let cfg = SetupConfig {
            max_levels: 0,
            ..Default::default()
        };
        assert!(build_hierarchy(&a, &[1.0; 4], &cfg).is_err());
        assert!(build_hierarchy(&a, &[1.0; 3], &SetupConfig::default()).is_err());
        let u = CsrMatrix::from_dense(&[vec![2.0, -1.0], vec![0.0, 2.0]]);
        assert!(matches!(
            build_hierarchy(&u, &[1.0; 2], &SetupConfig::default()),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn stall_is_flagged() {
        // diagonal matrix: no edges, nothing to match
        let a = CsrMatrix::diag(&vec![2.0; 500]);
        let cfg = SetupConfig {
            coarse_factor: 1.0,
            ..Default::default()
        };
        let h = build_hierarchy(&a, &vec![1.0; 500], &cfg).unwrap();
        assert!(h.info().stalled);
        assert_eq!(h.nl(), 1);
    }
}
