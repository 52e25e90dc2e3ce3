use std::io;
use std::time::Instant;

use matchamg::blas::{axpy, dot, fused_axpy_pair, fused_triple_dot, xpby};
use matchamg::coarsening::double_pairwise;
use matchamg::sparse::{spmv_into, spmv_row_serial, LANE_GROUP_SIZES};
use matchamg::{CsrMatrix, LaneGroupPolicy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{BenchArgs, OutFormat};
use crate::problem::load;
use crate::report::{emit_rows, table};
use crate::{init_threads, Failure};

/// One timed kernel variant, in the fixed CSV/JSON column order.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub kernel: &'static str,
    pub variant: String,
    pub group_size: Option<usize>,
    pub rows: usize,
    pub nnz: usize,
    pub reps: usize,
    pub median_ms: f64,
    pub min_ms: f64,
    /// Largest relative deviation from the unfused or row-serial reference.
    pub max_rel_dev: f64,
}

fn time<F: FnMut()>(reps: usize, mut f: F) -> (f64, f64) {
    f();
    let mut t: Vec<f64> = (0..reps)
        .map(|_| {
            let s = Instant::now();
            f();
            s.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    t.sort_by(f64::total_cmp);
    (t[t.len() / 2], t[0])
}

fn rel_dev(x: &[f64], reference: &[f64]) -> f64 {
    let scale = reference.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = x
        .iter()
        .zip(reference)
        .fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

fn scalar_dev(x: f64, reference: f64) -> f64 {
    let d = (x - reference).abs();
    if reference == 0.0 {
        d
    } else {
        d / reference.abs()
    }
}

fn spmv_rows(kernel: &'static str, a: &CsrMatrix, x: &[f64], reps: usize, sweep: bool) -> Result<Vec<BenchRow>, Failure> {
    let mut rows = Vec::new();
    let mut reference = vec![0.0; a.nrows()];
    spmv_row_serial(a, x, &mut reference)?;
    let mut y = vec![0.0; a.nrows()];
    let (median, min) = time(reps, || spmv_row_serial(a, x, &mut y).expect("dimensions checked"));
    rows.push(BenchRow {
        kernel,
        variant: "row_serial".into(),
        group_size: None,
        rows: a.nrows(),
        nnz: a.nnz(),
        reps,
        median_ms: median,
        min_ms: min,
        max_rel_dev: 0.0,
    });
    let auto = LaneGroupPolicy::for_matrix(a);
    let mut policies: Vec<(String, LaneGroupPolicy)> = Vec::new();
    if sweep {
        for g in LANE_GROUP_SIZES {
            policies.push((format!("group_{g}"), auto.with_group_size(g)?));
        }
    }
    policies.push(("auto".into(), auto));
    for (variant, policy) in policies {
        let (median, min) = time(reps, || spmv_into(a, x, &mut y, policy).expect("dimensions checked"));
        rows.push(BenchRow {
            kernel,
            variant,
            group_size: Some(policy.group_size()),
            rows: a.nrows(),
            nnz: a.nnz(),
            reps,
            median_ms: median,
            min_ms: min,
            max_rel_dev: rel_dev(&y, &reference),
        });
    }
    Ok(rows)
}

pub fn run(args: &BenchArgs) -> Result<u8, Failure> {
    init_threads(args.common.threads)?;
    if args.reps == 0 {
        return Err(Failure::config("--reps must be at least 1"));
    }
    let problem = load(&args.common.source, args.common.seed)?;
    let a = &problem.a;
    let n = a.nrows();
    let reps = args.reps;
    let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
    let mut vec = || -> Vec<f64> { (0..n).map(|_| rng.random_range(-1.0..1.0)).collect() };
    let (x, r, v, q) = (vec(), vec(), vec(), vec());

    let mut rows = spmv_rows("spmv", a, &x, reps, true)?;

    if a.is_square() {
        let p = double_pairwise(a, &vec![1.0; n])?.p;
        let xc: Vec<f64> = x.iter().take(p.ncols()).copied().collect();
        rows.extend(spmv_rows("spmv_prolongator", &p, &xc, reps, false)?);
    }

    let unfused = (dot(&x, &r), dot(&x, &v), dot(&x, &q));
    let (median, min) = time(reps, || {
        std::hint::black_box((dot(&x, &r), dot(&x, &v), dot(&x, &q)));
    });
    let base = BenchRow {
        kernel: "pcg_dots",
        variant: "unfused".into(),
        group_size: None,
        rows: n,
        nnz: 0,
        reps,
        median_ms: median,
        min_ms: min,
        max_rel_dev: 0.0,
    };
    rows.push(base.clone());
    let fused = fused_triple_dot(&x, &r, &v, &q)?;
    let (median, min) = time(reps, || {
        std::hint::black_box(fused_triple_dot(&x, &r, &v, &q).expect("equal lengths"));
    });
    rows.push(BenchRow {
        variant: "fused".into(),
        median_ms: median,
        min_ms: min,
        max_rel_dev: scalar_dev(fused.0, unfused.0)
            .max(scalar_dev(fused.1, unfused.1))
            .max(scalar_dev(fused.2, unfused.2)),
        ..base
    });

    let (beta, alpha) = (0.37, -1.25);
    let (mut d_ref, mut u_ref) = (v.clone(), q.clone());
    xpby(&r, beta, &mut d_ref);
    axpy(alpha, &d_ref, &mut u_ref);
    let (mut d, mut u) = (v.clone(), q.clone());
    let (median, min) = time(reps, || {
        xpby(&r, beta, &mut d);
        axpy(alpha, &d, &mut u);
    });
    let base = BenchRow {
        kernel: "pcg_updates",
        variant: "unfused".into(),
        group_size: None,
        rows: n,
        nnz: 0,
        reps,
        median_ms: median,
        min_ms: min,
        max_rel_dev: 0.0,
    };
    rows.push(base.clone());
    let (mut d, mut u) = (v.clone(), q.clone());
    fused_axpy_pair(&mut d, &r, beta, &mut u, alpha);
    let dev = rel_dev(&d, &d_ref).max(rel_dev(&u, &u_ref));
    let (median, min) = time(reps, || fused_axpy_pair(&mut d, &r, beta, &mut u, alpha));
    rows.push(BenchRow {
        variant: "fused".into(),
        median_ms: median,
        min_ms: min,
        max_rel_dev: dev,
        ..base
    });

    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.common.out {
        OutFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.kernel.to_string(),
                        r.variant.clone(),
                        r.group_size.map_or("-".into(), |g| g.to_string()),
                        r.rows.to_string(),
                        r.nnz.to_string(),
                        format!("{:.4}", r.median_ms),
                        format!("{:.4}", r.min_ms),
                        format!("{:.1e}", r.max_rel_dev),
                    ]
                })
                .collect();
            table(
                &["kernel", "variant", "group", "rows", "nnz", "median(ms)", "min(ms)", "rel dev"],
                &cells,
                &mut out,
            )?;
        }
        format => emit_rows(&rows, format, &mut out)?,
    }
    Ok(0)
}
