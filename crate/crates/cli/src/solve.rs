use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use matchamg::{
    build_hierarchy, hierarchy_stats, pcg_solve, AggregationMode, AmgPreconditioner, CycleConfig, CycleKind,
    SetupConfig, SolveConfig, SolveReport,
};
use serde::Serialize;

use crate::args::{AggArg, CycleArg, OutFormat, SolveArgs};
use crate::problem::{load, smooth_vector};
use crate::report::{emit_rows, table};
use crate::{init_threads, Failure, EXIT_NOT_CONVERGED};

/// One solve, in the fixed CSV/JSON column order.
#[derive(Debug, Serialize)]
pub struct SolveRow {
    pub problem: String,
    pub n: usize,
    pub nnz: usize,
    pub cycle: &'static str,
    pub tbuild_ms: f64,
    pub it: usize,
    pub tsolve_ms: f64,
    pub relres: f64,
    pub converged: bool,
    pub nl: usize,
    pub vcmplx: f64,
    pub cratio: f64,
    pub threads: usize,
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    #[serde(flatten)]
    row: &'a SolveRow,
    level_sizes: &'a [usize],
    residual_history: &'a [f64],
}

pub fn run(args: &SolveArgs) -> Result<u8, Failure> {
    init_threads(args.common.threads)?;
    let problem = load(&args.common.source, args.common.seed)?;
    let a = &problem.a;
    let n = a.nrows();
    let w = smooth_vector(&args.wvec, n)?;

    let setup = SetupConfig {
        max_levels: args.max_levels,
        coarse_factor: args.coarse_factor,
        aggregation: match args.agg {
            AggArg::Pair => AggregationMode::Pairwise,
            AggArg::Double => AggregationMode::DoublePairwise,
        },
        ..Default::default()
    };
    let cycle = CycleConfig {
        kind: match args.cycle {
            CycleArg::V => CycleKind::V,
            CycleArg::W => CycleKind::W,
        },
        pre_sweeps: args.pre,
        post_sweeps: args.post,
        coarsest_sweeps: args.coarsest_sweeps,
    };
    let solve = SolveConfig {
        rtol: args.rtol,
        itmax: args.itmax,
        ..Default::default()
    };
    setup.validate()?;
    cycle.validate()?;
    solve.validate()?;

    let t = Instant::now();
    let h = build_hierarchy(a, &w, &setup)?;
    let tbuild = t.elapsed().as_secs_f64() * 1e3;
    let stats = hierarchy_stats(&h);

    let mut pc = AmgPreconditioner::new(&h, cycle)?;
    let b = vec![1.0; n];
    let (u, mut report) = pcg_solve(a, &mut pc, &b, &vec![0.0; n], &solve)?;
    report.setup_ms = tbuild;

    let row = SolveRow {
        problem: problem.label.clone(),
        n,
        nnz: a.nnz(),
        cycle: match cycle.kind {
            CycleKind::V => "V",
            CycleKind::W => "W",
        },
        tbuild_ms: tbuild,
        it: report.iterations,
        tsolve_ms: report.solve_ms,
        relres: report.final_relres,
        converged: report.converged,
        nl: stats.nl,
        vcmplx: stats.vcmplx,
        cratio: stats.cratio,
        threads: matchamg::exec::current_threads(),
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.common.out {
        OutFormat::Table => print_table(&row, &h.info().sizes, &mut out)?,
        OutFormat::Csv => emit_rows(std::slice::from_ref(&row), OutFormat::Csv, &mut out)?,
        OutFormat::Json => {
            let j = JsonReport {
                row: &row,
                level_sizes: &h.info().sizes,
                residual_history: &report.residual_history,
            };
            serde_json::to_writer_pretty(&mut out, &j).map_err(|e| Failure::io(e.to_string()))?;
            writeln!(out)?;
        }
    }
    if h.info().stalled {
        eprintln!("warning: coarsening stalled at level {}", h.nl());
    }
    if let Some(path) = &args.history {
        write_history(path, &report)?;
    }
    if let Some(path) = &args.save {
        write_vector(path, &u)?;
    }
    Ok(if report.converged { 0 } else { EXIT_NOT_CONVERGED })
}

fn print_table(row: &SolveRow, sizes: &[usize], out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "problem {}  n={}  nnz={}  threads={}", row.problem, row.n, row.nnz, row.threads)?;
    writeln!(
        out,
        "hierarchy nl={}  Vcmplx={:.3}  cratio={:.3}  sizes={sizes:?}",
        row.nl, row.vcmplx, row.cratio
    )?;
    table(
        &["cycle", "tbuild(ms)", "it", "tsolve(ms)", "relres", "converged"],
        &[vec![
            row.cycle.to_string(),
            format!("{:.1}", row.tbuild_ms),
            row.it.to_string(),
            format!("{:.1}", row.tsolve_ms),
            format!("{:.3e}", row.relres),
            row.converged.to_string(),
        ]],
        out,
    )?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn write_history(path: &Path, report: &SolveReport) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["iteration", "residual", "relres"])
        .map_err(|e| Failure::io(e.to_string()))?;
    let r0 = report.residual_history.first().copied().unwrap_or(0.0);
    for (i, r) in report.residual_history.iter().enumerate() {
        let rel = if r0 > 0.0 { r / r0 } else { 0.0 };
        w.write_record([i.to_string(), format!("{r:.16e}"), format!("{rel:.16e}")])
            .map_err(|e| Failure::io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn write_vector(path: &Path, u: &[f64]) -> Result<(), Failure> {
    let mut w = create(path)?;
    for v in u {
        writeln!(w, "{v:.16e}")?;
    }
    w.flush()?;
    Ok(())
}
