//! Iteration counts and hierarchy statistics of V- and W-cycle PCG on the
//! anisotropic model problem under grid refinement.

use std::time::Instant;

use matchamg::krylov::pcg_solve;
use matchamg::problems::{gen_anisotropic_2d, ones, AniSpec};
use matchamg::{build_hierarchy, hierarchy_stats, AmgPreconditioner, CycleConfig, CycleKind, SetupConfig, SolveConfig};

fn main() -> matchamg::Result<()> {
    let theta: f64 = std::env::args().nth(1).map_or(0.0, |s| s.parse().unwrap());
    println!("theta={theta}");
    println!("{:>6} {:>4} {:>7} {:>7} {:>6} {:>6} {:>9} {:>9}", "grid", "nl", "vcmplx", "cratio", "it(V)", "it(W)", "setup ms", "solveV ms");
    for m in [64usize, 128, 256] {
        let a = gen_anisotropic_2d(&AniSpec::new(m, m, 0.001, theta)?)?;
        let b = ones(a.nrows());
        let t = Instant::now();
        let h = build_hierarchy(&a, &ones(a.nrows()), &SetupConfig::default())?;
        let setup = t.elapsed().as_secs_f64() * 1e3;
        let s = hierarchy_stats(&h);
        let mut its = Vec::new();
        let mut tsolve = 0.0;
        for kind in [CycleKind::V, CycleKind::W] {
            let mut pc = AmgPreconditioner::new(&h, CycleConfig::with_kind(kind))?;
            let (_, rep) = pcg_solve(&a, &mut pc, &b, &vec![0.0; a.nrows()], &SolveConfig::default())?;
            assert!(rep.converged);
            if kind == CycleKind::V {
                tsolve = rep.solve_ms;
            }
            its.push(rep.iterations);
        }
        println!(
            "{:>6} {:>4} {:>7.3} {:>7.3} {:>6} {:>6} {:>9.1} {:>9.1}   sizes {:?}",
            format!("{m}^2"), s.nl, s.vcmplx, s.cratio, its[0], its[1], setup, tsolve, h.info().sizes
        );
    }
    Ok(())
}
