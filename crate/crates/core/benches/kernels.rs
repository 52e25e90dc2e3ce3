use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use matchamg::blas::{fused_axpy_pair_with, fused_triple_dot_with};
use matchamg::coarsening::{double_pairwise, galerkin_by_aggregates_with};
use matchamg::problems::{gen_anisotropic_2d, gen_poisson_3d_randk, ones, AniSpec, RandPermSpec};
use matchamg::sparse::{spgemm_with, spmv_into_with, transpose, LANE_GROUP_SIZES};
use matchamg::{CsrMatrix, Exec, LaneGroupPolicy};

const MODES: [(&str, Exec); 2] = [("serial", Exec::Serial), ("parallel", Exec::Parallel)];

fn problems() -> Vec<(&'static str, CsrMatrix)> {
    vec![
        ("ani256", gen_anisotropic_2d(&AniSpec::new(256, 256, 0.001, std::f64::consts::PI / 8.0).unwrap()).unwrap()),
        (
            "randk40",
            gen_poisson_3d_randk(&RandPermSpec {
                nx: 40,
                ny: 40,
                nz: 40,
                sigma: 2.0,
                seed: 1,
            })
            .unwrap(),
        ),
    ]
}

fn spmv(c: &mut Criterion) {
    let mut g = c.benchmark_group("spmv");
    for (name, a) in problems() {
        let x = ones(a.ncols());
        let mut y = vec![0.0; a.nrows()];
        let policy = LaneGroupPolicy::for_matrix(&a);
        for (mode, exec) in MODES {
            g.bench_function(BenchmarkId::new(mode, name), |b| {
                b.iter(|| spmv_into_with(&a, black_box(&x), &mut y, policy, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn spmv_lane_groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("spmv_lane_group");
    let (_, a) = problems().swap_remove(0);
    let x = ones(a.ncols());
    let mut y = vec![0.0; a.nrows()];
    for size in LANE_GROUP_SIZES {
        let policy = LaneGroupPolicy::for_matrix(&a).with_group_size(size).unwrap();
        g.bench_function(BenchmarkId::from_parameter(size), |b| {
            b.iter(|| spmv_into_with(&a, black_box(&x), &mut y, policy, Exec::auto()).unwrap())
        });
    }
    g.finish();
}

fn galerkin(c: &mut Criterion) {
    let mut g = c.benchmark_group("galerkin");
    g.sample_size(20);
    for (name, a) in problems() {
        let p = double_pairwise(&a, &ones(a.nrows())).unwrap().p;
        let pt = transpose(&p);
        for (mode, exec) in MODES {
            g.bench_function(BenchmarkId::new(format!("aggregates/{mode}"), name), |b| {
                b.iter(|| galerkin_by_aggregates_with(&a, &p, exec).unwrap())
            });
            g.bench_function(BenchmarkId::new(format!("spgemm/{mode}"), name), |b| {
                b.iter(|| {
                    let ap = spgemm_with(&a, &p, exec).unwrap();
                    spgemm_with(&pt, &ap, exec).unwrap()
                })
            });
        }
    }
    g.finish();
}

fn vector_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("vector");
    let n = 1 << 20;
    let w: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
    let r: Vec<f64> = (0..n).map(|i| (i as f64 * 0.11).cos()).collect();
    let v = w.clone();
    let q = r.clone();
    let mut dir = w.clone();
    let mut acc = r.clone();
    for (mode, exec) in MODES {
        g.bench_function(BenchmarkId::new("fused_triple_dot", mode), |b| {
            b.iter(|| fused_triple_dot_with(black_box(&w), &r, &v, &q, exec).unwrap())
        });
        g.bench_function(BenchmarkId::new("fused_axpy_pair", mode), |b| {
            b.iter(|| fused_axpy_pair_with(&mut dir, black_box(&r), 0.5, &mut acc, -0.25, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, spmv, spmv_lane_groups, galerkin, vector_kernels);
criterion_main!(benches);
