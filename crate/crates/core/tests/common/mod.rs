#![allow(dead_code)]

use matchamg::coarsening::Aggregation;
use matchamg::matching::WeightedGraph;
use matchamg::CsrMatrix;
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

/// Sparse symmetric matrix with random-sign off-diagonals and a strictly
/// dominant diagonal.
pub fn random_sparse_spd<R: Rng>(rng: &mut R, n: usize, density: f64) -> CsrMatrix {
    let mut t = Vec::new();
    let mut off = vec![0.0f64; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < density {
                let v: f64 = rng.random_range(-1.0..1.0);
                if v == 0.0 {
                    continue;
                }
                t.push((i, j, v));
                t.push((j, i, v));
                off[i] += v.abs();
                off[j] += v.abs();
            }
        }
    }
    for (i, s) in off.iter().enumerate() {
        t.push((i, i, s + rng.random_range(0.05..1.0)));
    }
    CsrMatrix::from_triplets(n, n, t).unwrap()
}

/// Dense `M Mᵀ + δ I` with a random sparsity mask applied to `M`; in general
/// not diagonally dominant.
pub fn random_gram_spd<R: Rng>(rng: &mut R, n: usize) -> CsrMatrix {
    let m = DMatrix::<f64>::from_fn(n, n, |_, _| {
        if rng.random::<f64>() < 0.4 {
            rng.random_range(-1.0..1.0)
        } else {
            0.0
        }
    });
    let g = &m * m.transpose() + DMatrix::<f64>::identity(n, n) * 0.1;
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // average the mirrored entries so the stored matrix is exactly symmetric
            let v = 0.5 * (g[(i, j)] + g[(j, i)]);
            if v != 0.0 {
                t.push((i, j, v));
            }
        }
    }
    CsrMatrix::from_triplets(n, n, t).unwrap()
}

pub fn random_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Entries bounded away from zero, random sign.
pub fn random_nonzero_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let m = rng.random_range(0.1..2.0);
            if rng.random::<bool>() {
                m
            } else {
                -m
            }
        })
        .collect()
}

/// Random graph on `n` vertices with positive weights.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < density {
                edges.push((i, j, rng.random_range(0.01..10.0)));
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

/// Random partition into aggregates of one or two vertices, ids ordered by
/// smallest member.
pub fn random_aggregation<R: Rng>(rng: &mut R, n: usize) -> Aggregation {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut k = 0;
    while k < n {
        if k + 1 < n && rng.random::<f64>() < 0.6 {
            groups.push(vec![perm[k], perm[k + 1]]);
            k += 2;
        } else {
            groups.push(vec![perm[k]]);
            k += 1;
        }
    }
    groups.sort_by_key(|g| *g.iter().min().unwrap());
    let mut agg_of = vec![0; n];
    for (a, g) in groups.iter().enumerate() {
        for &i in g {
            agg_of[i] = a;
        }
    }
    Aggregation::from_map(agg_of).unwrap()
}

pub fn to_na(a: &CsrMatrix) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(a.nrows(), a.ncols());
    for i in 0..a.nrows() {
        let (cols, vals) = a.row(i);
        for (&j, &v) in cols.iter().zip(vals) {
            m[(i, j)] = v;
        }
    }
    m
}

pub fn dense_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(&x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

pub fn dense_transpose(a: &[Vec<f64>], ncols: usize) -> Vec<Vec<f64>> {
    (0..ncols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &[Vec<f64>]) -> f64 {
    a.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
}

pub fn vec_rel_diff(x: &[f64], y: &[f64]) -> f64 {
    let num = x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    let den = y.iter().map(|b| b * b).sum::<f64>().sqrt();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Plain CG from the textbook recurrence, returning every iterate.
pub fn textbook_cg(a: &CsrMatrix, b: &[f64], iters: usize, rtol: f64) -> Vec<Vec<f64>> {
    let n = b.len();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let bnorm = dot(b, b).sqrt();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut rr = dot(&r, &r);
    let mut out = vec![x.clone()];
    for _ in 0..iters {
        if rr.sqrt() <= rtol * bnorm {
            break;
        }
        let ap = a.mul_vec(&p).unwrap();
        let alpha = rr / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_new = dot(&r, &r);
        let beta = rr_new / rr;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rr = rr_new;
        out.push(x.clone());
    }
    out
}

/// `(xᵀ A x)^{1/2}`.
pub fn a_norm(a: &CsrMatrix, x: &[f64]) -> f64 {
    let ax = a.mul_vec(x).unwrap();
    x.iter().zip(&ax).map(|(p, q)| p * q).sum::<f64>().sqrt()
}

/// Largest per-iterate relative drift of textbook CG when every other entry
/// of `b` is moved by one ulp. Measures how strongly rounding is amplified
/// along the trajectory, independently of the solver under test.
pub fn cg_rounding_sensitivity(a: &CsrMatrix, b: &[f64], iters: usize) -> f64 {
    let nudged: Vec<f64> = b
        .iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { f64::from_bits(x.to_bits() + 1) } else { x })
        .collect();
    let p = textbook_cg(a, b, iters, 0.0);
    let q = textbook_cg(a, &nudged, iters, 0.0);
    p.iter()
        .zip(&q)
        .skip(1)
        .map(|(u, v)| vec_rel_diff(u, v))
        .fold(0.0, f64::max)
}
