//! Dense vector kernels used by the smoother and the Krylov solver.
//!
//! Reductions are blocked: each block of [`DOT_BLOCK`] entries is summed in
//! index order and the block partials are then summed in block order. The
//! block layout does not depend on the execution mode, so serial and
//! parallel reductions agree bitwise.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};

pub const DOT_BLOCK: usize = 2048;
const AXPY_BLOCK: usize = 8192;

fn block_dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    dot_with(x, y, Exec::auto())
}

pub fn dot_with(x: &[f64], y: &[f64], exec: Exec) -> f64 {
    assert_eq!(x.len(), y.len(), "dot: length mismatch");
    exec::map_blocks(exec, x.len(), DOT_BLOCK, |r| {
        block_dot(&x[r.clone()], &y[r])
    })
    .into_iter()
    .sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// `(w·r, w·v, w·q)` in a single pass over `w`.
pub fn fused_triple_dot(w: &[f64], r: &[f64], v: &[f64], q: &[f64]) -> Result<(f64, f64, f64)> {
    fused_triple_dot_with(w, r, v, q, Exec::auto())
}

pub fn fused_triple_dot_with(
    w: &[f64],
    r: &[f64],
    v: &[f64],
    q: &[f64],
    exec: Exec,
) -> Result<(f64, f64, f64)> {
    let n = w.len();
    for len in [r.len(), v.len(), q.len()] {
        if len != n {
            return Err(Error::dim("fused_triple_dot", n, len));
        }
    }
    let parts = exec::map_blocks(exec, n, DOT_BLOCK, |range| {
        let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
        for i in range {
            let wi = w[i];
            a += wi * r[i];
            b += wi * v[i];
            c += wi * q[i];
        }
        (a, b, c)
    });
    Ok(parts
        .into_iter()
        .fold((0.0, 0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1, acc.2 + p.2)))
}

/// `dir ← src + beta·dir`, then `acc ← acc + alpha·dir`, in one pass.
///
/// Each entry of `dir` is used for the second update right after it is
/// written, which is what makes the pair fusable.
pub fn fused_axpy_pair(dir: &mut [f64], src: &[f64], beta: f64, acc: &mut [f64], alpha: f64) {
    fused_axpy_pair_with(dir, src, beta, acc, alpha, Exec::auto())
}

pub fn fused_axpy_pair_with(
    dir: &mut [f64],
    src: &[f64],
    beta: f64,
    acc: &mut [f64],
    alpha: f64,
    exec: Exec,
) {
    assert_eq!(dir.len(), src.len(), "fused_axpy_pair: length mismatch");
    assert_eq!(dir.len(), acc.len(), "fused_axpy_pair: length mismatch");
    let mut pairs: Vec<(usize, &mut [f64], &mut [f64])> = dir
        .chunks_mut(AXPY_BLOCK)
        .zip(acc.chunks_mut(AXPY_BLOCK))
        .enumerate()
        .map(|(b, (d, a))| (b * AXPY_BLOCK, d, a))
        .collect();
    let body = |(start, d, a): (usize, &mut [f64], &mut [f64])| {
        let s = &src[start..start + d.len()];
        for ((di, ai), &si) in d.iter_mut().zip(a.iter_mut()).zip(s) {
            *di = si + beta * *di;
            *ai += alpha * *di;
        }
    };
    if pairs.len() == 1 {
        body(pairs.pop().unwrap());
    } else {
        exec::for_each_item(exec, pairs, body);
    }
}

/// `y ← y + alpha·x`.
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    assert_eq!(x.len(), y.len(), "axpy: length mismatch");
    exec::for_each_block_mut(Exec::auto(), y, AXPY_BLOCK, |start, ys| {
        for (yi, &xi) in ys.iter_mut().zip(&x[start..]) {
            *yi += alpha * xi;
        }
    });
}

/// `y ← x + beta·y`.
pub fn xpby(x: &[f64], beta: f64, y: &mut [f64]) {
    assert_eq!(x.len(), y.len(), "xpby: length mismatch");
    exec::for_each_block_mut(Exec::auto(), y, AXPY_BLOCK, |start, ys| {
        for (yi, &xi) in ys.iter_mut().zip(&x[start..]) {
            *yi = xi + beta * *yi;
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triple_dot_hand_cases() {
        let o = [1.0; 3];
        assert_eq!(fused_triple_dot(&o, &o, &o, &o).unwrap(), (3.0, 3.0, 3.0));
        let got = fused_triple_dot(&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0], &[7.0, 8.0]).unwrap();
        assert_eq!(got, (11.0, 17.0, 23.0));
    }

    #[test]
    fn triple_dot_length_mismatch() {
        assert!(fused_triple_dot(&[1.0], &[1.0], &[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn triple_dot_matches_standalone_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 10_007;
        let mk = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
        };
        let (w, r, v, q) = (mk(&mut rng), mk(&mut rng), mk(&mut rng), mk(&mut rng));
        for exec in [Exec::Serial, Exec::Parallel] {
            let (a, b, c) = fused_triple_dot_with(&w, &r, &v, &q, exec).unwrap();
            assert_eq!(a, dot_with(&w, &r, Exec::Serial));
            assert_eq!(b, dot_with(&w, &v, Exec::Serial));
            assert_eq!(c, dot_with(&w, &q, Exec::Serial));
        }
    }

    #[test]
    fn axpy_pair_zero_coefficients() {
        let mut d = vec![1.0, 2.0];
        let mut u = vec![3.0, 4.0];
        fused_axpy_pair(&mut d, &[1.0, 2.0], 0.0, &mut u, 0.0);
        assert_eq!(d, vec![1.0, 2.0]);
        assert_eq!(u, vec![3.0, 4.0]);
    }

    #[test]
    fn axpy_pair_hand_case() {
        let mut d = vec![1.0, -1.0];
        let mut u = vec![0.5, 0.25];
        fused_axpy_pair(&mut d, &[2.0, 3.0], -0.5, &mut u, 2.0);
        // d = (2 - 0.5, 3 + 0.5), u = (0.5 + 3, 0.25 + 7)
        assert_eq!(d, vec![1.5, 3.5]);
        assert_eq!(u, vec![3.5, 7.25]);
    }
}
