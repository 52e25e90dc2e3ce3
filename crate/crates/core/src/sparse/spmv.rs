use super::{CsrMatrix, LaneGroupPolicy, MAX_LANE_GROUP};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};

/// `y = A x` under the given lane-group policy.
pub fn spmv(a: &CsrMatrix, x: &[f64], policy: LaneGroupPolicy) -> Result<Vec<f64>> {
    let mut y = vec![0.0; a.nrows()];
    spmv_into(a, x, &mut y, policy)?;
    Ok(y)
}

/// `y = A x` into a caller-owned buffer.
pub fn spmv_into(a: &CsrMatrix, x: &[f64], y: &mut [f64], policy: LaneGroupPolicy) -> Result<()> {
    spmv_into_with(a, x, y, policy, Exec::auto())
}

pub fn spmv_into_with(
    a: &CsrMatrix,
    x: &[f64],
    y: &mut [f64],
    policy: LaneGroupPolicy,
    exec: Exec,
) -> Result<()> {
    if x.len() != a.ncols() {
        return Err(Error::dim("spmv", a.ncols(), x.len()));
    }
    if y.len() != a.nrows() {
        return Err(Error::dim("spmv output", a.nrows(), y.len()));
    }
    exec::for_each_block_mut(exec, y, policy.rows_per_task(), |start, ys| match policy.group_size() {
        1 => rows_single(a, x, start, ys),
        2 => rows_lanes::<2>(a, x, start, ys),
        4 => rows_lanes::<4>(a, x, start, ys),
        8 => rows_lanes::<8>(a, x, start, ys),
        16 => rows_lanes::<16>(a, x, start, ys),
        _ => rows_lanes::<MAX_LANE_GROUP>(a, x, start, ys),
    });
    Ok(())
}

/// Reference row-by-row product with a single accumulator, never parallel.
pub fn spmv_row_serial(a: &CsrMatrix, x: &[f64], y: &mut [f64]) -> Result<()> {
    if x.len() != a.ncols() {
        return Err(Error::dim("spmv", a.ncols(), x.len()));
    }
    if y.len() != a.nrows() {
        return Err(Error::dim("spmv output", a.nrows(), y.len()));
    }
    for (i, yi) in y.iter_mut().enumerate() {
        let (cols, vals) = a.row(i);
        *yi = row_dot_single(cols, vals, x);
    }
    Ok(())
}

#[inline]
fn row_dot_single(cols: &[usize], vals: &[f64], x: &[f64]) -> f64 {
    cols.iter().zip(vals).map(|(&j, &v)| v * x[j]).sum()
}

fn rows_single(a: &CsrMatrix, x: &[f64], start: usize, ys: &mut [f64]) {
    for (k, yi) in ys.iter_mut().enumerate() {
        let (cols, vals) = a.row(start + k);
        *yi = row_dot_single(cols, vals, x);
    }
}

fn rows_lanes<const G: usize>(a: &CsrMatrix, x: &[f64], start: usize, ys: &mut [f64]) {
    for (k, yi) in ys.iter_mut().enumerate() {
        let (cols, vals) = a.row(start + k);
        *yi = row_dot_lanes::<G>(cols, vals, x);
    }
}

/// Lane `l` accumulates entries `l, l+G, l+2G, ...` of the row; the lanes
/// are then combined by tree halving.
#[inline]
fn row_dot_lanes<const G: usize>(cols: &[usize], vals: &[f64], x: &[f64]) -> f64 {
    if cols.len() <= 1 {
        return row_dot_single(cols, vals, x);
    }
    let mut lanes = [0.0f64; G];
    let mut cc = cols.chunks_exact(G);
    let mut vc = vals.chunks_exact(G);
    for (c, v) in (&mut cc).zip(&mut vc) {
        for l in 0..G {
            lanes[l] += v[l] * x[c[l]];
        }
    }
    for (l, (&j, &v)) in cc.remainder().iter().zip(vc.remainder()).enumerate() {
        lanes[l] += v * x[j];
    }
    let mut width = G;
    while width > 1 {
        width /= 2;
        for l in 0..width {
            lanes[l] += lanes[l + width];
        }
    }
    lanes[0]
}
