use super::hash::HashRow;
use super::{transpose, CsrMatrix};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};

const ROWS_PER_TASK: usize = 512;

fn row_bound(a: &CsrMatrix, b: &CsrMatrix, i: usize) -> usize {
    let ub: usize = a.row(i).0.iter().map(|&k| b.row_nnz(k)).sum();
    ub.min(b.ncols())
}

/// `C = A B`.
pub fn spgemm(a: &CsrMatrix, b: &CsrMatrix) -> Result<CsrMatrix> {
    spgemm_with(a, b, Exec::auto())
}

/// Row-wise two-phase product: a symbolic pass counts the distinct columns
/// of every output row with a hash set, then a numeric pass accumulates the
/// values into the preallocated rows. Cancellation zeros are kept.
pub fn spgemm_with(a: &CsrMatrix, b: &CsrMatrix, exec: Exec) -> Result<CsrMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::dim("spgemm", a.ncols(), b.nrows()));
    }
    let m = a.nrows();

    let counts: Vec<Vec<usize>> = exec::map_blocks(exec, m, ROWS_PER_TASK, |rows| {
        let mut table = HashRow::new();
        rows.map(|i| {
            table.reset(row_bound(a, b, i));
            for &k in a.row(i).0 {
                for &j in b.row(k).0 {
                    table.touch(j);
                }
            }
            table.len()
        })
        .collect()
    });
    let mut row_ptr = Vec::with_capacity(m + 1);
    row_ptr.push(0usize);
    for c in counts.iter().flatten() {
        row_ptr.push(row_ptr.last().unwrap() + c);
    }
    let nnz = row_ptr[m];

    let mut col_idx = vec![0usize; nnz];
    let mut values = vec![0.0f64; nnz];
    {
        let mut tasks = Vec::with_capacity(m.div_ceil(ROWS_PER_TASK));
        let mut cols_rest: &mut [usize] = &mut col_idx;
        let mut vals_rest: &mut [f64] = &mut values;
        let mut start = 0;
        while start < m {
            let end = (start + ROWS_PER_TASK).min(m);
            let len = row_ptr[end] - row_ptr[start];
            let (c, cr) = std::mem::take(&mut cols_rest).split_at_mut(len);
            let (v, vr) = std::mem::take(&mut vals_rest).split_at_mut(len);
            cols_rest = cr;
            vals_rest = vr;
            tasks.push((start..end, c, v));
            start = end;
        }
        let row_ptr = &row_ptr;
        exec::for_each_item(exec, tasks, |(rows, cols, vals)| {
            let base = row_ptr[rows.start];
            let mut table = HashRow::new();
            for i in rows {
                table.reset(row_bound(a, b, i));
                let (acols, avals) = a.row(i);
                for (&k, &aik) in acols.iter().zip(avals) {
                    let (bcols, bvals) = b.row(k);
                    for (&j, &bkj) in bcols.iter().zip(bvals) {
                        table.add(j, aik * bkj);
                    }
                }
                let r = row_ptr[i] - base..row_ptr[i + 1] - base;
                table.drain_sorted(&mut cols[r.clone()], &mut vals[r]);
            }
        });
    }
    Ok(CsrMatrix::from_parts_unchecked(
        m,
        b.ncols(),
        row_ptr,
        col_idx,
        values,
    ))
}

/// Coarse operator `P^T (A P)` through the general product.
pub fn galerkin_triple(a: &CsrMatrix, p: &CsrMatrix) -> Result<CsrMatrix> {
    if !a.is_square() {
        return Err(Error::dim("galerkin_triple (A square)", a.nrows(), a.ncols()));
    }
    if p.nrows() != a.nrows() {
        return Err(Error::dim("galerkin_triple", a.nrows(), p.nrows()));
    }
    let ap = spgemm(a, p)?;
    spgemm(&transpose(p), &ap)
}
