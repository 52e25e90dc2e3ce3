use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::sparse::{transpose, CsrMatrix, HashRow};

const COARSE_ROWS_PER_TASK: usize = 256;

/// `P^T A P` for a prolongator with exactly one entry per row, summing
/// `p_i a_ij p_j` straight from the aggregate map instead of going through
/// two general products.
pub fn galerkin_by_aggregates(a: &CsrMatrix, p: &CsrMatrix) -> Result<CsrMatrix> {
    galerkin_by_aggregates_with(a, p, Exec::auto())
}

pub fn galerkin_by_aggregates_with(a: &CsrMatrix, p: &CsrMatrix, exec: Exec) -> Result<CsrMatrix> {
    if !a.is_square() {
        return Err(Error::dim("galerkin_by_aggregates (A square)", a.nrows(), a.ncols()));
    }
    if p.nrows() != a.nrows() {
        return Err(Error::dim("galerkin_by_aggregates", a.nrows(), p.nrows()));
    }
    if let Some(row) = (0..p.nrows()).find(|&i| p.row_nnz(i) != 1) {
        return Err(Error::NotPiecewiseConstant {
            row,
            nnz: p.row_nnz(row),
        });
    }
    let agg = p.col_idx();
    let pv = p.values();
    let members = transpose(p);
    let nc = p.ncols();

    let blocks = exec::map_blocks(exec, nc, COARSE_ROWS_PER_TASK, |rows| {
        let mut table = HashRow::new();
        let mut counts = Vec::with_capacity(rows.len());
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for big_i in rows {
            let mem = members.row(big_i).0;
            let bound: usize = mem.iter().map(|&i| a.row_nnz(i)).sum();
            table.reset(bound);
            for &i in mem {
                let (acols, avals) = a.row(i);
                for (&j, &aij) in acols.iter().zip(avals) {
                    table.add(agg[j], pv[i] * aij * pv[j]);
                }
            }
            counts.push(table.len());
            table.drain_sorted_append(&mut cols, &mut vals);
        }
        (counts, cols, vals)
    });

    let mut row_ptr = Vec::with_capacity(nc + 1);
    row_ptr.push(0usize);
    let mut col_idx = Vec::new();
    let mut values = Vec::new();
    for (counts, cols, vals) in blocks {
        for c in counts {
            row_ptr.push(row_ptr.last().unwrap() + c);
        }
        col_idx.extend(cols);
        values.extend(vals);
    }
    Ok(CsrMatrix::from_parts_unchecked(nc, nc, row_ptr, col_idx, values))
}
