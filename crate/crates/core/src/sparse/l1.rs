use super::CsrMatrix;
use crate::error::{Error, Result};

/// Diagonal of the ℓ1-Jacobi smoother: `d_i = a_ii + Σ_{j≠i} |a_ij|`.
pub fn l1_diagonal(a: &CsrMatrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::dim("l1_diagonal (square)", a.nrows(), a.ncols()));
    }
    (0..a.nrows())
        .map(|i| {
            let (cols, vals) = a.row(i);
            let mut diag = None;
            let mut off = 0.0;
            for (&j, &v) in cols.iter().zip(vals) {
                if j == i {
                    diag = Some(v);
                } else {
                    off += v.abs();
                }
            }
            match diag {
                Some(d) if d != 0.0 => Ok(d + off),
                _ => Err(Error::ZeroDiagonal { row: i }),
            }
        })
        .collect()
}
