use crate::error::{Error, Result};
use crate::sparse::{spmv_into, CsrMatrix, LaneGroupPolicy};

/// `k` sweeps of `x ← x + D_ℓ1^{-1} (b - A x)`.
pub fn l1_jacobi_sweeps(a: &CsrMatrix, d: &[f64], b: &[f64], x: &mut [f64], k: usize) -> Result<()> {
    let n = a.nrows();
    for (name, len) in [("l1 diagonal", d.len()), ("rhs", b.len()), ("iterate", x.len())] {
        if len != n {
            return Err(Error::dim(name, n, len));
        }
    }
    let mut tmp = vec![0.0; n];
    l1_jacobi_sweeps_with(a, LaneGroupPolicy::for_matrix(a), d, b, x, &mut tmp, k);
    Ok(())
}

/// Workspace variant; `tmp` has the length of `x`. Dimensions are trusted.
pub fn l1_jacobi_sweeps_with(
    a: &CsrMatrix,
    policy: LaneGroupPolicy,
    d: &[f64],
    b: &[f64],
    x: &mut [f64],
    tmp: &mut [f64],
    k: usize,
) {
    for _ in 0..k {
        spmv_into(a, x, tmp, policy).expect("smoother dimensions checked by caller");
        for (((xi, &ti), &bi), &di) in x.iter_mut().zip(tmp.iter()).zip(b).zip(d) {
            *xi += (bi - ti) / di;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::{l1_diagonal, transpose};

    #[test]
    fn zero_sweeps_is_identity() {
        let a = CsrMatrix::from_dense(&[vec![2.0, -1.0], vec![-1.0, 2.0]]);
        let mut x = vec![0.25, -4.0];
        l1_jacobi_sweeps(&a, &[3.0, 3.0], &[1.0, 1.0], &mut x, 0).unwrap();
        assert_eq!(x, vec![0.25, -4.0]);
    }

    #[test]
    fn one_sweep_by_hand() {
        let a = CsrMatrix::from_dense(&[vec![2.0, -1.0], vec![-1.0, 2.0]]);
        let d = l1_diagonal(&a).unwrap();
        let mut x = vec![0.0; 2];
        l1_jacobi_sweeps(&a, &d, &[1.0, 1.0], &mut x, 1).unwrap();
        assert_eq!(x, vec![1.0 / 3.0, 1.0 / 3.0]);
    }

    #[test]
    fn transposed_smoother_path_agrees_exactly() {
        // Post-smoothing applies M^{-T}; with a diagonal M it is the same routine.
        let a = CsrMatrix::from_dense(&[
            vec![4.0, -1.0, -0.5],
            vec![-1.0, 3.0, 0.0],
            vec![-0.5, 0.0, 2.0],
        ]);
        let at = transpose(&a);
        let b = [1.0, -2.0, 0.5];
        let mut x1 = vec![0.1, 0.2, 0.3];
        let mut x2 = x1.clone();
        l1_jacobi_sweeps(&a, &l1_diagonal(&a).unwrap(), &b, &mut x1, 3).unwrap();
        l1_jacobi_sweeps(&at, &l1_diagonal(&at).unwrap(), &b, &mut x2, 3).unwrap();
        assert_eq!(x1, x2);
    }

    #[test]
    fn dimension_mismatch() {
        let a = CsrMatrix::identity(2);
        let mut x = vec![0.0; 2];
        assert!(l1_jacobi_sweeps(&a, &[1.0], &[1.0, 1.0], &mut x, 1).is_err());
    }
}
