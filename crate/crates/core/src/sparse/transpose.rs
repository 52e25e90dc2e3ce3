use super::CsrMatrix;

/// `A^T` by a counting sort over column indices. Rows of the result come
/// out sorted because source rows are scanned in order.
pub fn transpose(a: &CsrMatrix) -> CsrMatrix {
    let (m, n) = (a.nrows(), a.ncols());
    let mut row_ptr = vec![0usize; n + 1];
    for &j in a.col_idx() {
        row_ptr[j + 1] += 1;
    }
    for j in 0..n {
        row_ptr[j + 1] += row_ptr[j];
    }
    let mut next = row_ptr[..n].to_vec();
    let mut col_idx = vec![0usize; a.nnz()];
    let mut values = vec![0.0; a.nnz()];
    for i in 0..m {
        let (cols, vals) = a.row(i);
        for (&j, &v) in cols.iter().zip(vals) {
            let dst = next[j];
            col_idx[dst] = i;
            values[dst] = v;
            next[j] += 1;
        }
    }
    CsrMatrix::from_parts_unchecked(n, m, row_ptr, col_idx, values)
}
