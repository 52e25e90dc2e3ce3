//! Compressed sparse row storage and the kernels built on it.

mod hash;
mod l1;
mod policy;
mod spgemm;
mod spmv;
mod transpose;

pub(crate) use hash::HashRow;
pub use l1::l1_diagonal;
pub use policy::{LaneGroupPolicy, LANE_GROUP_SIZES, MAX_LANE_GROUP};
pub use spgemm::{galerkin_triple, spgemm, spgemm_with};
pub use spmv::{spmv, spmv_into, spmv_into_with, spmv_row_serial};
pub use transpose::transpose;

use crate::error::{Error, Result};

/// A sparse matrix in CSR format.
///
/// Column indices are strictly increasing within each row, so there are no
/// duplicate entries. Explicit zeros are allowed and kept.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Build a matrix from raw CSR arrays, checking every structural invariant.
    pub fn new(
        nrows: usize,
        ncols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        let m = CsrMatrix {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        };
        m.validate()?;
        Ok(m)
    }

    /// Kernels that construct sorted output by design go through here.
    pub(crate) fn from_parts_unchecked(
        nrows: usize,
        ncols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Self {
        let m = CsrMatrix {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    /// Assemble from `(row, col, value)` triplets in any order; duplicates are summed.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut t: Vec<(usize, usize, f64)> = triplets.into_iter().collect();
        for &(i, j, _) in &t {
            if i >= nrows || j >= ncols {
                return Err(Error::InvalidCsr(format!(
                    "triplet ({i}, {j}) outside {nrows}x{ncols}"
                )));
            }
        }
        t.sort_by_key(|e| (e.0, e.1));
        let mut row_ptr = vec![0usize; nrows + 1];
        let mut col_idx = Vec::with_capacity(t.len());
        let mut values: Vec<f64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in t {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            last = Some((i, j));
            row_ptr[i + 1] += 1;
            col_idx.push(j);
            values.push(v);
        }
        for i in 0..nrows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(Self::from_parts_unchecked(
            nrows, ncols, row_ptr, col_idx, values,
        ))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_parts_unchecked(n, n, (0..=n).collect(), (0..n).collect(), vec![1.0; n])
    }

    pub fn diag(d: &[f64]) -> Self {
        let n = d.len();
        Self::from_parts_unchecked(n, n, (0..=n).collect(), (0..n).collect(), d.to_vec())
    }

    /// Dense row-major input; exact zeros are not stored.
    pub fn from_dense(rows: &[Vec<f64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut row_ptr = Vec::with_capacity(nrows + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged dense input");
            for (j, &v) in r.iter().enumerate() {
                if v != 0.0 {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self::from_parts_unchecked(nrows, ncols, row_ptr, col_idx, values)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.ncols]; self.nrows];
        for (i, row) in out.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                row[j] = v;
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCsr(msg));
        if self.row_ptr.len() != self.nrows + 1 {
            return bad(format!(
                "row_ptr has length {}, expected {}",
                self.row_ptr.len(),
                self.nrows + 1
            ));
        }
        if self.row_ptr[0] != 0 {
            return bad("row_ptr[0] != 0".into());
        }
        if self.col_idx.len() != self.values.len() {
            return bad("col_idx and values differ in length".into());
        }
        if self.row_ptr[self.nrows] != self.col_idx.len() {
            return bad(format!(
                "row_ptr[nrows] = {} but nnz = {}",
                self.row_ptr[self.nrows],
                self.col_idx.len()
            ));
        }
        for i in 0..self.nrows {
            let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
            if a > b {
                return bad(format!("row_ptr decreases at row {i}"));
            }
            let cols = &self.col_idx[a..b];
            for (k, &j) in cols.iter().enumerate() {
                if j >= self.ncols {
                    return bad(format!("row {i}: column {j} >= ncols {}", self.ncols));
                }
                if k > 0 && cols[k - 1] >= j {
                    return bad(format!("row {i}: columns not strictly increasing"));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.values[r])
    }

    #[inline]
    pub fn row_nnz(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    pub fn mean_row_nnz(&self) -> f64 {
        if self.nrows == 0 {
            0.0
        } else {
            self.nnz() as f64 / self.nrows as f64
        }
    }

    /// Stored value at `(i, j)`, if any.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).ok().map(|k| vals[k])
    }

    /// Main diagonal, with zeros for missing entries.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.nrows.min(self.ncols))
            .map(|i| self.get(i, i).unwrap_or(0.0))
            .collect()
    }

    pub fn into_parts(self) -> (usize, usize, Vec<usize>, Vec<usize>, Vec<f64>) {
        (
            self.nrows,
            self.ncols,
            self.row_ptr,
            self.col_idx,
            self.values,
        )
    }

    /// `max |a_ij - a_ji| / max |a_ij|`; an entry without a stored transpose
    /// is compared against zero.
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut scale = 0.0f64;
        let mut diff = 0.0f64;
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                scale = scale.max(v.abs());
                let t = self.get(j, i).unwrap_or(0.0);
                diff = diff.max((v - t).abs());
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            diff / scale
        }
    }

    /// First stored `(i, j)` whose transpose position is not stored.
    pub fn pattern_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.nrows {
            for &j in self.row(i).0 {
                if self.get(j, i).is_none() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `y = A x` with the policy chosen from this matrix's row density.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        spmv(self, x, LaneGroupPolicy::for_matrix(self))
    }
}
