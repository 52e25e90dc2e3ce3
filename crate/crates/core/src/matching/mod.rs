//! Edge weights for compatible matching and approximate maximum weight
//! matching on the weighted adjacency graph of a matrix.

mod exact;
mod suitor;

pub use exact::{exact_match_oracle, MAX_EXACT_VERTICES};
pub use suitor::suitor_match;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::sparse::CsrMatrix;

/// Sentinel in [`Matching::mate`] for an unmatched vertex.
pub const UNMATCHED: usize = usize::MAX;

const ROWS_PER_TASK: usize = 1024;

/// Symmetric weighted graph on the off-diagonal pattern of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    weights: Vec<f64>,
    zero_denominators: usize,
}

impl WeightedGraph {
    /// Build from undirected edges `(i, j, w)`; each edge is stored in both
    /// directions.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut t = Vec::with_capacity(2 * edges.len());
        for &(i, j, w) in edges {
            if i == j {
                return Err(Error::InvalidConfig(format!("self-loop at vertex {i}")));
            }
            if !w.is_finite() {
                return Err(Error::InvalidConfig(format!("edge ({i}, {j}) weight {w}")));
            }
            t.push((i, j, w));
            t.push((j, i, w));
        }
        let m = CsrMatrix::from_triplets(n, n, t)?;
        let (_, _, row_ptr, col_idx, weights) = m.into_parts();
        Ok(WeightedGraph {
            n,
            row_ptr,
            col_idx,
            weights,
            zero_denominators: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.col_idx.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.weights[r])
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        let (cols, w) = self.neighbors(i);
        cols.binary_search(&j).ok().map(|k| w[k])
    }

    /// Undirected edges `(i, j, w)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            let (cols, w) = self.neighbors(i);
            cols.iter()
                .zip(w)
                .filter(move |(&j, _)| j > i)
                .map(move |(&j, &wij)| (i, j, wij))
        })
    }

    /// Edges whose weight was forced to zero because both smooth-vector
    /// entries vanished.
    pub fn zero_denominators(&self) -> usize {
        self.zero_denominators
    }

    /// Same graph with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut g = self.clone();
        g.weights.iter_mut().for_each(|w| *w *= factor);
        g
    }

    /// Symmetric, loop-free, finite.
    pub fn is_valid(&self) -> bool {
        (0..self.n).all(|i| {
            let (cols, w) = self.neighbors(i);
            cols.iter()
                .zip(w)
                .all(|(&j, &wij)| j != i && wij.is_finite() && self.weight(j, i) == Some(wij))
        })
    }
}

/// Compatible-matching edge weights
/// `c_ij = 1 - 2 a_ij w_i w_j / (a_ii w_i² + a_jj w_j²)`
/// on the off-diagonal pattern of a structurally symmetric `A`.
///
/// Each edge is evaluated once from its upper-triangle entry so the graph is
/// exactly symmetric even when `A` is only symmetric up to rounding. An edge
/// with a vanishing denominator gets weight 0 and is counted.
pub fn build_weights(a: &CsrMatrix, w: &[f64]) -> Result<WeightedGraph> {
    if !a.is_square() {
        return Err(Error::dim("build_weights (square)", a.nrows(), a.ncols()));
    }
    let n = a.nrows();
    if w.len() != n {
        return Err(Error::dim("build_weights", n, w.len()));
    }
    if let Some((row, col)) = a.pattern_asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let diag = a.diagonal();

    let mut row_ptr = Vec::with_capacity(n + 1);
    row_ptr.push(0);
    let mut col_idx = Vec::with_capacity(a.nnz());
    for i in 0..n {
        col_idx.extend(a.row(i).0.iter().copied().filter(|&j| j != i));
        row_ptr.push(col_idx.len());
    }

    let blocks = exec::map_blocks(Exec::auto(), n, ROWS_PER_TASK, |rows| {
        let mut out = Vec::new();
        let mut zeros = 0usize;
        for i in rows {
            for &j in a.row(i).0.iter().filter(|&&j| j != i) {
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                let aij = a.get(lo, hi).unwrap_or(0.0);
                let den = diag[lo] * w[lo] * w[lo] + diag[hi] * w[hi] * w[hi];
                let c = if den == 0.0 {
                    if i < j {
                        zeros += 1;
                    }
                    0.0
                } else {
                    1.0 - (2.0 * aij * w[lo] * w[hi]) / den
                };
                out.push(c);
            }
        }
        (out, zeros)
    });
    let mut weights = Vec::with_capacity(col_idx.len());
    let mut zero_denominators = 0;
    for (wb, z) in blocks {
        weights.extend(wb);
        zero_denominators += z;
    }
    Ok(WeightedGraph {
        n,
        row_ptr,
        col_idx,
        weights,
        zero_denominators,
    })
}

/// A matching stored as a mate array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<usize>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![UNMATCHED; n],
        }
    }

    /// Validates that `mate` is a fixed-point-free involution on matched vertices.
    pub fn from_mate(mate: Vec<usize>) -> Result<Self> {
        let m = Matching { mate };
        if !m.is_valid() {
            return Err(Error::InvalidConfig("mate array is not a matching".into()));
        }
        Ok(m)
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut mate = vec![UNMATCHED; n];
        for &(i, j) in pairs {
            if i >= n || j >= n || mate[i] != UNMATCHED || mate[j] != UNMATCHED {
                return Err(Error::InvalidConfig(format!("bad pair ({i}, {j})")));
            }
            mate[i] = j;
            mate[j] = i;
        }
        Matching::from_mate(mate)
    }

    pub fn len(&self) -> usize {
        self.mate.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mate.is_empty()
    }

    pub fn mate(&self) -> &[usize] {
        &self.mate
    }

    #[inline]
    pub fn mate_of(&self, i: usize) -> Option<usize> {
        match self.mate[i] {
            UNMATCHED => None,
            j => Some(j),
        }
    }

    /// Matched pairs `(i, j)` with `i < j`, ascending in `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(i, &j)| j != UNMATCHED && i < j)
            .map(|(i, &j)| (i, j))
            .collect()
    }

    pub fn cardinality(&self) -> usize {
        self.mate.iter().filter(|&&j| j != UNMATCHED).count() / 2
    }

    /// Total weight of the matched edges in `g`.
    pub fn weight(&self, g: &WeightedGraph) -> f64 {
        self.pairs()
            .iter()
            .map(|&(i, j)| g.weight(i, j).unwrap_or(f64::NAN))
            .sum()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.mate.len();
        self.mate.iter().enumerate().all(|(i, &j)| {
            j == UNMATCHED || (j < n && j != i && self.mate[j] == i)
        })
    }

    /// Valid, and every matched pair is an edge of `g`.
    pub fn is_valid_in(&self, g: &WeightedGraph) -> bool {
        self.len() == g.n()
            && self.is_valid()
            && self.pairs().iter().all(|&(i, j)| g.weight(i, j).is_some())
    }
}
