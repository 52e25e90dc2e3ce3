use super::Aggregation;
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Piecewise-constant prolongator from the orthonormal projection of `w`
/// onto the aggregates: `P[i, agg(i)] = w_i / ‖w|agg(i)‖₂`.
///
/// A singleton with `w_i = 0` gets the entry 1 so its column stays unit
/// norm; a larger aggregate on which `w` vanishes is an error.
pub fn build_prolongator(agg: &Aggregation, w: &[f64]) -> Result<CsrMatrix> {
    let n = agg.n();
    if w.len() != n {
        return Err(Error::dim("build_prolongator", n, w.len()));
    }
    let mut norm2 = vec![0.0f64; agg.n_c()];
    let mut size = vec![0usize; agg.n_c()];
    for (&a, &wi) in agg.agg_of().iter().zip(w) {
        norm2[a] += wi * wi;
        size[a] += 1;
    }
    if let Some(a) = (0..agg.n_c()).find(|&a| norm2[a] == 0.0 && size[a] > 1) {
        return Err(Error::ZeroAggregate { aggregate: a });
    }
    let norms: Vec<f64> = norm2.iter().map(|s| s.sqrt()).collect();
    let values = agg
        .agg_of()
        .iter()
        .zip(w)
        .map(|(&a, &wi)| if norms[a] == 0.0 { 1.0 } else { wi / norms[a] })
        .collect();
    Ok(CsrMatrix::from_parts_unchecked(
        n,
        agg.n_c(),
        (0..=n).collect(),
        agg.agg_of().to_vec(),
        values,
    ))
}

/// `P^T w`.
pub fn restrict_vector(p: &CsrMatrix, w: &[f64]) -> Result<Vec<f64>> {
    if w.len() != p.nrows() {
        return Err(Error::dim("restrict_vector", p.nrows(), w.len()));
    }
    let mut out = vec![0.0; p.ncols()];
    for (i, &wi) in w.iter().enumerate() {
        let (cols, vals) = p.row(i);
        for (&j, &v) in cols.iter().zip(vals) {
            out[j] += v * wi;
        }
    }
    Ok(out)
}
