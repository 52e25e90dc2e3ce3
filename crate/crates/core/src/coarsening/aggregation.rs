use crate::error::{Error, Result};
use crate::matching::Matching;

/// Partition of `0..n` into aggregates of size one or two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregation {
    agg_of: Vec<usize>,
    n_c: usize,
    n_p: usize,
    n_s: usize,
}

impl Aggregation {
    /// Build from a vertex→aggregate map; ids must be contiguous and each
    /// aggregate must hold one or two vertices.
    pub fn from_map(agg_of: Vec<usize>) -> Result<Self> {
        let n_c = agg_of.iter().map(|&a| a + 1).max().unwrap_or(0);
        let mut sizes = vec![0usize; n_c];
        for &a in &agg_of {
            sizes[a] += 1;
        }
        if let Some(a) = sizes.iter().position(|&s| s == 0 || s > 2) {
            return Err(Error::InvalidConfig(format!(
                "aggregate {a} has {} members",
                sizes[a]
            )));
        }
        let n_p = sizes.iter().filter(|&&s| s == 2).count();
        Ok(Aggregation {
            agg_of,
            n_c,
            n_p,
            n_s: n_c - n_p,
        })
    }

    pub fn n(&self) -> usize {
        self.agg_of.len()
    }

    pub fn agg_of(&self) -> &[usize] {
        &self.agg_of
    }

    /// Number of aggregates.
    pub fn n_c(&self) -> usize {
        self.n_c
    }

    /// Number of two-vertex aggregates.
    pub fn n_p(&self) -> usize {
        self.n_p
    }

    /// Number of singletons.
    pub fn n_s(&self) -> usize {
        self.n_s
    }

    /// Members of every aggregate, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::with_capacity(2); self.n_c];
        for (i, &a) in self.agg_of.iter().enumerate() {
            out[a].push(i);
        }
        out
    }
}

/// Pairwise aggregation from a matching: matched pairs become aggregates of
/// two, the rest singletons. Vertices are visited in ascending order, so
/// aggregate ids follow the smallest member index.
pub fn pairwise_aggregate(m: &Matching, n: usize) -> Result<Aggregation> {
    if m.len() != n {
        return Err(Error::dim("pairwise_aggregate", n, m.len()));
    }
    const UNSET: usize = usize::MAX;
    let mut agg_of = vec![UNSET; n];
    let (mut n_c, mut n_p, mut n_s) = (0, 0, 0);
    for i in 0..n {
        if agg_of[i] != UNSET {
            continue;
        }
        agg_of[i] = n_c;
        match m.mate_of(i) {
            Some(j) if agg_of[j] == UNSET => {
                agg_of[j] = n_c;
                n_p += 1;
            }
            _ => n_s += 1,
        }
        n_c += 1;
    }
    Ok(Aggregation {
        agg_of,
        n_c,
        n_p,
        n_s,
    })
}
