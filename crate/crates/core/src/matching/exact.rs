use super::{Matching, WeightedGraph, UNMATCHED};
use crate::error::{Error, Result};

pub const MAX_EXACT_VERTICES: usize = 20;

/// Maximum weight matching by dynamic programming over vertex subsets.
///
/// `best[S]` is the optimum on the vertices of `S`; the lowest vertex of `S`
/// is either left out or matched to one of its neighbours in `S`. Only
/// positive-weight edges are considered. Exponential; test-scale only.
pub fn exact_match_oracle(g: &WeightedGraph) -> Result<Matching> {
    let n = g.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::GraphTooLarge {
            n,
            max: MAX_EXACT_VERTICES,
        });
    }
    let full = (1usize << n) - 1;
    let mut best = vec![0.0f64; full + 1];
    let mut choice = vec![UNMATCHED; full + 1];
    for set in 1..=full {
        let i = set.trailing_zeros() as usize;
        let rest = set & !(1 << i);
        let mut value = best[rest];
        let mut pick = UNMATCHED;
        let (nbrs, ws) = g.neighbors(i);
        for (&j, &w) in nbrs.iter().zip(ws) {
            if w > 0.0 && rest & (1 << j) != 0 {
                let cand = w + best[rest & !(1 << j)];
                if cand > value {
                    value = cand;
                    pick = j;
                }
            }
        }
        best[set] = value;
        choice[set] = pick;
    }

    let mut mate = vec![UNMATCHED; n];
    let mut set = full;
    while set != 0 {
        let i = set.trailing_zeros() as usize;
        set &= !(1 << i);
        let j = choice[set | (1 << i)];
        if j != UNMATCHED {
            mate[i] = j;
            mate[j] = i;
            set &= !(1 << j);
        }
    }
    Ok(Matching { mate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_takes_heaviest_edge() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 3.0), (1, 2, 2.0), (0, 2, 1.0)]).unwrap();
        let m = exact_match_oracle(&g).unwrap();
        assert_eq!(m.weight(&g), 3.0);
        assert_eq!(m.pairs(), vec![(0, 1)]);
    }

    #[test]
    fn empty_graph() {
        let g = WeightedGraph::from_edges(5, &[]).unwrap();
        let m = exact_match_oracle(&g).unwrap();
        assert_eq!(m.cardinality(), 0);
        assert_eq!(m.weight(&g), 0.0);
        let g0 = WeightedGraph::from_edges(0, &[]).unwrap();
        assert_eq!(exact_match_oracle(&g0).unwrap().len(), 0);
    }

    #[test]
    fn four_cycle() {
        let g = WeightedGraph::from_edges(
            4,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)],
        )
        .unwrap();
        assert_eq!(exact_match_oracle(&g).unwrap().weight(&g), 2.0);
    }

    #[test]
    fn path_prefers_two_outer_edges() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 2.0), (1, 2, 3.0), (2, 3, 2.0)]).unwrap();
        let m = exact_match_oracle(&g).unwrap();
        assert_eq!(m.weight(&g), 4.0);
        assert!(m.is_valid_in(&g));
    }

    #[test]
    fn too_large() {
        let g = WeightedGraph::from_edges(21, &[]).unwrap();
        assert!(matches!(
            exact_match_oracle(&g),
            Err(Error::GraphTooLarge { n: 21, .. })
        ));
    }
}
