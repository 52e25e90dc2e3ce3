use super::{Matching, WeightedGraph, UNMATCHED};

/// ½-approximate maximum weight matching by the Suitor algorithm.
///
/// Every vertex proposes to its heaviest neighbour whose current suitor is
/// lighter; a displaced suitor proposes again. Equal weights are broken
/// toward the lower vertex index, which is a consistent total order on
/// edges, so the result is deterministic and locally dominant. Edges of
/// weight zero never carry a proposal.
pub fn suitor_match(g: &WeightedGraph) -> Matching {
    let n = g.n();
    let mut suitor = vec![UNMATCHED; n];
    let mut offer = vec![0.0f64; n];

    for start in 0..n {
        let mut current = start;
        loop {
            let mut partner = UNMATCHED;
            let mut heaviest = 0.0f64;
            let (nbrs, ws) = g.neighbors(current);
            for (&v, &w) in nbrs.iter().zip(ws) {
                if w.is_nan() || w <= 0.0 {
                    continue;
                }
                let beats_best = w > heaviest || (w == heaviest && v < partner);
                let beats_suitor =
                    w > offer[v] || (w == offer[v] && current < suitor[v]);
                if beats_best && beats_suitor {
                    partner = v;
                    heaviest = w;
                }
            }
            if partner == UNMATCHED {
                break;
            }
            let displaced = suitor[partner];
            suitor[partner] = current;
            offer[partner] = heaviest;
            if displaced == UNMATCHED {
                break;
            }
            current = displaced;
        }
    }

    let mate = (0..n)
        .map(|v| match suitor[v] {
            UNMATCHED => UNMATCHED,
            u if suitor[u] == v => u,
            _ => UNMATCHED,
        })
        .collect();
    Matching { mate }
}
