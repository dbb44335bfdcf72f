//! Labeled graph isomorphism by backtracking, sized for the small graphs
//! this crate deals in (catalog diagrams and desk-scale inputs).

use crate::graph::{CoxeterGraph, PairLabel, VertexId};

/// Per-vertex pruning signature: explicit degree plus the sorted multiset of
/// incident explicit labels.
fn signature(g: &CoxeterGraph, v: &VertexId) -> (usize, Vec<PairLabel>) {
    let mut labels: Vec<PairLabel> = g
        .neighbors(v)
        .into_iter()
        .map(|w| g.pair_label(v, w))
        .collect();
    labels.sort_unstable();
    (labels.len(), labels)
}

/// Tests for a vertex bijection preserving adjacency and labels (implicit 2s
/// included on both sides). Returns the lexicographically least witness under
/// vertex order, as `(g1 vertex, g2 image)` pairs in `g1` declaration order,
/// or `None` if the graphs are not isomorphic.
pub fn graphs_isomorphic(
    g1: &CoxeterGraph,
    g2: &CoxeterGraph,
) -> Option<Vec<(VertexId, VertexId)>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let mut labels1: Vec<PairLabel> = g1.edges().map(|(_, _, l)| l.into()).collect();
    let mut labels2: Vec<PairLabel> = g2.edges().map(|(_, _, l)| l.into()).collect();
    labels1.sort_unstable();
    labels2.sort_unstable();
    if labels1 != labels2 {
        return None;
    }

    let vs1 = g1.vertices();
    let vs2 = g2.vertices();
    let sig1: Vec<_> = vs1.iter().map(|v| signature(g1, v)).collect();
    let sig2: Vec<_> = vs2.iter().map(|v| signature(g2, v)).collect();
    {
        let mut s1 = sig1.clone();
        let mut s2 = sig2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return None;
        }
    }

    // mapping[i] = image position of vs1[i]; depth-first in vertex order so
    // the first complete assignment is the lexicographically least one.
    let mut mapping: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn extend(
        g1: &CoxeterGraph,
        g2: &CoxeterGraph,
        sig1: &[(usize, Vec<PairLabel>)],
        sig2: &[(usize, Vec<PairLabel>)],
        mapping: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = mapping.len();
        let n = g1.vertex_count();
        if i == n {
            return true;
        }
        let vi = &g1.vertices()[i];
        for cand in 0..n {
            if used[cand] || sig1[i] != sig2[cand] {
                continue;
            }
            let w = &g2.vertices()[cand];
            let consistent = (0..i).all(|j| {
                g1.pair_label(vi, &g1.vertices()[j]) == g2.pair_label(w, &g2.vertices()[mapping[j]])
            });
            if !consistent {
                continue;
            }
            mapping.push(cand);
            used[cand] = true;
            if extend(g1, g2, sig1, sig2, mapping, used) {
                return true;
            }
            used[cand] = false;
            mapping.pop();
        }
        false
    }

    if extend(g1, g2, &sig1, &sig2, &mut mapping, &mut used) {
        Some(
            mapping
                .iter()
                .enumerate()
                .map(|(i, &j)| (vs1[i].clone(), vs2[j].clone()))
                .collect(),
        )
    } else {
        None
    }
}
