//! Shared inputs for the benchmarks.

use qwalk_core::WeightedGraph;

/// Cycle `C_n`.
pub fn cycle(n: usize) -> WeightedGraph {
    WeightedGraph::unweighted(n, (0..n).map(|j| (j, (j + 1) % n))).expect("valid cycle")
}

/// `k × k` grid graph.
pub fn grid(k: usize) -> WeightedGraph {
    let id = |r: usize, c: usize| r * k + c;
    let mut edges = Vec::new();
    for r in 0..k {
        for c in 0..k {
            if c + 1 < k {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < k {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    WeightedGraph::unweighted(k * k, edges).expect("valid grid")
}
