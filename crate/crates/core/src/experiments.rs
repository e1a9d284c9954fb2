//! Random labelled trees and the P_5 limb mechanism for pair transfer.
//!
//! A limb here is `P_5` rooted at its centre: a vertex `c` with two
//! neighbours of degree 2 whose other neighbours are leaves. The two arms are
//! twin `P_2` subgraphs, so the leaf pair state moves to the inner pair state
//! at `π/2`.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::state::PureState;
use crate::transfer::{check_pst, PST_TOL};

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`).
pub fn prufer_decode(seq: &[usize], n: usize) -> WeightedGraph {
    assert!(n >= 2 && seq.len() == n - 2, "Prüfer sequence of length n - 2 expected");
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    WeightedGraph::unweighted(n, edges).expect("Prüfer decode yields a simple graph")
}

/// Uniform random labelled tree on `n ≥ 2` vertices.
pub fn random_tree(n: usize, seed: u64) -> WeightedGraph {
    assert!(n >= 2, "trees need at least 2 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    prufer_decode(&seq, n)
}

/// `G(n, p)` random graph, deterministic per seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    WeightedGraph::unweighted(n, edges).expect("random edges are valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Limb {
    pub center: usize,
    /// `[leaf, inner]` of the first arm.
    pub x1: [usize; 2],
    /// Images of `x1` in the second arm.
    pub x2: [usize; 2],
}

impl Limb {
    pub fn src(&self) -> PureState {
        PureState::pair(self.x1[0], self.x2[0]).expect("distinct arms")
    }

    pub fn dst(&self) -> PureState {
        PureState::pair(self.x1[1], self.x2[1]).expect("distinct arms")
    }
}

fn is_tree(t: &WeightedGraph) -> bool {
    let n = t.n();
    if n == 0 || t.edge_count() != n - 1 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(w, _) in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// First limb in vertex order, arms taken as the two smallest qualifying
/// inner vertices.
pub fn find_p5_limb(t: &WeightedGraph) -> Result<Option<Limb>> {
    if !is_tree(t) {
        return Err(Error::NotATree(format!("{} vertices, {} edges or disconnected", t.n(), t.edge_count())));
    }
    let deg = |v: usize| t.neighbors(v).len();
    for c in 0..t.n() {
        let mut arms = t.neighbors(c).iter().filter_map(|&(x, _)| {
            if deg(x) != 2 {
                return None;
            }
            let leaf = t.neighbors(x).iter().map(|&(y, _)| y).find(|&y| y != c)?;
            (deg(leaf) == 1).then_some((leaf, x))
        });
        if let (Some(a), Some(b)) = (arms.next(), arms.next()) {
            return Ok(Some(Limb { center: c, x1: [a.0, a.1], x2: [b.0, b.1] }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimbReport {
    pub size: usize,
    pub samples: usize,
    pub hits: usize,
    pub verified: usize,
    pub fraction: f64,
}

impl LimbReport {
    fn from_outcomes(size: usize, outcomes: &[Option<bool>]) -> Self {
        let hits = outcomes.iter().filter(|o| o.is_some()).count();
        let verified = outcomes.iter().filter(|o| **o == Some(true)).count();
        let samples = outcomes.len();
        LimbReport {
            size,
            samples,
            hits,
            verified,
            fraction: if samples == 0 { 0.0 } else { hits as f64 / samples as f64 },
        }
    }
}

/// `None` for no limb, otherwise whether the pair transfer verified.
fn examine(t: &WeightedGraph) -> Option<bool> {
    let limb = find_p5_limb(t).expect("generated trees are trees")?;
    Some(
        check_pst(t, &limb.src(), &limb.dst(), FRAC_PI_2, PST_TOL)
            .map(|r| r.fidelity >= 1.0 - PST_TOL)
            .unwrap_or(false),
    )
}

/// Seed of sample `k` at `size`, so results do not depend on scheduling.
pub fn sample_seed(seed: u64, size: usize, k: usize) -> u64 {
    let mut x = seed ^ ((size as u64) << 32) ^ k as u64;
    // splitmix64 finaliser
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn run_tree_experiment(sizes: &[usize], samples: usize, seed: u64) -> Vec<LimbReport> {
    sizes
        .iter()
        .map(|&n| {
            let outcomes: Vec<Option<bool>> =
                (0..samples).into_par_iter().map(|k| examine(&random_tree(n, sample_seed(seed, n, k)))).collect();
            LimbReport::from_outcomes(n, &outcomes)
        })
        .collect()
}

/// Every labelled tree on `n` vertices, via all `n^(n-2)` Prüfer sequences.
pub fn exhaustive_tree_experiment(n: usize) -> LimbReport {
    assert!(n >= 2, "trees need at least 2 vertices");
    let total = n.pow((n - 2) as u32);
    let outcomes: Vec<Option<bool>> = (0..total)
        .into_par_iter()
        .map(|mut code| {
            let seq: Vec<usize> = (0..n - 2)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            examine(&prufer_decode(&seq, n))
        })
        .collect();
    LimbReport::from_outcomes(n, &outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{path, star};

    #[test]
    fn small_trees() {
        assert_eq!(random_tree(2, 7), path(2));
        for s in 0..5 {
            let t = random_tree(3, s);
            assert_eq!(t.edge_count(), 2);
            assert!(is_tree(&t));
        }
        assert_eq!(random_tree(8, 42), random_tree(8, 42));
    }

    #[test]
    fn limb_detection() {
        // spider: centre 0 with arms 0-1-2 and 0-3-4, plus leaf 5
        let spider = WeightedGraph::unweighted(6, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]).unwrap();
        let limb = find_p5_limb(&spider).unwrap().unwrap();
        assert_eq!(limb, Limb { center: 0, x1: [2, 1], x2: [4, 3] });
        assert_eq!(find_p5_limb(&star(7)).unwrap(), None);
        assert_eq!(find_p5_limb(&path(9)).unwrap(), None);
        assert!(find_p5_limb(&path(5)).unwrap().is_some());
        let cyc = WeightedGraph::unweighted(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(find_p5_limb(&cyc), Err(Error::NotATree(_))));
    }

    #[test]
    fn exhaustive_counts() {
        // labelled P_5s: 5!/2
        let r = exhaustive_tree_experiment(5);
        assert_eq!((r.samples, r.hits, r.verified), (125, 60, 60));
    }

    #[test]
    fn sampled_hits_verify() {
        let r = run_tree_experiment(&[10], 50, 1);
        assert_eq!(r[0].hits, r[0].verified);
        assert_eq!(run_tree_experiment(&[10], 0, 1)[0].samples, 0);
    }

    #[test]
    fn prufer_uniform_n4() {
        let mut counts = std::collections::HashMap::new();
        for k in 0..16_000 {
            let t = random_tree(4, sample_seed(3, 4, k));
            let mut e: Vec<(usize, usize)> = t.edges().map(|(a, b, _)| (a, b)).collect();
            e.sort();
            *counts.entry(e).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 16);
        // expected 1000 each, sigma about 31
        assert!(counts.values().all(|&c| (c as f64 - 1000.0).abs() < 150.0));
    }
}
