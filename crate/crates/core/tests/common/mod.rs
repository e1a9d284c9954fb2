#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qwalk_core::twins::TwinStructure;
use qwalk_core::WeightedGraph;

const WEIGHTS: [f64; 5] = [1.0, 2.0, -1.0, 0.5, -1.5];

fn weight(rng: &mut ChaCha8Rng) -> f64 {
    WEIGHTS[rng.random_range(0..WEIGHTS.len())]
}

/// Random weighted graph with edge probability `p`.
pub fn weighted_graph(n: usize, p: f64, seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b, weight(&mut rng)));
            }
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

/// Random graph with a twin structure: `X_1` on `0..k`, `X_2` on `k..2k`
/// with `f(i) = k + i`, a symmetric cross block `A'`, and outside vertices
/// attached equally to `x1[i]` and `x2[i]`. At most 20 vertices.
pub fn twin_instance(seed: u64) -> (WeightedGraph, Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(1..=4);
    let m = rng.random_range(0..=(20 - 2 * k).min(10));
    let n = 2 * k + m;
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.random_bool(0.5) {
                let w = weight(&mut rng);
                edges.push((i, j, w));
                edges.push((k + i, k + j, w));
            }
        }
        for j in i..k {
            if rng.random_bool(0.3) {
                let w = weight(&mut rng);
                edges.push((i, k + j, w));
                if i != j {
                    edges.push((j, k + i, w));
                }
            }
        }
    }
    for o in 2 * k..n {
        for q in o + 1..n {
            if rng.random_bool(0.4) {
                edges.push((o, q, weight(&mut rng)));
            }
        }
        for i in 0..k {
            if rng.random_bool(0.3) {
                let w = weight(&mut rng);
                edges.push((o, i, w));
                edges.push((o, k + i, w));
            }
        }
    }
    let g = WeightedGraph::new(n, edges).unwrap();
    (g, (0..k).collect(), (k..2 * k).collect())
}

pub fn twin_structure(seed: u64) -> (WeightedGraph, TwinStructure) {
    let (g, x1, x2) = twin_instance(seed);
    let ts = TwinStructure::build(&g, x1, x2).unwrap();
    (g, ts)
}
