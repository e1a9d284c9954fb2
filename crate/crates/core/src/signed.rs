//! Diagonal ±1 switching, balance detection, the pair/plus transforms and
//! signed compositions `A(H) - A(K)`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{TailSpec, WeightedGraph};
use crate::spectral;
use crate::state::PureState;

/// Residual above which two adjacency matrices are treated as non-commuting.
pub const COMMUTE_TOL: f64 = 1e-10;
/// Fidelity tolerance used when re-certifying a transform.
pub const CERTIFY_TOL: f64 = 1e-9;

/// `D = diag(d)` and the overall sign `δ` of a switching `δ D A D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignVector {
    d: Vec<i8>,
    delta: i8,
}

fn check_sign(x: i8) -> Result<i8> {
    match x {
        1 | -1 => Ok(x),
        _ => Err(Error::BadParam(format!("sign entries must be ±1, got {x}"))),
    }
}

impl SignVector {
    pub fn new(d: Vec<i8>, delta: i8) -> Result<Self> {
        for &x in &d {
            check_sign(x)?;
        }
        Ok(Self {
            d,
            delta: check_sign(delta)?,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self { d: vec![1; n], delta: 1 }
    }

    /// All ones except `-1` on `negative`.
    pub fn negating(n: usize, negative: &[usize]) -> Result<Self> {
        let mut d = vec![1; n];
        for &v in negative {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            d[v] = -1;
        }
        Ok(Self { d, delta: 1 })
    }

    pub fn with_delta(mut self, delta: i8) -> Result<Self> {
        self.delta = check_sign(delta)?;
        Ok(self)
    }

    pub fn signs(&self) -> &[i8] {
        &self.d
    }

    pub fn delta(&self) -> i8 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// `D u`.
    pub fn apply(&self, u: &PureState) -> PureState {
        u.switched(&self.d)
    }
}

/// Graph with adjacency `δ D A(G) D`. Tail vertices take the sign of their
/// attach vertex, so tail edges are only scaled by `δ`.
pub fn switch(g: &WeightedGraph, sv: &SignVector) -> Result<WeightedGraph> {
    if sv.len() != g.n() {
        return Err(Error::SizeMismatch(sv.len(), g.n()));
    }
    let d = sv.signs();
    let delta = f64::from(sv.delta());
    let tails = g
        .tails()
        .iter()
        .map(|t| TailSpec {
            attach: t.attach,
            prefix: t.prefix.iter().map(|w| w * delta).collect(),
            bulk: t.bulk * delta,
        })
        .collect();
    Ok(g.map_weights(
        |a, b, w| delta * f64::from(d[a]) * f64::from(d[b]) * w,
        tails,
    ))
}

fn find_switching(gt: &WeightedGraph, g: &WeightedGraph, delta: i8) -> Option<SignVector> {
    let n = g.n();
    if gt.n() != n || gt.edge_count() != g.edge_count() {
        return None;
    }
    let fd = f64::from(delta);
    let scaled_tails_match = gt.tails().len() == g.tails().len()
        && gt.tails().iter().zip(g.tails()).all(|(x, y)| {
            x.attach == y.attach
                && x.bulk == fd * y.bulk
                && x.prefix.len() == y.prefix.len()
                && x.prefix.iter().zip(&y.prefix).all(|(p, q)| *p == fd * q)
        });
    if !scaled_tails_match {
        return None;
    }
    let mut d = vec![0i8; n];
    for root in 0..n {
        if d[root] != 0 {
            continue;
        }
        d[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            for &(b, w) in g.neighbors(a) {
                let wt = gt.weight(a, b);
                // need wt = δ d_a d_b w exactly
                let s = if wt == fd * w {
                    d[a]
                } else if wt == -fd * w {
                    -d[a]
                } else {
                    return None;
                };
                if d[b] == 0 {
                    d[b] = s;
                    queue.push_back(b);
                } else if d[b] != s {
                    return None;
                }
            }
        }
    }
    Some(SignVector { d, delta })
}

/// `D` with `D A(g) D = A(g̃)`, if one exists.
pub fn is_balanced(gt: &WeightedGraph, g: &WeightedGraph) -> Option<SignVector> {
    find_switching(gt, g, 1)
}

/// `D` with `D A(g) D = -A(g̃)`, if one exists.
pub fn is_antibalanced(gt: &WeightedGraph, g: &WeightedGraph) -> Option<SignVector> {
    find_switching(gt, g, -1)
}

/// One output of [`pairplus_transforms`].
#[derive(Debug, Clone, Serialize)]
pub struct SignedTransform {
    /// `1a`, `1b`, `2a`, `2b` or `2c`.
    pub case: &'static str,
    pub signs: SignVector,
    #[serde(skip)]
    pub graph: WeightedGraph,
    pub src: PureState,
    pub dst: PureState,
    /// Fidelity of the transformed states at the original time.
    pub fidelity: f64,
}

impl SignedTransform {
    pub fn certified(&self) -> bool {
        self.fidelity >= 1.0 - CERTIFY_TOL
    }
}

/// Switched graphs and states obtained from a transfer between two-vertex
/// states `src = (e_a ∓ e_b)/√2` and `dst = (e_c ∓ e_d)/√2` at `tau`.
///
/// Case 1 negates every edge at `b`; case 2 negates every edge at `b` or `d`
/// except `{b, d}`. Both pair and plus inputs are accepted, the latter
/// giving the swapped pair/plus outputs. Every output is re-evaluated at
/// `tau`.
pub fn pairplus_transforms(
    g: &WeightedGraph,
    src: &PureState,
    dst: &PureState,
    tau: f64,
) -> Result<Vec<SignedTransform>> {
    let (a, b, _) = src
        .as_two_vertex()
        .ok_or_else(|| Error::UnsupportedOverlap("source is not a pair or plus state".into()))?;
    let (c, d, _) = dst
        .as_two_vertex()
        .ok_or_else(|| Error::UnsupportedOverlap("target is not a pair or plus state".into()))?;
    for v in [a, b, c, d] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let mut out = Vec::new();
    let case1 = if b == c || b == d { "1b" } else { "1a" };
    let mut variants = vec![(case1, vec![b])];
    if b != d {
        let case2 = if a == d {
            "2a"
        } else if b == c {
            "2b"
        } else {
            "2c"
        };
        variants.push((case2, vec![b, d]));
    }
    for (case, negative) in variants {
        let signs = SignVector::negating(g.n(), &negative)?;
        let graph = switch(g, &signs)?;
        let s = signs.apply(src);
        let t = signs.apply(dst);
        let fidelity = spectral::fidelity(&graph, &s, &t, tau)?;
        out.push(SignedTransform {
            case,
            signs,
            graph,
            src: s,
            dst: t,
            fidelity,
        });
    }
    Ok(out)
}

/// Edge-disjoint graphs `H` and `K` on a common vertex set, read as the
/// signed graph `H⁺ ∪ K⁻`.
#[derive(Debug, Clone)]
pub struct SignedDecomposition {
    pub hplus: WeightedGraph,
    pub kminus: WeightedGraph,
}

impl SignedDecomposition {
    /// Splits a signed graph into its positive and negative edges, the
    /// latter with flipped sign.
    pub fn split(g: &WeightedGraph) -> Result<Self> {
        if g.has_tails() {
            return Err(Error::TailsUnsupported);
        }
        let pos = g.edges().filter(|e| e.2 > 0.0);
        let neg = g.edges().filter(|e| e.2 < 0.0).map(|(a, b, w)| (a, b, -w));
        Ok(Self {
            hplus: WeightedGraph::new(g.n(), pos)?,
            kminus: WeightedGraph::new(g.n(), neg)?,
        })
    }

    /// `‖A(H)A(K) - A(K)A(H)‖_max`.
    pub fn commutator_residual(&self) -> f64 {
        let h = self.hplus.adjacency_matrix();
        let k = self.kminus.adjacency_matrix();
        (&h * &k - &k * &h).amax()
    }

    pub fn compose(&self) -> Result<WeightedGraph> {
        compose_signed(&self.hplus, &self.kminus)
    }
}

/// Signed graph with adjacency `A(H) - A(K)`, provided the two adjacency
/// matrices commute.
pub fn compose_signed(h: &WeightedGraph, k: &WeightedGraph) -> Result<WeightedGraph> {
    if h.n() != k.n() {
        return Err(Error::SizeMismatch(h.n(), k.n()));
    }
    if h.has_tails() || k.has_tails() {
        return Err(Error::TailsUnsupported);
    }
    if let Some((a, b, _)) = k.edges().find(|&(a, b, _)| h.has_edge(a, b)) {
        return Err(Error::EdgeOverlap(a, b));
    }
    let (ha, ka) = (h.adjacency_matrix(), k.adjacency_matrix());
    let residual = (&ha * &ka - &ka * &ha).amax();
    if residual > COMMUTE_TOL {
        return Err(Error::CommuteError(residual));
    }
    let edges = h.edges().chain(k.edges().map(|(a, b, w)| (a, b, -w)));
    WeightedGraph::new(h.n(), edges)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;

    use super::*;

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (0..n).map(|j| (j, (j + 1) % n))).unwrap()
    }

    #[test]
    fn identity_switch() {
        let g = cycle(5);
        assert_eq!(switch(&g, &SignVector::identity(5)).unwrap(), g);
    }

    #[test]
    fn switch_is_an_involution() {
        let g = WeightedGraph::new(4, [(0, 1, 2.0), (1, 2, -1.0), (2, 3, 0.5), (0, 3, 1.0)]).unwrap();
        let sv = SignVector::new(vec![1, -1, -1, 1], 1).unwrap();
        let once = switch(&g, &sv).unwrap();
        assert_eq!(once.weight(0, 1), -2.0);
        assert_eq!(once.weight(1, 2), -1.0);
        assert_eq!(switch(&once, &sv).unwrap(), g);
    }

    #[test]
    fn c4_two_negative_edges() {
        // D = diag(1,-1,1,1) flips the two edges at vertex 1
        let g = cycle(4);
        let sv = SignVector::new(vec![1, -1, 1, 1], 1).unwrap();
        let s = switch(&g, &sv).unwrap();
        let negative: Vec<_> = s.edges().filter(|e| e.2 < 0.0).map(|e| (e.0, e.1)).collect();
        assert_eq!(negative, vec![(0, 1), (1, 2)]);
        assert_eq!(is_balanced(&s, &g).unwrap().signs(), &[1, -1, 1, 1]);
    }

    #[test]
    fn signed_c6_is_balanced() {
        let g = cycle(6);
        let gt = g.negate_edges(&[(3, 4), (0, 5)]).unwrap();
        let sv = is_balanced(&gt, &g).unwrap();
        let d = sv.signs();
        for (a, b, w) in g.edges() {
            assert_eq!(gt.weight(a, b), f64::from(d[a] * d[b]) * w);
        }
        assert!(is_balanced(&g, &g).unwrap().signs().iter().all(|&x| x == 1));
    }

    #[test]
    fn odd_negative_cycle_is_unbalanced() {
        let g = cycle(4);
        let gt = g.negate_edges(&[(0, 1)]).unwrap();
        assert!(is_balanced(&gt, &g).is_none());
        // negating every edge of an even cycle keeps the cycle sign
        assert!(is_antibalanced(&gt, &g).is_none());
        let k3 = cycle(3);
        let neg = k3.negate_edges(&[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_balanced(&neg, &k3).is_none());
        let sv = is_antibalanced(&neg, &k3).unwrap();
        assert_eq!(sv.delta(), -1);
    }

    #[test]
    fn tree_with_negative_edge_is_balanced() {
        let g = WeightedGraph::unweighted(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let gt = g.negate_edges(&[(1, 3)]).unwrap();
        assert!(is_balanced(&gt, &g).is_some());
    }

    #[test]
    fn p2_transform_cases() {
        // P_2 has PST e_0 -> e_1; as a pair state (e_0 - e_1) is periodic
        let g = WeightedGraph::unweighted(2, [(0, 1)]).unwrap();
        let u = PureState::pair(0, 1).unwrap();
        let out = pairplus_transforms(&g, &u, &u, FRAC_PI_2).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].case, "1b");
        assert!(out[0].certified());
        assert_eq!(out[0].src, out[0].dst);
    }

    #[test]
    fn unsupported_overlap() {
        let g = WeightedGraph::unweighted(2, [(0, 1)]).unwrap();
        let e = pairplus_transforms(&g, &PureState::vertex(0), &PureState::vertex(1), 1.0);
        assert!(matches!(e, Err(Error::UnsupportedOverlap(_))));
    }

    #[test]
    fn compose_errors() {
        let p3 = WeightedGraph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        let e02 = WeightedGraph::unweighted(3, [(0, 2)]).unwrap();
        // P_3 and the missing triangle edge do not commute
        assert!(matches!(compose_signed(&p3, &e02), Err(Error::CommuteError(_))));
        assert_eq!(compose_signed(&p3, &p3).unwrap_err(), Error::EdgeOverlap(0, 1));
        assert_eq!(compose_signed(&p3, &WeightedGraph::empty(3)).unwrap(), p3);
    }

    #[test]
    fn split_and_recompose() {
        let g = cycle(6).negate_edges(&[(3, 4), (0, 5)]).unwrap();
        let sd = SignedDecomposition::split(&g).unwrap();
        assert_eq!(sd.hplus.edge_count(), 4);
        assert_eq!(sd.kminus.edge_count(), 2);
    }
}
