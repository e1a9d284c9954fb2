//! Graph families and operations: blow-ups, 1-sums, rooted products, Cayley
//! graphs and the named gadgets.

mod cayley;
mod gadgets;

pub use cayley::{cayley, CayleySpec};
pub use gadgets::{gadget_names, named_gadget, Claim, Gadget, GadgetParams};

use crate::error::{Error, Result};
use crate::graph::{TailSpec, WeightedGraph};

/// Length of a path attached by a 1-sum at one of its leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailLen {
    /// `P_n`, adding `n - 1` vertices.
    Finite(usize),
    /// The infinite path.
    Infinite,
}

impl TailLen {
    /// Parses `n`, `inf` or `∞`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinite" | "∞" => Ok(TailLen::Infinite),
            t => match t.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(TailLen::Finite(n)),
                _ => Err(Error::BadParam(format!("tail length must be a positive integer or `inf`, got `{t}`"))),
            },
        }
    }
}

impl std::fmt::Display for TailLen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TailLen::Finite(n) => write!(f, "{n}"),
            TailLen::Infinite => write!(f, "inf"),
        }
    }
}

pub fn path(n: usize) -> WeightedGraph {
    WeightedGraph::unweighted(n, (1..n).map(|j| (j - 1, j))).expect("path edges are valid")
}

pub fn cycle(n: usize) -> WeightedGraph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    WeightedGraph::unweighted(n, (0..n).map(|j| (j, (j + 1) % n))).expect("cycle edges are valid")
}

pub fn complete(n: usize) -> WeightedGraph {
    WeightedGraph::unweighted(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
        .expect("complete graph edges are valid")
}

/// Star `K_{1,k}` with centre 0.
pub fn star(k: usize) -> WeightedGraph {
    WeightedGraph::unweighted(k + 1, (1..=k).map(|j| (0, j))).expect("star edges are valid")
}

/// Cartesian product `G □ H`; vertex `(a, b)` has index `a |V(H)| + b`.
pub fn cartesian_product(g: &WeightedGraph, h: &WeightedGraph) -> Result<WeightedGraph> {
    if g.has_tails() || h.has_tails() {
        return Err(Error::TailsUnsupported);
    }
    let m = h.n();
    let mut edges = Vec::new();
    for (a, b, w) in g.edges() {
        edges.extend((0..m).map(|x| (a * m + x, b * m + x, w)));
    }
    for (x, y, w) in h.edges() {
        edges.extend((0..g.n()).map(|a| (a * m + x, a * m + y, w)));
    }
    WeightedGraph::new(g.n() * m, edges)
}

/// Blow-up with adjacency `J_n ⊗ A(H)`; vertex `(j, a)` has index
/// `j |V(H)| + a`.
pub fn blow_up(h: &WeightedGraph, n: usize) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::BadParam("blow-up needs at least one copy".into()));
    }
    if h.has_tails() {
        return Err(Error::TailsUnsupported);
    }
    let m = h.n();
    let mut edges = Vec::new();
    for (a, b, w) in h.edges() {
        for j in 0..n {
            for k in 0..n {
                edges.push((j * m + a, k * m + b, w));
            }
        }
    }
    WeightedGraph::new(n * m, edges)
}

/// Index of fiber vertex `(j, a)` in a blow-up of `h_n` vertices.
pub fn fiber_index(h_n: usize, j: usize, a: usize) -> usize {
    j * h_n + a
}

/// 1-sum identifying `u_g` in `g` with `u_h` in `h`. Vertices of `g` keep
/// their indices; the other vertices of `h` follow in their original order.
/// Returns the graph and the new index of every vertex of `h`.
pub fn one_sum(g: &WeightedGraph, h: &WeightedGraph, u_g: usize, u_h: usize) -> Result<(WeightedGraph, Vec<usize>)> {
    if u_g >= g.n() {
        return Err(Error::InvalidRoot(format!("vertex {u_g} not in the first graph ({} vertices)", g.n())));
    }
    if u_h >= h.n() {
        return Err(Error::InvalidRoot(format!("vertex {u_h} not in the second graph ({} vertices)", h.n())));
    }
    let mut map = vec![0; h.n()];
    let mut next = g.n();
    for (v, slot) in map.iter_mut().enumerate() {
        if v == u_h {
            *slot = u_g;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let edges = g.edges().chain(h.edges().map(|(a, b, w)| (map[a], map[b], w)));
    let mut out = WeightedGraph::new(next, edges)?;
    let mut tails = g.tails().to_vec();
    tails.extend(h.tails().iter().map(|t| TailSpec {
        attach: map[t.attach],
        ..t.clone()
    }));
    if !tails.is_empty() {
        out = out.with_tails(tails)?;
    }
    if let (Some(lg), Some(lh)) = (g.labels(), h.labels()) {
        let mut labels = lg.to_vec();
        labels.extend((0..h.n()).filter(|&v| v != u_h).map(|v| lh[v].clone()));
        // fall back to unlabelled output on clashes
        if let Ok(l) = out.clone().with_labels(labels) {
            out = l;
        }
    }
    Ok((out, map))
}

/// 1-sum with a path `P_n` at one of its leaves, or an infinite tail.
pub fn attach_tail(g: &WeightedGraph, at: usize, tail: TailLen) -> Result<WeightedGraph> {
    if at >= g.n() {
        return Err(Error::InvalidRoot(format!("vertex {at} not in graph")));
    }
    match tail {
        TailLen::Infinite => {
            let mut tails = g.tails().to_vec();
            tails.push(TailSpec::unit(at));
            g.clone().with_tails(tails)
        }
        TailLen::Finite(n) => Ok(one_sum(g, &path(n), at, 0)?.0),
    }
}

/// What hangs off a host vertex in a rooted product.
#[derive(Debug, Clone)]
pub enum Attachment {
    Rooted { graph: WeightedGraph, root: usize },
    Tail(TailLen),
}

/// Host graph with an optional attachment per host vertex.
#[derive(Debug, Clone)]
pub struct RootedCollection {
    pub host: WeightedGraph,
    pub attachments: Vec<Option<Attachment>>,
}

/// Rooted product `G^Y`. Host vertices keep their indices; attached graphs
/// follow in host-vertex order. Returns the graph and, per host vertex, the
/// index map of its rooted graph (empty for tails and bare vertices).
pub fn rooted_product(rc: &RootedCollection) -> Result<(WeightedGraph, Vec<Vec<usize>>)> {
    if rc.attachments.len() != rc.host.n() {
        return Err(Error::SizeMismatch(rc.attachments.len(), rc.host.n()));
    }
    let mut g = rc.host.clone();
    let mut maps = Vec::with_capacity(rc.host.n());
    for (v, att) in rc.attachments.iter().enumerate() {
        match att {
            None => maps.push(Vec::new()),
            Some(Attachment::Rooted { graph, root }) => {
                let (next, map) = one_sum(&g, graph, v, *root)?;
                g = next;
                maps.push(map);
            }
            Some(Attachment::Tail(len)) => {
                g = attach_tail(&g, v, *len)?;
                maps.push(Vec::new());
            }
        }
    }
    Ok((g, maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::SpectralDecomposition;

    #[test]
    fn blow_up_kron() {
        let h = WeightedGraph::new(3, [(0, 1, 2.0), (1, 2, -1.0)]).unwrap();
        let b = blow_up(&h, 3).unwrap();
        let a = h.adjacency_matrix();
        let j = nalgebra::DMatrix::from_element(3, 3, 1.0);
        assert_eq!(b.adjacency_matrix(), j.kronecker(&a));
        assert_eq!(blow_up(&h, 1).unwrap(), h);
    }

    #[test]
    fn blow_up_k2_is_c4() {
        let b = blow_up(&complete(2), 2).unwrap();
        // (0,0)-(0,1)-(1,0)-(1,1)-(0,0)
        let c4 = WeightedGraph::unweighted(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(b, c4);
    }

    #[test]
    fn blow_up_spectrum() {
        let h = path(4);
        let n = 3;
        let eh = SpectralDecomposition::new(&h.adjacency_matrix());
        let eb = SpectralDecomposition::new(&blow_up(&h, n).unwrap().adjacency_matrix());
        let mut expect: Vec<f64> = eh.eigenvalues().iter().map(|x| x * n as f64).collect();
        expect.extend(std::iter::repeat_n(0.0, (n - 1) * h.n()));
        expect.sort_by(f64::total_cmp);
        for (x, y) in expect.iter().zip(eb.eigenvalues().iter()) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn one_sum_with_k1_is_identity() {
        let g = cycle(5);
        let (s, map) = one_sum(&g, &WeightedGraph::empty(1), 3, 0).unwrap();
        assert_eq!(s, g);
        assert_eq!(map, vec![3]);
        assert!(matches!(one_sum(&g, &path(2), 5, 0), Err(Error::InvalidRoot(_))));
    }

    #[test]
    fn tails() {
        let g = attach_tail(&path(2), 1, TailLen::Finite(3)).unwrap();
        assert_eq!(g, path(4));
        let g = attach_tail(&path(2), 1, TailLen::Infinite).unwrap();
        assert_eq!(g.tails(), &[TailSpec::unit(1)]);
        assert_eq!(TailLen::parse("inf").unwrap(), TailLen::Infinite);
        assert!(TailLen::parse("0").is_err());
    }

    #[test]
    fn rooted_product_of_p3() {
        let rc = RootedCollection {
            host: path(3),
            attachments: vec![
                Some(Attachment::Rooted { graph: path(2), root: 0 }),
                Some(Attachment::Tail(TailLen::Infinite)),
                Some(Attachment::Rooted { graph: path(2), root: 0 }),
            ],
        };
        let (g, maps) = rooted_product(&rc).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(maps[0], vec![0, 3]);
        assert_eq!(maps[2], vec![2, 4]);
        assert_eq!(g.tails()[0].attach, 1);
    }

    #[test]
    fn grid_product() {
        let g = cartesian_product(&path(3), &path(3)).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 12);
    }
}
