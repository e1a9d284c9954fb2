//! Named fixture graphs with a designated transfer or sedentariness claim.
//!
//! Vertices carry numeric labels (`"1"`, `"2"`, ...); attached graphs add
//! `h<v>` labels and finite tails add `t<k>` labels.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::constructions::{attach_tail, one_sum, path, rooted_product, Attachment, RootedCollection, TailLen};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::signed::{switch, SignVector};
use crate::state::PureState;

#[derive(Debug, Clone, PartialEq)]
pub enum Claim {
    Transfer { src: PureState, dst: PureState, tau: f64 },
    /// `bound: None` means sedentary with an unspecified constant.
    Sedentary { state: PureState, bound: Option<f64> },
}

#[derive(Debug, Clone)]
pub struct Gadget {
    pub name: &'static str,
    pub graph: WeightedGraph,
    pub claim: Claim,
    /// Twin subgraph vertex lists `(x1, x2)` with `x2[i] = f(x1[i])`, for
    /// unsigned gadgets built from twins.
    pub twins: Option<(Vec<usize>, Vec<usize>)>,
}

/// Optional parameters; each gadget reads the ones it needs.
#[derive(Debug, Clone, Default)]
pub struct GadgetParams {
    /// Graph `H` and its root, identified with the gadget's attachment vertex.
    pub h: Option<(WeightedGraph, usize)>,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub tail: Option<TailLen>,
}

const NAMES: &[(&str, &[&str])] = &[
    ("p2-twins", &["fig1_left", "fig2_left"]),
    ("p2-twins-perturbed", &["fig1_right"]),
    ("p2-twins-signed-plus", &["fig2_signed_plus", "fig4_left"]),
    ("p2-twins-signed-mixed", &["fig2_signed_mixed", "fig4_right"]),
    ("six-vertex", &["fig3a"]),
    ("six-vertex-signed-pair", &["fig3b"]),
    ("six-vertex-signed-mixed", &["fig3c"]),
    ("p3-twins-star", &["p3_twins", "p3_twins_left", "fig5_left"]),
    ("p3-twins-path", &["p3_twins_right", "fig5_right"]),
    ("flyswatter", &["fig6"]),
    ("h2p", &["fig7"]),
    ("pn-prime", &["pn_prime"]),
    ("kn-twins", &["k_n_twin_gadget"]),
    ("kn-twins-signed", &["k_n_twin_gadget_signed"]),
    ("tail-twins", &["tail_twins"]),
];

/// Canonical gadget names with their aliases.
pub fn gadget_names() -> &'static [(&'static str, &'static [&'static str])] {
    NAMES
}

fn canonical(name: &str) -> Option<&'static str> {
    let key = name.trim().to_ascii_lowercase().replace('_', "-");
    NAMES.iter().find_map(|(c, aliases)| {
        (*c == key || aliases.iter().any(|a| a.replace('_', "-") == key)).then_some(*c)
    })
}

pub fn named_gadget(name: &str, params: &GadgetParams) -> Result<Gadget> {
    let name = canonical(name).ok_or_else(|| Error::UnknownGadget(name.to_string()))?;
    match name {
        "p2-twins" => p2_twins(params, name),
        "p2-twins-perturbed" => {
            let mut g = p2_twins(params, name)?;
            let extra = WeightedGraph::unweighted(g.graph.n(), [(4, 1), (3, 0)])?;
            g.graph = merge(&g.graph, &extra)?;
            let u = pair(0, 4);
            g.claim = Claim::Transfer { src: u.clone(), dst: u, tau: FRAC_PI_2 };
            Ok(g)
        }
        "p2-twins-signed-plus" | "p2-twins-signed-mixed" => {
            let base = p2_twins(params, name)?;
            // negating vertex 5 flips {4,5}; negating 4 and 5 flips {3,4}
            let neg: &[usize] = if name == "p2-twins-signed-plus" { &[3, 4] } else { &[4] };
            let dst = if name == "p2-twins-signed-plus" { plus(1, 3) } else { pair(1, 3) };
            signed(base, neg, plus(0, 4), dst)
        }
        "six-vertex" | "six-vertex-signed-pair" | "six-vertex-signed-mixed" => six_vertex(name),
        "p3-twins-star" => {
            let g = WeightedGraph::unweighted(7, [(0, 1), (1, 2), (1, 6), (6, 4), (4, 3), (4, 5)])?;
            let g = with_h(g, numeric(7), 6, params)?;
            Ok(Gadget {
                name,
                graph: g,
                claim: Claim::Transfer { src: pair(0, 3), dst: pair(2, 5), tau: PI / SQRT_2 },
                twins: Some((vec![0, 1, 2], vec![3, 4, 5])),
            })
        }
        "p3-twins-path" => {
            let g = with_h(path(7), numeric(7), 3, params)?;
            Ok(Gadget {
                name,
                graph: g,
                claim: Claim::Transfer { src: pair(0, 6), dst: pair(2, 4), tau: PI / SQRT_2 },
                twins: Some((vec![0, 1, 2], vec![6, 5, 4])),
            })
        }
        "flyswatter" => flyswatter(params),
        "h2p" => h2p(params),
        "pn-prime" => pn_prime(params),
        "kn-twins" | "kn-twins-signed" => kn_twins(params, name),
        "tail-twins" => tail_twins(params),
        _ => unreachable!("every canonical name is handled"),
    }
}

fn pair(a: usize, b: usize) -> PureState {
    PureState::pair(a, b).expect("distinct vertices")
}

fn plus(a: usize, b: usize) -> PureState {
    PureState::plus(a, b).expect("distinct vertices")
}

fn numeric(n: usize) -> Vec<String> {
    (1..=n).map(|v| v.to_string()).collect()
}

fn merge(g: &WeightedGraph, extra: &WeightedGraph) -> Result<WeightedGraph> {
    let mut out = WeightedGraph::new(g.n(), g.edges().chain(extra.edges()))?;
    if g.has_tails() {
        out = out.with_tails(g.tails().to_vec())?;
    }
    match g.labels() {
        Some(l) => out.with_labels(l.to_vec()),
        None => Ok(out),
    }
}

/// Identifies the root of `params.h` (default `K_1`) with `at`, then labels.
fn with_h(g: WeightedGraph, mut labels: Vec<String>, at: usize, params: &GadgetParams) -> Result<WeightedGraph> {
    let g = match &params.h {
        None => g,
        Some((h, root)) => {
            if h.has_tails() {
                return Err(Error::BadParam("the attached graph must be finite".into()));
            }
            let (s, _) = one_sum(&g, h, at, *root)?;
            labels.extend((0..h.n()).filter(|v| v != root).map(|v| format!("h{}", v + 1)));
            s
        }
    };
    g.with_labels(labels)
}

/// Adds the tail at `at`, labelling finite tail vertices `t1, t2, ...`.
fn with_tail(g: WeightedGraph, mut labels: Vec<String>, at: usize, tail: TailLen) -> Result<WeightedGraph> {
    let g = attach_tail(&g, at, tail)?;
    if let TailLen::Finite(n) = tail {
        labels.extend((1..n).map(|k| format!("t{k}")));
    }
    g.with_labels(labels)
}

fn relabel(g: WeightedGraph, labels: Option<Vec<String>>) -> Result<WeightedGraph> {
    match labels {
        Some(l) => g.with_labels(l),
        None => Ok(g),
    }
}

fn signed(base: Gadget, negate: &[usize], src: PureState, dst: PureState) -> Result<Gadget> {
    let sv = SignVector::negating(base.graph.n(), negate)?;
    let labels = base.graph.labels().map(<[String]>::to_vec);
    let tau = match base.claim {
        Claim::Transfer { tau, .. } => tau,
        Claim::Sedentary { .. } => 0.0,
    };
    let claim = match base.claim {
        Claim::Transfer { .. } => Claim::Transfer { src, dst, tau },
        Claim::Sedentary { bound, .. } => Claim::Sedentary { state: src, bound },
    };
    Ok(Gadget {
        name: base.name,
        graph: relabel(switch(&base.graph, &sv)?, labels)?,
        claim,
        twins: None,
    })
}

fn p2_twins(params: &GadgetParams, name: &'static str) -> Result<Gadget> {
    let g = WeightedGraph::unweighted(5, [(2, 1), (1, 0), (3, 4), (2, 3)])?;
    let g = with_h(g, numeric(5), 2, params)?;
    Ok(Gadget {
        name,
        graph: g,
        claim: Claim::Transfer { src: pair(0, 4), dst: pair(1, 3), tau: FRAC_PI_2 },
        twins: Some((vec![0, 1], vec![4, 3])),
    })
}

fn six_vertex(name: &'static str) -> Result<Gadget> {
    // {2,3} appears twice in the drawing; the duplicate is accepted
    let decl = [(1, 3), (3, 2), (2, 6), (6, 1), (2, 3), (3, 4), (4, 6), (6, 5), (5, 3)];
    let g = WeightedGraph::unweighted(6, decl.iter().map(|&(a, b)| (a - 1, b - 1)))?.with_labels(numeric(6))?;
    let tau = PI / (2.0 * SQRT_2);
    let base = Gadget {
        name,
        graph: g,
        claim: Claim::Transfer { src: plus(0, 1), dst: plus(3, 4), tau },
        twins: None,
    };
    match name {
        "six-vertex" => Ok(base),
        "six-vertex-signed-pair" => signed(base, &[1, 4], pair(0, 1), pair(3, 4)),
        _ => signed(base, &[4], plus(0, 1), pair(3, 4)),
    }
}

fn flyswatter(params: &GadgetParams) -> Result<Gadget> {
    let decl = [(9, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 9), (1, 8), (8, 7), (3, 9), (9, 5)];
    let g = WeightedGraph::unweighted(9, decl.iter().map(|&(a, b)| (a - 1, b - 1)))?;
    let tail = params.tail.unwrap_or(TailLen::Finite(params.n.unwrap_or(4)));
    let g = with_tail(g, numeric(9), 3, tail)?;
    Ok(Gadget {
        name: "flyswatter",
        graph: g,
        claim: Claim::Transfer { src: pair(0, 6), dst: pair(2, 4), tau: PI / SQRT_2 },
        twins: Some((vec![0, 1, 2], vec![6, 5, 4])),
    })
}

/// `C_{2p}` on `0..2p` with the parity-dependent matching and a tail at `p`.
fn h2p(params: &GadgetParams) -> Result<Gadget> {
    let p = params.p.unwrap_or(3);
    if p < 3 {
        return Err(Error::BadParam(format!("h2p needs p >= 3, got {p}")));
    }
    let tail = params.tail.unwrap_or(TailLen::Finite(params.n.unwrap_or(1)));
    let mut edges: Vec<(usize, usize)> = (0..2 * p).map(|j| (j, (j + 1) % (2 * p))).collect();
    let (x1, x2, tau) = if p % 2 == 1 {
        if p >= 5 {
            let h = (p - 1) / 2;
            edges.extend([(h - 1, (3 * p).div_ceil(2)), (h, 3 * (p + 1) / 2), (h + 1, 3 * h), (h + 2, (3 * p - 1) / 2)]);
        }
        (vec![(p - 1) / 2, p.div_ceil(2)], vec![(3 * p).div_ceil(2), (3 * p - 1) / 2], FRAC_PI_2)
    } else {
        let h = p / 2;
        if p >= 6 {
            edges.extend([(h - 2, 3 * h + 1), (h - 1, 3 * h + 2), (h + 1, 3 * h - 2), (h + 2, 3 * h - 1)]);
        }
        (vec![h - 1, h, h + 1], vec![3 * h + 1, 3 * h, 3 * h - 1], PI / SQRT_2)
    };
    let g = WeightedGraph::unweighted(2 * p, edges)?;
    let labels = (0..2 * p).map(|v| v.to_string()).collect();
    let g = with_tail(g, labels, p, tail)?;
    let (a, b) = (x1[0], x2[0]);
    let (c, d) = (*x1.last().unwrap(), *x2.last().unwrap());
    Ok(Gadget {
        name: "h2p",
        graph: g,
        claim: Claim::Transfer { src: pair(a, b), dst: pair(c, d), tau },
        twins: Some((x1, x2)),
    })
}

/// Two copies of `P_n'` whose far path ends meet at a hub; the claim is
/// the pair state on the two copies of the twin vertex `u`.
fn pn_prime(params: &GadgetParams) -> Result<Gadget> {
    let n = params.n.unwrap_or(5);
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::BadParam(format!("pn-prime needs odd n >= 3, got {n}")));
    }
    // copy: u=0, path 0..n, v=n adjacent to 1; hub joins the two copies at n-1
    let m = n + 1;
    let mut edges = Vec::new();
    for off in [0, m] {
        edges.extend((1..n).map(|j| (off + j - 1, off + j)));
        edges.push((off + n, off + 1));
    }
    let hub = 2 * m;
    edges.extend([(n - 1, hub), (m + n - 1, hub)]);
    let g = WeightedGraph::unweighted(2 * m + 1, edges)?;
    let mut labels: Vec<String> = (1..=n).map(|j| format!("a{j}")).collect();
    labels.push("av".into());
    labels.extend((1..=n).map(|j| format!("b{j}")));
    labels.push("bv".into());
    labels.push("hub".into());
    let g = with_h(g, labels, hub, params)?;
    let x1: Vec<usize> = (0..m).collect();
    let x2: Vec<usize> = (m..2 * m).collect();
    Ok(Gadget {
        name: "pn-prime",
        graph: g,
        claim: Claim::Sedentary { state: pair(0, m), bound: None },
        twins: Some((x1, x2)),
    })
}

fn kn_twins(params: &GadgetParams, name: &'static str) -> Result<Gadget> {
    let n = params.n.unwrap_or(3);
    if n < 3 {
        return Err(Error::BadParam(format!("kn-twins needs n >= 3, got {n}")));
    }
    let hub = n;
    let mut edges = Vec::new();
    for off in [0, n + 1] {
        edges.extend((0..n).flat_map(|a| (a + 1..n).map(move |b| (off + a, off + b))));
    }
    edges.extend([(n - 1, hub), (hub, 2 * n)]);
    let g = WeightedGraph::unweighted(2 * n + 1, edges)?;
    let g = with_h(g, numeric(2 * n + 1), hub, params)?;
    let bound = Some(1.0 - 2.0 / n as f64);
    let base = Gadget {
        name,
        graph: g,
        claim: Claim::Sedentary { state: pair(0, n + 1), bound },
        twins: Some(((0..n).collect(), (n + 1..2 * n + 1).collect())),
    };
    if name == "kn-twins" {
        Ok(base)
    } else {
        signed(base, &[n + 1], plus(0, n + 1), plus(0, n + 1))
    }
}

/// Host `P_3` with `X_1` and `X_2` at its ends and a tail at its middle.
/// `n = 2`: `X_1 = P_2` rooted at an end; `n = 3`: `P_3` rooted at its centre.
fn tail_twins(params: &GadgetParams) -> Result<Gadget> {
    let n = params.n.unwrap_or(2);
    let (x, tau) = match n {
        2 => (path(2), FRAC_PI_2),
        3 => (WeightedGraph::unweighted(3, [(0, 1), (0, 2)])?, PI / SQRT_2),
        _ => return Err(Error::BadParam(format!("tail-twins takes n in {{2, 3}}, got {n}"))),
    };
    let tail = params.tail.unwrap_or(TailLen::Infinite);
    let rc = RootedCollection {
        host: path(3),
        attachments: vec![
            Some(Attachment::Rooted { graph: x.clone(), root: 0 }),
            Some(Attachment::Tail(tail)),
            Some(Attachment::Rooted { graph: x, root: 0 }),
        ],
    };
    let (g, maps) = rooted_product(&rc)?;
    let (m1, m2) = (&maps[0], &maps[2]);
    let mut labels: Vec<String> = vec!["1".into(), "2".into(), "3".into()];
    labels.extend((1..n).map(|k| format!("x{k}")));
    if let TailLen::Finite(len) = tail {
        labels.extend((1..len).map(|k| format!("t{k}")));
    }
    labels.extend((1..n).map(|k| format!("y{k}")));
    let g = g.with_labels(labels)?;
    let claim = if n == 2 {
        Claim::Transfer { src: pair(m1[0], m2[0]), dst: pair(m1[1], m2[1]), tau }
    } else {
        Claim::Transfer { src: pair(m1[1], m2[1]), dst: pair(m1[2], m2[2]), tau }
    };
    Ok(Gadget {
        name: "tail-twins",
        graph: g,
        claim,
        twins: Some((m1.clone(), m2.clone())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle};
    use crate::transfer::{check_pst, sedentary_estimate, PST_TOL};
    use crate::twins::{verify_twin_structure, TwinStructure};

    fn transfer_holds(g: &Gadget) {
        let Claim::Transfer { src, dst, tau } = &g.claim else { panic!("{} has no transfer claim", g.name) };
        let r = check_pst(&g.graph, src, dst, *tau, PST_TOL).unwrap_or_else(|e| panic!("{}: {e}", g.name));
        assert!(r.fidelity >= 1.0 - 1e-9, "{}: fidelity {}", g.name, r.fidelity);
    }

    fn twins_verify(g: &Gadget) {
        let (x1, x2) = g.twins.clone().unwrap();
        let ts = TwinStructure::build(&g.graph, x1, x2).unwrap();
        assert!(verify_twin_structure(&g.graph, &ts).unwrap().passes(1e-9), "{}", g.name);
    }

    #[test]
    fn every_transfer_fixture_holds() {
        for (name, _) in gadget_names() {
            let g = named_gadget(name, &GadgetParams::default()).unwrap();
            if matches!(g.claim, Claim::Transfer { .. }) {
                transfer_holds(&g);
            }
            if g.twins.is_some() {
                twins_verify(&g);
            }
        }
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(named_gadget("fig3a", &GadgetParams::default()).unwrap().name, "six-vertex");
        assert_eq!(named_gadget("k_n_twin_gadget", &GadgetParams::default()).unwrap().name, "kn-twins");
        assert!(matches!(named_gadget("fig99", &GadgetParams::default()), Err(Error::UnknownGadget(_))));
    }

    #[test]
    fn six_vertex_shape() {
        let g = named_gadget("six-vertex", &GadgetParams::default()).unwrap().graph;
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.degree_profile().bound(), 4.0);
    }

    #[test]
    fn with_attached_graphs() {
        for h in [path(4), cycle(5), complete(4)] {
            let params = GadgetParams { h: Some((h, 0)), ..Default::default() };
            for name in ["p2-twins", "fig4_left", "fig4_right", "p3_twins_left", "p3_twins_right"] {
                transfer_holds(&named_gadget(name, &params).unwrap());
            }
        }
    }

    #[test]
    fn flyswatter_tails() {
        for tail in [TailLen::Finite(1), TailLen::Finite(2), TailLen::Finite(8), TailLen::Infinite] {
            let g = named_gadget("flyswatter", &GadgetParams { tail: Some(tail), ..Default::default() }).unwrap();
            transfer_holds(&g);
        }
        let g = named_gadget("fig6", &GadgetParams { n: Some(4), ..Default::default() }).unwrap();
        assert_eq!(g.graph.n(), 12);
        assert_eq!(g.graph.resolve("7").unwrap(), 6);
    }

    #[test]
    fn h2p_family() {
        let g = named_gadget("h2p", &GadgetParams { p: Some(5), ..Default::default() }).unwrap();
        for (a, b) in [(1, 8), (2, 9), (3, 6), (4, 7)] {
            assert!(g.graph.has_edge(a, b));
        }
        assert_eq!(g.graph.edge_count(), 14);
        let g3 = named_gadget("h2p", &GadgetParams { p: Some(3), n: Some(3), ..Default::default() }).unwrap();
        assert_eq!(g3.claim, Claim::Transfer { src: pair(1, 5), dst: pair(2, 4), tau: FRAC_PI_2 });
        for p in [3, 4, 5, 6] {
            for tail in [TailLen::Finite(1), TailLen::Finite(3), TailLen::Infinite] {
                let g = named_gadget("h2p", &GadgetParams { p: Some(p), tail: Some(tail), ..Default::default() }).unwrap();
                transfer_holds(&g);
                twins_verify(&g);
            }
        }
        assert!(matches!(named_gadget("h2p", &GadgetParams { p: Some(2), ..Default::default() }), Err(Error::BadParam(_))));
    }

    #[test]
    fn tail_twins_both() {
        for n in [2, 3] {
            let g = named_gadget("tail-twins", &GadgetParams { n: Some(n), ..Default::default() }).unwrap();
            transfer_holds(&g);
        }
    }

    #[test]
    fn kn_twin_sedentary() {
        for n in [3, 4] {
            for name in ["kn-twins", "kn-twins-signed"] {
                let g = named_gadget(name, &GadgetParams { n: Some(n), ..Default::default() }).unwrap();
                let Claim::Sedentary { state, bound } = &g.claim else { panic!() };
                let est = sedentary_estimate(&g.graph, state, None, 4096).unwrap();
                assert!(est.grid_min >= bound.unwrap() - 1e-6, "{name} n={n}: {}", est.grid_min);
            }
        }
    }

    #[test]
    fn pn_prime_is_sedentary() {
        let g = named_gadget("pn-prime", &GadgetParams { n: Some(5), ..Default::default() }).unwrap();
        let Claim::Sedentary { state, .. } = &g.claim else { panic!() };
        let est = sedentary_estimate(&g.graph, state, Some(50.0), 4096).unwrap();
        assert!(est.grid_min > 0.0);
        assert!(matches!(named_gadget("pn-prime", &GadgetParams { n: Some(4), ..Default::default() }), Err(Error::BadParam(_))));
    }
}
