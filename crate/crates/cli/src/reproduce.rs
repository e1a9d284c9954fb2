//! Claim catalogue and the reproduction matrix.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use qwalk_core::constructions::{blow_up, complete, cycle, fiber_index, path};
use qwalk_core::experiments::{exhaustive_tree_experiment, random_graph};
use qwalk_core::partition::{coarsest_equitable, quotient};
use qwalk_core::signed::{compose_signed, switch, SignVector};
use qwalk_core::spectral::{exp_oracle, SpectralDecomposition};
use qwalk_core::transfer::{check_pst, pgst_witness, sedentary_estimate, PST_TOL, SEDENTARY_GRID};
use qwalk_core::{
    cayley, named_gadget, run_tree_experiment, CayleySpec, Claim, Error, GadgetParams, Partition, PureState, Result,
    TailLen, WeightedGraph,
};

/// How an observation is judged against the expected value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|observed - expected| ≤ tol`
    Within,
    /// `observed ≥ expected - tol`
    AtLeast,
    /// `observed ≤ expected + tol`
    AtMost,
    /// `observed > expected`
    Above,
}

impl Comparison {
    pub fn holds(self, observed: f64, expected: f64, tol: f64) -> bool {
        match self {
            Comparison::Within => (observed - expected).abs() <= tol,
            Comparison::AtLeast => observed >= expected - tol,
            Comparison::AtMost => observed <= expected + tol,
            Comparison::Above => observed > expected,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Comparison::Within => "≈",
            Comparison::AtLeast => "≥",
            Comparison::AtMost => "≤",
            Comparison::Above => ">",
        }
    }
}

type Runner = Box<dyn Fn() -> Result<f64> + Send + Sync>;

pub struct ClaimSpec {
    pub id: String,
    pub anchor: &'static str,
    pub command: String,
    pub expected: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    run: Runner,
}

impl ClaimSpec {
    fn new(
        id: impl Into<String>,
        anchor: &'static str,
        command: impl Into<String>,
        (expected, comparison, tolerance): (f64, Comparison, f64),
        run: impl Fn() -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        ClaimSpec {
            id: id.into(),
            anchor,
            command: command.into(),
            expected,
            comparison,
            tolerance,
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> ClaimResult {
        let start = Instant::now();
        let out = (self.run)();
        let runtime = start.elapsed().as_secs_f64();
        let (observed, error) = match out {
            Ok(x) => (Some(x), None),
            Err(e) => (None, Some(e.to_string())),
        };
        ClaimResult {
            id: self.id.clone(),
            anchor: self.anchor,
            command: self.command.clone(),
            expected: self.expected,
            comparison: self.comparison,
            tolerance: self.tolerance,
            pass: observed.is_some_and(|x| self.comparison.holds(x, self.expected, self.tolerance)),
            observed,
            error,
            runtime_s: Some(runtime),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: &'static str,
    pub command: String,
    pub expected: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub observed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_s: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproductionMatrix {
    pub set: String,
    pub claims: Vec<ClaimResult>,
}

impl ReproductionMatrix {
    pub fn passed(&self) -> usize {
        self.claims.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    /// Drops runtimes so reports are byte-identical across runs.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.claims {
            c.runtime_s = None;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }

    pub fn to_table(&self) -> String {
        let timed = self.claims.iter().any(|c| c.runtime_s.is_some());
        let rows: Vec<[String; 5]> = self
            .claims
            .iter()
            .map(|c| {
                let observed = match (&c.observed, &c.error) {
                    (Some(x), _) => format!("{x:.12}"),
                    (None, Some(e)) => format!("error: {e}"),
                    (None, None) => "-".into(),
                };
                let expected = format!("{} {:.12} (tol {:.0e})", c.comparison.symbol(), c.expected, c.tolerance);
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                let time = c.runtime_s.map(|t| format!("{t:.3}s")).unwrap_or_default();
                [c.id.clone(), c.anchor.to_string(), expected, observed, format!("{verdict} {time}").trim().to_string()]
            })
            .collect();
        let header = ["claim", "anchor", "expected", "observed", if timed { "result/time" } else { "result" }];
        let mut width = header.map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(width).enumerate() {
                let pad = w - cell.chars().count();
                s.push_str(cell);
                if i + 1 < cells.len() {
                    s.push_str(&" ".repeat(pad + 2));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(&header.map(String::from));
        for r in &rows {
            out.push_str(&line(r));
        }
        let _ = writeln!(out, "{}/{} claims pass", self.passed(), self.claims.len());
        out
    }
}

pub const SETS: &[(&str, &[&str])] = &[
    ("quotient", &["§4"]),
    ("gadgets", &["§5"]),
    ("blowup", &["§6"]),
    ("sedentary", &["§7"]),
    ("cayley", &["§8"]),
    ("tails", &["§9"]),
    ("oracle", &[]),
    ("pgst", &[]),
    ("trees", &[]),
];

/// Canonical set name for a name or alias; `all` is accepted.
pub fn canonical_set(name: &str) -> Option<&'static str> {
    let key = name.trim();
    if key == "all" {
        return Some("all");
    }
    SETS.iter().find_map(|(c, a)| (*c == key || a.contains(&key)).then_some(*c))
}

pub fn claims(set: &str) -> Result<Vec<ClaimSpec>> {
    let set = canonical_set(set).ok_or_else(|| Error::BadParam(format!("unknown claim set `{set}`")))?;
    Ok(match set {
        "all" => SETS.iter().flat_map(|(s, _)| claims(s).expect("known set")).collect(),
        "quotient" => quotient_claims(),
        "gadgets" => gadget_claims(),
        "blowup" => blowup_claims(),
        "sedentary" => sedentary_claims(),
        "cayley" => cayley_claims(),
        "tails" => tail_claims(),
        "oracle" => oracle_claims(),
        "pgst" => pgst_claims(),
        "trees" => tree_claims(),
        _ => unreachable!("canonical set names are handled"),
    })
}

pub fn reproduce(set: &str) -> Result<ReproductionMatrix> {
    let specs = claims(set)?;
    let results = specs.par_iter().map(ClaimSpec::run).collect();
    Ok(ReproductionMatrix {
        set: canonical_set(set).unwrap_or_default().to_string(),
        claims: results,
    })
}

const PST: (f64, Comparison, f64) = (1.0, Comparison::AtLeast, PST_TOL);

fn fidelity(g: &WeightedGraph, u: &PureState, v: &PureState, tau: f64) -> Result<f64> {
    Ok(check_pst(g, u, v, tau, PST_TOL)?.fidelity)
}

fn gadget_fidelity(name: &str, params: &GadgetParams) -> Result<f64> {
    let g = named_gadget(name, params)?;
    match g.claim {
        Claim::Transfer { src, dst, tau } => fidelity(&g.graph, &src, &dst, tau),
        Claim::Sedentary { .. } => Err(Error::BadParam(format!("{name} carries no transfer claim"))),
    }
}

fn gadget_grid_min(name: &str, params: &GadgetParams, horizon: Option<f64>) -> Result<f64> {
    let g = named_gadget(name, params)?;
    match g.claim {
        Claim::Sedentary { state, .. } => Ok(sedentary_estimate(&g.graph, &state, horizon, SEDENTARY_GRID)?.grid_min),
        Claim::Transfer { .. } => Err(Error::BadParam(format!("{name} carries no sedentary claim"))),
    }
}

fn pair(a: usize, b: usize) -> PureState {
    PureState::pair(a, b).expect("distinct vertices")
}

fn plus(a: usize, b: usize) -> PureState {
    PureState::plus(a, b).expect("distinct vertices")
}

fn quotient_claims() -> Vec<ClaimSpec> {
    let mut out: Vec<ClaimSpec> = [
        ("six-vertex-plus", "six-vertex", "--plus 1,2 --plus-dst 4,5"),
        ("six-vertex-signed-pair", "six-vertex-signed-pair", "--pair 1,2 --pair-dst 4,5"),
        ("six-vertex-signed-mixed", "six-vertex-signed-mixed", "--plus 1,2 --pair-dst 4,5"),
    ]
    .into_iter()
    .map(|(id, name, states)| {
        ClaimSpec::new(
            id,
            "quotient",
            format!("construct {name}; check pst {states} --tau pi/(2*sqrt2)"),
            PST,
            move || gadget_fidelity(name, &GadgetParams::default()),
        )
    })
    .collect();
    out.push(ClaimSpec::new(
        "six-vertex-intertwining",
        "quotient",
        "construct six-vertex; analyze --seed {{1,2},{3,4,5,6}}",
        (0.0, Comparison::AtMost, 1e-10),
        || {
            let g = named_gadget("six-vertex", &GadgetParams::default())?.graph;
            let seed = Partition::new(6, vec![vec![0, 1], vec![2, 3, 4, 5]])?;
            let ed = coarsest_equitable(&g, &seed)?;
            let q = quotient(&g, &ed)?;
            Ok(q.intertwining_residual.max(q.evolution_residual))
        },
    ));
    out
}

/// Attached graphs for the twin gadgets; `None` is the bare gadget.
fn attached_graphs() -> Vec<(&'static str, Option<WeightedGraph>)> {
    vec![
        ("k1", None),
        ("p4", Some(path(4))),
        ("c5", Some(cycle(5))),
        ("g10", Some(random_graph(10, 0.4, 11))),
    ]
}

fn gadget_claims() -> Vec<ClaimSpec> {
    let mut out = Vec::new();
    for (hname, h) in attached_graphs() {
        for (kind, name, states) in [
            ("pair", "p2-twins", "--pair 1,5 --pair-dst 2,4"),
            ("signed-plus", "p2-twins-signed-plus", "--plus 1,5 --plus-dst 2,4"),
            ("signed-mixed", "p2-twins-signed-mixed", "--plus 1,5 --pair-dst 2,4"),
        ] {
            let params = GadgetParams { h: h.clone().map(|g| (g, 0)), ..Default::default() };
            out.push(ClaimSpec::new(
                format!("p2-twins-{kind}-h-{hname}"),
                "twins",
                format!("construct {name} --attach {hname}; check pst {states} --tau pi/2"),
                PST,
                move || gadget_fidelity(name, &params),
            ));
        }
    }
    for (name, states) in [("p3-twins-star", "--pair 1,4 --pair-dst 3,6"), ("p3-twins-path", "--pair 1,7 --pair-dst 3,5")] {
        out.push(ClaimSpec::new(
            name,
            "twins",
            format!("construct {name}; check pst {states} --tau pi/sqrt2"),
            PST,
            move || gadget_fidelity(name, &GadgetParams::default()),
        ));
    }
    out
}

/// Normalised sum of the fiber copies of `a`.
fn fiber_sum(h_n: usize, copies: usize, a: usize) -> Result<PureState> {
    PureState::from_real(&(0..copies).map(|j| (fiber_index(h_n, j, a), 1.0)).collect::<Vec<_>>())
}

fn blowup_claims() -> Vec<ClaimSpec> {
    let mut out = Vec::new();
    for n in [2, 3, 4] {
        out.push(ClaimSpec::new(
            format!("blowup-p2-n{n}"),
            "blow-up",
            format!("construct blowup --base p2 --copies {n}; check pst --state sum0 --state-dst sum1 --tau pi/{}", 2 * n),
            PST,
            move || {
                let g = blow_up(&path(2), n)?;
                fidelity(&g, &fiber_sum(2, n, 0)?, &fiber_sum(2, n, 1)?, FRAC_PI_2 / n as f64)
            },
        ));
    }
    out.push(ClaimSpec::new(
        "blowup-p3-plus",
        "blow-up",
        "construct blowup --base p3 --copies 2; check pst --plus 0,3 --plus-dst 2,5 --tau pi/(2*sqrt2)",
        PST,
        || {
            let g = blow_up(&path(3), 2)?;
            fidelity(&g, &plus(0, 3), &plus(2, 5), PI / (2.0 * SQRT_2))
        },
    ));
    // D_(1,a) = -D_(0,a); D_(1,b) = -D_(0,b) keeps pairs, D_(1,b) = D_(0,b) ends in a plus state
    for (base, h, b, tau) in [("p2", path(2), 1, FRAC_PI_2), ("p3", path(3), 2, PI / SQRT_2)] {
        let m = h.n();
        for (kind, flip_b) in [("pair-pair", true), ("pair-plus", false)] {
            let h = h.clone();
            out.push(ClaimSpec::new(
                format!("blowup-{base}-signed-{kind}"),
                "blow-up",
                format!("construct blowup --base {base} --copies 2; transform switch; check pst --tau tau/2"),
                PST,
                move || {
                    let g = blow_up(&h, 2)?;
                    let mut neg = vec![m];
                    if flip_b {
                        neg.push(m + b);
                    }
                    let sv = SignVector::negating(2 * m, &neg)?;
                    let gt = switch(&g, &sv)?;
                    let dst = if flip_b { pair(b, m + b) } else { plus(b, m + b) };
                    fidelity(&gt, &pair(0, m), &dst, tau / 2.0)
                },
            ));
        }
    }
    out
}

fn sedentary_claims() -> Vec<ClaimSpec> {
    let mut out = Vec::new();
    for n in [3usize, 5, 8] {
        let c = (n as f64 - 2.0) / n as f64;
        out.push(ClaimSpec::new(
            format!("complete-k{n}-vertex"),
            "sedentary",
            format!("construct complete --n {n}; check sedentary --vertex 0 --horizon auto"),
            (c, Comparison::AtLeast, 1e-6),
            move || Ok(sedentary_estimate(&complete(n), &PureState::vertex(0), None, SEDENTARY_GRID)?.grid_min),
        ));
    }
    for n in [3usize, 4, 5] {
        let c = 1.0 - 2.0 / n as f64;
        for name in ["kn-twins", "kn-twins-signed"] {
            let states = if name == "kn-twins" { "--pair" } else { "--plus" };
            out.push(ClaimSpec::new(
                format!("{name}-n{n}"),
                "sedentary",
                format!("construct {name} --n {n}; check sedentary {states} 1,{} --horizon auto", n + 2),
                (c, Comparison::AtLeast, 1e-6),
                move || gadget_grid_min(name, &GadgetParams { n: Some(n), ..Default::default() }, None),
            ));
        }
    }
    for n in [3usize, 4, 5] {
        let c = (n as f64 - 2.0) / n as f64;
        out.push(ClaimSpec::new(
            format!("blowup-k{n}-plus"),
            "sedentary",
            format!("construct blowup --base k{n} --copies 2; check sedentary --plus 0,{n} --horizon auto"),
            (c, Comparison::AtLeast, 1e-6),
            move || {
                let g = blow_up(&complete(n), 2)?;
                Ok(sedentary_estimate(&g, &plus(0, n), None, SEDENTARY_GRID)?.grid_min)
            },
        ));
    }
    out.push(ClaimSpec::new(
        "pn-prime-n5",
        "sedentary",
        "construct pn-prime --n 5; check sedentary --pair a1,b1 --horizon 100",
        (0.0, Comparison::Above, 0.0),
        || gadget_grid_min("pn-prime", &GadgetParams { n: Some(5), ..Default::default() }, Some(100.0)),
    ));
    out
}

/// Positive part on `S_1`, negative part on `S_2`.
fn signed_cayley(moduli: &[usize], s1: Vec<Vec<usize>>, s2: Vec<Vec<usize>>) -> Result<(WeightedGraph, f64)> {
    let h = cayley(&CayleySpec::new(moduli.to_vec(), s1)?)?;
    let k = cayley(&CayleySpec::new(moduli.to_vec(), s2)?)?;
    let (ha, ka) = (h.adjacency_matrix(), k.adjacency_matrix());
    let residual = (&ha * &ka - &ka * &ha).amax();
    Ok((compose_signed(&h, &k)?, residual))
}

fn example_one() -> Result<(WeightedGraph, f64)> {
    signed_cayley(&[6, 4], vec![vec![1, 0], vec![5, 0]], (1..4).map(|j| vec![0, j]).collect())
}

fn example_two() -> Result<(WeightedGraph, f64)> {
    signed_cayley(
        &[8, 2, 2],
        vec![vec![1, 0, 0], vec![7, 0, 0]],
        vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]],
    )
}

fn cayley_claims() -> Vec<ClaimSpec> {
    let mut out = vec![ClaimSpec::new(
        "signed-c6-plus",
        "cayley",
        "construct cycle --n 6; transform negate 3,4 0,5; check pst --plus 1,5 --plus-dst 2,4 --tau pi/2",
        PST,
        || {
            let g = cycle(6).negate_edges(&[(3, 4), (0, 5)])?;
            fidelity(&g, &plus(1, 5), &plus(2, 4), FRAC_PI_2)
        },
    )];
    let idx1 = |a: usize, j: usize| a * 4 + j;
    for j in 0..4 {
        out.push(ClaimSpec::new(
            format!("cayley-z6xz4-pair-j{j}"),
            "cayley",
            format!("construct cayley --group 6,4 --conn (1,0),(5,0) --neg (0,1),(0,2),(0,3); check pst --pair (0,{j}),(2,{j}) --pair-dst (3,{j}),(5,{j}) --tau pi/2"),
            PST,
            move || {
                let (g, _) = example_one()?;
                fidelity(&g, &pair(idx1(0, j), idx1(2, j)), &pair(idx1(3, j), idx1(5, j)), FRAC_PI_2)
            },
        ));
    }
    out.push(ClaimSpec::new(
        "cayley-z6xz4-commute",
        "cayley",
        "construct cayley --group 6,4 --conn (1,0),(5,0) --neg (0,1),(0,2),(0,3)",
        (0.0, Comparison::AtMost, 1e-10),
        || Ok(example_one()?.1),
    ));
    let idx2 = |a: usize, j: usize| a * 4 + j;
    for j in 0..4 {
        let label = format!("{},{}", j / 2, j % 2);
        out.push(ClaimSpec::new(
            format!("cayley-z8xz2xz2-plus-j{j}"),
            "cayley",
            format!("construct cayley --group 8,2,2 --conn (1,0,0),(7,0,0) --neg (0,0,1),(0,1,0),(0,1,1); check pst --plus (0,{label}),(4,{label}) --plus-dst (2,{label}),(6,{label}) --tau pi/2"),
            PST,
            move || {
                let (g, _) = example_two()?;
                fidelity(&g, &plus(idx2(0, j), idx2(4, j)), &plus(idx2(2, j), idx2(6, j)), FRAC_PI_2)
            },
        ));
    }
    out.push(ClaimSpec::new(
        "cayley-z8xz2xz2-commute",
        "cayley",
        "construct cayley --group 8,2,2 --conn (1,0,0),(7,0,0) --neg (0,0,1),(0,1,0),(0,1,1)",
        (0.0, Comparison::AtMost, 1e-10),
        || Ok(example_two()?.1),
    ));
    out
}

fn tail_claims() -> Vec<ClaimSpec> {
    let tails = |lens: &[TailLen]| lens.to_vec();
    let mut out = Vec::new();
    for t in tails(&[TailLen::Finite(1), TailLen::Finite(2), TailLen::Finite(4), TailLen::Finite(8), TailLen::Infinite]) {
        out.push(ClaimSpec::new(
            format!("flyswatter-tail-{t}"),
            "tails",
            format!("construct flyswatter --tail {t}; check pst --pair 1,7 --pair-dst 3,5 --tau pi/sqrt2"),
            PST,
            move || gadget_fidelity("flyswatter", &GadgetParams { tail: Some(t), ..Default::default() }),
        ));
    }
    for p in [3usize, 4, 5, 6] {
        for t in tails(&[TailLen::Finite(1), TailLen::Finite(3), TailLen::Infinite]) {
            let tau = if p % 2 == 1 { "pi/2" } else { "pi/sqrt2" };
            out.push(ClaimSpec::new(
                format!("h2p-p{p}-tail-{t}"),
                "tails",
                format!("construct h2p --p {p} --tail {t}; check pst --tau {tau}"),
                PST,
                move || gadget_fidelity("h2p", &GadgetParams { p: Some(p), tail: Some(t), ..Default::default() }),
            ));
        }
    }
    for (n, tau) in [(2usize, "pi/2"), (3, "pi/sqrt2")] {
        out.push(ClaimSpec::new(
            format!("tail-twins-p{n}"),
            "tails",
            format!("construct tail-twins --n {n} --tail inf; check pst --tau {tau}"),
            PST,
            move || gadget_fidelity("tail-twins", &GadgetParams { n: Some(n), ..Default::default() }),
        ));
    }
    out
}

/// Weighted random graph and time for the oracle comparison.
fn oracle_instance(k: u64) -> Result<(WeightedGraph, f64)> {
    let n = 3 + (k as usize % 10);
    let g = random_graph(n, 0.5, 1000 + k);
    let scale = 0.5 + (k % 7) as f64 * 0.25;
    let t = 0.1 + (k % 13) as f64 * 0.37;
    Ok((WeightedGraph::new(n, g.edges().map(|(a, b, w)| (a, b, w * scale)))?, t))
}

fn oracle_claims() -> Vec<ClaimSpec> {
    vec![ClaimSpec::new(
        "spectral-vs-taylor-100",
        "oracle",
        "internal: 100 random weighted graphs, max entrywise |exp(itA) - oracle|",
        (0.0, Comparison::AtMost, 1e-9),
        || {
            (0..100u64)
                .into_par_iter()
                .map(|k| {
                    let (g, t) = oracle_instance(k)?;
                    let a = g.adjacency_matrix();
                    let spec = SpectralDecomposition::new(&a).transition_matrix(t);
                    Ok((spec - exp_oracle(&a, t)).iter().map(|z| z.norm()).fold(0.0, f64::max))
                })
                .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))
        },
    )]
}

fn pgst_claims() -> Vec<ClaimSpec> {
    vec![
        ClaimSpec::new(
            "blowup-c8-antipodal-plus",
            "pgst",
            "construct blowup --base c8 --copies 2; check pgst --plus 0,8 --plus-dst 4,12 --target 0.999 --t-cap 1e4",
            (0.999, Comparison::AtLeast, 0.0),
            || {
                let g = blow_up(&cycle(8), 2)?;
                Ok(pgst_witness(&g, &plus(0, 8), &plus(4, 12), 0.999, 1e4)?.fidelity)
            },
        ),
        ClaimSpec::new(
            "signed-c8-plus",
            "pgst",
            "construct cycle --n 8; transform negate 0,7 4,5; check pgst --plus 1,7 --plus-dst 3,5 --target 0.99 --t-cap 1e4",
            (0.99, Comparison::AtLeast, 0.0),
            || {
                let g = cycle(8).negate_edges(&[(0, 7), (4, 5)])?;
                Ok(pgst_witness(&g, &plus(1, 7), &plus(3, 5), 0.99, 1e4)?.fidelity)
            },
        ),
        // n = 8 is switching-equivalent to pair transfer on P_3 and is in fact PST;
        // n = 16 reduces to P_7, where only PGST is available
        ClaimSpec::new(
            "signed-c16-plus",
            "pgst",
            "construct cycle --n 16; transform negate 0,15 8,9; check pgst --plus 1,15 --plus-dst 7,9 --target 0.99 --t-cap 1e4",
            (0.99, Comparison::AtLeast, 0.0),
            || {
                let g = cycle(16).negate_edges(&[(0, 15), (8, 9)])?;
                Ok(pgst_witness(&g, &plus(1, 15), &plus(7, 9), 0.99, 1e4)?.fidelity)
            },
        ),
    ]
}

fn tree_claims() -> Vec<ClaimSpec> {
    let mut out = vec![
        ClaimSpec::new(
            "trees-exhaustive-n6-hits",
            "trees",
            "experiment trees --exhaustive --sizes 6",
            (360.0, Comparison::Within, 0.0),
            || Ok(exhaustive_tree_experiment(6).hits as f64),
        ),
        ClaimSpec::new(
            "trees-exhaustive-n6-verified",
            "trees",
            "experiment trees --exhaustive --sizes 6",
            (1.0, Comparison::Within, 0.0),
            || {
                let r = exhaustive_tree_experiment(6);
                Ok(r.verified as f64 / r.hits.max(1) as f64)
            },
        ),
    ];
    for n in [8usize, 12, 16] {
        out.push(ClaimSpec::new(
            format!("trees-n{n}-hits-verified"),
            "trees",
            format!("experiment trees --sizes {n} --samples 200 --seed 1"),
            (1.0, Comparison::Within, 0.0),
            move || {
                let r = &run_tree_experiment(&[n], 200, 1)[0];
                if r.hits == 0 {
                    return Err(Error::BadParam(format!("no limb among {} trees of size {n}", r.samples)));
                }
                Ok(r.verified as f64 / r.hits as f64)
            },
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_aliases() {
        assert_eq!(canonical_set("§4"), Some("quotient"));
        assert_eq!(canonical_set("all"), Some("all"));
        assert_eq!(canonical_set("§10"), None);
    }

    #[test]
    fn claim_ids_unique() {
        let all = claims("all").unwrap();
        let mut ids: Vec<&str> = all.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }

    #[test]
    fn quotient_set_passes() {
        let m = reproduce("§4").unwrap();
        assert_eq!(m.claims.len(), 4);
        assert!(m.all_pass(), "{}", m.to_table());
    }

    #[test]
    fn comparisons() {
        assert!(Comparison::AtLeast.holds(0.9999999999, 1.0, 1e-9));
        assert!(!Comparison::AtLeast.holds(0.99, 1.0, 1e-9));
        assert!(Comparison::Above.holds(0.1, 0.0, 0.0));
        assert!(!Comparison::Within.holds(359.0, 360.0, 0.0));
    }
}
