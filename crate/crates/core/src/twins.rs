//! Twin and edge-perturbed twin subgraphs.
//!
//! `x1` and `x2` are disjoint vertex lists of equal length, `f(x1[i]) = x2[i]`.
//! The swap of `x1[i]` and `x2[i]` must be a weighted automorphism of the
//! graph. The reduced Hamiltonian `A(X_1) - A'` then governs pair states
//! `(e_a - e_f(a))/√2`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::partition::{coarsest_equitable, quotient, Partition, CHECK_TIMES};
use crate::spectral::SpectralDecomposition;
use crate::state::PureState;

/// Default bound on `|x1|` during detection.
pub const DEFAULT_DETECT_CAP: usize = 6;
/// Default bound on the number of structures returned by detection.
pub const DEFAULT_MAX_RESULTS: usize = 10_000;
/// Truncation depth used when checking graphs with tails.
const TAIL_CHECK_DEPTH: usize = 4;

#[derive(Debug, Clone, Serialize)]
pub struct TwinStructure {
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    /// `A'[i][j] = A(x1[i], x2[j])`.
    #[serde(skip)]
    pub aprime: DMatrix<f64>,
    /// `A(X_1) - A'`.
    #[serde(skip)]
    pub reduced: DMatrix<f64>,
}

fn same(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-12
}

fn violation(msg: String) -> Error {
    Error::StructureViolation(msg)
}

impl TwinStructure {
    /// Checks the twin conditions and builds `A'`.
    pub fn build(g: &WeightedGraph, x1: Vec<usize>, x2: Vec<usize>) -> Result<Self> {
        let n = g.n();
        if x1.len() != x2.len() {
            return Err(violation(format!("|x1| = {} but |x2| = {}", x1.len(), x2.len())));
        }
        if x1.is_empty() {
            return Err(violation("twin subgraphs are empty".into()));
        }
        let mut image = vec![None; n];
        for (&a, &fa) in x1.iter().zip(&x2) {
            for v in [a, fa] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if image[v].is_some() {
                    return Err(violation(format!("vertex {v} used twice")));
                }
            }
            image[a] = Some(fa);
            image[fa] = Some(a);
        }
        if let Some(t) = g.tails().iter().find(|t| image[t.attach].is_some()) {
            return Err(violation(format!("tail attached at twin vertex {}", t.attach)));
        }
        for (i, &a) in x1.iter().enumerate() {
            for (j, &b) in x1.iter().enumerate() {
                let (fa, fb) = (x2[i], x2[j]);
                if !same(g.weight(fa, fb), g.weight(a, b)) {
                    return Err(violation(format!(
                        "w(f({a}), f({b})) = {} differs from w({a}, {b}) = {}",
                        g.weight(fa, fb),
                        g.weight(a, b)
                    )));
                }
                if !same(g.weight(a, fb), g.weight(fa, b)) {
                    return Err(violation(format!(
                        "cross weights w({a}, f({b})) = {} and w(f({a}), {b}) = {} differ",
                        g.weight(a, fb),
                        g.weight(fa, b)
                    )));
                }
            }
            // outside attachment
            for &(y, _) in g.neighbors(a).iter().chain(g.neighbors(x2[i])) {
                if image[y].is_some() {
                    continue;
                }
                let (wa, wf) = (g.weight(a, y), g.weight(x2[i], y));
                if !same(wa, wf) {
                    return Err(violation(format!(
                        "w(f({a}), {y}) = {wf} differs from w({a}, {y}) = {wa}"
                    )));
                }
            }
        }
        let k = x1.len();
        let aprime = DMatrix::from_fn(k, k, |i, j| g.weight(x1[i], x2[j]));
        let ax1 = DMatrix::from_fn(k, k, |i, j| g.weight(x1[i], x1[j]));
        let reduced = ax1 - &aprime;
        Ok(Self {
            x1,
            x2,
            aprime,
            reduced,
        })
    }

    pub fn len(&self) -> usize {
        self.x1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x1.is_empty()
    }

    /// `(e_{x1[i]} - e_{x2[i]})/√2`.
    pub fn pair_state(&self, i: usize) -> PureState {
        PureState::pair(self.x1[i], self.x2[i]).expect("twin vertices are distinct")
    }

    /// `B u` for a unit vector `u` indexed by positions of `x1`.
    pub fn lift(&self, u: &[Complex64]) -> Result<PureState> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = Vec::with_capacity(2 * u.len());
        for (i, &z) in u.iter().enumerate() {
            amps.push((self.x1[i], z * h));
            amps.push((self.x2[i], -z * h));
        }
        PureState::new(amps)
    }

    /// Seed partition: one cell per twin pair plus one cell with every other
    /// vertex of `n`.
    fn seed(&self, n: usize) -> Result<Partition> {
        let mut cells: Vec<Vec<usize>> = self
            .x1
            .iter()
            .zip(&self.x2)
            .map(|(&a, &b)| vec![a, b])
            .collect();
        let mut used = vec![false; n];
        for c in &cells {
            for &v in c {
                used[v] = true;
            }
        }
        let rest: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
        if !rest.is_empty() {
            cells.push(rest);
        }
        Partition::new(n, cells)
    }
}

/// `A(X_1) - A'`.
pub fn reduced_hamiltonian(ts: &TwinStructure) -> DMatrix<f64> {
    ts.reduced.clone()
}

/// Numerical residuals of the block decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct BlockCheck {
    /// `‖A Q - Q B‖_max` with `B = diag(A(X_1) - A', A(G/Π))`.
    pub residual_aq_qb: f64,
    /// `‖A QQᵀ - QQᵀ A‖_max`.
    pub residual_commute: f64,
    /// Largest off-block entry of `Qᵀ U(t) Q` over the check times.
    pub blockdiag_residual: f64,
    /// Largest deviation of the top block from `exp(it(A(X_1) - A'))`.
    pub top_block_residual: f64,
    /// Number of cells of the completed partition.
    pub cells: usize,
    /// Depth used to materialize tails, 0 for finite graphs.
    pub depth: usize,
}

impl BlockCheck {
    pub fn max_residual(&self) -> f64 {
        self.residual_aq_qb
            .max(self.residual_commute)
            .max(self.blockdiag_residual)
            .max(self.top_block_residual)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() < tol
    }
}

/// Builds `Q = [B C]` and the block operator, then measures how well the
/// decomposition holds. Graphs with tails are checked on a short truncation,
/// which keeps the twin structure intact.
pub fn verify_twin_structure(g: &WeightedGraph, ts: &TwinStructure) -> Result<BlockCheck> {
    let (h, depth) = if g.has_tails() {
        (g.truncate(TAIL_CHECK_DEPTH), TAIL_CHECK_DEPTH)
    } else {
        (g.clone(), 0)
    };
    let ts = TwinStructure::build(&h, ts.x1.clone(), ts.x2.clone())?;
    let n = h.n();
    let k = ts.len();
    let ed = coarsest_equitable(&h, &ts.seed(n)?)?;
    let quot = quotient(&h, &ed)?;
    let m = ed.partition.len();

    let mut q = DMatrix::zeros(n, k + m);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..k {
        q[(ts.x1[i], i)] = s;
        q[(ts.x2[i], i)] = -s;
    }
    q.view_mut((0, k), (n, m)).copy_from(&ed.charmatrix);
    let mut bblock = DMatrix::zeros(k + m, k + m);
    bblock.view_mut((0, 0), (k, k)).copy_from(&ts.reduced);
    bblock.view_mut((k, k), (m, m)).copy_from(&quot.adjacency);

    let a = h.adjacency_matrix();
    let residual_aq_qb = (&a * &q - &q * &bblock).amax();
    let proj = &q * q.transpose();
    let residual_commute = (&a * &proj - &proj * &a).amax();

    let full = SpectralDecomposition::new(&a);
    let top = SpectralDecomposition::new(&ts.reduced);
    let qc = q.map(|x| Complex64::new(x, 0.0));
    let mut blockdiag_residual: f64 = 0.0;
    let mut top_block_residual: f64 = 0.0;
    for &t in &CHECK_TIMES {
        let r = qc.transpose() * full.transition_matrix(t) * &qc;
        for i in 0..k + m {
            for j in 0..k + m {
                if (i < k) != (j < k) {
                    blockdiag_residual = blockdiag_residual.max(r[(i, j)].norm());
                }
            }
        }
        let ut = top.transition_matrix(t);
        let diff = (r.view((0, 0), (k, k)) - ut).map(|z| z.norm()).max();
        top_block_residual = top_block_residual.max(diff);
    }
    Ok(BlockCheck {
        residual_aq_qb,
        residual_commute,
        blockdiag_residual,
        top_block_residual,
        cells: m,
        depth,
    })
}

/// Every twin structure induced by an involutive weighted automorphism that
/// moves at most `2 cap` vertices, at most `max_results` of them.
///
/// Each automorphism yields one structure; `x1` takes one vertex from every
/// swapped pair, chosen to make `A'` as sparse as possible.
pub fn detect_twin_structures(g: &WeightedGraph, cap: usize, max_results: usize) -> Vec<TwinStructure> {
    let n = g.n();
    if n < 2 || cap == 0 || max_results == 0 {
        return Vec::new();
    }
    // automorphisms preserve the coarsest equitable partition
    let colour = match coarsest_equitable(g, &Partition::single(n)) {
        Ok(ed) => ed.partition.cell_of(),
        Err(_) => return Vec::new(),
    };
    let order = bfs_order(g);
    let mut search = Search {
        g,
        colour,
        order,
        sigma: vec![usize::MAX; n],
        pairs: Vec::new(),
        cap,
        max_results,
        found: Vec::new(),
    };
    search.run(0);
    search.found
}

fn bfs_order(g: &WeightedGraph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let a = order[head];
            head += 1;
            for &(b, _) in g.neighbors(a) {
                if !seen[b] {
                    seen[b] = true;
                    order.push(b);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a WeightedGraph,
    colour: Vec<usize>,
    order: Vec<usize>,
    /// `usize::MAX` marks an unassigned vertex.
    sigma: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    cap: usize,
    max_results: usize,
    found: Vec<TwinStructure>,
}

impl Search<'_> {
    fn consistent(&self, v: usize) -> bool {
        // every assigned u must satisfy w(σu, σv) = w(u, v); only edges at v
        // or at σv can be affected
        let sv = self.sigma[v];
        let check = |u: usize| {
            let su = self.sigma[u];
            su == usize::MAX || same(self.g.weight(su, sv), self.g.weight(u, v))
        };
        self.g.neighbors(v).iter().all(|&(u, _)| check(u))
            && self.g.neighbors(sv).iter().all(|&(u, _)| {
                let su = self.sigma[u];
                su == usize::MAX || same(self.g.weight(u, sv), self.g.weight(su, v))
            })
    }

    fn run(&mut self, idx: usize) {
        if self.found.len() >= self.max_results {
            return;
        }
        if idx == self.order.len() {
            if !self.pairs.is_empty() {
                self.emit();
            }
            return;
        }
        let v = self.order[idx];
        if self.sigma[v] != usize::MAX {
            self.run(idx + 1);
            return;
        }
        // fixed point
        self.sigma[v] = v;
        if self.consistent(v) {
            self.run(idx + 1);
        }
        self.sigma[v] = usize::MAX;
        if self.pairs.len() == self.cap {
            return;
        }
        for u in 0..self.g.n() {
            if u == v || self.sigma[u] != usize::MAX || self.colour[u] != self.colour[v] {
                continue;
            }
            self.sigma[v] = u;
            self.sigma[u] = v;
            self.pairs.push((v, u));
            if self.consistent(v) && self.consistent(u) {
                self.run(idx + 1);
            }
            self.pairs.pop();
            self.sigma[v] = usize::MAX;
            self.sigma[u] = usize::MAX;
            if self.found.len() >= self.max_results {
                return;
            }
        }
    }

    fn emit(&mut self) {
        let mut pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        pairs.sort_unstable();
        let k = pairs.len();
        let g = self.g;
        // the first pair is oriented canonically; flipping every pair gives
        // the same A'
        let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
        let choices = if k > 16 { 1u64 } else { 1u64 << (k - 1) };
        for mask in 0..choices {
            let mut x1 = Vec::with_capacity(k);
            let mut x2 = Vec::with_capacity(k);
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if i > 0 && mask >> (i - 1) & 1 == 1 {
                    x1.push(b);
                    x2.push(a);
                } else {
                    x1.push(a);
                    x2.push(b);
                }
            }
            let nnz = x1
                .iter()
                .flat_map(|&a| x2.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| g.has_edge(a, b))
                .count();
            let better = match &best {
                None => true,
                Some((bn, bx1, _)) => nnz < *bn || (nnz == *bn && {
                    let mut s1 = x1.clone();
                    let mut s2 = bx1.clone();
                    s1.sort_unstable();
                    s2.sort_unstable();
                    s1 < s2
                }),
            };
            if better {
                best = Some((nnz, x1, x2));
            }
        }
        let (_, x1, x2) = best.expect("at least one orientation");
        if let Ok(ts) = TwinStructure::build(g, x1, x2) {
            self.found.push(ts);
        }
    }
}
