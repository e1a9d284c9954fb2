//! Transition matrices `U(t) = exp(itA)` through dense symmetric
//! eigendecomposition.
//!
//! Graphs with tails are evaluated on a finite truncation whose depth is
//! chosen so that [`truncation_bound`] falls below the requested tolerance.

mod oracle;
mod truncation;

pub use oracle::exp_oracle;
pub use truncation::{required_depth, truncation_bound, TruncationCertificate};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::state::PureState;

/// Default tolerance for certified tail evolution.
pub const DEFAULT_TAIL_TOL: f64 = 1e-9;
/// Default cap on the tail truncation depth.
pub const DEFAULT_DEPTH_CAP: usize = 1 << 16;
/// First depth tried when a graph has tails.
pub const INITIAL_DEPTH: usize = 8;

/// Adjacency matrix with every tail materialized to `depth` vertices.
pub fn adjacency(g: &WeightedGraph, depth: usize) -> Result<DMatrix<f64>> {
    if g.has_tails() && depth == 0 {
        return Err(Error::TailsRequireTruncation);
    }
    Ok(g.truncate(depth).adjacency_matrix())
}

/// Eigenvalues in ascending order with orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl SpectralDecomposition {
    pub fn new(a: &DMatrix<f64>) -> Self {
        let n = a.nrows();
        if n == 0 {
            return Self {
                eigenvalues: DVector::zeros(0),
                eigenvectors: DMatrix::zeros(0, 0),
            };
        }
        let eig = SymmetricEigen::new(a.clone());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
        let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        Self {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// Largest `‖A v_k − λ_k v_k‖ / (1 + |λ_k|)` over all eigenpairs.
    pub fn max_residual(&self, a: &DMatrix<f64>) -> f64 {
        (0..self.dim())
            .map(|k| {
                let v = self.eigenvectors.column(k);
                let lam = self.eigenvalues[k];
                (a * v - v * lam).norm() / (1.0 + lam.abs())
            })
            .fold(0.0, f64::max)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Full transition matrix `V diag(e^{itλ}) Vᵀ`.
    pub fn transition_matrix(&self, t: f64) -> DMatrix<Complex64> {
        let n = self.dim();
        let v = self.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let mut scaled = v.clone();
        for k in 0..n {
            let phase = Complex64::from_polar(1.0, t * self.eigenvalues[k]);
            for r in 0..n {
                scaled[(r, k)] *= phase;
            }
        }
        scaled * v.transpose()
    }

    /// `U(t) u` for a dense vector.
    pub fn apply(&self, t: f64, u: &DVector<Complex64>) -> DVector<Complex64> {
        let v = &self.eigenvectors;
        let mut coeff = DVector::<Complex64>::zeros(self.dim());
        for k in 0..self.dim() {
            let c: Complex64 = v.column(k).iter().zip(u.iter()).map(|(&x, &z)| z * x).sum();
            coeff[k] = c * Complex64::from_polar(1.0, t * self.eigenvalues[k]);
        }
        let mut out = DVector::<Complex64>::zeros(self.dim());
        for k in 0..self.dim() {
            let c = coeff[k];
            for r in 0..self.dim() {
                out[r] += c * v[(r, k)];
            }
        }
        out
    }

    /// Precomputes `t ↦ v* U(t) u` as a finite exponential sum.
    pub fn amplitude(&self, u: &PureState, v: &PureState) -> AmplitudeSeries {
        let vecs = &self.eigenvectors;
        let project = |s: &PureState, k: usize| -> Complex64 {
            s.support().iter().map(|&(i, z)| z * vecs[(i, k)]).sum()
        };
        let mut frequencies = Vec::with_capacity(self.dim());
        let mut coefficients = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let c = project(v, k).conj() * project(u, k);
            if c.norm_sqr() > 0.0 {
                frequencies.push(self.eigenvalues[k]);
                coefficients.push(c);
            }
        }
        AmplitudeSeries {
            frequencies,
            coefficients,
        }
    }
}

/// `v* U(t) u = Σ_k c_k e^{itλ_k}`.
#[derive(Debug, Clone)]
pub struct AmplitudeSeries {
    frequencies: Vec<f64>,
    coefficients: Vec<Complex64>,
}

impl AmplitudeSeries {
    pub fn at(&self, t: f64) -> Complex64 {
        self.frequencies
            .iter()
            .zip(&self.coefficients)
            .map(|(&lam, &c)| c * Complex64::from_polar(1.0, t * lam))
            .sum()
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.at(t).norm()
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }
}

/// Options for evolving on graphs with tails.
#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions {
    pub tol: f64,
    pub depth_cap: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TAIL_TOL,
            depth_cap: DEFAULT_DEPTH_CAP,
        }
    }
}

/// A graph's walk on a fixed (possibly truncated) vertex set.
#[derive(Debug, Clone)]
pub struct Walk {
    core: usize,
    depth: usize,
    bound: f64,
    decomposition: SpectralDecomposition,
}

impl Walk {
    /// Walk on a graph without tails.
    pub fn finite(g: &WeightedGraph) -> Result<Self> {
        if g.has_tails() {
            return Err(Error::TailsRequireTruncation);
        }
        Ok(Self::at_depth(g, 0))
    }

    /// Walk on the depth-`depth` truncation.
    pub fn at_depth(g: &WeightedGraph, depth: usize) -> Self {
        let a = g.truncate(depth).adjacency_matrix();
        Self {
            core: g.n(),
            depth: if g.has_tails() { depth } else { 0 },
            bound: g.degree_profile().bound(),
            decomposition: SpectralDecomposition::new(&a),
        }
    }

    /// Walk valid for every `|t| ≤ horizon`: tails are truncated deep enough
    /// that the certificate at `horizon` is below `opts.tol`.
    pub fn for_horizon(g: &WeightedGraph, horizon: f64, opts: EvolveOptions) -> Result<Self> {
        if !g.has_tails() {
            return Ok(Self::at_depth(g, 0));
        }
        let m = g.degree_profile().bound();
        let depth = required_depth(m, horizon.abs(), opts.tol, opts.depth_cap)?;
        Ok(Self::at_depth(g, depth))
    }

    pub fn core_size(&self) -> usize {
        self.core
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.decomposition.dim()
    }

    /// The bound `M` on `‖A‖`.
    pub fn norm_bound(&self) -> f64 {
        self.bound
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    /// Error certificate for evolving a core-supported state to time `t`.
    pub fn certificate(&self, t: f64) -> TruncationCertificate {
        let bound = if self.depth == 0 {
            roundoff_estimate(self.dim(), self.bound, t)
        } else {
            truncation_bound(self.bound, t.abs(), self.depth)
                + roundoff_estimate(self.dim(), self.bound, t)
        };
        TruncationCertificate {
            depth: self.depth,
            time: t,
            bound,
        }
    }

    pub fn evolve(&self, u: &PureState, t: f64) -> Result<(DVector<Complex64>, TruncationCertificate)> {
        u.check_within(self.core)?;
        let out = self.decomposition.apply(t, &u.to_dense(self.dim()));
        Ok((out, self.certificate(t)))
    }

    pub fn amplitude(&self, u: &PureState, v: &PureState) -> Result<AmplitudeSeries> {
        u.check_within(self.core)?;
        v.check_within(self.core)?;
        Ok(self.decomposition.amplitude(u, v))
    }

    pub fn fidelity(&self, u: &PureState, v: &PureState, t: f64) -> Result<f64> {
        Ok(self.amplitude(u, v)?.fidelity(t))
    }
}

fn roundoff_estimate(dim: usize, m: f64, t: f64) -> f64 {
    16.0 * f64::EPSILON * (dim.max(1) as f64) * (1.0 + m * t.abs())
}

/// `U(t) u` on the core plus truncated tails, with its error certificate.
///
/// For graphs with tails the depth starts at 8 and doubles until the
/// certificate is below `tol`.
pub fn evolve(
    g: &WeightedGraph,
    u: &PureState,
    t: f64,
    tol: f64,
) -> Result<(DVector<Complex64>, TruncationCertificate)> {
    evolve_with(g, u, t, EvolveOptions { tol, ..EvolveOptions::default() })
}

pub fn evolve_with(
    g: &WeightedGraph,
    u: &PureState,
    t: f64,
    opts: EvolveOptions,
) -> Result<(DVector<Complex64>, TruncationCertificate)> {
    Walk::for_horizon(g, t, opts)?.evolve(u, t)
}

/// `|v* U(t) u|`, evaluated with the default tail tolerance.
pub fn fidelity(g: &WeightedGraph, u: &PureState, v: &PureState, t: f64) -> Result<f64> {
    Walk::for_horizon(g, t, EvolveOptions::default())?.fidelity(u, v, t)
}

/// Serializable summary of a decomposition, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub dim: usize,
    pub min: f64,
    pub max: f64,
    pub norm_bound: f64,
}

impl Walk {
    pub fn summary(&self) -> SpectrumSummary {
        let ev = self.decomposition.eigenvalues();
        SpectrumSummary {
            dim: self.dim(),
            min: ev.iter().copied().fold(f64::INFINITY, f64::min),
            max: ev.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            norm_bound: self.bound,
        }
    }
}
