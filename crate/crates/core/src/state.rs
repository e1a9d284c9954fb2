use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Normalization tolerance for pure states.
pub const NORM_TOL: f64 = 1e-12;

/// A unit vector supported on core vertices, stored sparsely and sorted by
/// vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PureState {
    support: Vec<(usize, Complex64)>,
}

/// Shape of a two-vertex state, as used by the switching transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoVertexKind {
    /// `(e_a - e_b)/√2`
    Pair,
    /// `(e_a + e_b)/√2`
    Plus,
}

impl PureState {
    /// Builds a state from explicit amplitudes. Zero amplitudes are dropped.
    pub fn new(amplitudes: Vec<(usize, Complex64)>) -> Result<Self> {
        let mut support: Vec<_> = amplitudes
            .into_iter()
            .filter(|(_, z)| z.norm_sqr() > 0.0)
            .collect();
        support.sort_by_key(|&(v, _)| v);
        if let Some(w) = support.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::RepeatedSupport(w[0].0));
        }
        let norm: f64 = support.iter().map(|(_, z)| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { support })
    }

    /// Like [`PureState::new`] but rescales to unit norm first.
    pub fn normalized(amplitudes: Vec<(usize, Complex64)>) -> Result<Self> {
        let norm: f64 = amplitudes
            .iter()
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Self::new(amplitudes.into_iter().map(|(v, z)| (v, z / norm)).collect())
    }

    /// Normalized real combination, e.g. a sum of fiber vertex states.
    pub fn from_real(amplitudes: &[(usize, f64)]) -> Result<Self> {
        Self::normalized(
            amplitudes
                .iter()
                .map(|&(v, x)| (v, Complex64::new(x, 0.0)))
                .collect(),
        )
    }

    pub fn vertex(a: usize) -> Self {
        Self {
            support: vec![(a, Complex64::new(1.0, 0.0))],
        }
    }

    /// `(e_a - e_b)/√2`.
    pub fn pair(a: usize, b: usize) -> Result<Self> {
        Self::two(a, b, -1.0)
    }

    /// `(e_a + e_b)/√2`.
    pub fn plus(a: usize, b: usize) -> Result<Self> {
        Self::two(a, b, 1.0)
    }

    fn two(a: usize, b: usize, sign: f64) -> Result<Self> {
        if a == b {
            return Err(Error::SameVertex(a));
        }
        let h = FRAC_1_SQRT_2;
        Self::new(vec![
            (a, Complex64::new(h, 0.0)),
            (b, Complex64::new(sign * h, 0.0)),
        ])
    }

    pub fn support(&self) -> &[(usize, Complex64)] {
        &self.support
    }

    pub fn max_vertex(&self) -> usize {
        self.support.last().map(|&(v, _)| v).unwrap_or(0)
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.support.iter().find(|(v, _)| *v >= n) {
            Some(&(v, _)) => Err(Error::VertexOutOfRange { vertex: v, n }),
            None => Ok(()),
        }
    }

    pub fn amplitude(&self, v: usize) -> Complex64 {
        self.support
            .binary_search_by_key(&v, |&(u, _)| u)
            .map(|i| self.support[i].1)
            .unwrap_or_default()
    }

    /// Dense column vector of length `dim`.
    pub fn to_dense(&self, dim: usize) -> DVector<Complex64> {
        let mut out = DVector::zeros(dim);
        for &(v, z) in &self.support {
            out[v] = z;
        }
        out
    }

    /// `⟨self, other⟩ = self* other`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.support
            .iter()
            .map(|&(v, z)| z.conj() * other.amplitude(v))
            .sum()
    }

    /// True when the two states differ only by a global phase.
    pub fn is_parallel(&self, other: &PureState, tol: f64) -> bool {
        (self.inner(other).norm() - 1.0).abs() <= tol
    }

    /// Entrywise product with a ±1 sign vector, i.e. `D u`.
    pub fn switched(&self, signs: &[i8]) -> PureState {
        PureState {
            support: self
                .support
                .iter()
                .map(|&(v, z)| (v, z * f64::from(signs[v])))
                .collect(),
        }
    }

    /// Returns `(a, b, kind)` if this is `±(e_a ∓ e_b)/√2` up to a real sign,
    /// with `a` carrying the positive amplitude.
    pub fn as_two_vertex(&self) -> Option<(usize, usize, TwoVertexKind)> {
        if self.support.len() != 2 {
            return None;
        }
        let (v0, z0) = self.support[0];
        let (v1, z1) = self.support[1];
        let real = |z: Complex64| (z.im.abs() < NORM_TOL).then_some(z.re);
        let (x0, x1) = (real(z0)?, real(z1)?);
        if (x0.abs() - FRAC_1_SQRT_2).abs() > 1e-12 || (x1.abs() - FRAC_1_SQRT_2).abs() > 1e-12 {
            return None;
        }
        let kind = if x0 * x1 > 0.0 {
            TwoVertexKind::Plus
        } else {
            TwoVertexKind::Pair
        };
        Some(if x0 > 0.0 || kind == TwoVertexKind::Plus {
            (v0, v1, kind)
        } else {
            (v1, v0, kind)
        })
    }

    /// Short human-readable form such as `(e1-e7)/√2`.
    pub fn describe(&self, label: impl Fn(usize) -> String) -> String {
        match self.as_two_vertex() {
            Some((a, b, TwoVertexKind::Pair)) => format!("(e{}-e{})/√2", label(a), label(b)),
            Some((a, b, TwoVertexKind::Plus)) => format!("(e{}+e{})/√2", label(a), label(b)),
            None if self.support.len() == 1 => format!("e{}", label(self.support[0].0)),
            None => {
                let parts: Vec<String> = self
                    .support
                    .iter()
                    .map(|(v, z)| format!("{}:{:.6}{:+.6}i", label(*v), z.re, z.im))
                    .collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_constructors() {
        let p = PureState::pair(0, 1).unwrap();
        assert_eq!(p.support()[0], (0, Complex64::new(FRAC_1_SQRT_2, 0.0)));
        assert_eq!(p.support()[1], (1, Complex64::new(-FRAC_1_SQRT_2, 0.0)));
        let q = PureState::plus(0, 1).unwrap();
        assert_eq!(q.support()[1].1.re, FRAC_1_SQRT_2);
        let v = PureState::vertex(3);
        assert_eq!(v.support(), &[(3, Complex64::new(1.0, 0.0))]);
    }

    #[test]
    fn same_vertex_rejected() {
        assert_eq!(PureState::pair(2, 2), Err(Error::SameVertex(2)));
        assert_eq!(PureState::plus(4, 4), Err(Error::SameVertex(4)));
    }

    #[test]
    fn normalization_enforced() {
        let bad = PureState::new(vec![(0, Complex64::new(1.0, 0.0)), (1, Complex64::new(1.0, 0.0))]);
        assert!(matches!(bad, Err(Error::NotNormalized(_))));
        let ok = PureState::from_real(&[(0, 1.0), (1, 1.0), (2, 1.0)]).unwrap();
        let norm: f64 = ok.support().iter().map(|(_, z)| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classifies_two_vertex_states() {
        let p = PureState::pair(5, 2).unwrap();
        assert_eq!(p.as_two_vertex(), Some((5, 2, TwoVertexKind::Pair)));
        let q = PureState::plus(1, 3).unwrap();
        assert_eq!(q.as_two_vertex(), Some((1, 3, TwoVertexKind::Plus)));
        assert_eq!(PureState::vertex(0).as_two_vertex(), None);
    }

    #[test]
    fn switching_turns_pair_into_plus() {
        let p = PureState::pair(0, 1).unwrap();
        let d = [1, -1];
        assert_eq!(p.switched(&d), PureState::plus(0, 1).unwrap());
    }
}
