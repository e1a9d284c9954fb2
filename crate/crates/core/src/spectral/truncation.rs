use serde::Serialize;

use super::INITIAL_DEPTH;
use crate::error::{Error, Result};

/// Guaranteed 2-norm bound on the error of evolving a core-supported state
/// on a truncation of depth `depth` instead of the infinite graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationCertificate {
    pub depth: usize,
    pub time: f64,
    pub bound: f64,
}

/// `2 Σ_{k≥depth} (M t)^k / k!`.
///
/// A state supported on the core needs at least `depth` applications of `A`
/// before it sees the cut, and both operators have norm at most `M`, so the
/// exponential series of the two evolutions agree up to this remainder.
pub fn truncation_bound(m: f64, t: f64, depth: usize) -> f64 {
    let x = m * t.abs();
    if x == 0.0 {
        return if depth == 0 { 2.0 } else { 0.0 };
    }
    let ln_x = x.ln();
    // ln(depth!) accumulated directly; depth is at most a few 10^4
    let mut ln_term = (1..=depth).fold(depth as f64 * ln_x, |acc, k| acc - (k as f64).ln());
    let mut sum = 0.0;
    let mut k = depth;
    loop {
        let term = ln_term.exp();
        sum += term;
        k += 1;
        ln_term += ln_x - (k as f64).ln();
        if k as f64 > x && ln_term.exp() < sum * 1e-17 {
            break;
        }
        if k > depth + 1_000_000 {
            break;
        }
    }
    2.0 * sum
}

/// Smallest depth in the doubling sequence 8, 16, 32, ... whose certificate
/// at time `t` is below `tol`.
pub fn required_depth(m: f64, t: f64, tol: f64, cap: usize) -> Result<usize> {
    let mut depth = INITIAL_DEPTH;
    loop {
        if depth > cap {
            return Err(Error::NonConvergent { cap });
        }
        if truncation_bound(m, t, depth) < tol {
            return Ok(depth);
        }
        depth *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_series() {
        // direct summation of 2 Σ x^k/k! for small x
        let x: f64 = 1.5;
        let mut direct = 0.0;
        let mut term = 1.0;
        for k in 0..200 {
            if k >= 4 {
                direct += term;
            }
            term *= x / (k + 1) as f64;
        }
        let b = truncation_bound(1.0, x, 4);
        assert!((b - 2.0 * direct).abs() < 1e-14);
    }

    #[test]
    fn monotone_in_depth() {
        let mut prev = f64::INFINITY;
        for depth in [1, 2, 4, 8, 16, 32, 64, 128] {
            let b = truncation_bound(4.0, 2.2, depth);
            assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn depth_doubles_from_eight() {
        let d = required_depth(4.0, std::f64::consts::PI / 2f64.sqrt(), 1e-9, 1 << 16).unwrap();
        assert!(d.is_power_of_two() && d >= 8);
        assert!(truncation_bound(4.0, 2.2214, d) < 1e-9);
        assert!(truncation_bound(4.0, 2.2214, d / 2) >= 1e-9);
    }
}
