//! PST checks and searches, PGST witnesses and sedentariness estimates.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::spectral::{AmplitudeSeries, EvolveOptions, TruncationCertificate, Walk};
use crate::state::PureState;

/// Default fidelity tolerance for PST.
pub const PST_TOL: f64 = 1e-9;
/// Default number of grid points for PST search.
pub const SEARCH_GRID: usize = 4096;
/// Default number of grid points for sedentariness estimates.
pub const SEDENTARY_GRID: usize = 20_000;
/// Peaks closer than this are reported once.
pub const DEDUP_TOL: f64 = 1e-6;
/// Grid peaks within this of the threshold are refined. The grid spacing is
/// at most `1/(64M)`, so a peak is missed on the grid by far less.
const PEAK_SLACK: f64 = 1e-3;
/// Largest denominator accepted when testing eigenvalue ratios.
pub const PERIOD_MAX_DEN: i64 = 1000;
/// Tolerance for rational eigenvalue ratios.
pub const PERIOD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferKind {
    Pst,
    Periodic,
    PgstWitness,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub src: PureState,
    pub dst: PureState,
    pub tau: f64,
    /// `(dst* U(tau) src) / fidelity`.
    pub gamma: Complex64,
    pub fidelity: f64,
    pub kind: TransferKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<TruncationCertificate>,
}

fn report(
    walk: &Walk,
    series: &AmplitudeSeries,
    u: &PureState,
    v: &PureState,
    tau: f64,
    kind: TransferKind,
) -> TransferReport {
    let amp = series.at(tau);
    let fidelity = amp.norm();
    let gamma = if fidelity > 0.0 {
        amp / fidelity
    } else {
        Complex64::new(1.0, 0.0)
    };
    TransferReport {
        src: u.clone(),
        dst: v.clone(),
        tau,
        gamma,
        fidelity,
        kind,
        certificate: (walk.depth() > 0).then(|| walk.certificate(tau)),
    }
}

fn same_state(u: &PureState, v: &PureState) -> bool {
    u.is_parallel(v, 1e-12)
}

fn pst_kind(u: &PureState, v: &PureState) -> TransferKind {
    if same_state(u, v) {
        TransferKind::Periodic
    } else {
        TransferKind::Pst
    }
}

/// PST (or periodicity when `u = v`) at exactly `tau`.
pub fn check_pst(g: &WeightedGraph, u: &PureState, v: &PureState, tau: f64, pst_tol: f64) -> Result<TransferReport> {
    let walk = Walk::for_horizon(g, tau, EvolveOptions::default())?;
    check_pst_on(&walk, u, v, tau, pst_tol)
}

/// [`check_pst`] on a prepared walk.
pub fn check_pst_on(walk: &Walk, u: &PureState, v: &PureState, tau: f64, pst_tol: f64) -> Result<TransferReport> {
    let series = walk.amplitude(u, v)?;
    let r = report(walk, &series, u, v, tau, pst_kind(u, v));
    if r.fidelity >= 1.0 - pst_tol {
        Ok(r)
    } else {
        Err(Error::NoTransfer { fidelity: r.fidelity })
    }
}

/// `d/dt |a(t)|² / 2 = Re(conj(a) a')`.
fn slope(series: &AmplitudeSeries, t: f64) -> f64 {
    let mut a = Complex64::new(0.0, 0.0);
    let mut da = Complex64::new(0.0, 0.0);
    for (&lam, &c) in series.frequencies().iter().zip(series.coefficients()) {
        let z = c * Complex64::from_polar(1.0, t * lam);
        a += z;
        da += z * Complex64::new(0.0, lam);
    }
    (a.conj() * da).re
}

/// Local extremum of `|a(t)|` in `[lo, hi]`. Bisection on the derivative
/// when it changes sign across the bracket, which resolves flat peaks far
/// below `√ε`; golden section otherwise.
fn refine(series: &AmplitudeSeries, mut lo: f64, mut hi: f64, maximize: bool) -> (f64, f64) {
    let sign = if maximize { 1.0 } else { -1.0 };
    let g = |t: f64| sign * slope(series, t);
    if g(lo) > 0.0 && g(hi) < 0.0 {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if g(mid) > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let t = 0.5 * (a + b);
        return (t, series.fidelity(t));
    }
    let f = |t: f64| sign * series.fidelity(t);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-9 * (1.0 + hi.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    let t = 0.5 * (lo + hi);
    (t, series.fidelity(t))
}

/// Grid size for `[0, t_max]`: at least `min_n`, and at least 64 points per
/// unit of `M t`.
fn grid_size(min_n: usize, t_max: f64, m: f64) -> usize {
    let nyquist = (64.0 * t_max * m).ceil();
    if nyquist.is_finite() && nyquist > min_n as f64 {
        nyquist as usize
    } else {
        min_n.max(2)
    }
}

/// Refined local maxima of `series.fidelity` over `(0, t_max]` that reach
/// `threshold`, in increasing time. With `first_only`, stops at the first.
fn peaks(series: &AmplitudeSeries, t_max: f64, grid_n: usize, m: f64, threshold: f64, first_only: bool) -> Vec<(f64, f64)> {
    let n = grid_size(grid_n, t_max, m);
    let h = t_max / n as f64;
    let f = |t: f64| series.fidelity(t);
    let mut out: Vec<(f64, f64)> = Vec::new();
    // chunked so that first-only searches stop early
    let chunk = 1 << 16;
    let mut start = 0;
    while start <= n {
        let end = (start + chunk).min(n);
        // values at indices start-1 ..= end+1, clamped to the grid
        let lo = start.saturating_sub(1);
        let hi = (end + 1).min(n);
        let vals: Vec<f64> = (lo..=hi).into_par_iter().map(|i| f(i as f64 * h)).collect();
        let at = |i: usize| vals[i - lo];
        for i in start.max(1)..=end {
            let left = at(i - 1);
            let right = if i < n { at(i + 1) } else { f64::NEG_INFINITY };
            let mid = at(i);
            if mid < left || mid < right || mid < threshold - PEAK_SLACK {
                continue;
            }
            let a = (i - 1) as f64 * h;
            let b = ((i + 1) as f64 * h).min(t_max);
            let (t, ft) = refine(series, a, b, true);
            let (t, ft) = if mid > ft { (i as f64 * h, mid) } else { (t, ft) };
            if ft < threshold {
                continue;
            }
            match out.last_mut() {
                Some(last) if (t - last.0).abs() < DEDUP_TOL => {
                    if ft > last.1 {
                        *last = (t, ft);
                    }
                }
                _ => out.push((t, ft)),
            }
            if first_only {
                return out;
            }
        }
        if end == n {
            break;
        }
        start = end + 1;
    }
    out
}

/// All times in `(0, t_max]` with fidelity at least `1 - PST_TOL`.
pub fn search_pst(g: &WeightedGraph, u: &PureState, v: &PureState, t_max: f64, grid_n: usize) -> Result<Vec<TransferReport>> {
    if !(t_max > 0.0) {
        return Err(Error::BadParam(format!("t_max must be positive, got {t_max}")));
    }
    let walk = Walk::for_horizon(g, t_max, EvolveOptions::default())?;
    let series = walk.amplitude(u, v)?;
    let kind = pst_kind(u, v);
    Ok(peaks(&series, t_max, grid_n, walk.norm_bound(), 1.0 - PST_TOL, false)
        .into_iter()
        .map(|(t, _)| report(&walk, &series, u, v, t, kind))
        .collect())
}

/// First refined time in `(0, t_cap]` with fidelity at least `target`.
pub fn pgst_witness(g: &WeightedGraph, u: &PureState, v: &PureState, target: f64, t_cap: f64) -> Result<TransferReport> {
    if !(target < 1.0) {
        return Err(Error::BadParam(format!("target fidelity must be below 1, got {target}")));
    }
    if !(t_cap > 0.0) {
        return Err(Error::BadParam(format!("t_cap must be positive, got {t_cap}")));
    }
    let walk = Walk::for_horizon(g, t_cap, EvolveOptions::default())?;
    let series = walk.amplitude(u, v)?;
    let m = walk.norm_bound();
    if let Some(&(t, _)) = peaks(&series, t_cap, SEARCH_GRID, m, target, true).first() {
        return Ok(report(&walk, &series, u, v, t, TransferKind::PgstWitness));
    }
    // best refined peak, for the error report
    let best = peaks(&series, t_cap, SEARCH_GRID, m, f64::NEG_INFINITY, false)
        .into_iter()
        .fold((0.0, 0.0), |acc, (t, f)| if f > acc.1 { (t, f) } else { acc });
    Err(Error::Unreached {
        best: best.1,
        time: best.0,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SedentaryEstimate {
    pub state: PureState,
    /// Minimum of `|u* U(t) u|` over the grid, refined around grid minima.
    pub grid_min: f64,
    /// Time where `grid_min` is attained.
    pub argmin: f64,
    /// Claimed lower bound `C`, if one is being checked.
    pub lower_bound_claim: Option<f64>,
    pub horizon: f64,
    /// Period of `|u* U(t) u|` when the spectrum seen by `u` is commensurable.
    pub period: Option<f64>,
}

impl SedentaryEstimate {
    pub fn with_claim(mut self, c: f64) -> Self {
        self.lower_bound_claim = Some(c);
        self
    }

    /// True when a claim is present and `grid_min ≥ C - tol`.
    pub fn meets_claim(&self, tol: f64) -> bool {
        self.lower_bound_claim.is_some_and(|c| self.grid_min >= c - tol)
    }
}

/// Best rational approximation `p/q` of `x` with `q ≤ max_den` within `tol`.
pub fn rational_approx(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= tol * x.abs().max(1.0) {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Distinct frequencies of `series` with nonnegligible combined weight.
fn merged_frequencies(series: &AmplitudeSeries) -> Vec<f64> {
    let mut pairs: Vec<(f64, Complex64)> = series
        .frequencies()
        .iter()
        .copied()
        .zip(series.coefficients().iter().copied())
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, Complex64)> = Vec::new();
    for (lam, c) in pairs {
        match merged.last_mut() {
            Some(last) if (lam - last.0).abs() <= 1e-9 => last.1 += c,
            _ => merged.push((lam, c)),
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| c.norm() > 1e-12)
        .map(|(l, _)| l)
        .collect()
}

/// Period of `|Σ c_k e^{itλ_k}|` when all differences `λ_k - λ_0` are
/// rational multiples of each other.
pub fn detect_period(series: &AmplitudeSeries) -> Option<f64> {
    let freqs = merged_frequencies(series);
    if freqs.len() < 2 {
        return None;
    }
    let diffs: Vec<f64> = freqs[1..].iter().map(|l| l - freqs[0]).collect();
    let d1 = diffs[0];
    let mut ratios = Vec::with_capacity(diffs.len());
    let mut lcm: i64 = 1;
    for &d in &diffs {
        let (p, q) = rational_approx(d / d1, PERIOD_MAX_DEN, PERIOD_TOL)?;
        lcm = lcm / gcd(lcm, q) * q;
        if lcm > 1_000_000 {
            return None;
        }
        ratios.push((p, q));
    }
    let g = ratios
        .iter()
        .map(|&(p, q)| p * (lcm / q))
        .fold(0, gcd);
    let base = d1 * g as f64 / lcm as f64;
    Some(2.0 * std::f64::consts::PI / base.abs())
}

/// Grid estimate of `inf_{t>0} |u* U(t) u|` over `(0, horizon]`. When a
/// period is detected the horizon is replaced by one period.
pub fn sedentary_estimate(g: &WeightedGraph, u: &PureState, horizon: Option<f64>, grid_n: usize) -> Result<SedentaryEstimate> {
    if let Some(h) = horizon {
        if !(h > 0.0) {
            return Err(Error::BadParam(format!("horizon must be positive, got {h}")));
        }
    }
    // a period is a property of the core-supported series, so probe it on a
    // walk valid up to the requested horizon (or a default window)
    let probe_horizon = horizon.unwrap_or(100.0);
    let walk = Walk::for_horizon(g, probe_horizon, EvolveOptions::default())?;
    let series = walk.amplitude(u, u)?;
    // tails make the spectrum continuous in the limit; no exact period
    let period = if g.has_tails() { None } else { detect_period(&series) };
    let span = match (period, horizon) {
        (Some(p), _) => p,
        (None, Some(h)) => h,
        (None, None) => probe_horizon,
    };
    let freqs = merged_frequencies(&series);
    let spread = match (freqs.first(), freqs.last()) {
        (Some(a), Some(b)) => (b - a).max(1e-300),
        _ => 0.0,
    };
    if freqs.len() < 2 {
        return Ok(SedentaryEstimate {
            state: u.clone(),
            grid_min: series.fidelity(span),
            argmin: span,
            lower_bound_claim: None,
            horizon: span,
            period,
        });
    }
    let n = grid_size(grid_n, span, spread);
    let h = span / n as f64;
    let f = |t: f64| series.fidelity(t);
    let vals: Vec<f64> = (1..=n).into_par_iter().map(|i| f(i as f64 * h)).collect();
    let mut best = (h, vals[0]);
    // refine the lowest few grid minima
    let mut minima: Vec<(usize, f64)> = (0..vals.len())
        .filter(|&i| {
            let l = if i > 0 { vals[i - 1] } else { f64::INFINITY };
            let r = vals.get(i + 1).copied().unwrap_or(f64::INFINITY);
            vals[i] <= l && vals[i] <= r
        })
        .map(|i| (i, vals[i]))
        .collect();
    minima.sort_by(|a, b| a.1.total_cmp(&b.1));
    for &(i, fi) in minima.iter().take(16) {
        if fi < best.1 {
            best = ((i + 1) as f64 * h, fi);
        }
        let a = (i as f64 * h).max(1e-12);
        let b = ((i + 2) as f64 * h).min(span);
        let (t, ft) = refine(&series, a, b, false);
        if ft < best.1 {
            best = (t, ft);
        }
    }
    Ok(SedentaryEstimate {
        state: u.clone(),
        grid_min: best.1,
        argmin: best.0,
        lower_bound_claim: None,
        horizon: span,
        period,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    use super::*;

    fn path(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (0..n - 1).map(|j| (j, j + 1))).unwrap()
    }

    fn complete(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn p2_pst_and_phase() {
        let g = path(2);
        let r = check_pst(&g, &PureState::vertex(0), &PureState::vertex(1), FRAC_PI_2, PST_TOL).unwrap();
        assert_eq!(r.kind, TransferKind::Pst);
        assert!((r.gamma - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let e = check_pst(&g, &PureState::vertex(0), &PureState::vertex(1), 1.0, PST_TOL);
        assert!(matches!(e, Err(Error::NoTransfer { .. })));
    }

    #[test]
    fn periodic_at_zero() {
        let g = complete(4);
        let u = PureState::pair(0, 1).unwrap();
        let r = check_pst(&g, &u, &u, 0.0, PST_TOL).unwrap();
        assert_eq!(r.kind, TransferKind::Periodic);
        assert!((r.gamma - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn search_recovers_p2_time() {
        let found = search_pst(&path(2), &PureState::vertex(0), &PureState::vertex(1), 4.0, SEARCH_GRID).unwrap();
        assert_eq!(found.len(), 1);
        assert!((found[0].tau - FRAC_PI_2).abs() < 1e-9, "{}", found[0].tau - FRAC_PI_2);
    }

    #[test]
    fn search_p3_two_peaks() {
        // end-to-end transfer at π/√2 and 3π/√2
        let found = search_pst(&path(3), &PureState::vertex(0), &PureState::vertex(2), 10.0, SEARCH_GRID).unwrap();
        let taus: Vec<f64> = found.iter().map(|r| r.tau).collect();
        assert_eq!(taus.len(), 2, "{taus:?}");
        assert!((taus[0] - PI / SQRT_2).abs() < 1e-9);
        assert!((taus[1] - 3.0 * PI / SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn k3_has_no_pst() {
        let found = search_pst(&complete(3), &PureState::vertex(0), &PureState::vertex(1), 10.0, SEARCH_GRID).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn rational_approximations() {
        assert_eq!(rational_approx(0.75, 1000, 1e-12), Some((3, 4)));
        assert_eq!(rational_approx(-2.5, 1000, 1e-12), Some((-5, 2)));
        assert_eq!(rational_approx(SQRT_2, 1000, 1e-9), None);
    }

    #[test]
    fn k5_vertex_is_sedentary() {
        let est = sedentary_estimate(&complete(5), &PureState::vertex(0), None, SEDENTARY_GRID).unwrap();
        // spectrum {4, -1}: period 2π/5
        assert!((est.period.unwrap() - 2.0 * PI / 5.0).abs() < 1e-9);
        assert!((est.grid_min - 0.6).abs() < 1e-9);
    }

    #[test]
    fn p2_vertex_is_not_sedentary() {
        let est = sedentary_estimate(&path(2), &PureState::vertex(0), None, SEDENTARY_GRID).unwrap();
        assert!((est.period.unwrap() - PI).abs() < 1e-9);
        assert!(est.grid_min < 1e-9);
    }

    #[test]
    fn p3_end_period() {
        // frequencies 0, ±√2: period √2 π
        let est = sedentary_estimate(&path(3), &PureState::vertex(0), None, 2000).unwrap();
        assert!((est.period.unwrap() - SQRT_2 * PI).abs() < 1e-9);
    }

    #[test]
    fn pgst_unreached_reports_best() {
        let e = pgst_witness(&complete(3), &PureState::vertex(0), &PureState::vertex(1), 0.9, 10.0).unwrap_err();
        match e {
            Error::Unreached { best, .. } => assert!((best - 2.0 / 3.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pgst_first_return() {
        let g = path(2);
        let u = PureState::vertex(0);
        let r = pgst_witness(&g, &u, &u, 0.999, 10.0).unwrap();
        assert!((r.tau - PI).abs() < 1e-6);
    }
}
