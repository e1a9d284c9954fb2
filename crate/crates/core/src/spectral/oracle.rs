use nalgebra::DMatrix;
use num_complex::Complex64;

/// `exp(itA)` by scaling and squaring a truncated Taylor series.
///
/// Shares no code with the eigendecomposition route, so the two can be
/// checked against each other.
pub fn exp_oracle(a: &DMatrix<f64>, t: f64) -> DMatrix<Complex64> {
    let n = a.nrows();
    let x: DMatrix<Complex64> = a.map(|v| Complex64::new(0.0, v * t));
    let norm1 = (0..n)
        .map(|c| x.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let y = x.map(|z| z / 2f64.powi(squarings));
    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=40 {
        term = &term * &y / Complex64::new(k as f64, 0.0);
        result += &term;
        let size = term.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if size < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}
