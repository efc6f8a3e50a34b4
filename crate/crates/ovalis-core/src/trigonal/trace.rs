//! Numeric tracing of trigonal polynomials into L-scheme words.
//!
//! For `c(x, y) = y³ + b₂(x)y + b₃(x)` the fiber over `x` has three real
//! points where `D(x) = 4b₂(x)³ + 27b₃(x)²` is negative, one where it is
//! positive, and a vertical tangency at each simple real root.  The double
//! root at a tangency sits at `y = 3b₃/(2|b₂|)`, so its sign — the side
//! tag of the event — is the sign of `b₃` there.

use super::{FiberEvent, RunKind, Side, TrigonalLScheme};
use num_complex::Complex64;
use thiserror::Error;

/// Relative tolerance for root separation and degeneracy tests.
const TOL: f64 = 1e-9;

/// Coefficient data of a trigonal polynomial over a degree-`n` base.
#[derive(Debug, Clone)]
pub struct TrigonalPolynomial {
    pub n: usize,
    /// Coefficients of `b₂`, constant term first, degree ≤ 2n.
    pub b2: Vec<f64>,
    /// Coefficients of `b₃`, constant term first, degree ≤ 3n.
    pub b3: Vec<f64>,
}

/// Error raised when numeric tracing cannot certify the fiber word.
#[derive(Debug, Error, PartialEq)]
pub enum TraceError {
    #[error("discriminant is degenerate near x = {0} (root separation below tolerance)")]
    DegenerateDiscriminant(f64),
    #[error("coefficient degrees exceed the base degree")]
    BadDegrees,
    #[error("b3 vanishes identically")]
    ZeroB3,
    #[error("root finding did not converge")]
    NoConvergence,
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// All complex roots by the Durand–Kerner iteration.
fn roots(p: &[f64]) -> Result<Vec<Complex64>, TraceError> {
    let scale = p.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let deg = p.iter().rposition(|c| c.abs() > TOL * scale).unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p[deg];
    let monic: Vec<Complex64> = p[..=deg].iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &c| a * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        let mut extent = 1.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() < 1e-300 {
                return Err(TraceError::NoConvergence);
            }
            let step = eval(zs[i]) / denom;
            zs[i] -= step;
            moved = moved.max(step.norm());
            extent = extent.max(zs[i].norm());
        }
        if moved < 1e-12 * extent {
            return Ok(zs);
        }
    }
    Err(TraceError::NoConvergence)
}

/// Recover the fiberwise word of a trigonal polynomial.
pub fn trace_trigonal_polynomial(p: &TrigonalPolynomial) -> Result<TrigonalLScheme, TraceError> {
    if p.n == 0 || p.b2.len() > 2 * p.n + 1 || p.b3.len() > 3 * p.n + 1 {
        return Err(TraceError::BadDegrees);
    }
    if p.b3.iter().all(|&c| c == 0.0) {
        return Err(TraceError::ZeroB3);
    }
    // D = 4 b₂³ + 27 b₃², padded to full degree 6n.
    let b2c = poly_mul(&poly_mul(&p.b2, &p.b2), &p.b2);
    let b3s = poly_mul(&p.b3, &p.b3);
    let mut d = vec![0.0; 6 * p.n + 1];
    for (i, &c) in b2c.iter().enumerate() {
        d[i] += 4.0 * c;
    }
    for (i, &c) in b3s.iter().enumerate() {
        d[i] += 27.0 * c;
    }
    let scale = d.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 || d[6 * p.n].abs() < TOL * scale {
        // A root escaping to infinity is a tangency the affine word
        // cannot place; treat it as degenerate.
        return Err(TraceError::DegenerateDiscriminant(f64::INFINITY));
    }
    let all = roots(&d)?;
    let spread = all.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let mut real: Vec<f64> = all.iter().filter(|z| z.im.abs() < 1e-7 * spread).map(|z| z.re).collect();
    real.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    for w in real.windows(2) {
        if (w[1] - w[0]).abs() < TOL * spread.max(1.0) {
            return Err(TraceError::DegenerateDiscriminant(w[0]));
        }
    }
    // Near-real complex pairs are also too close to call.
    if all.iter().any(|z| z.im.abs() >= 1e-7 * spread && z.im.abs() < TOL * spread.max(1.0)) {
        return Err(TraceError::DegenerateDiscriminant(0.0));
    }
    let kind_at = |x: f64| if poly_eval(&d, x) < 0.0 { RunKind::Three } else { RunKind::One };
    let mut word = Vec::new();
    if real.is_empty() {
        word.push(FiberEvent::run(kind_at(0.0), 1));
    } else {
        let first = real[0];
        let last = *real.last().expect("nonempty");
        word.push(FiberEvent::run(kind_at(first - 1.0 - spread), 1));
        for (i, &x) in real.iter().enumerate() {
            let b3v = poly_eval(&p.b3, x);
            if b3v.abs() < TOL * scale.max(1.0) {
                // Tangency at a b₃ root means b₂ ≈ 0 too: a cusp.
                return Err(TraceError::DegenerateDiscriminant(x));
            }
            word.push(FiberEvent::tangency(if b3v > 0.0 { Side::Up } else { Side::Down }));
            let right = if i + 1 < real.len() { (x + real[i + 1]) / 2.0 } else { last + 1.0 + spread };
            word.push(FiberEvent::run(kind_at(right), 1));
        }
    }
    Ok(TrigonalLScheme { n: p.n, word, source: String::new() })
}
