//! Special functions backing the analytic tail formulas: complex `expm1`,
//! the upper incomplete gamma function on the closed right half-plane,
//! the exponential integral, and the digamma function.

use crate::quad::{integrate_doubling, QuadError};
use num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `exp(w) - 1` without cancellation near the origin.
pub fn expm1c(w: Complex64) -> Complex64 {
    if w.norm() < 0.5 {
        // sum w^n / n!, n >= 1
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..40 {
            term *= w / n as f64;
            acc += term;
            if term.norm() < 1e-18 * (1.0 + acc.norm()) {
                break;
            }
        }
        acc
    } else {
        w.exp() - 1.0
    }
}

/// Real gamma function (thin wrapper so callers stay libm-agnostic).
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Digamma for x > 0: recurrence up to x >= 8, then the asymptotic series.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 20.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // psi(x) ~ ln x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6) + ...
    acc + libm::log(x) - 0.5 * inv
        - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)))
}

/// Upper incomplete gamma `Γ(a, w)` for complex `w` with `Re w >= 0`, `w != 0`.
///
/// Small `|w|` uses the lower-gamma power series; elsewhere the integral is
/// pushed onto the ray `w + x`, `x >= 0`, which stays inside the domain of
/// holomorphy whenever `Re w >= 0`.
pub fn gamma_upper(a: f64, w: Complex64) -> Result<Complex64, QuadError> {
    debug_assert!(w.re >= -1e-12);
    let r = w.norm();
    if r == 0.0 {
        // only meaningful for a > 0
        return Ok(Complex64::new(gamma(a), 0.0));
    }
    if r <= 3.0 {
        Ok(gamma_upper_series(a, w))
    } else {
        // Γ(a, w) = e^{-w} ∫_0^∞ (w + x)^{a-1} e^{-x} dx
        let zero = Complex64::new(0.0, 0.0);
        let mut f = |x: f64| (w + x).powf(a - 1.0) * libm::exp(-x);
        let upper = 60.0 + 10.0 * libm::fabs(a - 1.0);
        let tail = integrate_doubling(&mut f, 0.0, upper, &zero, 1e-13, 1 << 10)?;
        Ok((-w).exp() * tail)
    }
}

fn gamma_upper_series(a: f64, w: Complex64) -> Complex64 {
    // a at or near a non-positive integer needs the E1-based ladder.
    let a_round = libm::round(a);
    if a <= 0.5 && libm::fabs(a - a_round) < 1e-9 && a_round <= 0.0 {
        let m = (-a_round) as u32;
        return gamma_upper_nonpos_int(m, w);
    }
    // Γ(a, w) = Γ(a) - w^a Σ_{n>=0} (-w)^n / (n! (a+n))
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(1.0 / a, 0.0);
    for n in 1..120 {
        term *= -w / n as f64;
        acc += term / (a + n as f64);
        if term.norm() < 1e-18 * (1.0 + acc.norm()) {
            break;
        }
    }
    Complex64::new(gamma(a), 0.0) - w.powf(a) * acc
}

/// `Γ(-m, w)` for integer m >= 0 via `E_1` and the downward recurrence
/// `Γ(a-1, w) = (Γ(a, w) - w^{a-1} e^{-w}) / (a - 1)`.
fn gamma_upper_nonpos_int(m: u32, w: Complex64) -> Complex64 {
    let mut g = e1(w); // Γ(0, w)
    let e = (-w).exp();
    for k in 1..=m {
        // Γ(-k, w) = (Γ(1-k, w) - w^{-k} e^{-w}) / (-k)
        g = (g - e * w.powf(-(k as f64))) / (-(k as f64));
    }
    g
}

/// Exponential integral `E_1(w) = Γ(0, w)` for `Re w >= 0`, `w != 0`.
pub fn e1(w: Complex64) -> Complex64 {
    if w.norm() <= 3.0 {
        // -γ - ln w + Σ_{n>=1} (-1)^{n+1} w^n / (n n!)
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..80 {
            term *= -w / n as f64;
            acc -= term / n as f64;
            if term.norm() < 1e-18 * (1.0 + acc.norm()) {
                break;
            }
        }
        acc - EULER_GAMMA - w.ln()
    } else {
        let zero = Complex64::new(0.0, 0.0);
        let mut f = |x: f64| libm::exp(-x) / (w + x);
        let tail = integrate_doubling(&mut f, 0.0, 60.0, &zero, 1e-13, 1 << 10)
            .unwrap_or_else(|_| zero);
        (-w).exp() * tail
    }
}
