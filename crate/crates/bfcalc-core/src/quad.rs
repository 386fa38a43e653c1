//! Quadrature kernels shared by the measure, contour and calculus modules.
//!
//! Everything is built from Gauss–Legendre panels with node doubling until
//! two successive estimates agree to the requested target, plus a power
//! substitution for integrable endpoint singularities.

use alloc::vec::Vec;
use num_complex::Complex64;

/// Default absolute quadrature target per integral.
pub const DEFAULT_TARGET: f64 = 1e-10;

/// Values that can be accumulated by a quadrature rule.
pub trait QuadVec: Clone {
    fn zero_like(&self) -> Self;
    /// `self += w * v`
    fn axpy(&mut self, w: f64, v: &Self);
    fn sub_inplace(&mut self, v: &Self);
    fn norm(&self) -> f64;
}

impl QuadVec for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn axpy(&mut self, w: f64, v: &Self) {
        *self += w * v;
    }
    fn sub_inplace(&mut self, v: &Self) {
        *self -= v;
    }
    fn norm(&self) -> f64 {
        libm::fabs(*self)
    }
}

impl QuadVec for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn axpy(&mut self, w: f64, v: &Self) {
        *self += w * v;
    }
    fn sub_inplace(&mut self, v: &Self) {
        *self -= v;
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    /// Doubling stopped before the target was met; carries the achieved
    /// difference between the last two estimates.
    NonConvergent { achieved: f64, target: f64 },
    /// The effective endpoint exponent is not integrable.
    NonIntegrableEndpoint { exponent: f64 },
    BadInterval { lower: f64, upper: f64 },
}

impl core::fmt::Display for QuadError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            QuadError::NonConvergent { achieved, target } => write!(
                f,
                "quadrature did not converge: achieved {achieved:.3e}, target {target:.3e}"
            ),
            QuadError::NonIntegrableEndpoint { exponent } => {
                write!(f, "endpoint exponent {exponent} is not integrable")
            }
            QuadError::BadInterval { lower, upper } => {
                write!(f, "bad integration interval [{lower}, {upper}]")
            }
        }
    }
}

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Nodes and weights by Newton iteration on the Legendre recurrence.
    pub fn legendre(n: usize) -> Self {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev-based initial guess.
            let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_pair(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if libm::fabs(dx) < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes.push(x);
            weights.push(w);
        }
        // Mirror to the full rule, ascending nodes.
        let mut full_nodes = Vec::with_capacity(n);
        let mut full_weights = Vec::with_capacity(n);
        for i in 0..m {
            full_nodes.push(-nodes[i].abs());
            full_weights.push(weights[i]);
        }
        for i in (0..m).rev() {
            if nodes[i].abs() > 1e-14 || n % 2 == 0 {
                full_nodes.push(nodes[i].abs());
                full_weights.push(weights[i]);
            }
        }
        full_nodes.truncate(n);
        full_weights.truncate(n);
        GaussRule {
            nodes: full_nodes,
            weights: full_weights,
        }
    }

    /// Integrate `f` over [a, b] with this rule.
    pub fn integrate<T: QuadVec>(&self, a: f64, b: f64, zero: &T, f: &mut dyn FnMut(f64) -> T) -> T {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = zero.zero_like();
        for (x, w) in self.nodes.iter().zip(self.weights.iter()) {
            let v = f(mid + half * x);
            acc.axpy(w * half, &v);
        }
        acc
    }
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrate over [a, b] with uniform Gauss panels, doubling the panel count
/// until two successive estimates agree to `target * (1 + |I|)` in `norm`,
/// so `target` reads as absolute for O(1) values and relative for large ones.
pub fn integrate_doubling<T: QuadVec>(
    f: &mut dyn FnMut(f64) -> T,
    a: f64,
    b: f64,
    zero: &T,
    target: f64,
    max_panels: usize,
) -> Result<T, QuadError> {
    if !(b > a) {
        if b == a {
            return Ok(zero.zero_like());
        }
        return Err(QuadError::BadInterval { lower: a, upper: b });
    }
    let rule = GaussRule::legendre(16);
    let mut panels = 1usize;
    let mut prev = panel_sum(&rule, f, a, b, zero, panels);
    loop {
        panels *= 2;
        let cur = panel_sum(&rule, f, a, b, zero, panels);
        let mut diff = cur.clone();
        diff.sub_inplace(&prev);
        let err = diff.norm() / (1.0 + cur.norm());
        if err <= target {
            return Ok(cur);
        }
        if panels >= max_panels {
            return Err(QuadError::NonConvergent {
                achieved: err,
                target,
            });
        }
        prev = cur;
    }
}

fn panel_sum<T: QuadVec>(
    rule: &GaussRule,
    f: &mut dyn FnMut(f64) -> T,
    a: f64,
    b: f64,
    zero: &T,
    panels: usize,
) -> T {
    let h = (b - a) / panels as f64;
    let mut acc = zero.zero_like();
    for i in 0..panels {
        let lo = a + i as f64 * h;
        let v = rule.integrate(lo, lo + h, zero, f);
        acc.axpy(1.0, &v);
    }
    acc
}

/// Integrate `(s - l)^g * smooth(s)` over [l, u] for g > -1.
///
/// For g < 0, substitutes `s = l + t^(1/(1+g))`, under which the weighted
/// integral becomes `1/(1+g) * ∫ smooth(l + t^q) dt` over [0, (u-l)^(1+g)],
/// removing the singular weight entirely. For g >= 0 the inverse map would
/// itself put a fractional-power kink at the endpoint, so instead
/// `s = l + v^m` with an integer m large enough that the transformed weight
/// `m v^{m(1+g)-1}` keeps several bounded derivatives.
pub fn integrate_power_lower<T: QuadVec>(
    smooth: &mut dyn FnMut(f64) -> T,
    l: f64,
    u: f64,
    g: f64,
    zero: &T,
    target: f64,
    max_panels: usize,
) -> Result<T, QuadError> {
    if g <= -1.0 {
        return Err(QuadError::NonIntegrableEndpoint { exponent: g });
    }
    if libm::fabs(g) < 1e-14 {
        return integrate_doubling(smooth, l, u, zero, target, max_panels);
    }
    if g < 0.0 {
        let q = 1.0 / (1.0 + g);
        let t_max = libm::pow(u - l, 1.0 + g);
        let mut g_t = |t: f64| -> T {
            let s = l + libm::pow(t, q);
            let mut v = zero.zero_like();
            v.axpy(q, &smooth(s));
            v
        };
        return integrate_doubling(&mut g_t, 0.0, t_max, zero, target, max_panels);
    }
    let m = libm::fmax(libm::ceil(5.0 / (1.0 + g)), 1.0);
    let p = m * (1.0 + g) - 1.0;
    let v_max = libm::pow(u - l, 1.0 / m);
    let mut g_v = |v: f64| -> T {
        let s = l + libm::pow(v, m);
        let mut out = zero.zero_like();
        out.axpy(m * libm::pow(v, p), &smooth(s));
        out
    };
    integrate_doubling(&mut g_v, 0.0, v_max, zero, target, max_panels)
}

/// Golden-section search for the maximum of a unimodal-ish `f` on [a, b].
/// Returns (argmax, max). Used only to refine around a grid winner, so a
/// fixed iteration count is enough.
pub fn golden_max(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Log-spaced grid of `n` points covering [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (llo, lhi) = (libm::log(lo), libm::log(hi));
    (0..n)
        .map(|i| {
            let t = if n == 1 {
                0.5
            } else {
                i as f64 / (n - 1) as f64
            };
            libm::exp(llo + t * (lhi - llo))
        })
        .collect()
}

/// Uniform grid of `n` points covering [lo, hi] inclusive.
pub fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let t = if n == 1 {
                0.5
            } else {
                i as f64 / (n - 1) as f64
            };
            lo + t * (hi - lo)
        })
        .collect()
}
