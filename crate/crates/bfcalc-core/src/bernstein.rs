//! Bernstein functions, their Lévy representations, and the two flavours of
//! complete Bernstein function used throughout: the Stieltjes form and the
//! one associated to a Lévy triple.
//!
//! A Bernstein function is `ψ(z) = a + b z + ∫ (1 - e^{-zs}) μ(ds)` with
//! `a, b >= 0` and `∫ s/(1+s) μ(ds) < ∞`. It extends holomorphically to the
//! open right half-plane and continuously to its closure, which is the domain
//! all evaluation routines assume.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::measure::{Kernel, MeasureError, RadonMeasure, Segment, SegmentDensity, Tail};
use crate::quad::QuadError;
use crate::special::{expm1c, gamma};

/// Quadrature target for function evaluation. A notch looser than the
/// default: evaluations at extreme arguments bridge many decades in log
/// scale and bottom out near 1e-10 in accumulated roundoff.
const EVAL_TARGET: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum BernsteinError {
    /// Evaluation point outside the closed right half-plane (or outside the
    /// cut plane for the associated function).
    Domain { what: &'static str },
    /// No Lévy triple is available in closed form (compositions).
    UnsupportedRepresentation,
    BadParameter { what: &'static str },
    Measure(MeasureError),
}

impl From<MeasureError> for BernsteinError {
    fn from(e: MeasureError) -> Self {
        BernsteinError::Measure(e)
    }
}

impl From<QuadError> for BernsteinError {
    fn from(e: QuadError) -> Self {
        BernsteinError::Measure(MeasureError::Quad(e))
    }
}

impl core::fmt::Display for BernsteinError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BernsteinError::Domain { what } => write!(f, "evaluation outside domain: {what}"),
            BernsteinError::UnsupportedRepresentation => {
                write!(f, "no closed-form integral representation for this function")
            }
            BernsteinError::BadParameter { what } => write!(f, "bad parameter: {what}"),
            BernsteinError::Measure(m) => write!(f, "{m}"),
        }
    }
}

/// Lévy triple `(a, b, μ)`.
#[derive(Clone)]
pub struct LevyTriple {
    pub a: f64,
    pub b: f64,
    pub measure: Arc<RadonMeasure>,
}

#[derive(Clone)]
pub enum BernsteinFn {
    /// `a + b z`
    Affine { a: f64, b: f64 },
    /// `z^alpha`, `alpha` in (0, 1]
    Power { alpha: f64 },
    /// `log(1 + z)`
    Log1p,
    /// `scale (1 - e^{-rate z})`
    OneMinusExp { scale: f64, rate: f64 },
    /// explicit triple
    Levy(LevyTriple),
    Sum(Vec<BernsteinFn>),
    Compose {
        outer: Box<BernsteinFn>,
        inner: Box<BernsteinFn>,
    },
}

fn check_rhp(z: Complex64) -> Result<Complex64, BernsteinError> {
    if z.re < -1e-12 {
        return Err(BernsteinError::Domain {
            what: "point has negative real part",
        });
    }
    Ok(Complex64::new(libm::fmax(z.re, 0.0), z.im))
}

impl BernsteinFn {
    pub fn validate(&self) -> Result<(), BernsteinError> {
        match self {
            BernsteinFn::Affine { a, b } => {
                if *a < 0.0 || *b < 0.0 {
                    return Err(BernsteinError::BadParameter {
                        what: "affine coefficients must be nonnegative",
                    });
                }
            }
            BernsteinFn::Power { alpha } => {
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(BernsteinError::BadParameter {
                        what: "alpha out of (0, 1]",
                    });
                }
            }
            BernsteinFn::Log1p => {}
            BernsteinFn::OneMinusExp { scale, rate } => {
                if *scale < 0.0 || *rate <= 0.0 {
                    return Err(BernsteinError::BadParameter {
                        what: "scale must be nonnegative, rate positive",
                    });
                }
            }
            BernsteinFn::Levy(t) => {
                if t.a < 0.0 || t.b < 0.0 {
                    return Err(BernsteinError::BadParameter {
                        what: "triple coefficients must be nonnegative",
                    });
                }
                t.measure.validate()?;
                t.measure.levy_admissibility()?;
            }
            BernsteinFn::Sum(parts) => {
                if parts.is_empty() {
                    return Err(BernsteinError::BadParameter {
                        what: "empty sum",
                    });
                }
                for p in parts {
                    p.validate()?;
                }
            }
            BernsteinFn::Compose { outer, inner } => {
                outer.validate()?;
                inner.validate()?;
            }
        }
        Ok(())
    }

    /// Evaluate on the closed right half-plane.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, BernsteinError> {
        let z = check_rhp(z)?;
        match self {
            BernsteinFn::Affine { a, b } => Ok(a + b * z),
            BernsteinFn::Power { alpha } => {
                if z.norm() == 0.0 {
                    Ok(Complex64::new(0.0, 0.0))
                } else {
                    Ok(z.powf(*alpha))
                }
            }
            BernsteinFn::Log1p => Ok((1.0 + z).ln()),
            BernsteinFn::OneMinusExp { scale, rate } => Ok(-scale * expm1c(-rate * z)),
            BernsteinFn::Levy(t) => eval_triple(t, z, EVAL_TARGET),
            BernsteinFn::Sum(parts) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for p in parts {
                    acc += p.eval(z)?;
                }
                Ok(acc)
            }
            BernsteinFn::Compose { outer, inner } => outer.eval(inner.eval(z)?),
        }
    }

    /// k-th derivative for k in 1..=3.
    pub fn derivative(&self, z: Complex64, k: u32) -> Result<Complex64, BernsteinError> {
        if !(1..=3).contains(&k) {
            return Err(BernsteinError::BadParameter {
                what: "derivative order must be 1, 2 or 3",
            });
        }
        let z = check_rhp(z)?;
        self.derivative_inner(z, k)
    }

    fn derivative_inner(&self, z: Complex64, k: u32) -> Result<Complex64, BernsteinError> {
        match self {
            BernsteinFn::Affine { b, .. } => Ok(if k == 1 {
                Complex64::new(*b, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }),
            BernsteinFn::Power { alpha } => {
                if z.norm() == 0.0 {
                    return Err(BernsteinError::Domain {
                        what: "derivative of a power at 0",
                    });
                }
                let mut coeff = 1.0;
                for j in 0..k {
                    coeff *= alpha - j as f64;
                }
                Ok(coeff * z.powf(alpha - k as f64))
            }
            BernsteinFn::Log1p => {
                // (-1)^{k+1} (k-1)! / (1+z)^k
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                let fact = match k {
                    1 => 1.0,
                    2 => 1.0,
                    _ => 2.0,
                };
                Ok(sign * fact * (1.0 + z).powi(-(k as i32)))
            }
            BernsteinFn::OneMinusExp { scale, rate } => {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                Ok(sign * scale * libm::pow(*rate, k as f64) * (-rate * z).exp())
            }
            BernsteinFn::Levy(t) => derivative_triple(t, z, k, EVAL_TARGET),
            BernsteinFn::Sum(parts) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for p in parts {
                    acc += p.derivative_inner(z, k)?;
                }
                Ok(acc)
            }
            BernsteinFn::Compose { outer, inner } => {
                let g = inner.eval(z)?;
                let g1 = inner.derivative_inner(z, 1)?;
                let f1 = outer.derivative_inner(g, 1)?;
                match k {
                    1 => Ok(f1 * g1),
                    2 => {
                        let g2 = inner.derivative_inner(z, 2)?;
                        let f2 = outer.derivative_inner(g, 2)?;
                        Ok(f2 * g1 * g1 + f1 * g2)
                    }
                    _ => {
                        let g2 = inner.derivative_inner(z, 2)?;
                        let g3 = inner.derivative_inner(z, 3)?;
                        let f2 = outer.derivative_inner(g, 2)?;
                        let f3 = outer.derivative_inner(g, 3)?;
                        Ok(f3 * g1 * g1 * g1 + 3.0 * f2 * g1 * g2 + f1 * g3)
                    }
                }
            }
        }
    }

    /// Closed-form Lévy triple, when one exists.
    pub fn levy_triple(&self) -> Result<LevyTriple, BernsteinError> {
        match self {
            BernsteinFn::Affine { a, b } => Ok(LevyTriple {
                a: *a,
                b: *b,
                measure: Arc::new(RadonMeasure::empty()),
            }),
            BernsteinFn::Power { alpha } => {
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(BernsteinError::BadParameter {
                        what: "alpha out of (0, 1]",
                    });
                }
                if (*alpha - 1.0).abs() < 1e-14 {
                    return Ok(LevyTriple {
                        a: 0.0,
                        b: 1.0,
                        measure: Arc::new(RadonMeasure::empty()),
                    });
                }
                // μ(ds) = alpha / Γ(1-alpha) s^{-1-alpha} ds
                let c = alpha / gamma(1.0 - alpha);
                let al = *alpha;
                Ok(LevyTriple {
                    a: 0.0,
                    b: 0.0,
                    measure: Arc::new(RadonMeasure {
                        atoms: Vec::new(),
                        segments: alloc::vec![Segment {
                            lower: 0.0,
                            upper: 1.0,
                            density: SegmentDensity::PowerWeighted {
                                exponent: -1.0 - al,
                                smooth: Arc::new(move |_| c),
                            },
                        }],
                        tails: alloc::vec![Tail {
                            coeff: c,
                            power: -1.0 - al,
                            rate: 0.0,
                            cut: 1.0,
                        }],
                    }),
                })
            }
            BernsteinFn::Log1p => Ok(LevyTriple {
                a: 0.0,
                b: 0.0,
                // μ(ds) = s^{-1} e^{-s} ds
                measure: Arc::new(RadonMeasure {
                    atoms: Vec::new(),
                    segments: alloc::vec![Segment {
                        lower: 0.0,
                        upper: 1.0,
                        density: SegmentDensity::PowerWeighted {
                            exponent: -1.0,
                            smooth: Arc::new(|s| libm::exp(-s)),
                        },
                    }],
                    tails: alloc::vec![Tail {
                        coeff: 1.0,
                        power: -1.0,
                        rate: 1.0,
                        cut: 1.0,
                    }],
                }),
            }),
            BernsteinFn::OneMinusExp { scale, rate } => Ok(LevyTriple {
                a: 0.0,
                b: 0.0,
                measure: Arc::new(RadonMeasure {
                    atoms: alloc::vec![(*rate, *scale)],
                    segments: Vec::new(),
                    tails: Vec::new(),
                }),
            }),
            BernsteinFn::Levy(t) => Ok(t.clone()),
            BernsteinFn::Sum(parts) => {
                let mut a = 0.0;
                let mut b = 0.0;
                let mut m = RadonMeasure::empty();
                for p in parts {
                    let t = p.levy_triple()?;
                    a += t.a;
                    b += t.b;
                    m = m.merged((*t.measure).clone());
                }
                Ok(LevyTriple {
                    a,
                    b,
                    measure: Arc::new(m),
                })
            }
            BernsteinFn::Compose { .. } => Err(BernsteinError::UnsupportedRepresentation),
        }
    }

    /// The complete Bernstein function associated to this one.
    pub fn associated(&self) -> Result<AssociatedCbf, BernsteinError> {
        Ok(AssociatedCbf {
            triple: self.levy_triple()?,
        })
    }
}

/// Evaluate a Lévy triple: `a + b z + ∫ (1 - e^{-zs}) μ(ds)`.
pub fn eval_triple(t: &LevyTriple, z: Complex64, target: f64) -> Result<Complex64, BernsteinError> {
    let zero = Complex64::new(0.0, 0.0);
    if z.norm() == 0.0 {
        return Ok(Complex64::new(t.a, 0.0));
    }
    let mut f = |s: f64| -expm1c(-z * s);
    let mut f_over_s = |s: f64| -expm1c(-z * s) / s;
    let mut kernel = Kernel {
        f: &mut f,
        f_over_s: Some(&mut f_over_s),
    };
    let mut acc = t
        .measure
        .integrate_atoms_segments(&mut kernel, 1.0 / z.norm(), &zero, target)?;
    for tail in &t.measure.tails {
        // ∫_cut^∞ (1 - e^{-zs}) tail = mass - Laplace
        let m = tail.mass(tail.cut)?;
        let lap = tail.laplace(z, 0.0, tail.cut)?;
        acc += m - lap;
    }
    Ok(t.a + t.b * z + acc)
}

/// k-th derivative of a Lévy triple evaluation.
pub fn derivative_triple(
    t: &LevyTriple,
    z: Complex64,
    k: u32,
    target: f64,
) -> Result<Complex64, BernsteinError> {
    let zero = Complex64::new(0.0, 0.0);
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let kf = k as f64;
    let mut f = move |s: f64| libm::pow(s, kf) * (-z * s).exp();
    let mut f_over_s = move |s: f64| libm::pow(s, kf - 1.0) * (-z * s).exp();
    let mut kernel = Kernel {
        f: &mut f,
        f_over_s: Some(&mut f_over_s),
    };
    let mut acc = t
        .measure
        .integrate_atoms_segments(&mut kernel, 1.0 / z.norm(), &zero, target)?;
    for tail in &t.measure.tails {
        acc += tail.laplace(z, kf, tail.cut)?;
    }
    let linear = if k == 1 {
        Complex64::new(t.b, 0.0)
    } else {
        zero
    };
    Ok(linear + sign * acc)
}

/// Complete Bernstein function associated to a Lévy triple:
/// `φ(λ) = a + b λ + ∫ λs / (1 + λs) ν(ds)`, with the same triple.
///
/// On (0, ∞) this is the classical associated function
/// `φ(λ) = λ ψ-hat(1/λ)` of the Bernstein function for the triple.
pub struct AssociatedCbf {
    pub triple: LevyTriple,
}

fn check_cut_plane(lambda: Complex64) -> Result<(), BernsteinError> {
    if lambda.re <= 0.0 && lambda.im.abs() <= 1e-300 {
        return Err(BernsteinError::Domain {
            what: "point on the cut (-inf, 0]",
        });
    }
    Ok(())
}

impl AssociatedCbf {
    pub fn eval(&self, lambda: Complex64) -> Result<Complex64, BernsteinError> {
        check_cut_plane(lambda)?;
        let zero = Complex64::new(0.0, 0.0);
        let t = &self.triple;
        let mut f = |s: f64| {
            let ls = lambda * s;
            ls / (1.0 + ls)
        };
        let mut f_over_s = |s: f64| lambda / (1.0 + lambda * s);
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: Some(&mut f_over_s),
        };
        let mut acc = t
            .measure
            .integrate_atoms_segments(&mut kernel, 1.0 / lambda.norm(), &zero, EVAL_TARGET)?;
        for tail in &t.measure.tails {
            let mut f = |s: f64| {
                let ls = lambda * s;
                ls / (1.0 + ls)
            };
            acc += tail.integrate(&mut f, tail.cut, 0.0, 1.0 / lambda.norm(), &zero, EVAL_TARGET)?;
        }
        Ok(t.a + t.b * lambda + acc)
    }

    /// `φ'(λ) = b + ∫ s / (1 + λs)^2 ν(ds)`.
    pub fn d1(&self, lambda: Complex64) -> Result<Complex64, BernsteinError> {
        check_cut_plane(lambda)?;
        let zero = Complex64::new(0.0, 0.0);
        let t = &self.triple;
        let mut f = |s: f64| {
            let d = 1.0 + lambda * s;
            s / (d * d)
        };
        let mut f_over_s = |s: f64| {
            let d = 1.0 + lambda * s;
            1.0 / (d * d)
        };
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: Some(&mut f_over_s),
        };
        let mut acc = t
            .measure
            .integrate_atoms_segments(&mut kernel, 1.0 / lambda.norm(), &zero, EVAL_TARGET)?;
        for tail in &t.measure.tails {
            let mut f = |s: f64| {
                let d = 1.0 + lambda * s;
                s / (d * d)
            };
            acc += tail.integrate(&mut f, tail.cut, 1.0, 1.0 / lambda.norm(), &zero, EVAL_TARGET)?;
        }
        Ok(t.b + acc)
    }

    /// `φ''(λ) = -2 ∫ s^2 / (1 + λs)^3 ν(ds)`.
    pub fn d2(&self, lambda: Complex64) -> Result<Complex64, BernsteinError> {
        check_cut_plane(lambda)?;
        let zero = Complex64::new(0.0, 0.0);
        let t = &self.triple;
        let mut f = |s: f64| {
            let d = 1.0 + lambda * s;
            s * s / (d * d * d)
        };
        let mut f_over_s = |s: f64| {
            let d = 1.0 + lambda * s;
            s / (d * d * d)
        };
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: Some(&mut f_over_s),
        };
        let mut acc = t
            .measure
            .integrate_atoms_segments(&mut kernel, 1.0 / lambda.norm(), &zero, EVAL_TARGET)?;
        for tail in &t.measure.tails {
            let mut f = |s: f64| {
                let d = 1.0 + lambda * s;
                s * s / (d * d * d)
            };
            acc += tail.integrate(&mut f, tail.cut, 1.0, 1.0 / lambda.norm(), &zero, EVAL_TARGET)?;
        }
        Ok(-2.0 * acc)
    }
}

/// Stieltjes-form complete Bernstein function
/// `φ(λ) = a + b λ + ∫ λ / (λ + s) σ(ds)`.
pub struct StieltjesCbf {
    pub a: f64,
    pub b: f64,
    pub sigma: RadonMeasure,
}

impl StieltjesCbf {
    /// `λ^r` for r in (0, 1): `σ(ds) = (sin πr / π) s^{r-1} ds`.
    pub fn power(r: f64) -> Result<Self, BernsteinError> {
        if !(r > 0.0 && r < 1.0) {
            return Err(BernsteinError::BadParameter {
                what: "power exponent out of (0, 1)",
            });
        }
        let c = libm::sin(core::f64::consts::PI * r) / core::f64::consts::PI;
        Ok(StieltjesCbf {
            a: 0.0,
            b: 0.0,
            sigma: RadonMeasure {
                atoms: Vec::new(),
                segments: alloc::vec![Segment {
                    lower: 0.0,
                    upper: 1.0,
                    density: SegmentDensity::PowerWeighted {
                        exponent: r - 1.0,
                        smooth: Arc::new(move |_| c),
                    },
                }],
                tails: alloc::vec![Tail {
                    coeff: c,
                    power: r - 1.0,
                    rate: 0.0,
                    cut: 1.0,
                }],
            },
        })
    }

    /// `log(1 + λ)`: `σ(ds) = 1_{s > 1} s^{-1} ds`.
    pub fn log1p() -> Self {
        StieltjesCbf {
            a: 0.0,
            b: 0.0,
            sigma: RadonMeasure {
                atoms: Vec::new(),
                segments: Vec::new(),
                tails: alloc::vec![Tail {
                    coeff: 1.0,
                    power: -1.0,
                    rate: 0.0,
                    cut: 1.0,
                }],
            },
        }
    }

    pub fn validate(&self) -> Result<(), BernsteinError> {
        if self.a < 0.0 || self.b < 0.0 {
            return Err(BernsteinError::BadParameter {
                what: "coefficients must be nonnegative",
            });
        }
        self.sigma.validate()?;
        self.sigma.stieltjes_admissibility()?;
        Ok(())
    }

    pub fn eval(&self, lambda: Complex64) -> Result<Complex64, BernsteinError> {
        check_cut_plane(lambda)?;
        let zero = Complex64::new(0.0, 0.0);
        let mut f = |s: f64| lambda / (lambda + s);
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: None,
        };
        let mut acc = self
            .sigma
            .integrate_atoms_segments(&mut kernel, lambda.norm(), &zero, EVAL_TARGET)?;
        for tail in &self.sigma.tails {
            let mut f = |s: f64| lambda / (lambda + s);
            acc += tail.integrate(&mut f, tail.cut, 1.0, lambda.norm(), &zero, EVAL_TARGET)?;
        }
        Ok(self.a + self.b * lambda + acc)
    }
}

/// `Δ(λ) = 1/(1+λ) - e^{-λ}`.
pub fn delta(lambda: Complex64) -> Complex64 {
    if lambda.norm() < 0.3 {
        // Σ_{n>=2} (-1)^n (1 - 1/n!) λ^n
        let mut pow = lambda * lambda;
        let mut fact = 2.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 2..40u32 {
            if n > 2 {
                pow *= lambda;
                fact *= n as f64;
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * (1.0 - 1.0 / fact) * pow;
            acc += term;
            if term.norm() < 1e-18 {
                break;
            }
        }
        acc
    } else {
        1.0 / (1.0 + lambda) - (-lambda).exp()
    }
}

/// `4 |λ|^2 / (1 + Re λ)^3`, valid for Re λ >= 0.
pub fn delta_bound(lambda: Complex64) -> f64 {
    let n = lambda.norm();
    4.0 * n * n / libm::pow(1.0 + lambda.re, 3.0)
}

/// `r(λ; z) = 1/(z + ψ(λ)) - 1/(z + φ(λ))`.
pub fn resolvent_diff(
    psi: &BernsteinFn,
    phi: &AssociatedCbf,
    lambda: Complex64,
    z: Complex64,
) -> Result<Complex64, BernsteinError> {
    let p = psi.eval(lambda)?;
    let q = phi.eval(lambda)?;
    Ok(1.0 / (z + p) - 1.0 / (z + q))
}

/// Linear-growth constant: `|ψ(z)| <= c_ψ |z|` for `|z| >= 1`, with
/// `c_ψ = a + b + ∫_0^1 s μ(ds) + 2 μ([1, ∞))`.
pub fn linear_growth_constant(t: &LevyTriple) -> Result<f64, BernsteinError> {
    Ok(t.a + t.b + t.measure.first_moment_below(1.0)? + 2.0 * t.measure.mass_above(1.0)?)
}
