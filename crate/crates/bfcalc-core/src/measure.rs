//! Radon measures on (0, ∞) assembled from atoms, density segments and
//! analytic exponential / power tails.
//!
//! A measure integrates a caller-supplied kernel over its atoms and segments
//! numerically; tails carry enough structure (`c0 s^q e^{-cs}` beyond a cut)
//! that mass and Laplace-type integrals against them reduce to incomplete
//! gamma functions, while rational kernels fall back to a substitution
//! `s = T/v` that maps `[T, ∞)` onto `(0, 1]`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::quad::{
    integrate_doubling, integrate_power_lower, QuadError, QuadVec, DEFAULT_TARGET,
};
use crate::special::gamma_upper;

pub type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum SegmentDensity {
    /// Density value is `f(s)` directly.
    Smooth(DensityFn),
    /// Density is `(s - lower)^exponent * smooth(s)` with `smooth` bounded.
    PowerWeighted { exponent: f64, smooth: DensityFn },
}

#[derive(Clone)]
pub struct Segment {
    pub lower: f64,
    pub upper: f64,
    pub density: SegmentDensity,
}

/// Analytic tail `c0 s^q e^{-cs}` supported on `[cut, ∞)`.
#[derive(Debug, Clone, Copy)]
pub struct Tail {
    pub coeff: f64,
    pub power: f64,
    pub rate: f64,
    pub cut: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeasureError {
    Quad(QuadError),
    /// The requested moment diverges (e.g. rate-0 tail with power >= -1).
    Divergent { what: &'static str },
    Invalid { what: &'static str },
}

impl From<QuadError> for MeasureError {
    fn from(e: QuadError) -> Self {
        MeasureError::Quad(e)
    }
}

impl core::fmt::Display for MeasureError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MeasureError::Quad(q) => write!(f, "{q}"),
            MeasureError::Divergent { what } => write!(f, "divergent integral: {what}"),
            MeasureError::Invalid { what } => write!(f, "invalid measure: {what}"),
        }
    }
}

impl Tail {
    /// Total mass `∫_from^∞ c0 s^q e^{-cs} ds`.
    pub fn mass(&self, from: f64) -> Result<f64, MeasureError> {
        if self.rate > 0.0 {
            let w = Complex64::new(self.rate * from, 0.0);
            let scale = libm::pow(self.rate, -(self.power + 1.0));
            let g = gamma_upper(self.power + 1.0, w)?;
            Ok(self.coeff * scale * g.re)
        } else if self.power < -1.0 {
            Ok(self.coeff * libm::pow(from, self.power + 1.0) / (-1.0 - self.power))
        } else {
            Err(MeasureError::Divergent { what: "tail mass" })
        }
    }

    /// `∫_from^∞ s^{q+k} e^{-(c+z)s} c0 ds` for `Re z >= 0` (`z + c != 0`).
    pub fn laplace(&self, z: Complex64, extra_power: f64, from: f64) -> Result<Complex64, MeasureError> {
        let zc = z + self.rate;
        if zc.norm() == 0.0 {
            return self
                .mass_with_extra(extra_power, from)
                .map(|m| Complex64::new(m, 0.0));
        }
        let a = self.power + extra_power + 1.0;
        if libm::fabs(self.power + extra_power) < 1e-14 {
            // plain exponential: ∫ e^{-zc s} ds = e^{-zc from} / zc
            return Ok(self.coeff * (-zc * from).exp() / zc);
        }
        // zc^{-a} Γ(a, zc from) with principal powers; Re zc >= 0 keeps the
        // argument inside the right half-plane.
        let g = gamma_upper(a, zc * from)?;
        Ok(self.coeff * zc.powf(-a) * g)
    }

    fn mass_with_extra(&self, extra_power: f64, from: f64) -> Result<f64, MeasureError> {
        let shifted = Tail {
            power: self.power + extra_power,
            ..*self
        };
        shifted.mass(from)
    }

    /// Numeric integral `∫_from^∞ f(s) * density(s) ds` for kernels without a
    /// Laplace structure. `decay_order` is the power-law decay of `f` at
    /// infinity (`f(s) = O(s^{-decay_order})`), used for the rate-0 branch.
    /// `knee` marks where that asymptotic regime starts (0 if it holds from
    /// `from` on); the stretch [from, knee] is bridged in log scale so that
    /// kernels like s/(1+λs)² with tiny λ stay resolvable.
    pub fn integrate<T: QuadVec>(
        &self,
        f: &mut dyn FnMut(f64) -> T,
        from: f64,
        decay_order: f64,
        knee: f64,
        zero: &T,
        target: f64,
    ) -> Result<T, MeasureError> {
        let c0 = self.coeff;
        let q = self.power;
        if self.rate > 0.0 {
            // truncate once the exponential factor is negligible
            let upper = from + (80.0 + libm::fabs(q) * 10.0) / self.rate;
            let mut g = |s: f64| {
                let w = c0 * libm::pow(s, q) * libm::exp(-self.rate * s);
                let mut v = zero.zero_like();
                v.axpy(w, &f(s));
                v
            };
            Ok(integrate_doubling(&mut g, from, upper, zero, target, 1 << 12)?)
        } else {
            let eff = decay_order - q - 2.0;
            if eff <= -1.0 {
                return Err(MeasureError::Divergent {
                    what: "rate-0 tail against slowly decaying kernel",
                });
            }
            let mut acc = zero.zero_like();
            let start = if knee > from { knee } else { from };
            if start > from {
                // pre-asymptotic stretch, log substitution s = e^u
                let mut g = |u: f64| {
                    let s = libm::exp(u);
                    let mut v = zero.zero_like();
                    v.axpy(c0 * libm::pow(s, q + 1.0), &f(s));
                    v
                };
                let bridge = integrate_doubling(
                    &mut g,
                    libm::log(from),
                    libm::log(start),
                    zero,
                    target,
                    1 << 14,
                )?;
                acc.axpy(1.0, &bridge);
            }
            // s = start / v maps [start, ∞) to (0, 1]:
            // ∫ f(s) c0 s^q ds = c0 start^{q+1} ∫_0^1 v^{-q-2} f(start/v) dv
            let scale = c0 * libm::pow(start, q + 1.0);
            // near v = 0 the integrand behaves like v^eff; peel that factor
            // off and let the power substitution absorb it, leaving a kernel
            // with a smooth expansion in v
            let mut smooth = |v: f64| {
                let s = start / v;
                let w = libm::pow(v, -q - 2.0 - eff);
                let mut out = zero.zero_like();
                out.axpy(w, &f(s));
                out
            };
            let raw = integrate_power_lower(&mut smooth, 0.0, 1.0, eff, zero, target, 1 << 14)?;
            acc.axpy(scale, &raw);
            Ok(acc)
        }
    }
}

/// Kernel to integrate against a measure. `f_over_s` must evaluate `f(s)/s`
/// stably near 0 and is required whenever a segment or the admissibility
/// integrals touch a density with exponent <= -1 at the origin.
pub struct Kernel<'a, T> {
    pub f: &'a mut dyn FnMut(f64) -> T,
    pub f_over_s: Option<&'a mut dyn FnMut(f64) -> T>,
}

#[derive(Clone)]
pub struct RadonMeasure {
    pub atoms: Vec<(f64, f64)>,
    pub segments: Vec<Segment>,
    pub tails: Vec<Tail>,
}

impl RadonMeasure {
    pub fn empty() -> Self {
        RadonMeasure {
            atoms: Vec::new(),
            segments: Vec::new(),
            tails: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.segments.is_empty() && self.tails.is_empty()
    }

    pub fn validate(&self) -> Result<(), MeasureError> {
        for &(s, w) in &self.atoms {
            if !(s > 0.0) || !(w >= 0.0) || !s.is_finite() || !w.is_finite() {
                return Err(MeasureError::Invalid {
                    what: "atom locations must be positive and masses nonnegative",
                });
            }
        }
        for seg in &self.segments {
            if !(seg.lower >= 0.0) || !(seg.upper > seg.lower) || !seg.upper.is_finite() {
                return Err(MeasureError::Invalid {
                    what: "segment interval must satisfy 0 <= lower < upper < inf",
                });
            }
            if let SegmentDensity::PowerWeighted { exponent, .. } = seg.density {
                if exponent <= -2.0 {
                    return Err(MeasureError::Invalid {
                        what: "segment exponent must exceed -2",
                    });
                }
            }
        }
        for t in &self.tails {
            if !(t.cut > 0.0) || t.coeff < 0.0 || t.rate < 0.0 {
                return Err(MeasureError::Invalid {
                    what: "tail needs positive cut, nonnegative coefficient and rate",
                });
            }
            if t.rate == 0.0 && t.power >= 0.0 {
                return Err(MeasureError::Invalid {
                    what: "rate-0 tail must have negative power",
                });
            }
        }
        Ok(())
    }

    /// Integrate the kernel over atoms and segments only (tails are handled
    /// by the caller through their analytic structure). `knee` is the scale
    /// on which the kernel varies (e.g. 1/|λ| for s ↦ λs/(1+λs)); segments
    /// straddling it are split there so uniform panels never have to resolve
    /// a feature far below their width.
    pub fn integrate_atoms_segments<T: QuadVec>(
        &self,
        kernel: &mut Kernel<'_, T>,
        knee: f64,
        zero: &T,
        target: f64,
    ) -> Result<T, MeasureError> {
        let mut acc = zero.zero_like();
        for &(s, w) in &self.atoms {
            acc.axpy(w, &(kernel.f)(s));
        }
        for seg in &self.segments {
            let v = integrate_segment(seg, kernel, knee, zero, target)?;
            acc.axpy(1.0, &v);
        }
        Ok(acc)
    }

    /// `∫ s/(1+s) μ(ds)`; finite iff the measure is an admissible Lévy measure.
    pub fn levy_admissibility(&self) -> Result<f64, MeasureError> {
        let mut f = |s: f64| s / (1.0 + s);
        let mut f_over_s = |s: f64| 1.0 / (1.0 + s);
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: Some(&mut f_over_s),
        };
        let mut acc = self.integrate_atoms_segments(&mut kernel, 1.0, &0.0, DEFAULT_TARGET)?;
        for t in &self.tails {
            // s/(1+s) -> 1 at infinity, so this converges iff the mass does
            t.mass(t.cut)?;
            let mut f = |s: f64| s / (1.0 + s);
            acc += t.integrate(&mut f, t.cut, 0.0, 1.0, &0.0, DEFAULT_TARGET)?;
        }
        Ok(acc)
    }

    /// `∫ 1/(1+s) σ(ds)`; finite iff admissible as a Stieltjes measure.
    pub fn stieltjes_admissibility(&self) -> Result<f64, MeasureError> {
        let mut f = |s: f64| 1.0 / (1.0 + s);
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: None,
        };
        let mut acc = self.integrate_atoms_segments(&mut kernel, 1.0, &0.0, DEFAULT_TARGET)?;
        for t in &self.tails {
            let mut f = |s: f64| 1.0 / (1.0 + s);
            acc += t.integrate(&mut f, t.cut, 1.0, 1.0, &0.0, DEFAULT_TARGET)?;
        }
        Ok(acc)
    }

    /// `∫_{(0,c)} s μ(ds)`.
    pub fn first_moment_below(&self, c: f64) -> Result<f64, MeasureError> {
        let mut acc = 0.0;
        for &(s, w) in &self.atoms {
            if s < c {
                acc += w * s;
            }
        }
        for seg in &self.segments {
            if seg.lower >= c {
                continue;
            }
            let hi = libm::fmin(seg.upper, c);
            acc += match &seg.density {
                SegmentDensity::Smooth(d) => {
                    let mut g = |s: f64| s * d(s);
                    integrate_doubling(&mut g, seg.lower, hi, &0.0, DEFAULT_TARGET, 1 << 12)?
                }
                SegmentDensity::PowerWeighted { exponent, smooth } => {
                    // weight s times (s - l)^g; fold the kernel zero into the
                    // exponent when the singularity sits at the origin
                    if seg.lower == 0.0 {
                        let mut g = |s: f64| smooth(s);
                        integrate_power_lower(
                            &mut g,
                            0.0,
                            hi,
                            exponent + 1.0,
                            &0.0,
                            DEFAULT_TARGET,
                            1 << 12,
                        )?
                    } else {
                        let mut g = |s: f64| s * smooth(s);
                        integrate_power_lower(
                            &mut g,
                            seg.lower,
                            hi,
                            *exponent,
                            &0.0,
                            DEFAULT_TARGET,
                            1 << 12,
                        )?
                    }
                }
            };
        }
        for t in &self.tails {
            if t.cut < c {
                let mut g =
                    |s: f64| t.coeff * libm::pow(s, t.power + 1.0) * libm::exp(-t.rate * s);
                acc += integrate_doubling(&mut g, t.cut, c, &0.0, DEFAULT_TARGET, 1 << 12)?;
            }
        }
        Ok(acc)
    }

    /// `μ([c, ∞))` for c > 0.
    pub fn mass_above(&self, c: f64) -> Result<f64, MeasureError> {
        let mut acc = 0.0;
        for &(s, w) in &self.atoms {
            if s >= c {
                acc += w;
            }
        }
        for seg in &self.segments {
            if seg.upper <= c {
                continue;
            }
            let lo = libm::fmax(seg.lower, c);
            acc += match &seg.density {
                SegmentDensity::Smooth(d) => {
                    let mut g = |s: f64| d(s);
                    integrate_doubling(&mut g, lo, seg.upper, &0.0, DEFAULT_TARGET, 1 << 12)?
                }
                SegmentDensity::PowerWeighted { exponent, smooth } => {
                    if lo > seg.lower {
                        let l = seg.lower;
                        let g = *exponent;
                        let mut d = |s: f64| libm::pow(s - l, g) * smooth(s);
                        integrate_doubling(&mut d, lo, seg.upper, &0.0, DEFAULT_TARGET, 1 << 12)?
                    } else if *exponent > -1.0 {
                        let mut g = |s: f64| smooth(s);
                        integrate_power_lower(
                            &mut g,
                            seg.lower,
                            seg.upper,
                            *exponent,
                            &0.0,
                            DEFAULT_TARGET,
                            1 << 12,
                        )?
                    } else {
                        return Err(MeasureError::Divergent {
                            what: "mass of a segment with exponent <= -1",
                        });
                    }
                }
            };
        }
        for t in &self.tails {
            acc += t.mass(libm::fmax(t.cut, c))?;
        }
        Ok(acc)
    }

    /// Merge two measures (sum of measures; intervals may overlap).
    pub fn merged(mut self, other: RadonMeasure) -> RadonMeasure {
        self.atoms.extend(other.atoms);
        self.segments.extend(other.segments);
        self.tails.extend(other.tails);
        self
    }

    /// Scale all masses by `c >= 0`.
    pub fn scaled(mut self, c: f64) -> RadonMeasure {
        for a in &mut self.atoms {
            a.1 *= c;
        }
        for seg in &mut self.segments {
            scale_density(&mut seg.density, c);
        }
        for t in &mut self.tails {
            t.coeff *= c;
        }
        self
    }
}

fn scale_density(d: &mut SegmentDensity, c: f64) {
    *d = match d.clone() {
        SegmentDensity::Smooth(f) => SegmentDensity::Smooth(Arc::new(move |s| c * f(s))),
        SegmentDensity::PowerWeighted { exponent, smooth } => SegmentDensity::PowerWeighted {
            exponent,
            smooth: Arc::new(move |s| c * smooth(s)),
        },
    };
}

fn integrate_segment<T: QuadVec>(
    seg: &Segment,
    kernel: &mut Kernel<'_, T>,
    knee: f64,
    zero: &T,
    target: f64,
) -> Result<T, MeasureError> {
    if knee > seg.lower && knee < seg.upper {
        let left = Segment {
            lower: seg.lower,
            upper: knee,
            density: seg.density.clone(),
        };
        let mut acc = integrate_segment_core(&left, kernel, zero, target)?;
        // above the knee the integrand is slowly varying in log scale and
        // the density has no endpoint singularity
        let f = &mut *kernel.f;
        let mut g = |u: f64| {
            let s = libm::exp(u);
            let mut v = zero.zero_like();
            v.axpy(density_value(seg, s) * s, &f(s));
            v
        };
        let hi = integrate_doubling(
            &mut g,
            libm::log(knee),
            libm::log(seg.upper),
            zero,
            target,
            1 << 14,
        )?;
        acc.axpy(1.0, &hi);
        return Ok(acc);
    }
    integrate_segment_core(seg, kernel, zero, target)
}

fn density_value(seg: &Segment, s: f64) -> f64 {
    match &seg.density {
        SegmentDensity::Smooth(d) => d(s),
        SegmentDensity::PowerWeighted { exponent, smooth } => {
            libm::pow(s - seg.lower, *exponent) * smooth(s)
        }
    }
}

fn integrate_segment_core<T: QuadVec>(
    seg: &Segment,
    kernel: &mut Kernel<'_, T>,
    zero: &T,
    target: f64,
) -> Result<T, MeasureError> {
    match &seg.density {
        SegmentDensity::Smooth(d) => {
            let mut g = |s: f64| {
                let mut v = zero.zero_like();
                v.axpy(d(s), &(kernel.f)(s));
                v
            };
            Ok(integrate_doubling(&mut g, seg.lower, seg.upper, zero, target, 1 << 12)?)
        }
        SegmentDensity::PowerWeighted { exponent, smooth } => {
            let g = *exponent;
            if g > -1.0 {
                let f = &mut *kernel.f;
                let mut weighted = |s: f64| {
                    let mut v = zero.zero_like();
                    v.axpy(smooth(s), &f(s));
                    v
                };
                Ok(integrate_power_lower(
                    &mut weighted,
                    seg.lower,
                    seg.upper,
                    g,
                    zero,
                    target,
                    1 << 12,
                )?)
            } else {
                // exponent in (-2, -1]: needs a kernel vanishing linearly at 0
                if seg.lower != 0.0 {
                    // singularity is at the segment's own lower endpoint but
                    // the weight is still integrable only via the kernel zero
                    // at s = 0; away from 0 the density is plainly singular.
                    return Err(MeasureError::Invalid {
                        what: "exponent <= -1 requires lower endpoint 0",
                    });
                }
                let fos = kernel.f_over_s.as_mut().ok_or(MeasureError::Divergent {
                    what: "kernel without a zero at the origin against exponent <= -1",
                })?;
                let mut weighted = |s: f64| {
                    let mut v = zero.zero_like();
                    v.axpy(smooth(s), &fos(s));
                    v
                };
                Ok(integrate_power_lower(
                    &mut weighted,
                    0.0,
                    seg.upper,
                    g + 1.0,
                    zero,
                    target,
                    1 << 12,
                )?)
            }
        }
    }
}
