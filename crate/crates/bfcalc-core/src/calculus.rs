//! Matrix functional calculi for sectorial matrices: resolvent machinery,
//! the Hirsch integral for complete Bernstein functions, the
//! Lévy–Khintchine integral, a sector-contour calculus, Kato's
//! fractional-power resolvent formula, and the explicit resolvent-bound
//! constants tied to them.
//!
//! Suprema over sectors are estimated by log-radial sampling with
//! golden-section refinement; they are falsification estimates, not proofs.

use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::bernstein::{resolvent_diff, AssociatedCbf, BernsteinError, BernsteinFn, StieltjesCbf};
use crate::geometry::CheckReport;
use crate::linalg::{self, expm, CMatrix, LinalgError};
use crate::measure::{Kernel, MeasureError};
use crate::quad::{golden_max, integrate_doubling, lin_grid, log_grid, QuadError, QuadVec};

#[derive(Debug)]
pub enum CalcError {
    NotSectorial { what: &'static str },
    Domain { what: &'static str },
    BadParameter { what: &'static str },
    /// `‖e^{-sA}‖` exceeded the growth cap during an integral.
    SemigroupUnbounded { norm: f64 },
    Bernstein(BernsteinError),
    Linalg(LinalgError),
    Measure(MeasureError),
    Quad(QuadError),
}

impl From<BernsteinError> for CalcError {
    fn from(e: BernsteinError) -> Self {
        CalcError::Bernstein(e)
    }
}

impl From<LinalgError> for CalcError {
    fn from(e: LinalgError) -> Self {
        CalcError::Linalg(e)
    }
}

impl From<MeasureError> for CalcError {
    fn from(e: MeasureError) -> Self {
        CalcError::Measure(e)
    }
}

impl From<QuadError> for CalcError {
    fn from(e: QuadError) -> Self {
        CalcError::Quad(e)
    }
}

impl core::fmt::Display for CalcError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CalcError::NotSectorial { what } => write!(f, "matrix is not sectorial: {what}"),
            CalcError::Domain { what } => write!(f, "outside domain: {what}"),
            CalcError::BadParameter { what } => write!(f, "bad parameter: {what}"),
            CalcError::SemigroupUnbounded { norm } => {
                write!(f, "semigroup norm grew past cap ({norm:.3e})")
            }
            CalcError::Bernstein(e) => write!(f, "{e}"),
            CalcError::Linalg(e) => write!(f, "{e}"),
            CalcError::Measure(e) => write!(f, "{e}"),
            CalcError::Quad(e) => write!(f, "{e}"),
        }
    }
}

const MATRIX_TARGET: f64 = 1e-9;
const SUP_RADII: usize = 33;
const SUP_ANGLES: usize = 17;

/// A square complex matrix with spectrum off `(-∞, 0]`, together with
/// sampled sectoriality data. Immutable after construction.
pub struct SectorialMatrix {
    a: CMatrix,
    neg_a: CMatrix,
    eigenvalues: Vec<Complex64>,
    omega_hat: f64,
    m_hat: f64,
    refine_samples: usize,
}

impl SectorialMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Largest eigenvalue argument in modulus.
    pub fn omega_hat(&self) -> f64 {
        self.omega_hat
    }

    /// Sampled `sup_{s>0} s ‖(s+A)^{-1}‖`.
    pub fn m_hat(&self) -> f64 {
        self.m_hat
    }

    pub fn refine_samples(&self) -> usize {
        self.refine_samples
    }

    fn spectral_scale(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0f64, |m, l| libm::fmax(m, l.norm()))
    }

    fn min_re_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(f64::INFINITY, |m, l| libm::fmin(m, l.re))
    }

    /// `(z + A)^{-1}`.
    pub fn resolvent(&self, z: Complex64) -> Result<CMatrix, CalcError> {
        resolvent_raw(&self.a, &self.eigenvalues, z)
    }

    /// `(λ - A)^{-1}` for contour integration.
    fn resolvent_at(&self, lambda: Complex64) -> Result<CMatrix, CalcError> {
        let neg_eigs: Vec<Complex64> = self.eigenvalues.iter().map(|l| -l).collect();
        resolvent_raw(&self.neg_a, &neg_eigs, lambda)
    }

    /// Sampled `sup_{z in Σ_omega} ‖z (z+A)^{-1}‖`; requires
    /// `omega < π - ω̂_A` so the sector stays clear of `-spec(A)`.
    pub fn m_sup_sector(&self, omega: f64) -> Result<f64, CalcError> {
        if !(omega >= 0.0 && omega < core::f64::consts::PI - self.omega_hat - 1e-9) {
            return Err(CalcError::BadParameter {
                what: "sector angle reaches the spectrum",
            });
        }
        let angles = if omega == 0.0 {
            alloc::vec![0.0]
        } else {
            lin_grid(-omega, omega, SUP_ANGLES)
        };
        let scale = libm::fmax(self.spectral_scale(), 1e-30);
        let radii = log_grid(1e-6 * scale, 1e6 * scale, SUP_RADII);
        let mut best = 0.0f64;
        let mut best_at = (radii[0], 0.0f64);
        for &r in &radii {
            for &th in &angles {
                let z = Complex64::from_polar(r, th);
                let v = r * self.resolvent(z)?.spectral_norm();
                if v > best {
                    best = v;
                    best_at = (r, th);
                }
            }
        }
        // radial golden refinement on the worst ray
        let th = best_at.1;
        let mut err: Option<CalcError> = None;
        let mut g = |lr: f64| {
            let r = libm::exp(lr);
            let z = Complex64::from_polar(r, th);
            match resolvent_raw(&self.a, &self.eigenvalues, z) {
                Ok(m) => r * m.spectral_norm(),
                Err(e) => {
                    err = Some(e);
                    f64::NEG_INFINITY
                }
            }
        };
        let lr = libm::log(best_at.0);
        let (_, refined) = golden_max(&mut g, lr - 1.2, lr + 1.2, 60);
        if let Some(e) = err {
            return Err(e);
        }
        Ok(libm::fmax(best, refined))
    }

    /// Sampled `sup_{t>0} ‖e^{-tA}‖` (clipped grid; includes t→0 limit 1).
    pub fn semigroup_sup(&self) -> f64 {
        let scale = libm::fmax(self.spectral_scale(), 1e-30);
        let mut best = 1.0f64;
        for &t in &log_grid(1e-4 / scale, 1e3 / libm::fmax(self.min_re_eigenvalue(), 1e-30), 41) {
            let e = expm(&self.a.scale(Complex64::new(-t, 0.0)));
            best = libm::fmax(best, e.spectral_norm());
        }
        best
    }
}

fn resolvent_raw(
    a: &CMatrix,
    eigs: &[Complex64],
    z: Complex64,
) -> Result<CMatrix, CalcError> {
    let dist = eigs
        .iter()
        .fold(f64::INFINITY, |m, l| libm::fmin(m, (z + l).norm()));
    let scale = eigs.iter().fold(z.norm(), |m, l| libm::fmax(m, l.norm()));
    if dist <= 1e-13 * libm::fmax(scale, 1e-300) {
        return Err(CalcError::Domain {
            what: "shift places the matrix within roundoff of its spectrum",
        });
    }
    Ok(a.add_scalar_diag(z).inverse()?)
}

/// Estimate sector data for `A`; fails when an eigenvalue sits on `(-∞, 0]`.
pub fn make_sectorial(a: CMatrix) -> Result<SectorialMatrix, CalcError> {
    let eigenvalues = linalg::eigenvalues(&a)?;
    let scale = eigenvalues
        .iter()
        .fold(0.0f64, |m, l| libm::fmax(m, l.norm()));
    if scale == 0.0 {
        return Err(CalcError::NotSectorial {
            what: "zero matrix",
        });
    }
    let mut omega_hat = 0.0f64;
    for l in &eigenvalues {
        if l.im.abs() <= 1e-12 * scale && l.re <= 1e-12 * scale {
            return Err(CalcError::NotSectorial {
                what: "eigenvalue on (-inf, 0]",
            });
        }
        omega_hat = libm::fmax(omega_hat, l.arg().abs());
    }
    let neg_a = a.scale(Complex64::new(-1.0, 0.0));
    let mut sm = SectorialMatrix {
        a,
        neg_a,
        eigenvalues,
        omega_hat,
        m_hat: 0.0,
        refine_samples: 0,
    };
    sm.m_hat = sm.m_sup_sector(0.0)?;
    sm.refine_samples = SUP_RADII + 60;
    Ok(sm)
}

/// `U f(Λ) U*` for normal `A`; the independent ground truth for the
/// integral calculi. Refuses non-normal input.
pub fn eigen_oracle(
    f: &mut dyn FnMut(Complex64) -> Result<Complex64, CalcError>,
    a: &CMatrix,
) -> Result<CMatrix, CalcError> {
    let scale = libm::fmax(a.fro_norm(), 1e-300);
    let defect = a.normality_defect();
    if defect > 1e-12 * scale * scale {
        return Err(CalcError::Linalg(LinalgError::NotNormal {
            commutator: defect,
        }));
    }
    let s = linalg::schur(a)?;
    let n = a.dim();
    let mut d = CMatrix::zeros(n);
    for i in 0..n {
        d[(i, i)] = f(s.t[(i, i)])?;
    }
    Ok(s.q.matmul(&d).matmul(&s.q.adjoint()))
}

/// Hirsch calculus: `a I + b A + ∫ A (s+A)^{-1} σ(ds)`.
pub fn hirsch_apply(phi: &StieltjesCbf, am: &SectorialMatrix) -> Result<CMatrix, CalcError> {
    let n = am.dim();
    let ident = CMatrix::identity(n);
    let zero = CMatrix::zeros(n);
    let mut acc = ident
        .scale(Complex64::new(phi.a, 0.0))
        .add(&am.matrix().scale(Complex64::new(phi.b, 0.0)));
    let knee = am.spectral_scale();
    let mut fail: Option<CalcError> = None;
    {
        // A (s+A)^{-1} = I - s (s+A)^{-1}
        let mut f = |s: f64| match am.resolvent(Complex64::new(s, 0.0)) {
            Ok(r) => ident.sub(&r.scale(Complex64::new(s, 0.0))),
            Err(e) => {
                fail = Some(e);
                zero.zero_like()
            }
        };
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: None,
        };
        let seg = phi
            .sigma
            .integrate_atoms_segments(&mut kernel, knee, &zero, MATRIX_TARGET)?;
        acc = acc.add(&seg);
    }
    if let Some(e) = fail {
        return Err(e);
    }
    let mut fail: Option<CalcError> = None;
    for tail in &phi.sigma.tails {
        let mut f = |s: f64| match am.resolvent(Complex64::new(s, 0.0)) {
            Ok(r) => ident.sub(&r.scale(Complex64::new(s, 0.0))),
            Err(e) => {
                fail = Some(e);
                zero.zero_like()
            }
        };
        let v = tail.integrate(&mut f, tail.cut, 1.0, knee, &zero, MATRIX_TARGET)?;
        acc = acc.add(&v);
    }
    if let Some(e) = fail {
        return Err(e);
    }
    Ok(acc)
}

/// The associated complete Bernstein function applied to `A`:
/// `a I + b A + ∫ s A (I + s A)^{-1} ν(ds)`.
pub fn apply_associated(
    phi: &AssociatedCbf,
    am: &SectorialMatrix,
) -> Result<CMatrix, CalcError> {
    let t = &phi.triple;
    let n = am.dim();
    let ident = CMatrix::identity(n);
    let zero = CMatrix::zeros(n);
    let mut acc = ident
        .scale(Complex64::new(t.a, 0.0))
        .add(&am.matrix().scale(Complex64::new(t.b, 0.0)));
    let knee = 1.0 / libm::fmax(am.spectral_scale(), 1e-300);
    let a_mat = am.matrix();
    let fail = core::cell::RefCell::new(None);
    let inv_at = |s: f64| -> Option<CMatrix> {
        // (I + s A)^{-1}
        let m = ident.add(&a_mat.scale(Complex64::new(s, 0.0)));
        match m.inverse() {
            Ok(r) => Some(r),
            Err(e) => {
                *fail.borrow_mut() = Some(CalcError::Linalg(e));
                None
            }
        }
    };
    {
        let mut f = |s: f64| match inv_at(s) {
            Some(r) => ident.sub(&r),
            None => zero.zero_like(),
        };
        let mut f_over_s = |s: f64| match inv_at(s) {
            Some(r) => a_mat.matmul(&r),
            None => zero.zero_like(),
        };
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: Some(&mut f_over_s),
        };
        let seg = t
            .measure
            .integrate_atoms_segments(&mut kernel, knee, &zero, MATRIX_TARGET)?;
        acc = acc.add(&seg);
    }
    for tail in &t.measure.tails {
        let mut f = |s: f64| match inv_at(s) {
            Some(r) => ident.sub(&r),
            None => zero.zero_like(),
        };
        let v = tail.integrate(&mut f, tail.cut, 0.0, knee, &zero, MATRIX_TARGET)?;
        acc = acc.add(&v);
    }
    if let Some(e) = fail.into_inner() {
        return Err(e);
    }
    Ok(acc)
}

const SEMIGROUP_CAP: f64 = 1e8;

/// Lévy–Khintchine calculus: `a I + b A + ∫ (I - e^{-sA}) μ(ds)`.
pub fn levy_apply(psi: &BernsteinFn, am: &SectorialMatrix) -> Result<CMatrix, CalcError> {
    let t = psi.levy_triple()?;
    let n = am.dim();
    let ident = CMatrix::identity(n);
    let zero = CMatrix::zeros(n);
    let scale = am.spectral_scale();
    if am.min_re_eigenvalue() < -1e-12 * scale {
        return Err(CalcError::SemigroupUnbounded {
            norm: f64::INFINITY,
        });
    }
    let mut acc = ident
        .scale(Complex64::new(t.a, 0.0))
        .add(&am.matrix().scale(Complex64::new(t.b, 0.0)));
    let a_mat = am.matrix();
    let fro = libm::fmax(a_mat.fro_norm(), 1e-300);
    let mut grown: f64 = 0.0;
    let re_min = am.min_re_eigenvalue();
    let knee = 1.0 / libm::fmax(if re_min > 0.0 { re_min } else { scale }, 1e-300);
    {
        let mut f = |s: f64| {
            let e = expm(&a_mat.scale(Complex64::new(-s, 0.0)));
            let nrm = e.fro_norm();
            if nrm > grown {
                grown = nrm;
            }
            ident.sub(&e)
        };
        let mut f_over_s = |s: f64| {
            if s * fro < 0.25 {
                // (I - e^{-sA}) / s = A - s A²/2 + s² A³/6 - ...
                let mut term = a_mat.clone();
                let mut out = a_mat.clone();
                for k in 2..20 {
                    term = term.matmul(a_mat).scale(Complex64::new(-s / k as f64, 0.0));
                    out = out.add(&term);
                    if term.fro_norm() < 1e-16 * (1.0 + out.fro_norm()) {
                        break;
                    }
                }
                out
            } else {
                let e = expm(&a_mat.scale(Complex64::new(-s, 0.0)));
                ident.sub(&e).scale(Complex64::new(1.0 / s, 0.0))
            }
        };
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: Some(&mut f_over_s),
        };
        let seg = t
            .measure
            .integrate_atoms_segments(&mut kernel, knee, &zero, MATRIX_TARGET)?;
        acc = acc.add(&seg);
    }
    for tail in &t.measure.tails {
        let mut f = |s: f64| {
            let e = expm(&a_mat.scale(Complex64::new(-s, 0.0)));
            let nrm = e.fro_norm();
            if nrm > grown {
                grown = nrm;
            }
            ident.sub(&e)
        };
        let v = tail.integrate(&mut f, tail.cut, 0.0, knee, &zero, MATRIX_TARGET)?;
        acc = acc.add(&v);
    }
    if grown > SEMIGROUP_CAP {
        return Err(CalcError::SemigroupUnbounded { norm: grown });
    }
    Ok(acc)
}

/// `(1/2πi) ∫_{∂Σ_β} f(λ) (λ - A)^{-1} dλ`, oriented downward (upper ray
/// inward, lower ray outward), which for f decaying on the contour gives
/// the Cauchy value f(A).
///
/// `center` is a log-radius hint for where the integrand mass sits.
pub fn contour_apply(
    f: &mut dyn FnMut(Complex64) -> Result<Complex64, CalcError>,
    am: &SectorialMatrix,
    beta: f64,
    center: f64,
) -> Result<CMatrix, CalcError> {
    if !(beta > am.omega_hat() + 1e-3 && beta < core::f64::consts::PI) {
        return Err(CalcError::Domain {
            what: "contour angle must clear the spectral angle by 1e-3",
        });
    }
    let n = am.dim();
    let zero = CMatrix::zeros(n);
    let two_pi_i = Complex64::new(0.0, 2.0 * core::f64::consts::PI);
    let mut fail: Option<CalcError> = None;
    let mut g = |u: f64| -> CMatrix {
        let t = libm::exp(u);
        let mut acc = zero.zero_like();
        for &sgn in &[-1.0, 1.0] {
            let lam = Complex64::from_polar(t, sgn * beta);
            let phase = Complex64::from_polar(t, sgn * beta); // λ = dλ/du
            let fv = match f(lam) {
                Ok(v) => v,
                Err(e) => {
                    fail = Some(e);
                    continue;
                }
            };
            let r = match am.resolvent_at(lam) {
                Ok(r) => r,
                Err(e) => {
                    fail = Some(e);
                    continue;
                }
            };
            // downward orientation: lower ray positive, upper ray negative
            let w = -sgn * fv * phase / two_pi_i;
            acc = acc.add(&r.scale(w));
        }
        acc
    };
    let mut half = 6.0f64;
    let mut total = integrate_doubling(&mut g, center - half, center + half, &zero, MATRIX_TARGET, 1 << 12)?;
    loop {
        let left = integrate_doubling(
            &mut g,
            center - half - 6.0,
            center - half,
            &zero,
            MATRIX_TARGET,
            1 << 10,
        )?;
        let right = integrate_doubling(
            &mut g,
            center + half,
            center + half + 6.0,
            &zero,
            MATRIX_TARGET,
            1 << 10,
        )?;
        let wing = left.fro_norm() + right.fro_norm();
        total = total.add(&left).add(&right);
        half += 6.0;
        if wing <= MATRIX_TARGET * (1.0 + total.fro_norm()) || half > 60.0 {
            break;
        }
    }
    if let Some(e) = fail {
        return Err(e);
    }
    Ok(total)
}

#[derive(Debug)]
pub struct KatoReport {
    pub matrix: CMatrix,
    pub norm: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Kato's formula for `(A^r + z)^{-1}`, `r in (0,1)`, `z in Σ_γ` with
/// `γ in (0, (1-r)π)`:
/// `(sin πr / π) ∫_0^∞ t^r (A+t)^{-1} dt / (t^{2r} + 2 t^r z cos πr + z²)`,
/// with the companion bound
/// `(M sin πr / πr) ((πr+γ)/sin(πr+γ)) / |z|`.
pub fn kato_fracpow_resolvent(
    am: &SectorialMatrix,
    r: f64,
    z: Complex64,
    gamma: f64,
) -> Result<KatoReport, CalcError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(CalcError::BadParameter { what: "r out of (0, 1)" });
    }
    if !(gamma > 0.0 && gamma < (1.0 - r) * core::f64::consts::PI) {
        return Err(CalcError::BadParameter {
            what: "gamma out of (0, (1-r) pi)",
        });
    }
    if z.norm() == 0.0 || z.arg().abs() >= gamma {
        return Err(CalcError::Domain {
            what: "z outside the open sector of half-angle gamma",
        });
    }
    let n = am.dim();
    let zero = CMatrix::zeros(n);
    let c = libm::sin(core::f64::consts::PI * r) / core::f64::consts::PI;
    let cpr = libm::cos(core::f64::consts::PI * r);
    let z2 = z * z;
    let mut fail: Option<CalcError> = None;
    let mut g = |u: f64| -> CMatrix {
        let t = libm::exp(u);
        let tr = libm::pow(t, r);
        let denom = tr * tr + 2.0 * tr * z * cpr + z2;
        let w = Complex64::new(c * tr * t, 0.0) / denom;
        match am.resolvent(Complex64::new(t, 0.0)) {
            Ok(m) => m.scale(w),
            Err(e) => {
                fail = Some(e);
                zero.zero_like()
            }
        }
    };
    let center = libm::log(z.norm()) / r;
    let mut half = 8.0f64;
    let mut total = integrate_doubling(&mut g, center - half, center + half, &zero, MATRIX_TARGET, 1 << 12)?;
    loop {
        let left = integrate_doubling(
            &mut g,
            center - half - 8.0,
            center - half,
            &zero,
            MATRIX_TARGET,
            1 << 10,
        )?;
        let right = integrate_doubling(
            &mut g,
            center + half,
            center + half + 8.0,
            &zero,
            MATRIX_TARGET,
            1 << 10,
        )?;
        let wing = left.fro_norm() + right.fro_norm();
        total = total.add(&left).add(&right);
        half += 8.0;
        if wing <= MATRIX_TARGET * (1.0 + total.fro_norm()) || half > 120.0 / libm::fmin(r, 1.0 - r) {
            break;
        }
    }
    if let Some(e) = fail {
        return Err(e);
    }
    let norm = total.spectral_norm();
    let pr = core::f64::consts::PI * r;
    let bound =
        am.m_hat() * libm::sin(pr) / pr * (pr + gamma) / libm::sin(pr + gamma) / z.norm();
    Ok(KatoReport {
        norm,
        bound,
        pass: norm <= bound * (1.0 + 1e-6),
        matrix: total,
    })
}

/// `‖(z+ψ(A))^{-1} - (z+φ(A))^{-1} - r(A;z)‖` where φ is the associated
/// complete Bernstein function and `r(A;z)` is the contour integral of the
/// scalar resolvent difference over `∂Σ_β`.
pub fn resolvent_identity_residual(
    psi: &BernsteinFn,
    am: &SectorialMatrix,
    z: Complex64,
    beta: f64,
) -> Result<f64, CalcError> {
    let theta = core::f64::consts::FRAC_PI_2 - am.omega_hat();
    if theta <= 0.0 {
        return Err(CalcError::Domain {
            what: "spectral angle must be below pi/2",
        });
    }
    let psi_a = levy_apply(psi, am)?;
    let phi = psi.associated()?;
    let phi_a = apply_associated(&phi, am)?;
    let p1 = psi_a.add_scalar_diag(z).inverse()?;
    let p2 = phi_a.add_scalar_diag(z).inverse()?;
    let mut f = |lam: Complex64| -> Result<Complex64, CalcError> {
        Ok(resolvent_diff(psi, &phi, lam, z)?)
    };
    let center = libm::log(libm::fmax(z.norm(), 1e-6));
    let rmat = contour_apply(&mut f, am, beta, center)?;
    Ok(p1.sub(&p2).sub(&rmat).spectral_norm())
}

/// Parameters for the constant-certifying suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub q: f64,
    pub gamma: f64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            q: 2.5,
            gamma: 0.55 * core::f64::consts::PI,
        }
    }
}

/// `M̃_{α,q;γ}` per the composite-power sectoriality estimate:
/// `M(A) + 2 M(A, π-β) / (π cos(β/2) cos((qβ+γ)/2))`,
/// `β = (α + (π-γ)/q)/2`, where `M(A, ·)` is the sampled sector sup.
fn m_tilde(am: &SectorialMatrix, alpha: f64, q: f64, gamma: f64) -> Result<f64, CalcError> {
    let beta = 0.5 * (alpha + (core::f64::consts::PI - gamma) / q);
    let c1 = libm::cos(0.5 * beta);
    let c2 = libm::cos(0.5 * (q * beta + gamma));
    if c1 <= 0.0 || c2 <= 0.0 {
        return Err(CalcError::BadParameter {
            what: "angle combination collapses the constant",
        });
    }
    let msec = am.m_sup_sector(core::f64::consts::PI - beta)?;
    Ok(am.m_hat() + 2.0 * msec / (core::f64::consts::PI * c1 * c2))
}

fn aest_factor(q: f64, gamma: f64) -> f64 {
    let pq = core::f64::consts::PI / q;
    libm::sin(pq) / pq * (pq + gamma) / libm::sin(pq + gamma)
}

/// Sampled `sup_{z in Σ_gamma} ‖z (z+B)^{-1}‖` for an explicit matrix `B`.
fn sup_sector_matrix(b: &CMatrix, gamma: f64) -> Result<(f64, Complex64, usize), CalcError> {
    let bm = make_sectorial(b.clone())?;
    if gamma >= core::f64::consts::PI - bm.omega_hat() - 1e-9 {
        return Err(CalcError::BadParameter {
            what: "sampling sector reaches the spectrum of the image matrix",
        });
    }
    let v = bm.m_sup_sector(gamma)?;
    let samples = SUP_RADII * if gamma == 0.0 { 1 } else { SUP_ANGLES } + 60;
    Ok((v, Complex64::new(0.0, 0.0), samples))
}

/// Certify one of the explicit resolvent bounds. Suites:
/// FRPOW1 (Hirsch image is no worse sectorial), MES0 (powers `A^q`),
/// AEST (complete Bernstein image on `Σ_γ`), AESA (Bernstein image for
/// half-plane-type matrices), SUPG (positive ray), FPSI (inverse identity).
pub fn bound_suite(
    id: &str,
    psi: &BernsteinFn,
    am: &SectorialMatrix,
    params: &SuiteParams,
) -> Result<CheckReport, CalcError> {
    let (lhs, rhs, samples) = match id {
        "FRPOW1" => {
            let phi = psi.associated()?;
            let b = apply_associated(&phi, am)?;
            let (sup, _, n) = sup_sector_matrix(&b, 0.0)?;
            (sup, am.m_hat(), n)
        }
        "SUPG" => {
            let b = levy_apply(psi, am)?;
            let (sup, _, n) = sup_sector_matrix(&b, 0.0)?;
            (sup, am.m_hat(), n)
        }
        "MES0" => {
            let q = params.q;
            let gamma = params.gamma;
            let alpha = am.omega_hat();
            if !(q > 1.0 && q * alpha < core::f64::consts::PI) {
                return Err(CalcError::BadParameter {
                    what: "need q > 1 with q * spectral angle < pi",
                });
            }
            if !(gamma > 0.0 && gamma < core::f64::consts::PI - q * alpha) {
                return Err(CalcError::BadParameter {
                    what: "gamma out of (0, pi - q alpha)",
                });
            }
            let mut f =
                |l: Complex64| -> Result<Complex64, CalcError> { Ok(l.powf(q)) };
            let aq = eigen_oracle(&mut f, am.matrix())?;
            let (sup, _, n) = sup_sector_matrix(&aq, gamma)?;
            (sup, m_tilde(am, alpha, q, gamma)?, n)
        }
        "AEST" => {
            let q = params.q;
            let gamma = params.gamma;
            let alpha = am.omega_hat();
            if !(q > 1.0 && q * alpha < core::f64::consts::PI) {
                return Err(CalcError::BadParameter {
                    what: "need q in (1, pi / spectral angle)",
                });
            }
            if !(gamma > 0.0 && gamma < (1.0 - 1.0 / q) * core::f64::consts::PI) {
                return Err(CalcError::BadParameter {
                    what: "gamma out of (0, (1 - 1/q) pi)",
                });
            }
            let phi = psi.associated()?;
            let b = apply_associated(&phi, am)?;
            let (sup, _, n) = sup_sector_matrix(&b, gamma)?;
            (sup, m_tilde(am, alpha, q, gamma)? * aest_factor(q, gamma), n)
        }
        "AESA" => {
            let q = params.q;
            let gamma = params.gamma;
            let alpha = am.omega_hat();
            let theta = core::f64::consts::FRAC_PI_2 - alpha;
            if theta <= 0.0 {
                return Err(CalcError::Domain {
                    what: "spectral angle must be below pi/2",
                });
            }
            if !(q > 2.0 && q * alpha < core::f64::consts::PI) {
                return Err(CalcError::BadParameter {
                    what: "need q in (2, pi / alpha)",
                });
            }
            if !(gamma > core::f64::consts::FRAC_PI_2
                && gamma < (1.0 - 1.0 / q) * core::f64::consts::PI)
            {
                return Err(CalcError::BadParameter {
                    what: "gamma out of (pi/2, (1 - 1/q) pi)",
                });
            }
            let delta = core::f64::consts::FRAC_PI_2 + theta - gamma;
            if delta <= 0.0 {
                return Err(CalcError::BadParameter {
                    what: "gamma too close to pi/2 + theta",
                });
            }
            let b = levy_apply(psi, am)?;
            let (sup, _, n) = sup_sector_matrix(&b, gamma)?;
            let msec = am.m_sup_sector(core::f64::consts::FRAC_PI_2 + theta - 0.5 * delta)?;
            let st = libm::sin(0.5 * theta);
            let sd = libm::sin(0.25 * delta);
            let second = 4.0 * msec / (core::f64::consts::PI * st * st * sd * sd);
            let first = m_tilde(am, alpha, q, gamma)? * aest_factor(q, gamma);
            (sup, first + second, n)
        }
        "FPSI" => {
            let b = levy_apply(psi, am)?;
            let inv = b.inverse()?;
            let mut f = |l: Complex64| -> Result<Complex64, CalcError> {
                let v = psi.eval(l)?;
                if v.norm() == 0.0 {
                    return Err(CalcError::Domain {
                        what: "psi vanishes at an eigenvalue",
                    });
                }
                Ok(1.0 / v)
            };
            let oracle = eigen_oracle(&mut f, am.matrix())?;
            let diff = inv.sub(&oracle).spectral_norm();
            let tol = 1e-6 * (1.0 + inv.spectral_norm());
            (diff, tol, 2)
        }
        _ => {
            return Err(CalcError::BadParameter {
                what: "unknown suite id",
            })
        }
    };
    let margin = rhs - lhs;
    let scale = libm::fmax(lhs.abs(), rhs.abs());
    Ok(CheckReport {
        id: String::from(id),
        samples,
        worst_margin: margin,
        worst_scale: scale,
        worst_lambda: None,
        worst_z: None,
        constant: Some(rhs),
        pass: margin >= -libm::fmax(1e-9, 1e-6 * scale),
    })
}

/// Report of the shift identities around `ψ(A + εI)`.
#[derive(Debug)]
pub struct ShiftReport {
    /// `‖ψ(A+ε) - ψ(A) - [ψ(·+ε)-ψ(·)](A)‖`
    pub sum_residual: f64,
    /// `M_sg (ψ(ε)-ψ(0)) - ‖ψ(A+ε)-ψ(A)‖`, nonnegative when the bound holds
    pub bound_margin: f64,
    /// `‖e^{-tψ(A)} - e^{-tψ(A+d)} e^{tB_d}‖`
    pub product_residual: f64,
    pub pass: bool,
}

/// `[ψ(·+ε)-ψ(·)](A) = b ε I + ∫ e^{-sA} (1 - e^{-εs}) μ(ds)`.
fn shift_operator(
    psi: &BernsteinFn,
    am: &SectorialMatrix,
    eps: f64,
) -> Result<CMatrix, CalcError> {
    let t = psi.levy_triple()?;
    let n = am.dim();
    let zero = CMatrix::zeros(n);
    let a_mat = am.matrix();
    let mut acc = CMatrix::identity(n).scale(Complex64::new(t.b * eps, 0.0));
    let re_min = am.min_re_eigenvalue();
    let knee = 1.0 / (eps + libm::fmax(re_min, 0.0) + 1e-300);
    {
        let mut f = |s: f64| {
            let w = -libm::expm1(-eps * s);
            expm(&a_mat.scale(Complex64::new(-s, 0.0))).scale(Complex64::new(w, 0.0))
        };
        let mut f_over_s = |s: f64| {
            let w = -libm::expm1(-eps * s) / s;
            expm(&a_mat.scale(Complex64::new(-s, 0.0))).scale(Complex64::new(w, 0.0))
        };
        let mut kernel = Kernel {
            f: &mut f,
            f_over_s: Some(&mut f_over_s),
        };
        let seg = t
            .measure
            .integrate_atoms_segments(&mut kernel, knee, &zero, MATRIX_TARGET)?;
        acc = acc.add(&seg);
    }
    for tail in &t.measure.tails {
        let mut f = |s: f64| {
            let w = -libm::expm1(-eps * s);
            expm(&a_mat.scale(Complex64::new(-s, 0.0))).scale(Complex64::new(w, 0.0))
        };
        let v = tail.integrate(&mut f, tail.cut, 0.0, knee, &zero, MATRIX_TARGET)?;
        acc = acc.add(&v);
    }
    Ok(acc)
}

pub fn shift_identity_check(
    psi: &BernsteinFn,
    am: &SectorialMatrix,
    eps: f64,
    d: f64,
    t: f64,
) -> Result<ShiftReport, CalcError> {
    if eps <= 0.0 || d < 0.0 || t <= 0.0 {
        return Err(CalcError::BadParameter {
            what: "need eps > 0, d >= 0, t > 0",
        });
    }
    let shifted = make_sectorial(am.matrix().add_scalar_diag(Complex64::new(eps, 0.0)))?;
    let psi_a = levy_apply(psi, am)?;
    let psi_ae = levy_apply(psi, &shifted)?;
    let b_eps = shift_operator(psi, am, eps)?;
    let sum_residual = psi_ae.sub(&psi_a).sub(&b_eps).spectral_norm();

    let m_sg = am.semigroup_sup();
    let dpsi = (psi.eval(Complex64::new(eps, 0.0))? - psi.eval(Complex64::new(0.0, 0.0))?).re;
    let bound_margin = m_sg * dpsi - psi_ae.sub(&psi_a).spectral_norm();

    let shifted_d = make_sectorial(am.matrix().add_scalar_diag(Complex64::new(d, 0.0)))?;
    let psi_ad = levy_apply(psi, &shifted_d)?;
    let b_d = shift_operator(psi, am, d)?;
    let lhs = expm(&psi_a.scale(Complex64::new(-t, 0.0)));
    let rhs = expm(&psi_ad.scale(Complex64::new(-t, 0.0)))
        .matmul(&expm(&b_d.scale(Complex64::new(t, 0.0))));
    let product_residual = lhs.sub(&rhs).spectral_norm();

    let scale = 1.0 + psi_a.spectral_norm();
    let pass = sum_residual <= 1e-6 * scale
        && bound_margin >= -1e-9 * (1.0 + m_sg * dpsi)
        && product_residual <= 1e-6;
    Ok(ShiftReport {
        sum_residual,
        bound_margin,
        product_residual,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(vals: &[Complex64]) -> CMatrix {
        let n = vals.len();
        let mut m = CMatrix::zeros(n);
        for (i, v) in vals.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    fn mat2(a: f64, b: f64, cc: f64, d: f64) -> CMatrix {
        let mut m = CMatrix::zeros(2);
        m[(0, 0)] = c(a, 0.0);
        m[(0, 1)] = c(b, 0.0);
        m[(1, 0)] = c(cc, 0.0);
        m[(1, 1)] = c(d, 0.0);
        m
    }

    #[test]
    fn make_sectorial_examples() {
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        assert!(am.omega_hat() < 1e-12);
        assert!((am.m_hat() - 1.0).abs() < 1e-4, "m_hat {}", am.m_hat());

        // [[1,10],[0,1]]: sup_s s ||(s+A)^{-1}|| peaks near s = 1
        let am = make_sectorial(mat2(1.0, 10.0, 0.0, 1.0)).unwrap();
        assert!((am.m_hat() - 2.60).abs() < 0.02, "m_hat {}", am.m_hat());

        let am = make_sectorial(diag(&[
            Complex64::from_polar(1.0, FRAC_PI_3),
            Complex64::from_polar(1.0, -FRAC_PI_3),
        ]))
        .unwrap();
        assert!((am.omega_hat() - FRAC_PI_3).abs() < 1e-12);

        assert!(matches!(
            make_sectorial(diag(&[c(-1.0, 0.0), c(2.0, 0.0)])),
            Err(CalcError::NotSectorial { .. })
        ));
    }

    #[test]
    fn resolvent_examples() {
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        let r = am.resolvent(c(1.0, 0.0)).unwrap();
        assert!((r[(0, 0)] - 0.5).norm() < 1e-13 && (r[(1, 1)] - 1.0 / 3.0).norm() < 1e-13);
        // z between the eigenvalues still invertible
        let r = am.resolvent(c(-1.5, 0.0)).unwrap();
        assert!((r[(0, 0)] + 2.0).norm() < 1e-12 && (r[(1, 1)] - 2.0).norm() < 1e-12);
        // nilpotent block
        let nil = mat2(0.0, 1.0, 0.0, 0.0);
        let r = nil.add_scalar_diag(c(1.0, 0.0)).inverse().unwrap();
        assert!((r[(0, 0)] - 1.0).norm() < 1e-14 && (r[(0, 1)] + 1.0).norm() < 1e-14);
    }

    #[test]
    fn hirsch_examples() {
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        // sigma = delta_1: phi(z) = z/(1+z)
        let phi = StieltjesCbf {
            a: 0.0,
            b: 0.0,
            sigma: crate::measure::RadonMeasure {
                atoms: alloc::vec![(1.0, 1.0)],
                segments: alloc::vec![],
                tails: alloc::vec![],
            },
        };
        let m = hirsch_apply(&phi, &am).unwrap();
        assert!((m[(0, 0)] - 0.5).norm() < 1e-12 && (m[(1, 1)] - 2.0 / 3.0).norm() < 1e-12);

        // z^{1/2} on diag(1,4) -> diag(1,2)
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(4.0, 0.0)])).unwrap();
        let phi = StieltjesCbf::power(0.5).unwrap();
        let m = hirsch_apply(&phi, &am).unwrap();
        assert!((m[(0, 0)] - 1.0).norm() < 1e-8, "{}", m[(0, 0)]);
        assert!((m[(1, 1)] - 2.0).norm() < 1e-8, "{}", m[(1, 1)]);

        // constant
        let phi = StieltjesCbf {
            a: 3.5,
            b: 0.0,
            sigma: crate::measure::RadonMeasure::empty(),
        };
        let m = hirsch_apply(&phi, &am).unwrap();
        assert!((m[(0, 0)] - 3.5).norm() < 1e-14 && (m[(0, 1)]).norm() < 1e-14);
    }

    #[test]
    fn levy_examples() {
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        let psi = BernsteinFn::OneMinusExp { scale: 1.0, rate: 1.0 };
        let m = levy_apply(&psi, &am).unwrap();
        assert!((m[(0, 0)].re - (1.0 - libm::exp(-1.0))).abs() < 1e-9);
        assert!((m[(1, 1)].re - (1.0 - libm::exp(-2.0))).abs() < 1e-9);

        let psi = BernsteinFn::Affine { a: 0.0, b: 1.0 };
        let m = levy_apply(&psi, &am).unwrap();
        assert!(m.sub(am.matrix()).fro_norm() < 1e-13);

        // z^{1/2} on diag(1,4); cross-calculus agreement with Hirsch
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(4.0, 0.0)])).unwrap();
        let psi = BernsteinFn::Power { alpha: 0.5 };
        let m = levy_apply(&psi, &am).unwrap();
        assert!((m[(0, 0)] - 1.0).norm() < 1e-7, "{}", m[(0, 0)]);
        assert!((m[(1, 1)] - 2.0).norm() < 1e-7, "{}", m[(1, 1)]);
        let h = hirsch_apply(&StieltjesCbf::power(0.5).unwrap(), &am).unwrap();
        assert!(m.sub(&h).fro_norm() < 1e-7);
    }

    #[test]
    fn contour_examples() {
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        // tau(lambda) = lambda/(1+lambda)^2 -> A(1+A)^{-2}
        let mut f = |l: Complex64| -> Result<Complex64, CalcError> {
            Ok(l / ((1.0 + l) * (1.0 + l)))
        };
        let m = contour_apply(&mut f, &am, FRAC_PI_4, 0.0).unwrap();
        assert!((m[(0, 0)] - 0.25).norm() < 1e-8, "{}", m[(0, 0)]);
        assert!((m[(1, 1)] - 2.0 / 9.0).norm() < 1e-8, "{}", m[(1, 1)]);

        // r(.; z) with psi = z vanishes identically
        let psi = BernsteinFn::Affine { a: 0.0, b: 1.0 };
        let phi = psi.associated().unwrap();
        let z = c(1.0, 0.0);
        let mut f = |l: Complex64| -> Result<Complex64, CalcError> {
            Ok(resolvent_diff(&psi, &phi, l, z)?)
        };
        let m = contour_apply(&mut f, &am, FRAC_PI_4, 0.0).unwrap();
        assert!(m.fro_norm() < 1e-10, "{}", m.fro_norm());
    }

    #[test]
    fn contour_f_equals_regularized_r() {
        // F(A;z) = A (A+1)^{-2} r(A;z)
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        let psi = BernsteinFn::OneMinusExp { scale: 1.0, rate: 1.0 };
        let phi = psi.associated().unwrap();
        let z = c(1.0, 0.0);
        let beta = PI / 5.0;
        let mut fr = |l: Complex64| -> Result<Complex64, CalcError> {
            Ok(resolvent_diff(&psi, &phi, l, z)?)
        };
        let r_a = contour_apply(&mut fr, &am, beta, 0.0).unwrap();
        let mut ff = |l: Complex64| -> Result<Complex64, CalcError> {
            Ok(l / ((1.0 + l) * (1.0 + l)) * resolvent_diff(&psi, &phi, l, z)?)
        };
        let f_a = contour_apply(&mut ff, &am, beta, 0.0).unwrap();
        let one = CMatrix::identity(2);
        let reg = am
            .matrix()
            .matmul(&am.matrix().add(&one).matmul(&am.matrix().add(&one)).inverse().unwrap());
        let rhs = reg.matmul(&r_a);
        assert!(f_a.sub(&rhs).fro_norm() < 1e-8, "{}", f_a.sub(&rhs).fro_norm());
    }

    #[test]
    fn kato_examples() {
        let am = make_sectorial(CMatrix::identity(2)).unwrap();
        let rep = kato_fracpow_resolvent(&am, 0.5, c(1.0, 0.0), FRAC_PI_4).unwrap();
        assert!((rep.matrix[(0, 0)] - 0.5).norm() < 1e-9, "{}", rep.matrix[(0, 0)]);
        assert!(rep.pass);
        // bound arithmetic: (2/pi)(3pi/4)/sin(3pi/4) = 1.5/ (sqrt2/2) / ... times 1/|z|
        let want = libm::sin(FRAC_PI_2) / FRAC_PI_2 * (FRAC_PI_2 + FRAC_PI_4)
            / libm::sin(FRAC_PI_2 + FRAC_PI_4);
        assert!((rep.bound - want).abs() < 1e-4 * want, "{} vs {want}", rep.bound);

        let am = make_sectorial(diag(&[c(1.0, 0.0), c(4.0, 0.0)])).unwrap();
        let rep = kato_fracpow_resolvent(&am, 0.5, c(2.0, 0.0), FRAC_PI_4).unwrap();
        assert!((rep.matrix[(0, 0)] - 1.0 / 3.0).norm() < 1e-8);
        assert!((rep.matrix[(1, 1)] - 0.25).norm() < 1e-8);

        // r -> 1 recovers the plain resolvent (on I the limit is exact, so
        // the residual is pure quadrature error)
        let ident = make_sectorial(CMatrix::identity(2)).unwrap();
        let rep = kato_fracpow_resolvent(&ident, 0.999, c(1.0, 0.0), 1e-3).unwrap();
        let plain = ident.resolvent(c(1.0, 0.0)).unwrap();
        assert!(
            rep.matrix.sub(&plain).fro_norm() < 1e-4,
            "{}",
            rep.matrix.sub(&plain).fro_norm()
        );
        // on diag(1,4) the residual is dominated by the true gap 4^0.999 - 4
        let rep = kato_fracpow_resolvent(&am, 0.999, c(1.0, 0.0), 1e-3).unwrap();
        for (i, lam) in [1.0f64, 4.0].iter().enumerate() {
            let want = 1.0 / (libm::pow(*lam, 0.999) + 1.0);
            assert!((rep.matrix[(i, i)] - want).norm() < 1e-7, "{}", rep.matrix[(i, i)]);
        }

        assert!(matches!(
            kato_fracpow_resolvent(&am, 0.5, c(-1.0, 1e-3), FRAC_PI_4),
            Err(CalcError::Domain { .. })
        ));
    }

    #[test]
    fn eigen_oracle_examples() {
        let a = diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let mut f = |l: Complex64| -> Result<Complex64, CalcError> { Ok(l * l) };
        let m = eigen_oracle(&mut f, &a).unwrap();
        assert!((m[(0, 0)] - 1.0).norm() < 1e-12 && (m[(1, 1)] - 4.0).norm() < 1e-12);

        let mut f = |l: Complex64| -> Result<Complex64, CalcError> { Ok(1.0 / (1.0 + l)) };
        let m = eigen_oracle(&mut f, &diag(&[c(1.0, 0.0), c(3.0, 0.0)])).unwrap();
        assert!((m[(0, 0)] - 0.5).norm() < 1e-12 && (m[(1, 1)] - 0.25).norm() < 1e-12);

        // refuses non-normal input
        let mut f = |l: Complex64| -> Result<Complex64, CalcError> { Ok(l) };
        assert!(matches!(
            eigen_oracle(&mut f, &mat2(1.0, 1.0, 0.0, 2.0)),
            Err(CalcError::Linalg(LinalgError::NotNormal { .. }))
        ));
    }

    #[test]
    fn resolvent_identity_examples() {
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        let psi = BernsteinFn::Affine { a: 0.0, b: 1.0 };
        let res = resolvent_identity_residual(&psi, &am, c(1.0, 0.0), FRAC_PI_4).unwrap();
        assert!(res < 1e-10, "{res}");

        let psi = BernsteinFn::OneMinusExp { scale: 1.0, rate: 1.0 };
        let res = resolvent_identity_residual(&psi, &am, c(1.0, 0.0), FRAC_PI_4).unwrap();
        assert!(res < 1e-6, "{res}");

        // non-normal case, complex z
        let am = make_sectorial(mat2(1.0, 1.0, 0.0, 2.0)).unwrap();
        let res =
            resolvent_identity_residual(&psi, &am, Complex64::from_polar(1.0, FRAC_PI_3), PI / 5.0)
                .unwrap();
        assert!(res < 1e-5, "{res}");
    }

    #[test]
    fn bound_suites() {
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        let params = SuiteParams::default();

        let rep = bound_suite(
            "SUPG",
            &BernsteinFn::Power { alpha: 0.5 },
            &am,
            &params,
        )
        .unwrap();
        assert!(rep.pass, "SUPG margin {}", rep.worst_margin);

        let rep = bound_suite("FPSI", &BernsteinFn::Affine { a: 0.0, b: 1.0 }, &am, &params)
            .unwrap();
        assert!(rep.pass, "FPSI margin {}", rep.worst_margin);

        let rep = bound_suite("FRPOW1", &BernsteinFn::Log1p, &am, &params).unwrap();
        assert!(rep.pass, "FRPOW1 margin {}", rep.worst_margin);

        // AESA example: theta = pi/3 matrix, q = 2.5, gamma = 0.55 pi
        let am = make_sectorial(diag(&[
            Complex64::from_polar(1.0, PI / 6.0),
            Complex64::from_polar(1.0, -PI / 6.0),
        ]))
        .unwrap();
        let rep = bound_suite(
            "AESA",
            &BernsteinFn::OneMinusExp { scale: 1.0, rate: 1.0 },
            &am,
            &params,
        )
        .unwrap();
        assert!(rep.pass, "AESA margin {}", rep.worst_margin);
        assert!(rep.constant.unwrap() > 1.0);

        let rep = bound_suite("MES0", &BernsteinFn::Log1p, &am, &SuiteParams { q: 2.0, gamma: 0.3 })
            .unwrap();
        assert!(rep.pass, "MES0 margin {}", rep.worst_margin);

        let rep = bound_suite(
            "AEST",
            &BernsteinFn::Power { alpha: 0.5 },
            &am,
            &SuiteParams { q: 2.0, gamma: 0.4 * PI },
        )
        .unwrap();
        assert!(rep.pass, "AEST margin {}", rep.worst_margin);
    }

    #[test]
    fn shift_identities() {
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        // affine: exact
        let rep = shift_identity_check(
            &BernsteinFn::Affine { a: 0.2, b: 1.0 },
            &am,
            0.3,
            0.0,
            1.0,
        )
        .unwrap();
        assert!(rep.sum_residual < 1e-12 && rep.pass, "{rep:?}");

        let rep = shift_identity_check(
            &BernsteinFn::OneMinusExp { scale: 1.0, rate: 1.0 },
            &am,
            0.5,
            0.0,
            1.0,
        )
        .unwrap();
        assert!(rep.sum_residual < 1e-8, "{}", rep.sum_residual);
        assert!(rep.bound_margin >= -1e-9, "{}", rep.bound_margin);

        // log(1+z), d = 1, t = 2: e^{-2 log(1+A)} = (1+A)^{-2}
        let rep = shift_identity_check(&BernsteinFn::Log1p, &am, 0.5, 1.0, 2.0).unwrap();
        assert!(rep.product_residual < 1e-8, "{}", rep.product_residual);
        let psi_a = levy_apply(&BernsteinFn::Log1p, &am).unwrap();
        let e = expm(&psi_a.scale(c(-2.0, 0.0)));
        let one = CMatrix::identity(2);
        let want = am
            .matrix()
            .add(&one)
            .matmul(&am.matrix().add(&one))
            .inverse()
            .unwrap();
        assert!(e.sub(&want).fro_norm() < 1e-8, "{}", e.sub(&want).fro_norm());
    }

    #[test]
    fn sectoriality_transfer_property() {
        // image of the Hirsch calculus is no worse sectorial
        let am = make_sectorial(mat2(1.0, 10.0, 0.0, 1.0)).unwrap();
        for psi in [BernsteinFn::Power { alpha: 0.3 }, BernsteinFn::Log1p] {
            let rep = bound_suite("FRPOW1", &psi, &am, &SuiteParams::default()).unwrap();
            assert!(rep.pass, "{} margin {}", rep.id, rep.worst_margin);
        }
    }
}
