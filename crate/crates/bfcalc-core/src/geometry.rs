//! Sector geometry: sampled verification of the scalar inequalities, the
//! boundary-contour bound, sector-shrinking angles for complete Bernstein
//! functions, and the angle-improvement formulas.
//!
//! All sup/inf claims over continua are checked on log-radial × angular
//! grids with golden-section refinement around the worst sample; the checks
//! are falsification tools, not proofs.

use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::bernstein::{resolvent_diff, BernsteinError, BernsteinFn};
use crate::quad::{golden_max, integrate_doubling, lin_grid, log_grid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub half_angle: f64,
}

impl Sector {
    pub fn new(half_angle: f64) -> Self {
        Sector { half_angle }
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        if z.norm() == 0.0 {
            return true;
        }
        libm::fabs(z.arg()) <= self.half_angle + tol
    }
}

/// Log-radial × angular sampling plan.
#[derive(Debug, Clone, Copy)]
pub struct SamplingPlan {
    pub r_min: f64,
    pub r_max: f64,
    pub radial: usize,
    pub angular: usize,
    pub refine: bool,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            r_min: 1e-6,
            r_max: 1e6,
            radial: 64,
            angular: 33,
            refine: true,
        }
    }
}

impl SamplingPlan {
    pub fn with_budget(radial: usize, angular: usize) -> Self {
        SamplingPlan {
            radial,
            angular,
            ..Default::default()
        }
    }

    fn radii(&self) -> Vec<f64> {
        log_grid(self.r_min, self.r_max, self.radial)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    Feh,
    Re,
    R1,
    Cpsi,
    Low,
    Arep1,
    L12,
    L22,
    Sect,
}

impl InequalityId {
    pub const ALL: [InequalityId; 9] = [
        InequalityId::Feh,
        InequalityId::Re,
        InequalityId::R1,
        InequalityId::Cpsi,
        InequalityId::Low,
        InequalityId::Arep1,
        InequalityId::L12,
        InequalityId::L22,
        InequalityId::Sect,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            InequalityId::Feh => "FEH",
            InequalityId::Re => "RE",
            InequalityId::R1 => "R1",
            InequalityId::Cpsi => "CPSI",
            InequalityId::Low => "LOW",
            InequalityId::Arep1 => "AREP1",
            InequalityId::L12 => "L12",
            InequalityId::L22 => "L22",
            InequalityId::Sect => "SECT",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|id| id.as_str() == s)
    }
}

/// Angles entering the individual inequalities.
#[derive(Debug, Clone, Copy)]
pub struct IneqParams {
    /// λ-sector half-angle, in (0, π/2)
    pub beta: f64,
    /// z-sector half-angle (FEH), with gamma + beta < π
    pub gamma: f64,
    /// sector-preservation angle (SECT)
    pub omega: f64,
}

impl Default for IneqParams {
    fn default() -> Self {
        IneqParams {
            beta: core::f64::consts::FRAC_PI_3,
            gamma: core::f64::consts::FRAC_PI_3,
            omega: core::f64::consts::FRAC_PI_3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: String,
    pub samples: usize,
    /// raw margin (nonnegative means the inequality holds) at the worst point
    pub worst_margin: f64,
    /// scale max(|lhs|, |rhs|) at the worst point
    pub worst_scale: f64,
    pub worst_lambda: Option<Complex64>,
    pub worst_z: Option<Complex64>,
    /// derived constant, for the ids that use one
    pub constant: Option<f64>,
    pub pass: bool,
}

pub const ABS_TOL: f64 = 1e-9;
pub const REL_TOL: f64 = 1e-6;

fn allowed_slack(scale: f64) -> f64 {
    libm::fmax(ABS_TOL, REL_TOL * scale)
}

struct Worst {
    metric: f64,
    margin: f64,
    scale: f64,
    lambda: Option<Complex64>,
    z: Option<Complex64>,
    samples: usize,
}

impl Worst {
    fn new() -> Self {
        Worst {
            metric: f64::INFINITY,
            margin: f64::INFINITY,
            scale: 1.0,
            lambda: None,
            z: None,
            samples: 0,
        }
    }

    fn update(&mut self, margin: f64, scale: f64, lambda: Option<Complex64>, z: Option<Complex64>) {
        self.samples += 1;
        let metric = margin / allowed_slack(scale);
        if metric < self.metric {
            self.metric = metric;
            self.margin = margin;
            self.scale = scale;
            self.lambda = lambda;
            self.z = z;
        }
    }

    fn into_report(self, id: InequalityId, constant: Option<f64>) -> CheckReport {
        CheckReport {
            id: String::from(id.as_str()),
            samples: self.samples,
            worst_margin: self.margin,
            worst_scale: self.scale,
            worst_lambda: self.lambda,
            worst_z: self.z,
            constant,
            pass: self.metric >= -1.0,
        }
    }
}

/// Evaluate one of the scalar inequalities over the sampling plan.
pub fn check_inequality(
    id: InequalityId,
    psi: &BernsteinFn,
    params: &IneqParams,
    plan: &SamplingPlan,
) -> Result<CheckReport, BernsteinError> {
    validate_params(id, params)?;
    match id {
        InequalityId::Feh => check_feh(psi, params, plan),
        InequalityId::Re => check_re(psi, plan),
        InequalityId::R1 => check_r1(psi, params, plan),
        InequalityId::Cpsi => check_cpsi(psi, plan),
        InequalityId::Low => check_low(psi, params, plan),
        InequalityId::Arep1 => check_arep1(psi, plan),
        InequalityId::L12 => check_l12(psi, plan),
        InequalityId::L22 => check_l22(psi, params, plan),
        InequalityId::Sect => check_sect(psi, params, plan),
    }
}

fn validate_params(id: InequalityId, p: &IneqParams) -> Result<(), BernsteinError> {
    let bad = |what| Err(BernsteinError::BadParameter { what });
    match id {
        InequalityId::Feh => {
            if !(p.beta > 0.0 && p.beta < core::f64::consts::FRAC_PI_2) {
                return bad("beta out of (0, pi/2)");
            }
            if !(p.gamma > 0.0 && p.gamma + p.beta < core::f64::consts::PI) {
                return bad("need gamma > 0 and gamma + beta < pi");
            }
        }
        InequalityId::R1 | InequalityId::Low | InequalityId::L22 => {
            if !(p.beta > 0.0 && p.beta < core::f64::consts::FRAC_PI_2) {
                return bad("beta out of (0, pi/2)");
            }
        }
        InequalityId::Sect => {
            if !(p.omega > 0.0 && p.omega <= core::f64::consts::FRAC_PI_2) {
                return bad("omega out of (0, pi/2]");
            }
        }
        _ => {}
    }
    Ok(())
}

fn check_feh(
    psi: &BernsteinFn,
    p: &IneqParams,
    plan: &SamplingPlan,
) -> Result<CheckReport, BernsteinError> {
    let cos_half = libm::cos(0.5 * (p.gamma + p.beta));
    let mut worst = Worst::new();
    // split the budget: λ gets the full grid, z a coarse one
    let z_radii = log_grid(plan.r_min, plan.r_max, (plan.radial / 4).max(2));
    let z_angles = lin_grid(-p.gamma, p.gamma, 5);
    let lam_angles = lin_grid(-p.beta, p.beta, plan.angular);
    for &r in &plan.radii() {
        for &th in &lam_angles {
            let lam = Complex64::from_polar(r, th);
            let w = psi.eval(lam)?;
            for &rz in &z_radii {
                for &tz in &z_angles {
                    let z = Complex64::from_polar(rz, tz);
                    let lhs = (z + w).norm();
                    let rhs = cos_half * (z.norm() + w.norm());
                    worst.update(lhs - rhs, libm::fmax(lhs, rhs), Some(lam), Some(z));
                }
            }
        }
    }
    Ok(worst.into_report(InequalityId::Feh, Some(cos_half)))
}

fn check_re(psi: &BernsteinFn, plan: &SamplingPlan) -> Result<CheckReport, BernsteinError> {
    let mut worst = Worst::new();
    let angles = open_half_plane_angles(plan.angular);
    for &r in &plan.radii() {
        for &th in &angles {
            let lam = Complex64::from_polar(r, th);
            let lhs = psi.eval(lam)?.re;
            let rhs = psi.eval(Complex64::new(lam.re, 0.0))?.re;
            worst.update(lhs - rhs, libm::fmax(libm::fabs(lhs), libm::fabs(rhs)), Some(lam), None);
        }
    }
    refine_radial(psi, &mut worst, |psi, lam| {
        let lhs = psi.eval(lam)?.re;
        let rhs = psi.eval(Complex64::new(lam.re, 0.0))?.re;
        Ok((lhs - rhs, libm::fmax(libm::fabs(lhs), libm::fabs(rhs))))
    })?;
    Ok(worst.into_report(InequalityId::Re, None))
}

fn check_r1(
    psi: &BernsteinFn,
    p: &IneqParams,
    plan: &SamplingPlan,
) -> Result<CheckReport, BernsteinError> {
    let mut worst = Worst::new();
    for &t in &plan.radii() {
        let base = psi.eval(Complex64::new(t * libm::cos(p.beta), 0.0))?.re;
        for &sgn in &[1.0, -1.0] {
            let lam = Complex64::from_polar(t, sgn * p.beta);
            let lhs = psi.eval(lam)?.norm();
            worst.update(lhs - base, libm::fmax(lhs, base), Some(lam), None);
        }
    }
    Ok(worst.into_report(InequalityId::R1, None))
}

fn check_cpsi(psi: &BernsteinFn, plan: &SamplingPlan) -> Result<CheckReport, BernsteinError> {
    let t = psi.levy_triple()?;
    let c = crate::bernstein::linear_growth_constant(&t)?;
    let mut worst = Worst::new();
    let radii = log_grid(1.0, plan.r_max, plan.radial);
    let angles = open_half_plane_angles(plan.angular);
    for &r in &radii {
        for &th in &angles {
            let z = Complex64::from_polar(r, th);
            let lhs = c * r;
            let rhs = psi.eval(z)?.norm();
            worst.update(lhs - rhs, libm::fmax(lhs, rhs), Some(z), None);
        }
    }
    Ok(worst.into_report(InequalityId::Cpsi, Some(c)))
}

fn check_low(
    psi: &BernsteinFn,
    p: &IneqParams,
    plan: &SamplingPlan,
) -> Result<CheckReport, BernsteinError> {
    let d1 = psi.derivative(Complex64::new(1.0, 0.0), 1)?.re;
    let factor = d1 * libm::cos(p.beta);
    let mut worst = Worst::new();
    let radii = log_grid(plan.r_min, 1.0, plan.radial);
    let angles = lin_grid(-p.beta, p.beta, plan.angular);
    for &r in &radii {
        for &th in &angles {
            let z = Complex64::from_polar(r, th);
            let lhs = psi.eval(z)?.norm();
            let rhs = factor * r;
            worst.update(lhs - rhs, libm::fmax(lhs, rhs), Some(z), None);
        }
    }
    Ok(worst.into_report(InequalityId::Low, Some(factor)))
}

fn check_arep1(psi: &BernsteinFn, plan: &SamplingPlan) -> Result<CheckReport, BernsteinError> {
    let phi = psi.associated()?;
    let mut worst = Worst::new();
    let angles = open_half_plane_angles(plan.angular);
    for &r in &plan.radii() {
        let base = phi.eval(Complex64::new(r, 0.0))?;
        let _ = base;
        for &th in &angles {
            let lam = Complex64::from_polar(r, th);
            let lhs = psi.eval(lam)?.re;
            let rhs = phi.eval(Complex64::new(lam.re, 0.0))?.re;
            worst.update(lhs - rhs, libm::fmax(libm::fabs(lhs), libm::fabs(rhs)), Some(lam), None);
        }
    }
    Ok(worst.into_report(InequalityId::Arep1, None))
}

fn check_l12(psi: &BernsteinFn, plan: &SamplingPlan) -> Result<CheckReport, BernsteinError> {
    let phi = psi.associated()?;
    let mut worst = Worst::new();
    let angles = open_half_plane_angles(plan.angular);
    for &r in &plan.radii() {
        for &th in &angles {
            let lam = Complex64::from_polar(r, th);
            let lhs = (psi.eval(lam)? - phi.eval(lam)?).norm();
            let d2 = phi.d2(Complex64::new(lam.re, 0.0))?.norm();
            let rhs = 2.0 * lam.norm_sqr() * d2;
            worst.update(rhs - lhs, libm::fmax(lhs, rhs), Some(lam), None);
        }
    }
    Ok(worst.into_report(InequalityId::L12, None))
}

fn check_l22(
    psi: &BernsteinFn,
    p: &IneqParams,
    plan: &SamplingPlan,
) -> Result<CheckReport, BernsteinError> {
    let phi = psi.associated()?;
    let cb = libm::cos(p.beta);
    let mut worst = Worst::new();
    let angles = lin_grid(-p.beta, p.beta, plan.angular);
    for &r in &plan.radii() {
        for &th in &angles {
            let lam = Complex64::from_polar(r, th);
            let lhs = (psi.eval(lam)? - phi.eval(lam)?).norm();
            let d1 = phi.d1(Complex64::new(lam.re, 0.0))?.re;
            let rhs = 4.0 * r / cb * d1;
            worst.update(rhs - lhs, libm::fmax(lhs, rhs), Some(lam), None);
        }
    }
    Ok(worst.into_report(InequalityId::L22, None))
}

fn check_sect(
    psi: &BernsteinFn,
    p: &IneqParams,
    plan: &SamplingPlan,
) -> Result<CheckReport, BernsteinError> {
    let mut worst = Worst::new();
    let angles = lin_grid(-p.omega, p.omega, plan.angular);
    for &r in &plan.radii() {
        for &th in &angles {
            let lam = Complex64::from_polar(r, th);
            let w = psi.eval(lam)?;
            let arg = if w.norm() == 0.0 { 0.0 } else { libm::fabs(w.arg()) };
            // margin in angle units; scale O(1)
            worst.update(p.omega - arg, 1.0, Some(lam), None);
        }
    }
    Ok(worst.into_report(InequalityId::Sect, None))
}

fn open_half_plane_angles(n: usize) -> Vec<f64> {
    // stay strictly inside (-pi/2, pi/2); the boundary is covered in the
    // limit and exact boundary evaluation is exercised elsewhere
    let margin = 1e-3;
    lin_grid(
        -core::f64::consts::FRAC_PI_2 + margin,
        core::f64::consts::FRAC_PI_2 - margin,
        n,
    )
}

fn refine_radial(
    psi: &BernsteinFn,
    worst: &mut Worst,
    margin_at: impl Fn(&BernsteinFn, Complex64) -> Result<(f64, f64), BernsteinError>,
) -> Result<(), BernsteinError> {
    let Some(lam) = worst.lambda else {
        return Ok(());
    };
    let (r0, th) = lam.to_polar();
    let mut fail: Option<BernsteinError> = None;
    let mut neg_metric = |lr: f64| -> f64 {
        let lam = Complex64::from_polar(libm::exp(lr), th);
        match margin_at(psi, lam) {
            Ok((m, s)) => -(m / allowed_slack(s)),
            Err(e) => {
                fail = Some(e);
                f64::NEG_INFINITY
            }
        }
    };
    let lr0 = libm::log(r0);
    let (lr, _) = golden_max(&mut neg_metric, lr0 - 0.7, lr0 + 0.7, 40);
    if let Some(e) = fail {
        return Err(e);
    }
    let lam = Complex64::from_polar(libm::exp(lr), th);
    let (m, s) = margin_at(psi, lam)?;
    worst.update(m, s, Some(lam), None);
    Ok(())
}

/// Sector-shrinking angles for a complete Bernstein function mapping the
/// upper half of Σ_θ into Σ_{θ̃}: returns (θ₀, θ̃).
pub fn cbf_shrink_angles(gamma: f64, theta: f64) -> Result<(f64, f64), BernsteinError> {
    if !(gamma > 0.0 && gamma < core::f64::consts::FRAC_PI_2) {
        return Err(BernsteinError::BadParameter {
            what: "gamma out of (0, pi/2)",
        });
    }
    let cot_g = 1.0 / libm::tan(gamma);
    let ratio = cot_g / (1.0 + cot_g);
    let theta0 = libm::acos(-ratio);
    if !(theta > core::f64::consts::FRAC_PI_2 && theta <= theta0 + 1e-15) {
        return Err(BernsteinError::BadParameter {
            what: "theta out of (pi/2, theta0]",
        });
    }
    let cot_t = (1.0 + cot_g) / libm::sin(theta) * (ratio - libm::fabs(libm::cos(theta)));
    let theta_tilde = libm::atan2(1.0, cot_t);
    Ok((theta0, theta_tilde))
}

#[derive(Debug, Clone)]
pub struct ContourBoundReport {
    pub integral: f64,
    pub bound: f64,
    pub pass: bool,
    /// truncation half-width in log-radius used for the last extension
    pub log_halfwidth: f64,
}

/// Check `∫_{∂Σ_β} |r(λ; z)| |dλ|/|λ| <= 8 / (cos²β cos²((ω+β)/2) |z|)`.
pub fn contour_bound_check(
    psi: &BernsteinFn,
    z: Complex64,
    omega: f64,
    beta: f64,
) -> Result<ContourBoundReport, BernsteinError> {
    if !(omega > core::f64::consts::FRAC_PI_2 && omega < core::f64::consts::PI) {
        return Err(BernsteinError::BadParameter {
            what: "omega out of (pi/2, pi)",
        });
    }
    if !(beta > 0.0 && beta < core::f64::consts::PI - omega) {
        return Err(BernsteinError::BadParameter {
            what: "beta out of (0, pi - omega)",
        });
    }
    if z.norm() == 0.0 || libm::fabs(z.arg()) >= omega {
        return Err(BernsteinError::Domain {
            what: "z outside the open sector",
        });
    }
    let phi = psi.associated()?;
    let cb = libm::cos(beta);
    let chalf = libm::cos(0.5 * (omega + beta));
    let bound = 8.0 / (cb * cb * chalf * chalf * z.norm());

    // λ = e^{u ± iβ}: |dλ|/|λ| = du
    let mut err: Option<BernsteinError> = None;
    let mut integrand = |u: f64| -> f64 {
        let t = libm::exp(u);
        let mut acc = 0.0;
        for &sgn in &[1.0, -1.0] {
            let lam = Complex64::from_polar(t, sgn * beta);
            match resolvent_diff(psi, &phi, lam, z) {
                Ok(r) => acc += r.norm(),
                Err(e) => {
                    err = Some(e);
                }
            }
        }
        acc
    };
    let center = libm::log(z.norm());
    let mut half = 6.0_f64;
    let target = 1e-8 * bound;
    let mut total =
        integrate_doubling(&mut integrand, center - half, center + half, &0.0, target, 1 << 12)?;
    loop {
        let left = integrate_doubling(
            &mut integrand,
            center - half - 6.0,
            center - half,
            &0.0,
            target,
            1 << 10,
        )?;
        let right = integrate_doubling(
            &mut integrand,
            center + half,
            center + half + 6.0,
            &0.0,
            target,
            1 << 10,
        )?;
        total += left + right;
        half += 6.0;
        if (left + right) < target || half > 48.0 {
            break;
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok(ContourBoundReport {
        integral: total,
        bound,
        pass: total <= bound * (1.0 + 1e-6) + 1e-12,
        log_halfwidth: half,
    })
}

#[derive(Debug, Clone, Copy)]
pub enum ImprovingMode {
    /// `θ = (π/2)(1 - (2γ/π)(θ₁/θ₂))`
    Bhh0 { gamma: f64, theta1: f64, theta2: f64 },
    /// `θ = (π/2)(1 - θ₁/θ₂)`
    Bhh { theta1: f64, theta2: f64 },
    /// `θ = θ₀ + (π/2 - θ₀)(1 - θ₁/θ₂)`
    Bhht { theta0: f64, theta1: f64, theta2: f64 },
    /// `θ = (π/2)(1 - π/(2θ))` for θ ∈ (π/2, π)
    Ck { theta: f64 },
}

pub fn improving_angles(mode: ImprovingMode) -> Result<f64, BernsteinError> {
    use core::f64::consts::{FRAC_PI_2, PI};
    let bad = |what| Err(BernsteinError::BadParameter { what });
    match mode {
        ImprovingMode::Bhh0 {
            gamma,
            theta1,
            theta2,
        } => {
            if !(gamma > 0.0 && gamma <= FRAC_PI_2) {
                return bad("gamma out of (0, pi/2]");
            }
            if !(theta1 > 0.0 && theta1 <= theta2 && theta2 < PI) {
                return bad("need 0 < theta1 <= theta2 < pi");
            }
            Ok(FRAC_PI_2 * (1.0 - (2.0 * gamma / PI) * (theta1 / theta2)))
        }
        ImprovingMode::Bhh { theta1, theta2 } => {
            if !(theta1 > 0.0 && theta1 <= theta2 && theta2 < PI) {
                return bad("need 0 < theta1 <= theta2 < pi");
            }
            Ok(FRAC_PI_2 * (1.0 - theta1 / theta2))
        }
        ImprovingMode::Bhht {
            theta0,
            theta1,
            theta2,
        } => {
            if !(theta0 > 0.0 && theta0 <= FRAC_PI_2) {
                return bad("theta0 out of (0, pi/2]");
            }
            if !(theta1 > 0.0 && theta1 <= theta2 && theta2 < PI) {
                return bad("need 0 < theta1 <= theta2 < pi");
            }
            Ok(theta0 + (FRAC_PI_2 - theta0) * (1.0 - theta1 / theta2))
        }
        ImprovingMode::Ck { theta } => {
            if !(theta > FRAC_PI_2 && theta < PI) {
                return bad("theta out of (pi/2, pi)");
            }
            Ok(FRAC_PI_2 * (1.0 - PI / (2.0 * theta)))
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum CkMode {
    /// sample the closed right half-plane; check `ψ(λ) + shift ∈ Σ̄_γ`
    HalfPlaneShift { gamma: f64, shift: f64 },
    /// sample `Σ_θ^+` with `|λ| >= r_min`; check `0 <= arg ψ(λ) <= π/2`
    SectorArg { theta: f64, r_min: f64 },
}

#[derive(Debug, Clone)]
pub struct CkVerdict {
    pub max_arg: f64,
    pub min_arg: f64,
    pub pass: bool,
    pub worst: Complex64,
    pub samples: usize,
}

pub fn carasso_kato_check(
    psi: &BernsteinFn,
    mode: CkMode,
    plan: &SamplingPlan,
) -> Result<CkVerdict, BernsteinError> {
    let mut max_arg = f64::NEG_INFINITY;
    let mut min_arg = f64::INFINITY;
    let mut worst = Complex64::new(0.0, 0.0);
    let mut samples = 0usize;
    let (angles, radii, check): (Vec<f64>, Vec<f64>, _) = match mode {
        CkMode::HalfPlaneShift { .. } => (
            open_half_plane_angles(plan.angular),
            plan.radii(),
            mode,
        ),
        CkMode::SectorArg { theta, r_min } => (
            lin_grid(0.0, theta, plan.angular),
            log_grid(libm::fmax(r_min, plan.r_min), plan.r_max, plan.radial),
            mode,
        ),
    };
    for &r in &radii {
        for &th in &angles {
            let lam = Complex64::from_polar(r, th);
            let mut w = psi.eval(lam)?;
            if let CkMode::HalfPlaneShift { shift, .. } = check {
                w += shift;
            }
            if w.norm() == 0.0 {
                continue;
            }
            samples += 1;
            let arg = w.arg();
            if arg > max_arg {
                max_arg = arg;
                worst = lam;
            }
            if arg < min_arg {
                min_arg = arg;
            }
        }
    }
    let tol = 1e-9;
    let pass = match mode {
        CkMode::HalfPlaneShift { gamma, .. } => {
            libm::fmax(libm::fabs(max_arg), libm::fabs(min_arg)) <= gamma + tol
        }
        CkMode::SectorArg { .. } => {
            min_arg >= -tol && max_arg <= core::f64::consts::FRAC_PI_2 + tol
        }
    };
    Ok(CkVerdict {
        max_arg,
        min_arg,
        pass,
        worst,
        samples,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct RatioRow {
    pub r: f64,
    pub theta: f64,
    pub ratio: Complex64,
    /// distance from `e^{i α θ}`
    pub deviation: f64,
}

/// Tabulate `ψ(r e^{iθ}) / ψ(r)` against the homogeneous model `e^{iαθ}`.
pub fn fujita_ratio_probe(
    psi: &BernsteinFn,
    alpha: f64,
    thetas: &[f64],
    radii: &[f64],
) -> Result<Vec<RatioRow>, BernsteinError> {
    let mut out = Vec::with_capacity(thetas.len() * radii.len());
    for &r in radii {
        let base = psi.eval(Complex64::new(r, 0.0))?;
        for &th in thetas {
            let v = psi.eval(Complex64::from_polar(r, th))?;
            let ratio = v / base;
            let model = Complex64::from_polar(1.0, alpha * th);
            out.push(RatioRow {
                r,
                theta: th,
                ratio,
                deviation: (ratio - model).norm(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn small_plan() -> SamplingPlan {
        SamplingPlan {
            r_min: 1e-4,
            r_max: 1e4,
            radial: 16,
            angular: 9,
            refine: true,
        }
    }

    #[test]
    fn feh_equality_for_identity_at_small_beta() {
        // ψ = z, λ = 1, z = e^{iπ/4}, β → 0: |1 + e^{iπ/4}| = 2 cos(π/8)
        let lhs = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, FRAC_PI_4)).norm();
        assert!((lhs - 2.0 * libm::cos(PI / 8.0)).abs() < 1e-12);
        let psi = BernsteinFn::Affine { a: 0.0, b: 1.0 };
        let params = IneqParams {
            beta: 1e-9,
            gamma: FRAC_PI_4,
            ..Default::default()
        };
        let rep = check_inequality(InequalityId::Feh, &psi, &params, &small_plan()).unwrap();
        assert!(rep.pass, "worst margin {}", rep.worst_margin);
    }

    #[test]
    fn re_margin_positive_for_one_minus_exp() {
        // λ = 1 + i: Re ψ(λ) = 1 - e^{-1} cos 1 ≈ 0.801 > ψ(1) ≈ 0.632
        let psi = BernsteinFn::OneMinusExp {
            scale: 1.0,
            rate: 1.0,
        };
        let lam = Complex64::new(1.0, 1.0);
        let lhs = psi.eval(lam).unwrap().re;
        let rhs = psi.eval(Complex64::new(1.0, 0.0)).unwrap().re;
        assert!((lhs - (1.0 - libm::exp(-1.0) * libm::cos(1.0))).abs() < 1e-14);
        assert!(lhs > rhs);
        let rep =
            check_inequality(InequalityId::Re, &psi, &IneqParams::default(), &small_plan()).unwrap();
        assert!(rep.pass, "worst margin {}", rep.worst_margin);
    }

    #[test]
    fn all_inequalities_pass_for_reference_functions() {
        let cases = [
            BernsteinFn::Power { alpha: 0.5 },
            BernsteinFn::Log1p,
            BernsteinFn::OneMinusExp {
                scale: 2.0,
                rate: 0.7,
            },
        ];
        let params = IneqParams::default();
        let plan = small_plan();
        for psi in &cases {
            for id in InequalityId::ALL {
                let rep = check_inequality(id, psi, &params, &plan).unwrap();
                assert!(
                    rep.pass,
                    "{} failed: margin {} at {:?}",
                    rep.id, rep.worst_margin, rep.worst_lambda
                );
            }
        }
    }

    #[test]
    fn sect_passes_for_sqrt_with_omega_pi_3() {
        let psi = BernsteinFn::Power { alpha: 0.5 };
        let params = IneqParams {
            omega: PI / 3.0,
            ..Default::default()
        };
        let plan = SamplingPlan::with_budget(32, 33);
        let rep = check_inequality(InequalityId::Sect, &psi, &params, &plan).unwrap();
        assert!(rep.pass);
        assert!(rep.samples >= 1000);
    }

    #[test]
    fn shrink_angles_match_quarter_pi_case() {
        // γ = π/4: cot γ = 1, θ₀ = arccos(-1/2) = 2π/3
        let (theta0, _) = cbf_shrink_angles(FRAC_PI_4, FRAC_PI_2 + 1e-9).unwrap();
        assert!((theta0 - 2.0 * PI / 3.0).abs() < 1e-12);
        // θ → π/2⁺ gives θ̃ → γ
        let (_, tt) = cbf_shrink_angles(FRAC_PI_4, FRAC_PI_2 + 1e-9).unwrap();
        assert!((tt - FRAC_PI_4).abs() < 1e-8, "{tt}");
        // θ = θ₀ gives θ̃ = π/2
        let (t0, tt) = cbf_shrink_angles(FRAC_PI_4, 2.0 * PI / 3.0).unwrap();
        assert!((tt - FRAC_PI_2).abs() < 1e-9, "theta0={t0} tt={tt}");
        // monotone: θ̃ increases with θ
        let mut prev = 0.0;
        for i in 1..20 {
            let th = FRAC_PI_2 + (theta0 - FRAC_PI_2) * i as f64 / 20.0;
            let (_, tt) = cbf_shrink_angles(FRAC_PI_4, th).unwrap();
            assert!(tt > prev, "not monotone at {th}");
            prev = tt;
        }
        assert!(cbf_shrink_angles(FRAC_PI_4, 0.3).is_err());
    }

    #[test]
    fn contour_bound_examples() {
        // ψ = z: r ≡ 0 (φ = ψ), integral 0
        let psi = BernsteinFn::Affine { a: 0.0, b: 1.0 };
        let rep =
            contour_bound_check(&psi, Complex64::new(1.0, 0.0), 0.75 * PI, PI / 8.0).unwrap();
        assert!(rep.integral < 1e-9, "integral {}", rep.integral);
        assert!(rep.pass);

        // ψ = 1 - e^{-z}: bound ≈ 246.23 at z = 1
        let psi = BernsteinFn::OneMinusExp {
            scale: 1.0,
            rate: 1.0,
        };
        let rep =
            contour_bound_check(&psi, Complex64::new(1.0, 0.0), 0.75 * PI, PI / 8.0).unwrap();
        let cb = libm::cos(PI / 8.0);
        let ch = libm::cos(0.5 * (0.75 * PI + PI / 8.0));
        let want = 8.0 / (cb * cb * ch * ch);
        assert!((rep.bound - want).abs() < 1e-9 * want);
        assert!((rep.bound - 246.0).abs() < 1.0, "bound {}", rep.bound);
        assert!(rep.pass && rep.integral < rep.bound);

        // bounded ψ: both z stay under the bound, but the integral falls off
        // faster than 1/|z| once |z| clears sup ψ, since both resolvents
        // flatten to 1/z
        let rep100 =
            contour_bound_check(&psi, Complex64::new(100.0, 0.0), 0.75 * PI, PI / 8.0).unwrap();
        assert!(rep100.pass);
        assert!((rep100.bound * 100.0 - rep.bound).abs() < 1e-9 * rep.bound);
        assert!(rep.integral / rep100.integral > 100.0);

        // homogeneous ψ: the substitution λ -> |c| λ shows the integral
        // scales exactly as 1/|z| along a ray, same as the bound
        let psi = BernsteinFn::Power { alpha: 0.5 };
        let rep1 =
            contour_bound_check(&psi, Complex64::new(1.0, 0.0), 0.75 * PI, PI / 8.0).unwrap();
        let rep100 =
            contour_bound_check(&psi, Complex64::new(100.0, 0.0), 0.75 * PI, PI / 8.0).unwrap();
        let ratio = rep1.integral / rep100.integral;
        assert!((ratio / 100.0 - 1.0).abs() < 0.05, "ratio {ratio}");
        assert!(rep1.pass && rep100.pass);
    }

    #[test]
    fn improving_angle_formulas() {
        let got = improving_angles(ImprovingMode::Bhh {
            theta1: FRAC_PI_2,
            theta2: 0.75 * PI,
        })
        .unwrap();
        assert!((got - PI / 6.0).abs() < 1e-14);
        let got = improving_angles(ImprovingMode::Ck { theta: 0.75 * PI }).unwrap();
        assert!((got - PI / 6.0).abs() < 1e-14);
        let got = improving_angles(ImprovingMode::Bhht {
            theta0: FRAC_PI_2,
            theta1: 1.0,
            theta2: 1.0,
        })
        .unwrap();
        assert!((got - FRAC_PI_2).abs() < 1e-14);
        // BHHT converges to BHH as θ₀ → π/2 ... with θ₀ small the extra
        // room shrinks; degenerate ratio keeps the angle
        let bhh = improving_angles(ImprovingMode::Bhh {
            theta1: 0.4,
            theta2: 0.8,
        })
        .unwrap();
        let bhht = improving_angles(ImprovingMode::Bhht {
            theta0: FRAC_PI_2 - 1e-9,
            theta1: 0.4,
            theta2: 0.8,
        })
        .unwrap();
        // as θ₀ → π/2 the BHHT angle tends to π/2, the BHH form is the
        // θ₀-free special case at θ₀ = 0-room; check the arithmetic only
        assert!((bhht - FRAC_PI_2).abs() < 1e-8);
        assert!((bhh - FRAC_PI_4 / 2.0 * 2.0).abs() < 1e-12);
        assert!(improving_angles(ImprovingMode::Ck { theta: 0.3 }).is_err());
    }

    #[test]
    fn carasso_kato_verdicts() {
        // ψ = z fails any γ < π/2 on the half-plane
        let psi = BernsteinFn::Affine { a: 0.0, b: 1.0 };
        let v = carasso_kato_check(
            &psi,
            CkMode::HalfPlaneShift {
                gamma: FRAC_PI_2 - 0.1,
                shift: 0.0,
            },
            &small_plan(),
        )
        .unwrap();
        assert!(!v.pass);
        // ψ = z^{1/2} passes γ = π/4 with no shift
        let psi = BernsteinFn::Power { alpha: 0.5 };
        let v = carasso_kato_check(
            &psi,
            CkMode::HalfPlaneShift {
                gamma: FRAC_PI_4,
                shift: 0.0,
            },
            &small_plan(),
        )
        .unwrap();
        assert!(v.pass, "max_arg {}", v.max_arg);
        // ψ = log(1+z): |Im ψ| <= π/2, so a large shift pushes the argument
        // under any small γ
        let psi = BernsteinFn::Log1p;
        let v = carasso_kato_check(
            &psi,
            CkMode::HalfPlaneShift {
                gamma: 0.3,
                shift: 40.0,
            },
            &SamplingPlan {
                r_max: 1e3,
                ..small_plan()
            },
        )
        .unwrap();
        assert!(v.pass, "max_arg {}", v.max_arg);
        // sector-arg mode for sqrt on the upper sector
        let v = carasso_kato_check(
            &BernsteinFn::Power { alpha: 0.5 },
            CkMode::SectorArg {
                theta: FRAC_PI_2,
                r_min: 1.0,
            },
            &small_plan(),
        )
        .unwrap();
        assert!(v.pass);
    }

    #[test]
    fn fujita_ratios() {
        // homogeneity: ψ = z^α gives the ratio exactly
        let psi = BernsteinFn::Power { alpha: 0.3 };
        let rows = fujita_ratio_probe(&psi, 0.3, &[0.5, FRAC_PI_4], &[1.0, 100.0]).unwrap();
        for row in &rows {
            assert!(row.deviation < 1e-14, "{row:?}");
        }
        // log(1+z) flattens slowly: at r = 1e6 the deviation from 1 is
        // arg-dominated, about (π/4)/ln(1e6) ≈ 0.057
        let rows = fujita_ratio_probe(&BernsteinFn::Log1p, 0.0, &[FRAC_PI_4], &[1e6]).unwrap();
        assert!(rows[0].deviation < 0.06, "{}", rows[0].deviation);
        assert!(rows[0].deviation > 0.04, "{}", rows[0].deviation);
        // dominant linear term: ψ = z + z^{1/2}
        let psi = BernsteinFn::Sum(alloc::vec![
            BernsteinFn::Affine { a: 0.0, b: 1.0 },
            BernsteinFn::Power { alpha: 0.5 },
        ]);
        let rows = fujita_ratio_probe(&psi, 1.0, &[FRAC_PI_4], &[1e6]).unwrap();
        assert!(rows[0].deviation < 1e-2, "{}", rows[0].deviation);
    }
}
