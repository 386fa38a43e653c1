//! Subordinator families with closed-form densities, the subordinated
//! matrix semigroup `∫ e^{-sA} μ_t(ds)`, convolution-semigroup checks in
//! the Laplace domain, and the `t ‖μ_t'‖` boundedness diagnostic.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::bernstein::BernsteinFn;
use crate::calculus::{levy_apply, make_sectorial, CalcError, SectorialMatrix};
use crate::geometry::CheckReport;
use crate::linalg::{expm, CMatrix};
use crate::quad::{integrate_doubling, integrate_power_lower, QuadVec};
use crate::special::{digamma, gamma};

// one decade above the roundoff floor of doubling over wide log windows
const SUB_TARGET: f64 = 1e-9;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// The closed-form subordinator families.
#[derive(Debug, Clone)]
pub enum SubordinatorFamily {
    /// `ψ = log(1+z)`, density `s^{t-1} e^{-s} / Γ(t)`.
    Gamma,
    /// `ψ = √z`, density `(t / 2√π) s^{-3/2} e^{-t²/4s}`.
    StableHalf,
    /// `ψ = c (1 - e^{-z})`, unit jumps at rate `c`.
    Poisson { rate: f64 },
    Composed {
        outer: Box<SubordinatorFamily>,
        inner: Box<SubordinatorFamily>,
    },
}

impl SubordinatorFamily {
    pub fn validate(&self) -> Result<(), CalcError> {
        match self {
            SubordinatorFamily::Poisson { rate } => {
                if !(rate.is_finite() && *rate > 0.0) {
                    return Err(CalcError::BadParameter {
                        what: "poisson rate must be positive",
                    });
                }
                Ok(())
            }
            SubordinatorFamily::Composed { outer, inner } => {
                outer.validate()?;
                inner.validate()
            }
            _ => Ok(()),
        }
    }

    /// The matching Bernstein function of the family.
    pub fn psi(&self) -> BernsteinFn {
        match self {
            SubordinatorFamily::Gamma => BernsteinFn::Log1p,
            SubordinatorFamily::StableHalf => BernsteinFn::Power { alpha: 0.5 },
            SubordinatorFamily::Poisson { rate } => BernsteinFn::OneMinusExp {
                scale: *rate,
                rate: 1.0,
            },
            SubordinatorFamily::Composed { outer, inner } => BernsteinFn::Compose {
                outer: Box::new(outer.psi()),
                inner: Box::new(inner.psi()),
            },
        }
    }

    /// Pointwise density of `μ_t` at `s`; only the absolutely continuous
    /// families expose one.
    pub fn density(&self, t: f64, s: f64) -> Result<f64, CalcError> {
        if !(t > 0.0) {
            return Err(CalcError::Domain { what: "t must be positive" });
        }
        if !(s > 0.0) {
            return Err(CalcError::Domain { what: "s must be positive" });
        }
        match self {
            SubordinatorFamily::Gamma => {
                Ok(libm::exp((t - 1.0) * libm::log(s) - s) / gamma(t))
            }
            SubordinatorFamily::StableHalf => Ok(t / (2.0 * SQRT_PI)
                * libm::pow(s, -1.5)
                * libm::exp(-t * t / (4.0 * s))),
            _ => Err(CalcError::Domain {
                what: "family has no pointwise density",
            }),
        }
    }

    /// Atom list `(location, mass)` for the purely atomic families,
    /// truncated once the remaining mass is below 1e-15.
    pub fn atoms(&self, t: f64) -> Result<Vec<(f64, f64)>, CalcError> {
        if !(t >= 0.0) {
            return Err(CalcError::Domain { what: "t must be nonnegative" });
        }
        match self {
            SubordinatorFamily::Poisson { rate } => {
                let ct = rate * t;
                let mut out = Vec::new();
                let mut mass = libm::exp(-ct);
                let mut covered = 0.0;
                let mut k = 0usize;
                while covered < 1.0 - 1e-15 && k < 400 {
                    out.push((k as f64, mass));
                    covered += mass;
                    k += 1;
                    mass *= ct / k as f64;
                }
                Ok(out)
            }
            _ => Err(CalcError::Domain {
                what: "family is not purely atomic",
            }),
        }
    }

    /// Laplace transform `μ̂_t(z) = ∫ e^{-zs} μ_t(ds)` by quadrature
    /// (atom sums for Poisson; `μ̂_t(φ(z))` for compositions).
    pub fn laplace(&self, t: f64, z: Complex64) -> Result<Complex64, CalcError> {
        if !(t >= 0.0) {
            return Err(CalcError::Domain { what: "t must be nonnegative" });
        }
        if z.re < 0.0 {
            return Err(CalcError::Domain {
                what: "z must lie in the closed right half-plane",
            });
        }
        if t == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let zero = Complex64::new(0.0, 0.0);
        match self {
            SubordinatorFamily::Gamma => {
                let c = 1.0 / gamma(t);
                let mut smooth = |s: f64| c * (-(1.0 + z) * s).exp();
                let head =
                    integrate_power_lower(&mut smooth, 0.0, 1.0, t - 1.0, &zero, SUB_TARGET, 1 << 12)?;
                let upper = gamma_upper_cut(t, 1.0 + z.re);
                let mut g = |u: f64| {
                    let s = libm::exp(u);
                    c * libm::exp(t * u) * (-(1.0 + z) * s).exp() / s * s
                };
                let tail = integrate_doubling(&mut g, 0.0, upper, &zero, SUB_TARGET, 1 << 12)?;
                Ok(head + tail)
            }
            SubordinatorFamily::StableHalf => {
                // u = 1/s turns the density into (t/2√π) u^{-1/2} e^{-t²u/4},
                // with kernel e^{-z/u}
                let c = t / (2.0 * SQRT_PI);
                let mut smooth = |u: f64| {
                    let mut w = Complex64::new(-t * t * u / 4.0, 0.0);
                    if u > 0.0 {
                        w -= z / u;
                    }
                    c * w.exp()
                };
                let head =
                    integrate_power_lower(&mut smooth, 0.0, 1.0, -0.5, &zero, SUB_TARGET, 1 << 12)?;
                let upper = libm::log(libm::fmax(4.0 * 45.0 / (t * t), 2.0));
                let mut g = |v: f64| {
                    let u = libm::exp(v);
                    c * libm::pow(u, -0.5) * (Complex64::new(-t * t * u / 4.0, 0.0) - z / u).exp() * u
                };
                let tail = integrate_doubling(&mut g, 0.0, upper, &zero, SUB_TARGET, 1 << 12)?;
                Ok(head + tail)
            }
            SubordinatorFamily::Poisson { .. } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, m) in self.atoms(t)? {
                    acc += m * (-z * k).exp();
                }
                Ok(acc)
            }
            SubordinatorFamily::Composed { outer, inner } => {
                // η̂_t(z) = ∫ e^{-s φ(z)} μ_t(ds) = μ̂_t(φ(z))
                let w = inner.psi().eval(z)?;
                outer.laplace(t, w)
            }
        }
    }

    /// Total mass of `μ_t`.
    pub fn mass(&self, t: f64) -> Result<f64, CalcError> {
        Ok(self.laplace(t, Complex64::new(0.0, 0.0))?.re)
    }

    /// `e^{-tψ(A)} = ∫ e^{-sA} μ_t(ds)` by quadrature against the density
    /// (atom sums for Poisson; nested subordination for compositions).
    pub fn subordinate_matrix(
        &self,
        am: &SectorialMatrix,
        t: f64,
    ) -> Result<CMatrix, CalcError> {
        if !(t >= 0.0) {
            return Err(CalcError::Domain { what: "t must be nonnegative" });
        }
        let n = am.dim();
        if t == 0.0 {
            return Ok(CMatrix::identity(n));
        }
        let zero = CMatrix::zeros(n);
        let a_mat = am.matrix();
        match self {
            SubordinatorFamily::Gamma => {
                let c = 1.0 / gamma(t);
                let mut smooth = |s: f64| {
                    expm(&a_mat.scale(Complex64::new(-s, 0.0))).scale(Complex64::new(
                        c * libm::exp(-s),
                        0.0,
                    ))
                };
                let head =
                    integrate_power_lower(&mut smooth, 0.0, 1.0, t - 1.0, &zero, SUB_TARGET, 1 << 10)?;
                let upper = gamma_upper_cut(t, 1.0);
                let mut g = |u: f64| {
                    let s = libm::exp(u);
                    expm(&a_mat.scale(Complex64::new(-s, 0.0)))
                        .scale(Complex64::new(c * libm::exp(t * u - s), 0.0))
                };
                let tail = integrate_doubling(&mut g, 0.0, upper, &zero, SUB_TARGET, 1 << 10)?;
                Ok(head.add(&tail))
            }
            SubordinatorFamily::StableHalf => {
                let c = t / (2.0 * SQRT_PI);
                let mut smooth = |u: f64| {
                    if u == 0.0 {
                        return zero.zero_like();
                    }
                    expm(&a_mat.scale(Complex64::new(-1.0 / u, 0.0)))
                        .scale(Complex64::new(c * libm::exp(-t * t * u / 4.0), 0.0))
                };
                let head =
                    integrate_power_lower(&mut smooth, 0.0, 1.0, -0.5, &zero, SUB_TARGET, 1 << 10)?;
                let upper = libm::log(libm::fmax(4.0 * 45.0 / (t * t), 2.0));
                let mut g = |v: f64| {
                    let u = libm::exp(v);
                    expm(&a_mat.scale(Complex64::new(-1.0 / u, 0.0))).scale(Complex64::new(
                        c * libm::pow(u, 0.5) * libm::exp(-t * t * u / 4.0),
                        0.0,
                    ))
                };
                let tail = integrate_doubling(&mut g, 0.0, upper, &zero, SUB_TARGET, 1 << 10)?;
                Ok(head.add(&tail))
            }
            SubordinatorFamily::Poisson { .. } => {
                let mut acc = zero.zero_like();
                for (k, m) in self.atoms(t)? {
                    let e = if k == 0.0 {
                        CMatrix::identity(n)
                    } else {
                        expm(&a_mat.scale(Complex64::new(-k, 0.0)))
                    };
                    acc = acc.add(&e.scale(Complex64::new(m, 0.0)));
                }
                Ok(acc)
            }
            SubordinatorFamily::Composed { outer, inner } => {
                let b = levy_apply(&inner.psi(), am)?;
                let bm = make_sectorial(b)?;
                outer.subordinate_matrix(&bm, t)
            }
        }
    }

    /// `t ‖μ_t'‖` with the t-derivative of the density taken analytically.
    pub fn t1_product(&self, t: f64) -> Result<f64, CalcError> {
        if !(t > 0.0) {
            return Err(CalcError::Domain { what: "t must be positive" });
        }
        match self {
            SubordinatorFamily::Gamma => {
                // ∂_t density = density (log s - digamma(t)); zero mean, so
                // the L1 norm is twice the signed integral above the kink
                let dg = digamma(t);
                let c = 1.0 / gamma(t);
                let lo = dg;
                let hi = libm::log(50.0 + 10.0 * t);
                let mut g = |u: f64| {
                    // s-weighted integrand in log scale
                    c * libm::exp(t * u - libm::exp(u)) * (u - dg)
                };
                let upper = integrate_doubling(&mut g, lo, hi, &0.0, SUB_TARGET, 1 << 12)?;
                Ok(t * 2.0 * upper)
            }
            SubordinatorFamily::StableHalf => {
                // ∂_t density = (1/2√π) s^{-3/2} e^{-t²/4s} (1 - t²/2s);
                // substituting w = t²/(4s), t ‖μ_t'‖ = (2/√π) ∫_0^{1/2}
                // w^{-1/2} e^{-w} (1 - 2w) dw, independent of t
                let mut smooth = |w: f64| 2.0 / SQRT_PI * libm::exp(-w) * (1.0 - 2.0 * w);
                let v = integrate_power_lower(&mut smooth, 0.0, 0.5, -0.5, &0.0, SUB_TARGET, 1 << 10)?;
                Ok(v)
            }
            SubordinatorFamily::Poisson { rate } => {
                // ∂_t mass_k = mass_k (k/t - c)
                let mut acc = 0.0;
                for (k, m) in self.atoms(t)? {
                    acc += m * libm::fabs(k - rate * t);
                }
                Ok(acc)
            }
            SubordinatorFamily::Composed { .. } => Err(CalcError::Domain {
                what: "no closed-form t-derivative for composed families",
            }),
        }
    }
}

/// Log-cut `u*` with `e^{u*} - t u* > 45`, so the Gamma-type integrand is
/// below roundoff past it.
fn gamma_upper_cut(t: f64, decay: f64) -> f64 {
    let mut u = 1.0f64;
    while decay * libm::exp(u) - t * u < 45.0 {
        u += 0.5;
    }
    u
}

/// Max over the grid of `|μ̂_t(z) μ̂_s(z) - μ̂_{t+s}(z)|`.
pub fn semigroup_property_check(
    family: &SubordinatorFamily,
    t: f64,
    s: f64,
    zs: &[Complex64],
) -> Result<CheckReport, CalcError> {
    let mut worst = 0.0f64;
    let mut worst_z = None;
    for &z in zs {
        let lhs = family.laplace(t, z)? * family.laplace(s, z)?;
        let rhs = family.laplace(t + s, z)?;
        let res = (lhs - rhs).norm();
        if res >= worst {
            worst = res;
            worst_z = Some(z);
        }
    }
    let tol = 1e-7;
    Ok(CheckReport {
        id: String::from("SEMIGROUP"),
        samples: zs.len(),
        worst_margin: tol - worst,
        worst_scale: 1.0,
        worst_lambda: None,
        worst_z,
        constant: None,
        pass: worst <= tol,
    })
}

/// `t · ‖μ_t'‖` table over `t = 2^{-k}`, `k = 0..=k_max`.
pub fn t1_diagnostic(
    family: &SubordinatorFamily,
    k_max: usize,
) -> Result<Vec<(f64, f64)>, CalcError> {
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let t = libm::pow(2.0, -(k as f64));
        out.push((t, family.t1_product(t)?));
    }
    Ok(out)
}

/// Density of `η_t(dτ) = ∫ ν_s(dτ) μ_t(ds)` on the given τ grid.
pub fn compose_subordinator(
    outer: &SubordinatorFamily,
    inner: &SubordinatorFamily,
    t: f64,
    taus: &[f64],
) -> Result<Vec<(f64, f64)>, CalcError> {
    if !(t > 0.0) {
        return Err(CalcError::Domain { what: "t must be positive" });
    }
    let mut out = Vec::with_capacity(taus.len());
    for &tau in taus {
        if !(tau > 0.0) {
            return Err(CalcError::Domain { what: "tau must be positive" });
        }
        let v = match outer {
            SubordinatorFamily::Poisson { .. } => {
                let mut acc = 0.0;
                for (k, m) in outer.atoms(t)? {
                    if k > 0.0 {
                        acc += m * inner.density(k, tau)?;
                    }
                }
                acc
            }
            SubordinatorFamily::Gamma => {
                let c = 1.0 / gamma(t);
                let mut err: Option<CalcError> = None;
                let mut smooth = |s: f64| {
                    if s == 0.0 {
                        return 0.0;
                    }
                    match inner.density(s, tau) {
                        Ok(d) => c * libm::exp(-s) * d,
                        Err(e) => {
                            err = Some(e);
                            0.0
                        }
                    }
                };
                let head =
                    integrate_power_lower(&mut smooth, 0.0, 1.0, t - 1.0, &0.0, 1e-9, 1 << 12)?;
                let upper = gamma_upper_cut(t, 1.0);
                let mut g = |u: f64| {
                    let s = libm::exp(u);
                    match inner.density(s, tau) {
                        Ok(d) => c * libm::exp(t * u - s) * d,
                        Err(e) => {
                            err = Some(e);
                            0.0
                        }
                    }
                };
                let tail = integrate_doubling(&mut g, 0.0, upper, &0.0, 1e-9, 1 << 12)?;
                if let Some(e) = err {
                    return Err(e);
                }
                head + tail
            }
            _ => {
                return Err(CalcError::Domain {
                    what: "composition table supports Gamma or Poisson outer families",
                })
            }
        };
        out.push((tau, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::log_grid;
    use core::f64::consts::{FRAC_PI_4, PI};

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

    #[test]
    fn density_examples() {
        let g = SubordinatorFamily::Gamma;
        let got = g.density(1.0, 2.0).unwrap();
        assert!((got - libm::exp(-2.0)).abs() < 1e-14, "got {got}");

        // stable-1/2 Laplace transform is e^{-sqrt(z)}
        let s = SubordinatorFamily::StableHalf;
        let got = s.laplace(1.0, c(1.0, 0.0)).unwrap();
        assert!((got.re - libm::exp(-1.0)).abs() < 1e-9, "got {got}");
        assert!(got.im.abs() < 1e-12);

        let p = SubordinatorFamily::Poisson { rate: 1.0 };
        let atoms = p.atoms(1.0).unwrap();
        assert_eq!(atoms[0].0, 0.0);
        assert!((atoms[0].1 - libm::exp(-1.0)).abs() < 1e-15);

        assert!(matches!(
            g.density(0.0, 1.0),
            Err(CalcError::Domain { .. })
        ));
    }

    #[test]
    fn mass_is_conserved() {
        for fam in [
            SubordinatorFamily::Gamma,
            SubordinatorFamily::StableHalf,
            SubordinatorFamily::Poisson { rate: 1.0 },
        ] {
            for t in [0.25, 1.0, 3.0] {
                let m = fam.mass(t).unwrap();
                assert!((m - 1.0).abs() <= 1e-9, "{fam:?} t={t}: mass {m}");
            }
        }
    }

    #[test]
    fn laplace_matches_exponent() {
        let zs = [c(1.0, 0.0), c(0.3, 0.4), c(2.0, -1.0), c(0.05, 0.0)];
        for fam in [
            SubordinatorFamily::Gamma,
            SubordinatorFamily::StableHalf,
            SubordinatorFamily::Poisson { rate: 1.0 },
        ] {
            let psi = fam.psi();
            for t in [0.5, 1.0, 2.0] {
                for &z in &zs {
                    let got = fam.laplace(t, z).unwrap();
                    let want = (-t * psi.eval(z).unwrap()).exp();
                    assert!(
                        (got - want).norm() <= 1e-7,
                        "{fam:?} t={t} z={z}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn subordinate_matrix_examples() {
        // Gamma at t=2: (1+A)^{-2}
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        let m = SubordinatorFamily::Gamma.subordinate_matrix(&am, 2.0).unwrap();
        assert!((m[(0, 0)] - 0.25).norm() < 1e-8, "{}", m[(0, 0)]);
        assert!((m[(1, 1)] - 1.0 / 9.0).norm() < 1e-8, "{}", m[(1, 1)]);

        // stable-1/2 at t=1: e^{-sqrt(A)}
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(4.0, 0.0)])).unwrap();
        let m = SubordinatorFamily::StableHalf
            .subordinate_matrix(&am, 1.0)
            .unwrap();
        assert!((m[(0, 0)] - libm::exp(-1.0)).norm() < 1e-8, "{}", m[(0, 0)]);
        assert!((m[(1, 1)] - libm::exp(-2.0)).norm() < 1e-8, "{}", m[(1, 1)]);

        // t = 0 is the identity for every family
        let p = SubordinatorFamily::Poisson { rate: 1.0 };
        let m = p.subordinate_matrix(&am, 0.0).unwrap();
        assert!(m.sub(&CMatrix::identity(2)).fro_norm() == 0.0);
    }

    #[test]
    fn subordination_matches_generator_exponential() {
        let a = diag(&[
            Complex64::from_polar(0.7, FRAC_PI_4),
            Complex64::from_polar(2.0, -0.3),
            c(1.5, 0.0),
        ]);
        let am = make_sectorial(a).unwrap();
        for fam in [
            SubordinatorFamily::Gamma,
            SubordinatorFamily::StableHalf,
            SubordinatorFamily::Poisson { rate: 1.0 },
        ] {
            let psi_a = levy_apply(&fam.psi(), &am).unwrap();
            for t in [0.5, 1.5] {
                let direct = fam.subordinate_matrix(&am, t).unwrap();
                let via_gen = expm(&psi_a.scale(c(-t, 0.0)));
                let res = direct.sub(&via_gen).fro_norm();
                assert!(res <= 1e-6, "{fam:?} t={t}: residual {res}");
            }
        }
    }

    #[test]
    fn semigroup_property_examples() {
        let g = SubordinatorFamily::Gamma;
        let rep = semigroup_property_check(&g, 1.0, 1.0, &[c(1.0, 0.0)]).unwrap();
        assert!(rep.pass, "gamma residual margin {}", rep.worst_margin);
        // closed form (1+z)^{-t}: residual is pure quadrature noise
        assert!(rep.worst_margin > 1e-7 - 1e-8);

        let s = SubordinatorFamily::StableHalf;
        let rep = semigroup_property_check(&s, 1.0, 2.0, &[c(1.0, 0.0)]).unwrap();
        assert!(rep.pass && rep.worst_margin > 1e-7 - 1e-8, "{}", rep.worst_margin);

        let p = SubordinatorFamily::Poisson { rate: 1.0 };
        let rep = semigroup_property_check(&p, 0.5, 0.5, &[c(0.0, 1.0)]).unwrap();
        assert!(rep.worst_margin > 1e-7 - 1e-12, "{}", rep.worst_margin);
    }

    #[test]
    fn t1_products_stay_bounded() {
        let rows = t1_diagnostic(&SubordinatorFamily::Gamma, 8).unwrap();
        for (t, v) in &rows {
            assert!(*v > 0.0 && *v < 2.0, "gamma t={t}: {v}");
        }
        // log(1+z) derivative scale: t ||mu_t'|| tends to a positive constant
        assert!(rows.last().unwrap().1 > 0.2);

        let rows = t1_diagnostic(&SubordinatorFamily::StableHalf, 8).unwrap();
        // exactly constant in t for the stable-1/2 family
        let v0 = rows[0].1;
        for (t, v) in &rows {
            assert!((v - v0).abs() < 1e-9, "stable t={t}: {v} vs {v0}");
        }
        assert!(v0 > 0.3 && v0 < 1.0, "{v0}");

        // bounded, vanishing product for the bounded-psi family
        let rows = t1_diagnostic(&SubordinatorFamily::Poisson { rate: 1.0 }, 8).unwrap();
        for win in rows.windows(2) {
            assert!(win[1].1 < win[0].1 + 1e-12);
        }
        assert!(rows.last().unwrap().1 < 0.01);
    }

    #[test]
    fn composition_examples() {
        // Gamma after stable-1/2: eta-hat_1(1) = e^{-log(1+sqrt(1))} = 1/2
        let comp = SubordinatorFamily::Composed {
            outer: Box::new(SubordinatorFamily::Gamma),
            inner: Box::new(SubordinatorFamily::StableHalf),
        };
        let got = comp.laplace(1.0, c(1.0, 0.0)).unwrap();
        assert!((got.re - 0.5).abs() < 1e-6, "got {got}");

        // Poisson(1) after Gamma: e^{-(1 - e^{-log 2})} = e^{-1/2}
        let comp = SubordinatorFamily::Composed {
            outer: Box::new(SubordinatorFamily::Poisson { rate: 1.0 }),
            inner: Box::new(SubordinatorFamily::Gamma),
        };
        let got = comp.laplace(1.0, c(1.0, 0.0)).unwrap();
        assert!((got.re - libm::exp(-0.5)).abs() < 1e-6, "got {got}");

        // composed subordinated matrix vs generator exponential
        let am = make_sectorial(diag(&[c(1.0, 0.0), c(3.0, 0.0)])).unwrap();
        let comp = SubordinatorFamily::Composed {
            outer: Box::new(SubordinatorFamily::Gamma),
            inner: Box::new(SubordinatorFamily::StableHalf),
        };
        let direct = comp.subordinate_matrix(&am, 1.0).unwrap();
        for (i, lam) in [1.0f64, 3.0].iter().enumerate() {
            let want = 1.0 / (1.0 + libm::sqrt(*lam));
            assert!((direct[(i, i)] - want).norm() < 1e-6, "{}", direct[(i, i)]);
        }
    }

    #[test]
    fn composed_density_table_transforms_back() {
        // eta_t density by double quadrature, then its Laplace transform at
        // z=1 recovered by direct quadrature over tau
        let outer = SubordinatorFamily::Gamma;
        let inner = SubordinatorFamily::StableHalf;
        // eta(tau) ~ tau^{-1/2}/sqrt(pi) near 0; weight that out
        let mut err: Option<CalcError> = None;
        let mut smooth = |tau: f64| {
            if tau == 0.0 {
                return 1.0 / SQRT_PI;
            }
            match compose_subordinator(&outer, &inner, 1.0, &[tau]) {
                Ok(rows) => rows[0].1 * libm::sqrt(tau) * libm::exp(-tau),
                Err(e) => {
                    err = Some(e);
                    0.0
                }
            }
        };
        let head = integrate_power_lower(&mut smooth, 0.0, 1.0, -0.5, &0.0, 1e-8, 1 << 8).unwrap();
        let mut g = |u: f64| {
            let tau = libm::exp(u);
            match compose_subordinator(&outer, &inner, 1.0, &[tau]) {
                Ok(rows) => rows[0].1 * libm::exp(-tau) * tau,
                Err(e) => {
                    err = Some(e);
                    0.0
                }
            }
        };
        let tail = integrate_doubling(&mut g, 0.0, libm::log(50.0), &0.0, 1e-8, 1 << 8).unwrap();
        assert!(err.is_none());
        let got = head + tail;
        assert!((got - 0.5).abs() < 1e-4, "got {got}");
    }

    #[test]
    fn holomorphy_probe() {
        // spectrum inside the sector of half-angle pi/4; the subordinated
        // semigroup should stay bounded on the complex time sector of
        // half-angle pi/4 - 0.05 for the improving family sqrt(z)
        let theta = FRAC_PI_4;
        let a = diag(&[
            Complex64::from_polar(1.0, PI / 2.0 - theta - 1e-3),
            Complex64::from_polar(0.3, -(PI / 2.0 - theta) + 1e-3),
        ]);
        let am = make_sectorial(a).unwrap();
        let b = levy_apply(&SubordinatorFamily::StableHalf.psi(), &am).unwrap();
        let mut worst = 0.0f64;
        for &r in &log_grid(1e-3, 1e3, 13) {
            for &phi in &[-(theta - 0.05), 0.0, theta - 0.05] {
                let tau = Complex64::from_polar(r, phi);
                let nrm = expm(&b.scale(-tau)).spectral_norm();
                worst = libm::fmax(worst, nrm);
            }
        }
        assert!(worst <= 1.0 + 1e-9, "worst {worst}");
    }
}
