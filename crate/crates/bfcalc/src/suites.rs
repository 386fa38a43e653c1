//! The seven named suites behind `bfcalc run`. Each one draws its inputs
//! from a seeded stream (or takes fixed inputs from the config), runs the
//! core checks, and folds the results into a deterministic report.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use bfcalc_core::bernstein::{BernsteinFn, StieltjesCbf};
use bfcalc_core::calculus::{
    bound_suite, eigen_oracle, hirsch_apply, kato_fracpow_resolvent, levy_apply, make_sectorial,
    resolvent_identity_residual, SectorialMatrix, SuiteParams,
};
use bfcalc_core::cm::{cm_test, CmVerdict};
use bfcalc_core::geometry::{
    check_inequality, contour_bound_check, fujita_ratio_probe, CheckReport, IneqParams,
    InequalityId, SamplingPlan,
};
use bfcalc_core::linalg::{expm, CMatrix};
use bfcalc_core::quad::log_grid;
use bfcalc_core::sample::{
    nonnormal_fixtures, random_bernstein, random_normal_sectorial, SampleRng,
};
use bfcalc_core::subordination::{
    semigroup_property_check, t1_diagnostic, SubordinatorFamily,
};
use num_complex::Complex64;

use crate::report::{Check, SuiteReport, Table};
use crate::spec::{build_matrix, Config};
use crate::AppError;

pub const SUITES: [&str; 7] = [
    "scalar-inequalities",
    "contour-bounds",
    "calculi-compat",
    "resolvent-identity",
    "sectoriality-constants",
    "subordination",
    "cm-appendix",
];

pub fn run_suite(
    suite: &str,
    seed: u64,
    tol_scale: f64,
    config: &Config,
) -> Result<SuiteReport, AppError> {
    if !(tol_scale > 0.0 && tol_scale.is_finite()) {
        return Err(AppError::spec("tol-scale must be positive and finite"));
    }
    let mut rep = SuiteReport::new(suite, seed, tol_scale, config.clone());
    let mut rng = SampleRng::new(seed);
    match suite {
        "scalar-inequalities" => scalar_inequalities(&mut rep, &mut rng, config)?,
        "contour-bounds" => contour_bounds(&mut rep, &mut rng, config)?,
        "calculi-compat" => calculi_compat(&mut rep, &mut rng, config)?,
        "resolvent-identity" => resolvent_identity(&mut rep, &mut rng, config)?,
        "sectoriality-constants" => sectoriality_constants(&mut rep, &mut rng, config)?,
        "subordination" => subordination(&mut rep, &mut rng, config)?,
        "cm-appendix" => cm_appendix(&mut rep)?,
        _ => {
            return Err(AppError::spec(&format!(
                "unknown suite '{suite}'; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    rep.finish();
    Ok(rep)
}

/// relative slack matching the core convention, widened by tol_scale
fn slack(scale: f64, tol_scale: f64) -> f64 {
    tol_scale * f64::max(1e-9, 1e-6 * scale)
}

/// Re-judge a core report under the report's tol_scale and convert it.
fn adopt(rep: &SuiteReport, core: &CheckReport) -> Check {
    let mut c = Check::from_core(core);
    c.pass = core.pass || core.worst_margin >= -slack(core.worst_scale, rep.tol_scale);
    c
}

/// Fold per-draw checks sharing an id into one row: samples summed, the
/// worst draw (by margin relative to its slack) kept, pass only if all pass.
fn aggregate(parts: Vec<Check>, tol_scale: f64) -> Check {
    let samples: usize = parts.iter().map(|c| c.samples).sum();
    let all_pass = parts.iter().all(|c| c.pass);
    let worst = parts
        .into_iter()
        .min_by(|a, b| {
            let ma = a.worst_margin / slack(a.worst_scale, tol_scale);
            let mb = b.worst_margin / slack(b.worst_scale, tol_scale);
            ma.partial_cmp(&mb).unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("aggregate of at least one check");
    Check {
        samples,
        pass: all_pass,
        ..worst
    }
}

fn draw_psi(rng: &mut SampleRng, config: &Config) -> Result<BernsteinFn, AppError> {
    match &config.psi {
        Some(spec) => spec.build(),
        None => Ok(random_bernstein(rng)),
    }
}

fn draw_matrix(
    rng: &mut SampleRng,
    config: &Config,
    dim_hi: usize,
    half_angle: f64,
) -> Result<SectorialMatrix, AppError> {
    let a = match &config.matrix {
        Some(rows) => build_matrix(rows)?,
        None => {
            let dim = 2 + rng.index(dim_hi - 1);
            random_normal_sectorial(rng, dim, half_angle, 1e-1, 1e1)
        }
    };
    Ok(make_sectorial(a)?)
}

fn scalar_inequalities(
    rep: &mut SuiteReport,
    rng: &mut SampleRng,
    config: &Config,
) -> Result<(), AppError> {
    let triples = if config.psi.is_some() {
        1
    } else {
        config.triples.unwrap_or(40)
    };
    let points = config.points.unwrap_or(512);
    let angular = 17usize;
    let radial = usize::max(points / angular, 4);
    let plan = SamplingPlan::with_budget(radial, angular);
    let params = IneqParams::default();

    let mut per_id: Vec<Vec<Check>> = vec![Vec::new(); InequalityId::ALL.len()];
    for _ in 0..triples {
        let psi = draw_psi(rng, config)?;
        for (k, id) in InequalityId::ALL.iter().enumerate() {
            let core = check_inequality(*id, &psi, &params, &plan)?;
            per_id[k].push(adopt(rep, &core));
        }
    }
    for parts in per_id {
        rep.push(aggregate(parts, rep.tol_scale));
    }

    // homogeneity profile of the model square root against e^{i alpha theta}
    let alpha = 0.5;
    let thetas = [-1.2, -0.6, 0.0, 0.6, 1.2];
    let radii = log_grid(1e-2, 1e2, 9);
    let rows = fujita_ratio_probe(&BernsteinFn::Power { alpha }, alpha, &thetas, &radii)?;
    rep.tables.insert(
        "ratio-table".to_string(),
        Table {
            columns: vec![
                "r".to_string(),
                "theta".to_string(),
                "re_ratio".to_string(),
                "im_ratio".to_string(),
                "deviation".to_string(),
            ],
            rows: rows
                .iter()
                .map(|r| vec![r.r, r.theta, r.ratio.re, r.ratio.im, r.deviation])
                .collect(),
        },
    );
    Ok(())
}

fn contour_bounds(
    rep: &mut SuiteReport,
    rng: &mut SampleRng,
    config: &Config,
) -> Result<(), AppError> {
    let draws = config.draws.unwrap_or(50);
    let mut parts = Vec::with_capacity(draws);
    let mut rows = Vec::with_capacity(draws);
    for _ in 0..draws {
        let psi = draw_psi(rng, config)?;
        let omega = rng.range(FRAC_PI_2 + 0.05, PI - 0.1);
        let beta = rng.range(0.02, 0.9 * (PI - omega));
        let z = Complex64::from_polar(
            rng.log_range(1e-2, 1e2),
            rng.range(-0.9 * omega, 0.9 * omega),
        );
        let r = contour_bound_check(&psi, z, omega, beta)?;
        rows.push(vec![z.norm(), r.integral, r.bound]);
        let margin = r.bound - r.integral;
        let scale = f64::max(r.integral, r.bound);
        let mut c = Check::from_residual("CONTOUR", 1, r.integral, r.bound);
        c.worst_margin = margin;
        c.worst_scale = scale;
        c.pass = r.pass || margin >= -slack(scale, rep.tol_scale);
        c.extra.insert("log_halfwidth".to_string(), r.log_halfwidth);
        parts.push(c);
    }
    rep.push(aggregate(parts, rep.tol_scale));
    rep.tables.insert(
        "margin-vs-|z|".to_string(),
        Table {
            columns: vec![
                "abs_z".to_string(),
                "integral".to_string(),
                "bound".to_string(),
            ],
            rows,
        },
    );
    Ok(())
}

fn rel_residual(got: &CMatrix, want: &CMatrix) -> f64 {
    got.sub(want).spectral_norm() / (1.0 + want.spectral_norm())
}

fn calculi_compat(
    rep: &mut SuiteReport,
    rng: &mut SampleRng,
    config: &Config,
) -> Result<(), AppError> {
    let matrices = config.matrices.unwrap_or(30);
    let sqrt_cbf = StieltjesCbf::power(0.5)?;
    let log_cbf = StieltjesCbf::log1p();
    let mut worst_hirsch_eigen = 0.0f64;
    let mut worst_levy_eigen = 0.0f64;
    let mut worst_hirsch_levy = 0.0f64;
    for _ in 0..matrices {
        let am = draw_matrix(rng, config, 8, FRAC_PI_3)?;
        // square root, three routes
        let h = hirsch_apply(&sqrt_cbf, &am)?;
        let l = levy_apply(&BernsteinFn::Power { alpha: 0.5 }, &am)?;
        let mut f = |x: Complex64| Ok(x.sqrt());
        let e = eigen_oracle(&mut f, am.matrix())?;
        worst_hirsch_eigen = worst_hirsch_eigen.max(rel_residual(&h, &e));
        worst_levy_eigen = worst_levy_eigen.max(rel_residual(&l, &e));
        worst_hirsch_levy = worst_hirsch_levy.max(rel_residual(&h, &l));
        // log(1 + z), three routes
        let h = hirsch_apply(&log_cbf, &am)?;
        let l = levy_apply(&BernsteinFn::Log1p, &am)?;
        let mut f = |x: Complex64| Ok((Complex64::new(1.0, 0.0) + x).ln());
        let e = eigen_oracle(&mut f, am.matrix())?;
        worst_hirsch_eigen = worst_hirsch_eigen.max(rel_residual(&h, &e));
        worst_levy_eigen = worst_levy_eigen.max(rel_residual(&l, &e));
        worst_hirsch_levy = worst_hirsch_levy.max(rel_residual(&h, &l));
        // bounded generator route
        let l = levy_apply(
            &BernsteinFn::OneMinusExp {
                scale: 1.0,
                rate: 1.0,
            },
            &am,
        )?;
        let mut f = |x: Complex64| Ok(Complex64::new(1.0, 0.0) - (-x).exp());
        let e = eigen_oracle(&mut f, am.matrix())?;
        worst_levy_eigen = worst_levy_eigen.max(rel_residual(&l, &e));
    }
    let tol = 1e-6 * rep.tol_scale;
    rep.push(Check::from_residual(
        "HIRSCH-VS-EIGEN",
        matrices * 2,
        worst_hirsch_eigen,
        tol,
    ));
    rep.push(Check::from_residual(
        "LEVY-VS-EIGEN",
        matrices * 3,
        worst_levy_eigen,
        tol,
    ));
    rep.push(Check::from_residual(
        "HIRSCH-VS-LEVY",
        matrices * 2,
        worst_hirsch_levy,
        tol,
    ));
    Ok(())
}

fn resolvent_identity(
    rep: &mut SuiteReport,
    rng: &mut SampleRng,
    config: &Config,
) -> Result<(), AppError> {
    let draws = config.draws.unwrap_or(30);
    let tol = 1e-5 * rep.tol_scale;
    let mut worst = 0.0f64;
    let mut used = 0usize;
    let mut skipped = 0usize;
    for _ in 0..draws {
        let psi = draw_psi(rng, config)?;
        let am = draw_matrix(rng, config, 8, FRAC_PI_3)?;
        let beta = 0.5 * (am.omega_hat() + 0.4 * PI);
        for _ in 0..8 {
            let z = Complex64::from_polar(
                rng.log_range(1e-1, 1e1),
                rng.range(-0.54 * PI, 0.54 * PI),
            );
            // stay away from the poles of (z + psi(A))^{-1}
            let mut near_pole = false;
            for &l in am.eigenvalues() {
                let v = psi.eval(l)?;
                if (z + v).norm() < 0.1 * (1.0 + z.norm()) {
                    near_pole = true;
                }
            }
            if near_pole {
                skipped += 1;
                continue;
            }
            let res = resolvent_identity_residual(&psi, &am, z, beta)?;
            worst = worst.max(res);
            used += 1;
        }
    }
    rep.push(
        Check::from_residual("RESOLVENT-IDENTITY", used, worst, tol)
            .with_extra("skipped", skipped as f64),
    );

    // upper-triangular fixtures exercise the non-normal path
    let psi = BernsteinFn::OneMinusExp {
        scale: 1.0,
        rate: 1.0,
    };
    let mut worst_fx = 0.0f64;
    let mut n_fx = 0usize;
    for a in nonnormal_fixtures() {
        let am = make_sectorial(a)?;
        let beta = 0.2 * PI;
        for z in [
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, FRAC_PI_3),
        ] {
            let res = resolvent_identity_residual(&psi, &am, z, beta)?;
            worst_fx = worst_fx.max(res);
            n_fx += 1;
        }
    }
    rep.push(Check::from_residual(
        "RESOLVENT-IDENTITY-FIXTURES",
        n_fx,
        worst_fx,
        tol,
    ));
    Ok(())
}

fn sectoriality_constants(
    rep: &mut SuiteReport,
    rng: &mut SampleRng,
    config: &Config,
) -> Result<(), AppError> {
    let matrices = config.matrices.unwrap_or(20);
    let ids = ["SUPG", "FRPOW1", "FPSI", "MES0", "AEST", "AESA"];
    let mut per_id: Vec<Vec<Check>> = vec![Vec::new(); ids.len()];
    let mut kato_parts: Vec<Check> = Vec::new();
    let kato_rs = [0.25, 0.5, 0.75];
    for k in 0..matrices {
        let psi = draw_psi(rng, config)?;
        // half-angle kept small enough that every parameter set below is
        // admissible for the matrix
        let am = draw_matrix(rng, config, 6, 0.15 * PI)?;
        let alpha = am.omega_hat().max(1e-3);
        for (i, id) in ids.iter().enumerate() {
            let params = match *id {
                "MES0" => SuiteParams {
                    q: 2.5,
                    gamma: 0.45 * (PI - 2.5 * alpha),
                },
                "AEST" => SuiteParams {
                    q: 2.5,
                    gamma: 0.3 * PI,
                },
                "AESA" => SuiteParams {
                    q: 2.5,
                    gamma: 0.55 * PI,
                },
                _ => SuiteParams::default(),
            };
            let core = bound_suite(id, &psi, &am, &params)?;
            per_id[i].push(adopt(rep, &core));
        }
        let r = kato_rs[k % kato_rs.len()];
        let gamma = 0.8 * (1.0 - r) * PI;
        let z = Complex64::from_polar(
            rng.log_range(1e-1, 1e1),
            rng.range(-0.9 * gamma, 0.9 * gamma),
        );
        let kr = kato_fracpow_resolvent(&am, r, z, gamma)?;
        let mut c = Check::from_residual("KATO", 1, kr.norm, kr.bound);
        c.worst_margin = kr.bound - kr.norm;
        c.worst_scale = kr.bound;
        c.pass = kr.pass || c.worst_margin >= -slack(kr.bound, rep.tol_scale);
        c.extra.insert("r".to_string(), r);
        kato_parts.push(c);
    }
    for parts in per_id {
        rep.push(aggregate(parts, rep.tol_scale));
    }
    rep.push(aggregate(kato_parts, rep.tol_scale));
    Ok(())
}

fn subordination(
    rep: &mut SuiteReport,
    rng: &mut SampleRng,
    config: &Config,
) -> Result<(), AppError> {
    let families: Vec<SubordinatorFamily> = match &config.family {
        Some(f) => vec![f.build()?],
        None => vec![
            SubordinatorFamily::Gamma,
            SubordinatorFamily::StableHalf,
            SubordinatorFamily::Poisson { rate: 1.0 },
        ],
    };
    let zs = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 1.0),
        Complex64::new(0.5, -0.5),
    ];

    // transform matches exp(-t psi) on the grid
    let mut worst_lap = 0.0f64;
    let mut n_lap = 0usize;
    let mut worst_mass = 0.0f64;
    for fam in &families {
        let psi = fam.psi();
        for t in [0.5, 1.0, 2.0] {
            for &z in &zs {
                let got = fam.laplace(t, z)?;
                let want = (-t * psi.eval(z)?).exp();
                worst_lap = worst_lap.max((got - want).norm());
                n_lap += 1;
            }
        }
        for t in [0.25, 1.0, 3.0] {
            worst_mass = worst_mass.max((fam.mass(t)? - 1.0).abs());
        }
    }
    rep.push(Check::from_residual(
        "LAPLACE",
        n_lap,
        worst_lap,
        1e-7 * rep.tol_scale,
    ));
    rep.push(Check::from_residual(
        "MASS",
        families.len() * 3,
        worst_mass,
        1e-8 * rep.tol_scale,
    ));

    // matrix subordination against the generator exponential
    let a = random_normal_sectorial(rng, 3, FRAC_PI_3, 0.3, 3.0);
    let am = make_sectorial(a)?;
    let t = 0.8;
    let mut worst_sub = 0.0f64;
    for fam in &families {
        let b = levy_apply(&fam.psi(), &am)?;
        let want = expm(&b.scale(Complex64::new(-t, 0.0)));
        let got = fam.subordinate_matrix(&am, t)?;
        worst_sub = worst_sub.max(rel_residual(&got, &want));
    }
    rep.push(Check::from_residual(
        "SUBORDINATE",
        families.len(),
        worst_sub,
        1e-6 * rep.tol_scale,
    ));

    if families
        .iter()
        .any(|f| matches!(f, SubordinatorFamily::Gamma))
    {
        // closed-form oracle: the transform of the unit-rate gamma flow
        let a = random_normal_sectorial(rng, 3, 0.25 * PI, 0.5, 2.0);
        let am = make_sectorial(a)?;
        let t = 1.5;
        let got = SubordinatorFamily::Gamma.subordinate_matrix(&am, t)?;
        let mut f = |l: Complex64| Ok((Complex64::new(1.0, 0.0) + l).powf(-t));
        let want = eigen_oracle(&mut f, am.matrix())?;
        rep.push(Check::from_residual(
            "GAMMA-EIGEN",
            1,
            rel_residual(&got, &want),
            1e-8 * rep.tol_scale,
        ));
    }

    let mut sg_parts = Vec::new();
    for fam in &families {
        let core = semigroup_property_check(fam, 0.7, 0.9, &zs)?;
        sg_parts.push(adopt(rep, &core));
    }
    rep.push(aggregate(sg_parts, rep.tol_scale));

    // small-time derivative products
    for fam in &families {
        match fam {
            SubordinatorFamily::Gamma => {
                let rows = t1_diagnostic(fam, 8)?;
                let margin = rows
                    .iter()
                    .map(|&(_, v)| f64::min(v, 2.0 - v))
                    .fold(f64::INFINITY, f64::min);
                let mut c = Check::from_residual("T1-GAMMA", rows.len(), -margin, 0.0);
                c.worst_margin = margin;
                c.pass = margin > 0.0 && rows.last().unwrap().1 > 0.2;
                rep.push(c);
            }
            SubordinatorFamily::StableHalf => {
                let rows = t1_diagnostic(fam, 8)?;
                let v0 = rows[0].1;
                let dev = rows
                    .iter()
                    .map(|&(_, v)| (v - v0).abs())
                    .fold(0.0, f64::max);
                rep.push(Check::from_residual(
                    "T1-STABLE",
                    rows.len(),
                    dev,
                    1e-6 * rep.tol_scale,
                ));
            }
            SubordinatorFamily::Poisson { .. } => {
                let rows = t1_diagnostic(fam, 8)?;
                let mono = rows
                    .windows(2)
                    .map(|w| w[0].1 - w[1].1)
                    .fold(f64::INFINITY, f64::min);
                let mut c = Check::from_residual("T1-POISSON", rows.len(), -mono, 1e-12);
                c.worst_margin = mono;
                c.pass = mono >= -1e-12 && rows.last().unwrap().1 < 0.01;
                rep.push(c);
            }
            SubordinatorFamily::Composed { .. } => {}
        }
    }

    if families
        .iter()
        .any(|f| matches!(f, SubordinatorFamily::Gamma))
    {
        let t = 0.5;
        let rows: Result<Vec<Vec<f64>>, AppError> = log_grid(1e-3, 10.0, 40)
            .into_iter()
            .map(|s| {
                Ok(vec![
                    s,
                    SubordinatorFamily::Gamma.density(t, s).map_err(AppError::from)?,
                ])
            })
            .collect();
        rep.tables.insert(
            "density-profile".to_string(),
            Table {
                columns: vec!["s".to_string(), "density".to_string()],
                rows: rows?,
            },
        );
    }
    Ok(())
}

fn nan_guard(v: Result<Complex64, bfcalc_core::bernstein::BernsteinError>) -> Complex64 {
    v.unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

fn cm_appendix(rep: &mut SuiteReport) -> Result<(), AppError> {
    let grid = log_grid(1e-2, 1e2, 16);
    let orders = 8;
    let tol = 1e-9 * rep.tol_scale;
    let psis: [(&str, BernsteinFn); 2] = [
        ("LOG1P", BernsteinFn::Log1p),
        (
            "EXP",
            BernsteinFn::OneMinusExp {
                scale: 1.0,
                rate: 1.0,
            },
        ),
    ];

    let push_case = |rep: &mut SuiteReport,
                         id: String,
                         f: &mut dyn FnMut(Complex64) -> Complex64|
     -> Result<(), AppError> {
        let r = cm_test(f, orders, &grid, tol)?;
        let mut c = Check::from_residual(&id, r.grid_len * (r.orders + 1), 0.0, tol);
        c.worst_margin = r.worst_relative_margin;
        c.worst_scale = 1.0;
        c.pass = matches!(r.verdict, CmVerdict::Consistent);
        if let CmVerdict::Violated { x, order, value } = r.verdict {
            c.extra.insert("violated_x".to_string(), x);
            c.extra.insert("violated_order".to_string(), order as f64);
            c.extra.insert("violated_value".to_string(), value);
        }
        rep.push(c);
        Ok(())
    };

    // normalized composite powers (psi(z^a) / z^a)^b
    for (name, psi) in &psis {
        for &alpha in &[0.3, 0.5] {
            let mut betas = vec![1.0];
            let b2: f64 = 1.0 / alpha - 1.0;
            if (b2 - 1.0).abs() > 1e-12 {
                betas.push(b2);
            }
            for beta in betas {
                let mut f = |z: Complex64| {
                    let w = z.powf(alpha);
                    (nan_guard(psi.eval(w)) / w).powf(beta)
                };
                push_case(
                    rep,
                    format!("PRELP-{name}-A{alpha}-B{beta:.4}"),
                    &mut f,
                )?;
            }
        }
    }

    // derivative of the composite power z -> (psi(z^a))^(1/a)
    for (name, psi) in &psis {
        for &alpha in &[0.3, 0.5] {
            let mut f = |z: Complex64| {
                let w = z.powf(alpha);
                let d = nan_guard(psi.derivative(w, 1));
                d * (nan_guard(psi.eval(w)) / w).powf(1.0 / alpha - 1.0)
            };
            push_case(rep, format!("GENG-{name}-A{alpha}"), &mut f)?;
        }
    }

    // rational model psi0 = 1 - 1/(1+z)^2, where the composite-power
    // derivative stays completely monotone over the whole alpha range
    for &alpha in &[0.3, 0.7, 0.9] {
        let mut f = |z: Complex64| {
            let w = z.powf(alpha);
            let one = Complex64::new(1.0, 0.0);
            let psi0 = w * (w + 2.0) / ((one + w) * (one + w));
            z.powf(alpha - 1.0) * 2.0 / (one + w).powf(3.0) * psi0.powf(1.0 / alpha - 1.0)
        };
        push_case(rep, format!("SPECF-A{alpha}"), &mut f)?;
    }
    Ok(())
}
