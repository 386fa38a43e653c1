//! JSON specs for functions, matrices, and subordinator families, plus the
//! suite configuration document.

use std::sync::Arc;

use bfcalc_core::bernstein::{BernsteinFn, LevyTriple};
use bfcalc_core::linalg::CMatrix;
use bfcalc_core::measure::{RadonMeasure, Segment, SegmentDensity, Tail};
use bfcalc_core::subordination::SubordinatorFamily;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::AppError;

/// Function spec, e.g. `{"kind":"power","alpha":0.5}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FnSpec {
    Power {
        alpha: f64,
    },
    Log1p,
    OneMinusExp {
        scale: f64,
        rate: f64,
    },
    Affine {
        a: f64,
        b: f64,
    },
    Levy {
        a: f64,
        b: f64,
        #[serde(default)]
        atoms: Vec<[f64; 2]>,
        #[serde(default)]
        segments: Vec<SegmentSpec>,
        #[serde(default)]
        tails: Vec<TailSpec>,
    },
    Sum {
        parts: Vec<FnSpec>,
    },
    Compose {
        outer: Box<FnSpec>,
        inner: Box<FnSpec>,
    },
}

/// Power-weighted density piece `c (s - lower)^g` on (lower, upper].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub lower: f64,
    pub upper: f64,
    pub coeff: f64,
    pub exponent: f64,
}

/// Analytic tail `c0 s^q e^{-cs}` on [cut, inf).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailSpec {
    pub coeff: f64,
    pub power: f64,
    pub rate: f64,
    pub cut: f64,
}

impl FnSpec {
    pub fn build(&self) -> Result<BernsteinFn, AppError> {
        let f = match self {
            FnSpec::Power { alpha } => {
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(AppError::spec("alpha out of (0, 1]"));
                }
                BernsteinFn::Power { alpha: *alpha }
            }
            FnSpec::Log1p => BernsteinFn::Log1p,
            FnSpec::OneMinusExp { scale, rate } => BernsteinFn::OneMinusExp {
                scale: *scale,
                rate: *rate,
            },
            FnSpec::Affine { a, b } => BernsteinFn::Affine { a: *a, b: *b },
            FnSpec::Levy {
                a,
                b,
                atoms,
                segments,
                tails,
            } => BernsteinFn::Levy(LevyTriple {
                a: *a,
                b: *b,
                measure: Arc::new(RadonMeasure {
                    atoms: atoms.iter().map(|p| (p[0], p[1])).collect(),
                    segments: segments
                        .iter()
                        .map(|s| {
                            let c = s.coeff;
                            Segment {
                                lower: s.lower,
                                upper: s.upper,
                                density: SegmentDensity::PowerWeighted {
                                    exponent: s.exponent,
                                    smooth: Arc::new(move |_| c),
                                },
                            }
                        })
                        .collect(),
                    tails: tails
                        .iter()
                        .map(|t| Tail {
                            coeff: t.coeff,
                            power: t.power,
                            rate: t.rate,
                            cut: t.cut,
                        })
                        .collect(),
                }),
            }),
            FnSpec::Sum { parts } => {
                let built: Result<Vec<_>, _> = parts.iter().map(|p| p.build()).collect();
                BernsteinFn::Sum(built?)
            }
            FnSpec::Compose { outer, inner } => BernsteinFn::Compose {
                outer: Box::new(outer.build()?),
                inner: Box::new(inner.build()?),
            },
        };
        f.validate().map_err(|e| AppError::spec(&e.to_string()))?;
        Ok(f)
    }
}

/// Subordinator family spec, e.g. `{"family":"poisson","c":1.0}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Gamma,
    StableHalf,
    Poisson { c: f64 },
    Composed {
        outer: Box<FamilySpec>,
        inner: Box<FamilySpec>,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<SubordinatorFamily, AppError> {
        let fam = match self {
            FamilySpec::Gamma => SubordinatorFamily::Gamma,
            FamilySpec::StableHalf => SubordinatorFamily::StableHalf,
            FamilySpec::Poisson { c } => SubordinatorFamily::Poisson { rate: *c },
            FamilySpec::Composed { outer, inner } => SubordinatorFamily::Composed {
                outer: Box::new(outer.build()?),
                inner: Box::new(inner.build()?),
            },
        };
        fam.validate().map_err(|e| AppError::spec(&e.to_string()))?;
        Ok(fam)
    }
}

/// Square matrix as rows of `[re, im]` pairs.
pub type MatrixSpec = Vec<Vec<[f64; 2]>>;

pub fn build_matrix(rows: &MatrixSpec) -> Result<CMatrix, AppError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(AppError::spec("matrix must be square and nonempty"));
    }
    if n > 64 {
        return Err(AppError::spec("matrix dimension capped at 64"));
    }
    let mut m = CMatrix::zeros(n);
    for (i, row) in rows.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if !(p[0].is_finite() && p[1].is_finite()) {
                return Err(AppError::spec("matrix entries must be finite"));
            }
            m[(i, j)] = Complex64::new(p[0], p[1]);
        }
    }
    Ok(m)
}

/// Single-document suite configuration; every field optional.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// fixed Bernstein function instead of seeded random draws
    pub psi: Option<FnSpec>,
    /// fixed matrix instead of seeded random draws
    pub matrix: Option<MatrixSpec>,
    /// restrict the subordination suite to one family
    pub family: Option<FamilySpec>,
    /// random function draws per suite
    pub triples: Option<usize>,
    /// sample-point budget per scalar check
    pub points: Option<usize>,
    /// random draws for the contour suite
    pub draws: Option<usize>,
    /// random matrices per matrix suite
    pub matrices: Option<usize>,
}

impl Config {
    pub fn from_path(path: &std::path::Path) -> Result<Self, AppError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::spec(&format!("cannot read config: {e}")))?;
        serde_json::from_str(&text).map_err(|e| AppError::spec(&format!("bad config: {e}")))
    }
}
