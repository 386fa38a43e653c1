//! Deterministic report documents. A report carries no timestamps or host
//! details, so runs with identical inputs produce byte-identical files.

use std::collections::BTreeMap;

use bfcalc_core::geometry::CheckReport;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spec::Config;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub tol_scale: f64,
    pub config: Config,
    pub checks: Vec<Check>,
    pub summary: Summary,
    /// numeric tables for `plot`, keyed by kind
    #[serde(default)]
    pub tables: BTreeMap<String, Table>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub samples: usize,
    pub worst_margin: f64,
    pub worst_scale: f64,
    pub worst_point: WorstPoint,
    pub constant: Option<f64>,
    pub pass: bool,
    /// free-form named scalars (bounds, residuals, skip counts)
    #[serde(default)]
    pub extra: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct WorstPoint {
    pub lambda: Option<[f64; 2]>,
    pub z: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub pass_count: usize,
    pub fail_count: usize,
    pub worst_margin: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

fn pair(c: Option<Complex64>) -> Option<[f64; 2]> {
    c.map(|v| [v.re, v.im])
}

impl Check {
    pub fn from_core(r: &CheckReport) -> Check {
        Check {
            id: r.id.to_string(),
            samples: r.samples,
            worst_margin: r.worst_margin,
            worst_scale: r.worst_scale,
            worst_point: WorstPoint {
                lambda: pair(r.worst_lambda),
                z: pair(r.worst_z),
            },
            constant: r.constant,
            pass: r.pass,
            extra: BTreeMap::new(),
        }
    }

    /// Synthetic check from a residual-vs-tolerance comparison.
    pub fn from_residual(id: &str, samples: usize, worst: f64, tol: f64) -> Check {
        let mut extra = BTreeMap::new();
        extra.insert("tolerance".to_string(), tol);
        Check {
            id: id.to_string(),
            samples,
            worst_margin: tol - worst,
            worst_scale: worst,
            worst_point: WorstPoint::default(),
            constant: None,
            pass: worst <= tol,
            extra,
        }
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Check {
        self.extra.insert(key.to_string(), value);
        self
    }
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, tol_scale: f64, config: Config) -> SuiteReport {
        SuiteReport {
            schema: "1".to_string(),
            suite: suite.to_string(),
            seed,
            tol_scale,
            config,
            checks: Vec::new(),
            summary: Summary {
                pass_count: 0,
                fail_count: 0,
                worst_margin: f64::INFINITY,
            },
            tables: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn finish(&mut self) {
        let pass = self.checks.iter().filter(|c| c.pass).count();
        self.summary = Summary {
            pass_count: pass,
            fail_count: self.checks.len() - pass,
            worst_margin: self
                .checks
                .iter()
                .map(|c| c.worst_margin)
                .fold(f64::INFINITY, f64::min),
        };
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail_count == 0 && !self.checks.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
