//! Command-line companion to `bfcalc-core`: named check suites driven by
//! seeded randomness, JSON reports that are byte-identical across runs with
//! the same inputs, and CSV extraction of the embedded plot tables.

pub mod plot;
pub mod report;
pub mod spec;
pub mod suites;

use bfcalc_core::bernstein::BernsteinError;
use bfcalc_core::calculus::CalcError;
use bfcalc_core::linalg::LinalgError;
use bfcalc_core::measure::MeasureError;
use bfcalc_core::quad::QuadError;

/// Process-level error. `Spec` maps to exit code 2 (caller mistake),
/// `Internal` to exit code 3 (a computation that should have succeeded
/// did not). Check failures are not errors; they surface as exit code 1.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Spec(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl AppError {
    pub fn spec(msg: &str) -> AppError {
        AppError::Spec(msg.to_string())
    }

    pub fn internal(msg: &str) -> AppError {
        AppError::Internal(msg.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Spec(_) => 2,
            AppError::Internal(_) => 3,
        }
    }
}

macro_rules! internal_from {
    ($t:ty) => {
        impl From<$t> for AppError {
            fn from(e: $t) -> AppError {
                AppError::Internal(e.to_string())
            }
        }
    };
}

internal_from!(CalcError);
internal_from!(BernsteinError);
internal_from!(QuadError);
internal_from!(MeasureError);
internal_from!(LinalgError);
internal_from!(std::io::Error);
