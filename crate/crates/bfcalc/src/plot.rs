//! CSV extraction of the numeric tables a report carries for plotting.

use std::path::Path;

use crate::report::SuiteReport;
use crate::AppError;

pub fn load_report(path: &Path) -> Result<SuiteReport, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::spec(&format!("cannot read report: {e}")))?;
    let rep: SuiteReport =
        serde_json::from_str(&text).map_err(|e| AppError::spec(&format!("bad report: {e}")))?;
    if rep.schema != "1" {
        return Err(AppError::spec(&format!(
            "unsupported report schema '{}'",
            rep.schema
        )));
    }
    Ok(rep)
}

/// Render one table as CSV: a header row, then one line per data row.
pub fn table_csv(rep: &SuiteReport, kind: &str) -> Result<String, AppError> {
    let table = rep.tables.get(kind).ok_or_else(|| {
        let mut kinds: Vec<&str> = rep.tables.keys().map(|k| k.as_str()).collect();
        kinds.sort_unstable();
        AppError::spec(&format!(
            "no table '{kind}' in this report; available: {}",
            if kinds.is_empty() {
                "none".to_string()
            } else {
                kinds.join(", ")
            }
        ))
    })?;
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}
