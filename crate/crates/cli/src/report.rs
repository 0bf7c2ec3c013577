//! Report rendering. All output is deterministic: no timestamps, fixed
//! column order, scientific notation with 16 significant digits, and
//! JSON documents versioned with a top-level `"schema": 1` field.

use fockstar::coherent::Family;
use fockstar::star::ValidationReport;
use num_complex::Complex64;
use serde_json::json;
use std::io::Write as _;
use std::path::PathBuf;

pub fn family_label(family: Family) -> &'static str {
    match family {
        Family::Gk => "gk",
        Family::Pk => "pk",
    }
}

fn sci(x: f64) -> String {
    format!("{x:.15e}")
}

/// Write to the given path, or to stdout when no path is given.
pub fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

/// Validation report rows under the fixed column set. With several reports
/// (one per family) the row blocks follow the report order after a single
/// header.
pub fn validation_csv(reports: &[ValidationReport]) -> String {
    let mut s =
        String::from("identity_name,re(point),im(point),paper_residual,corrected_residual,status\n");
    for report in reports {
        for e in &report.entries {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e.identity_name,
                sci(e.point.re),
                sci(e.point.im),
                sci(e.paper_residual),
                sci(e.corrected_residual),
                e.status
            ));
        }
    }
    s
}

pub fn validation_json(reports: &[ValidationReport]) -> String {
    let rendered: Vec<_> = reports
        .iter()
        .map(|r| {
            json!({
                "family": family_label(r.family),
                "spectrum": {"a": r.params.a(), "b": r.params.b()},
                "dim": r.dim,
                "tolerance": r.tolerance,
                "fail_count": r.fail_count(),
                "corrected_count": r.corrected_count(),
                "entries": r.entries.iter().map(|e| json!({
                    "identity_name": e.identity_name,
                    "point": {"re": e.point.re, "im": e.point.im},
                    "paper_residual": e.paper_residual,
                    "corrected_residual": e.corrected_residual,
                    "status": e.status.to_string(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    finish(json!({"schema": 1, "kind": "validation", "reports": rendered}))
}

pub fn resolution_csv(rows: &[(Family, usize, f64)]) -> String {
    let mut s = String::from("family,n,residual\n");
    for &(family, n, residual) in rows {
        s.push_str(&format!("{},{n},{}\n", family_label(family), sci(residual)));
    }
    s
}

pub fn resolution_json(rows: &[(Family, usize, f64)]) -> String {
    let rendered: Vec<_> = rows
        .iter()
        .map(|&(family, n, residual)| {
            json!({"family": family_label(family), "n": n, "residual": residual})
        })
        .collect();
    finish(json!({"schema": 1, "kind": "resolution", "rows": rendered}))
}

pub fn table_csv(symbol: &str, l: usize, rows: &[(Complex64, f64)]) -> String {
    let mut s = String::from("symbol,l,re(point),im(point),value\n");
    for &(point, value) in rows {
        s.push_str(&format!(
            "{symbol},{l},{},{},{}\n",
            sci(point.re),
            sci(point.im),
            sci(value)
        ));
    }
    s
}

pub fn table_json(symbol: &str, l: usize, rows: &[(Complex64, f64)]) -> String {
    let rendered: Vec<_> = rows
        .iter()
        .map(|&(point, value)| {
            json!({"point": {"re": point.re, "im": point.im}, "value": value})
        })
        .collect();
    finish(json!({"schema": 1, "kind": "table", "symbol": symbol, "l": l, "rows": rendered}))
}

pub fn star_csv(rows: &[(Complex64, Complex64)]) -> String {
    let mut s = String::from("re(point),im(point),re(value),im(value)\n");
    for &(point, value) in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            sci(point.re),
            sci(point.im),
            sci(value.re),
            sci(value.im)
        ));
    }
    s
}

pub fn star_json(family: Family, rows: &[(Complex64, Complex64)]) -> String {
    let rendered: Vec<_> = rows
        .iter()
        .map(|&(point, value)| {
            json!({
                "point": {"re": point.re, "im": point.im},
                "value": {"re": value.re, "im": value.im},
            })
        })
        .collect();
    finish(json!({
        "schema": 1,
        "kind": "star-eval",
        "family": family_label(family),
        "rows": rendered,
    }))
}

pub fn convergence_csv(rows: &[(Family, usize, f64)]) -> String {
    let mut s = String::from("family,dim,worst_residual\n");
    for &(family, dim, worst) in rows {
        s.push_str(&format!("{},{dim},{}\n", family_label(family), sci(worst)));
    }
    s
}

pub fn convergence_json(rows: &[(Family, usize, f64)]) -> String {
    let rendered: Vec<_> = rows
        .iter()
        .map(|&(family, dim, worst)| {
            json!({"family": family_label(family), "dim": dim, "worst_residual": worst})
        })
        .collect();
    finish(json!({"schema": 1, "kind": "convergence", "rows": rendered}))
}

fn finish(doc: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&doc).expect("in-memory serialization");
    s.push('\n');
    s
}
