//! Machine-readable check reports shared by the CLI and the test harness.

use serde::Serialize;

/// Format a float with 17 significant digits (lossless for f64).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One verification check. Numeric fields are preformatted strings so JSON
/// and CSV carry identical, lossless text.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: serde_json::Value,
    pub value: String,
    pub reference: String,
    pub rel_error: String,
    pub tolerance: String,
    pub pass: bool,
}

impl CheckReport {
    /// Check with a numeric value against a reference and tolerance.
    pub fn numeric(
        check: &str,
        params: serde_json::Value,
        value: f64,
        reference: f64,
        rel_error: f64,
        tolerance: f64,
    ) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            value: fmt_f64(value),
            reference: fmt_f64(reference),
            rel_error: fmt_f64(rel_error),
            tolerance: fmt_f64(tolerance),
            pass: rel_error.is_finite() && rel_error <= tolerance,
        }
    }

    /// Check of an exact symbolic identity: pass iff the residual vanished.
    pub fn exact(check: &str, params: serde_json::Value, pass: bool) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            value: if pass { "0".into() } else { "nonzero".into() },
            reference: "0".into(),
            rel_error: "0".into(),
            tolerance: "0".into(),
            pass,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn csv_row(&self) -> String {
        let params = self.params.to_string().replace('"', "'");
        format!(
            "{},\"{}\",{},{},{},{},{}",
            self.check, params, self.value, self.reference, self.rel_error, self.tolerance,
            self.pass
        )
    }

    pub const CSV_HEADER: &'static str =
        "check,params,value,reference,rel_error,tolerance,pass";
}

/// Render a full report in one of the CLI output formats.
pub fn render_reports(reports: &[CheckReport], header: &serde_json::Value, format: &str) -> String {
    match format {
        "csv" => {
            let mut out = String::from(CheckReport::CSV_HEADER);
            out.push('\n');
            for r in reports {
                out.push_str(&r.csv_row());
                out.push('\n');
            }
            out
        }
        "pretty" => {
            let mut out = format!("config: {header}\n");
            for r in reports {
                out.push_str(&format!(
                    "[{}] {} params={} value={} ref={} rel_err={} tol={}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check,
                    r.params,
                    r.value,
                    r.reference,
                    r.rel_error,
                    r.tolerance,
                ));
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
            out
        }
        _ => {
            let checks: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
            let doc = serde_json::json!({
                "config": header,
                "checks": checks,
                "all_pass": reports.iter().all(|r| r.pass),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("render");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_pass_fail() {
        let ok = CheckReport::numeric("x", serde_json::json!({}), 1.0, 1.0, 1e-9, 1e-6);
        assert!(ok.pass);
        let bad = CheckReport::numeric("x", serde_json::json!({}), 1.0, 2.0, 0.5, 1e-6);
        assert!(!bad.pass);
        let nan = CheckReport::numeric("x", serde_json::json!({}), f64::NAN, 1.0, f64::NAN, 1e-6);
        assert!(!nan.pass);
    }

    #[test]
    fn formats_are_deterministic() {
        let r = vec![CheckReport::exact("id", serde_json::json!({"n": 2}), true)];
        let h = serde_json::json!({"seed": 1});
        for f in ["json", "csv", "pretty"] {
            assert_eq!(render_reports(&r, &h, f), render_reports(&r, &h, f));
        }
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
    }
}
