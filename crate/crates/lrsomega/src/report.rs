//! Structured run reports: every command can emit either human-readable
//! text or machine-readable JSON, and non-exact answers carry their caveat
//! labels.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Accept / Reject / Unknown / n.a.
    pub verdict: Option<String>,
    pub exit_code: i32,
    /// Soundness labels for each non-exact ingredient of the answer.
    pub provenance: Vec<String>,
    pub timing_ms: u128,
    /// Echo of the effective configuration.
    pub config: serde_json::Value,
    /// Command-specific payload.
    pub details: serde_json::Value,
}

impl RunReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(v) = &self.verdict {
            out.push_str(&format!("verdict: {v}\n"));
        }
        for p in &self.provenance {
            out.push_str(&format!("provenance: {p}\n"));
        }
        if let Some(obj) = self.details.as_object() {
            for (k, v) in obj {
                match v {
                    serde_json::Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                    other => out.push_str(&format!("{k}: {other}\n")),
                }
            }
        }
        out.push_str(&format!("elapsed: {} ms\n", self.timing_ms));
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(self).expect("report serializes") + "\n"
        } else {
            self.render_text()
        }
    }
}
