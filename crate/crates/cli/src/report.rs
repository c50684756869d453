use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub tol: f64,
    pub certificate_eps: f64,
    pub restarts: usize,
    pub max_iters: usize,
    pub samples: usize,
    pub seed: u64,
    pub output_format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupInfo {
    pub descriptor: String,
    pub order: usize,
    pub hash: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub group: Option<GroupInfo>,
    pub results: Value,
    pub summary: Summary,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        if let Some(g) = &self.group {
            let _ = writeln!(s, "group: {} (order {}, hash {})", g.descriptor, g.order, &g.hash[..12.min(g.hash.len())]);
        }
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                match v {
                    Value::Array(items) if items.len() > 8 => {
                        let _ = writeln!(s, "{k}: [{} items]", items.len());
                    }
                    Value::Object(_) => {
                        let _ = writeln!(s, "{k}: {}", serde_json::to_string(v).unwrap_or_default());
                    }
                    _ => {
                        let _ = writeln!(s, "{k}: {v}");
                    }
                }
            }
        }
        let _ = write!(s, "summary: {} passed, {} failed", self.summary.passed, self.summary.failed);
        if let Some(gap) = self.summary.min_gap {
            let _ = write!(s, ", min gap {gap:.3e}");
        }
        s.push('\n');
        if let Some(t) = &self.timings {
            let _ = writeln!(s, "time: {:.1} ms", t.total_ms);
        }
        s
    }
}
