//! Machine-readable run reports with a fixed top-level schema
//! `{version, command, config, result}`.
//!
//! Reports are byte-deterministic for identical argv + config + seed:
//! field order is fixed by the structs, collections are vectors, and
//! wall time goes to stderr rather than into the document.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: Vec<String>,
    pub config: RunConfig,
    pub result: Value,
}

impl Report {
    pub fn new(command: &[String], config: &RunConfig, result: Value) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_vec(),
            config: config.clone(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

}

/// Write a report body to the output path, or stdout when none is set.
pub fn emit(body: &str, output: Option<&Path>) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(body.as_bytes())
        }
    }
}

/// Two-column CSV for plot-ready series.
pub fn csv_table(header: (&str, &str), rows: &[(f64, f64)]) -> String {
    let mut out = format!("{},{}\n", header.0, header.1);
    for (a, b) in rows {
        // integers print without a trailing .0 so n columns stay clean
        let fmt = |x: f64| {
            if x.fract() == 0.0 && x.abs() < 1e15 {
                format!("{}", x as i64)
            } else {
                format!("{x}")
            }
        };
        out.push_str(&format!("{},{}\n", fmt(*a), fmt(*b)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_and_determinism() {
        let cfg = RunConfig::default();
        let cmd = vec!["criteria".to_string(), "--kind".to_string()];
        let r1 = Report::new(&cmd, &cfg, serde_json::json!({"verdict": "holds"}));
        let r2 = Report::new(&cmd, &cfg, serde_json::json!({"verdict": "holds"}));
        assert_eq!(r1.to_json(), r2.to_json());
        let v: Value = serde_json::from_str(&r1.to_json()).unwrap();
        assert!(v.get("version").is_some());
        assert!(v.get("command").is_some());
        assert!(v.get("config").is_some());
        assert!(v.get("result").is_some());
    }

    #[test]
    fn csv_shape() {
        let table = csv_table(("n", "ratio"), &[(1.0, 2.0), (2.0, 4.5)]);
        assert_eq!(table, "n,ratio\n1,2\n2,4.5\n");
    }
}
