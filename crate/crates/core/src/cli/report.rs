use crate::error::{Error, Result};
use crate::exactalg::FinAbGroup;
use crate::report::{Check, Report};
use crate::tqft::{Amplitude, LinearMap, SerialMap};
use serde::Serialize;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct GroupEntry {
    pub label: String,
    /// Invariant factors, each dividing the next.
    pub factors: Vec<u64>,
    pub order: String,
    pub display: String,
}

/// An exact value in the cyclotomic string form, with its complex value.
#[derive(Clone, Debug, Serialize)]
pub struct ValueEntry {
    pub label: String,
    pub exact: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixEntry {
    pub label: String,
    pub map: SerialMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub label: String,
    pub millis: f64,
}

/// Everything a command computed. Apart from `timings` the contents depend
/// only on the inputs and flags.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub groups: Vec<GroupEntry>,
    pub values: Vec<ValueEntry>,
    pub matrices: Vec<MatrixEntry>,
    pub facts: Vec<Fact>,
    pub checks: Vec<Check>,
    pub timings: Vec<Timing>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    pub fn group(&mut self, label: impl Into<String>, g: &FinAbGroup) {
        self.groups.push(GroupEntry { label: label.into(), factors: g.factors().to_vec(), order: g.order().to_string(), display: g.to_string() });
    }

    pub fn value(&mut self, label: impl Into<String>, a: &Amplitude) {
        let (re, im) = a.to_complex();
        self.values.push(ValueEntry { label: label.into(), exact: a.to_string(), re, im });
    }

    pub fn matrix(&mut self, label: impl Into<String>, m: &LinearMap) {
        self.matrices.push(MatrixEntry { label: label.into(), map: m.to_serial() });
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact { key: key.into(), value: value.to_string() });
    }

    pub fn checks(&mut self, r: Report) {
        self.checks.extend(r.checks);
    }

    /// Runs `f` and records its wall time under `label`.
    pub fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let t = Instant::now();
        let out = f();
        self.timings.push(Timing { label: label.into(), millis: t.elapsed().as_secs_f64() * 1e3 });
        out
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// One row per item: `kind,label,value,detail`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Invalid(e.to_string());
        w.write_record(["kind", "label", "value", "detail"]).map_err(io)?;
        for g in &self.groups {
            w.write_record(["group", &g.label, &g.display, &g.order]).map_err(io)?;
        }
        for v in &self.values {
            w.write_record(["value", &v.label, &v.exact, &format!("{}{:+}i", v.re, v.im)]).map_err(io)?;
        }
        for m in &self.matrices {
            let rows: Vec<String> = m.map.entries.iter().map(|r| r.join("; ")).collect();
            w.write_record(["matrix", &m.label, &rows.join(" | "), &format!("{}x{}", m.map.target.len(), m.map.source.len())])
                .map_err(io)?;
        }
        for f in &self.facts {
            w.write_record(["fact", &f.key, &f.value, ""]).map_err(io)?;
        }
        for c in &self.checks {
            w.write_record(["check", &format!("{} {}", c.name, c.subject), if c.passed { "pass" } else { "fail" }, &c.detail])
                .map_err(io)?;
        }
        for t in &self.timings {
            w.write_record(["timing", &t.label, &format!("{:.3}", t.millis), "ms"]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    /// Plain text for a terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            let _ = writeln!(out, "{} = {}", g.label, g.display);
        }
        for v in &self.values {
            let approx = if v.im.abs() < 1e-12 { format!("{:.6}", v.re) } else { format!("{:.6}{:+.6}i", v.re, v.im) };
            let _ = writeln!(out, "{} = {}  ({approx})", v.label, v.exact.strip_prefix("N=1: ").unwrap_or(&v.exact));
        }
        for m in &self.matrices {
            let _ = writeln!(out, "{} : {} -> {}", m.label, m.map.source.join(", "), m.map.target.join(", "));
            for r in &m.map.entries {
                let _ = writeln!(out, "  [{}]", r.join(", "));
            }
        }
        for f in &self.facts {
            let _ = writeln!(out, "{} = {}", f.key, f.value);
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(out, "{}/{} checks passed", self.checks.len() - failed, self.checks.len());
            for c in &self.checks {
                let _ = writeln!(out, "  [{}] {} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.subject, c.detail);
            }
        }
        out
    }
}
