//! Deterministic verification transcripts.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

use crate::config::{Format, RunConfig};

/// Every certificate a transcript can cite, with its version. The version is
/// bumped whenever the meaning of a check changes.
pub const CERTIFICATES: &[(&str, u32)] = &[
    ("associativity", 1),
    ("betti-enumeration", 1),
    ("betti-golden", 1),
    ("bgg-square", 1),
    ("center", 1),
    ("chi-parity", 1),
    ("cohomology-betti", 1),
    ("cohomology-euler", 1),
    ("diagonalization", 1),
    ("discriminant", 1),
    ("even-decomposition", 1),
    ("fu-numerics", 1),
    ("group-law", 1),
    ("hilbert", 2),
    ("knorrer-identity", 1),
    ("mf-product", 1),
    ("mixed-identity", 1),
    ("raynaud", 1),
    ("smoothness", 1),
    ("strand-duality", 1),
    ("two-torsion", 1),
    ("ulrich-complex", 1),
    ("y-squared", 1),
];

pub fn certificate_version(name: &str) -> u32 {
    CERTIFICATES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| *v)
        .unwrap_or_else(|| panic!("unknown certificate {name}"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub certificate: &'static str,
    pub label: String,
    pub passed: bool,
    pub detail: Value,
}

/// A named result printed as text in text mode and embedded as JSON otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub name: String,
    pub text: String,
    pub json: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transcript {
    pub subject: String,
    pub field: String,
    pub seed: u64,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub outputs: Vec<Output>,
}

impl Transcript {
    pub fn new(subject: impl Into<String>, cfg: &RunConfig) -> Self {
        Transcript {
            subject: subject.into(),
            field: cfg.field.to_string(),
            seed: cfg.seed,
            params: BTreeMap::new(),
            checks: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn check(&mut self, certificate: &'static str, label: impl Into<String>, passed: bool, detail: Value) -> bool {
        certificate_version(certificate);
        self.checks.push(Check {
            certificate,
            label: label.into(),
            passed,
            detail,
        });
        passed
    }

    pub fn output(&mut self, name: &str, text: impl Into<String>, json: Value) {
        self.outputs.push(Output {
            name: name.to_owned(),
            text: text.into(),
            json,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Certificates cited by the checks, with versions.
    pub fn certificates(&self) -> BTreeMap<&'static str, u32> {
        self.checks
            .iter()
            .map(|c| (c.certificate, certificate_version(c.certificate)))
            .collect()
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "field": self.field,
            "seed": self.seed,
            "params": self.params,
            "certificates": self.certificates(),
            "checks": self.checks.iter().map(|c| json!({
                "certificate": c.certificate,
                "label": c.label,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "outputs": self.outputs.iter().map(|o| (o.name.clone(), o.json.clone())).collect::<BTreeMap<_, _>>(),
            "passed": self.passed(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "subject: {}", self.subject);
        let _ = writeln!(out, "field: {}", self.field);
        let _ = writeln!(out, "seed: {}", self.seed);
        for (k, v) in &self.params {
            let _ = writeln!(out, "param {k}: {}", compact(v));
        }
        let certs: Vec<String> = self.certificates().iter().map(|(n, v)| format!("{n}/v{v}")).collect();
        let _ = writeln!(out, "certificates: {}", certs.join(" "));
        for o in &self.outputs {
            let _ = writeln!(out, "--- {}", o.name);
            out.push_str(&o.text);
            if !o.text.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "[{mark}] {} {}", c.certificate, c.label);
            if !c.detail.is_null() {
                let _ = write!(out, " {}", compact(&c.detail));
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "result: {verdict} ({passed}/{} checks)", self.checks.len());
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => pretty(&self.to_json()),
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Transcript {
        let mut t = Transcript::new("demo", &RunConfig::default());
        t.param("n", 3);
        t.check("knorrer-identity", "n=0", true, json!({"size": 1}));
        t.check("mixed-identity", "n=0", false, Value::Null);
        t
    }

    #[test]
    fn certificate_names_are_sorted_and_unique() {
        assert!(CERTIFICATES.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn text_rendering_lists_checks() {
        let t = sample();
        let text = t.render_text();
        assert!(text.starts_with("subject: demo\nfield: F_10009\nseed: 0\n"));
        assert!(text.contains("[PASS] knorrer-identity n=0 {\"size\":1}\n"));
        assert!(text.contains("[FAIL] mixed-identity n=0\n"));
        assert!(text.ends_with("result: FAIL (1/2 checks)\n"));
        assert_eq!(t.exit_code(), 1);
    }

    #[test]
    fn json_embeds_field_seed_and_versions() {
        let v = sample().to_json();
        assert_eq!(v["field"], "F_10009");
        assert_eq!(v["seed"], 0);
        assert_eq!(v["certificates"]["knorrer-identity"], 1);
        assert_eq!(v["passed"], false);
    }
}
