//! Step-by-step reports with deterministic text and JSON rendering.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step {
    /// The library operation that produced the step.
    pub operation: String,
    pub description: String,
    pub claim: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub name: String,
    /// Topic the demo reproduces, e.g. `products/no-cloning`.
    pub anchor: String,
    pub steps: Vec<Step>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    name: &'a str,
    anchor: &'a str,
    steps: &'a [Step],
    verdict: &'a str,
}

impl Report {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            anchor: anchor.into(),
            steps: Vec::new(),
        }
    }

    pub fn step(
        &mut self,
        operation: &str,
        description: impl Into<String>,
        claim: impl Into<String>,
        passed: bool,
        witness: impl Into<String>,
    ) -> &mut Self {
        self.steps.push(Step {
            operation: operation.into(),
            description: description.into(),
            claim: claim.into(),
            passed,
            witness: witness.into(),
        });
        self
    }

    /// True iff every step passed.
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.name, self.anchor);
        for (i, s) in self.steps.iter().enumerate() {
            let mark = if s.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{:>3}. [{mark}] {}", i + 1, s.description);
            let _ = writeln!(out, "       claim: {}", s.claim);
            if !s.witness.is_empty() {
                let _ = writeln!(out, "       witness: {}", s.witness);
            }
            let _ = writeln!(out, "       via: {}", s.operation);
        }
        let passed = self.steps.iter().filter(|s| s.passed).count();
        let _ = writeln!(out, "verdict: {} ({passed}/{} steps)", self.verdict(), self.steps.len());
        out
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            name: &self.name,
            anchor: &self.anchor,
            steps: &self.steps,
            verdict: self.verdict(),
        };
        serde_json::to_string_pretty(&doc).expect("reports serialize")
    }
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// when the decimal exponent is below -4 or at least 12.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        return format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(1.0), "1");
        assert_eq!(fmt_f64(-2.0), "-2");
        assert_eq!(fmt_f64(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_f64(0.9330127018922193), "0.933012701892");
        assert_eq!(fmt_f64(1e-13), "1e-13");
        assert_eq!(fmt_f64(2.5e-16), "2.5e-16");
        assert_eq!(fmt_f64(123456789012345.0), "1.23456789012e+14");
        assert_eq!(fmt_f64(0.0001), "0.0001");
        assert_eq!(fmt_f64(9.9999999999999e-6), "1e-05");
    }

    #[test]
    fn verdict_follows_steps() {
        let mut r = Report::new("demo", "topic");
        r.step("op", "first", "holds", true, "");
        assert!(r.passed());
        r.step("op", "second", "holds", false, "x");
        assert!(!r.passed());
        assert!(r.to_text().ends_with("verdict: fail (1/2 steps)\n"));
        assert!(r.to_json().contains("\"verdict\": \"fail\""));
    }
}
