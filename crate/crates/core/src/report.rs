//! Serializable summary of an analysis, shared by the command line and the
//! browser demo.

use std::fmt::Write;

use serde::Serialize;

use crate::invariants::{classify_report, Analysis, Dimension, Jdim, TypeClass};
use crate::stdbasis::Certificate;
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: String,
    pub vars: Vec<String>,
    pub cap: usize,
    pub generators: Vec<String>,
    pub rules: Vec<String>,
    pub certificate: Certificate,
    /// Standard words up to the cap, at most [`Report::WORD_LIMIT`] of them.
    pub standard_words: Vec<String>,
    pub coranks: Vec<u64>,
    pub safe_degree: usize,
    pub dimension: Dimension,
    pub jdim: Jdim,
    #[serde(rename = "type")]
    pub class: Option<TypeClass>,
    /// Variables whose cyclic derivative vanishes.
    pub zero_derivatives: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Report {
    pub const WORD_LIMIT: usize = 64;

    /// Builds the report, classifying when the alphabet has two letters.
    pub fn new(analysis: &Analysis) -> Result<Report> {
        let alphabet = analysis.potential.alphabet();
        let r = &analysis.report;
        let class = if alphabet.len() == 2 {
            Some(classify_report(r)?)
        } else {
            None
        };
        Ok(Report {
            input: analysis.potential.jet().to_string(),
            vars: alphabet.names().to_vec(),
            cap: r.cap,
            generators: analysis.generators.iter().map(|g| g.to_string()).collect(),
            rules: analysis.system.rules().iter().map(|r| r.format()).collect(),
            certificate: r.certificate,
            standard_words: analysis
                .staircase
                .words(r.cap, Report::WORD_LIMIT)
                .iter()
                .map(|w| w.display(alphabet).to_string())
                .collect(),
            coranks: r.coranks.clone(),
            safe_degree: r.safe_degree,
            dimension: r.dimension,
            jdim: r.jdim,
            class,
            zero_derivatives: analysis
                .zero_derivatives()
                .into_iter()
                .map(|v| alphabet.name(v).to_string())
                .collect(),
            millis: None,
        })
    }

    pub fn with_millis(mut self, millis: u64) -> Report {
        self.millis = Some(millis);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering. Timing is left out so output is reproducible.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input: {}", self.input);
        let _ = writeln!(s, "vars: {}", self.vars.join(","));
        let _ = writeln!(s, "cap: {}", self.cap);
        let _ = writeln!(s, "generators:");
        for (v, g) in self.vars.iter().zip(&self.generators) {
            let _ = writeln!(s, "  d/d{v}: {g}");
        }
        let _ = writeln!(s, "rules ({}):", self.certificate.as_str());
        for r in &self.rules {
            let _ = writeln!(s, "  {r}");
        }
        let coranks: Vec<String> = self.coranks.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "coranks: {} (exact through degree {})", coranks.join(","), self.safe_degree);
        let _ = writeln!(s, "dimension: {}", dimension_text(self.dimension));
        let _ = writeln!(s, "jdim: {}", self.jdim.as_str());
        if let Some(c) = &self.class {
            let names: Vec<String> = c.candidates.iter().map(|t| t.to_string()).collect();
            let _ = writeln!(s, "type: {}", c.coarse);
            let _ = writeln!(
                s,
                "candidate families: {}",
                if names.is_empty() { "none".to_string() } else { names.join(", ") }
            );
            let _ = writeln!(s, "situation: {}", c.situation);
        }
        s
    }
}

pub fn dimension_text(d: Dimension) -> String {
    match d {
        Dimension::Finite(n) => format!("finite {n}"),
        Dimension::Infinite(k) => format!("infinite, growth degree {k}"),
        Dimension::Exponential => "infinite, exponential growth".into(),
        Dimension::Inconclusive => "inconclusive".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Potential;
    use crate::freealg::Alphabet;
    use crate::invariants::analyze;

    fn report(text: &str, vars: &[&str], cap: usize) -> Report {
        let a = Alphabet::new(vars.iter().copied()).unwrap();
        let f = Potential::parse(text, &a, cap).unwrap();
        Report::new(&analyze(&f, cap).unwrap()).unwrap()
    }

    #[test]
    fn json_fields() {
        let r = report("x^4 + x*y^2", &["x", "y"], 12);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["input"], "x*y^2 + x^4");
        assert_eq!(v["vars"], serde_json::json!(["x", "y"]));
        assert_eq!(v["generators"], serde_json::json!(["y^2 + 4*x^3", "x*y + y*x"]));
        assert_eq!(v["certificate"], "exact");
        assert_eq!(v["dimension"], serde_json::json!({"kind": "finite", "value": 9}));
        assert_eq!(v["jdim"], serde_json::json!({"kind": "0"}));
        assert_eq!(v["type"]["coarse"], "D");
        assert_eq!(v["type"]["situation"], "flopping");
        assert!(v.get("millis").is_none());
        let timed: serde_json::Value =
            serde_json::from_str(&r.clone().with_millis(5).to_json()).unwrap();
        assert_eq!(timed["millis"], 5);
    }

    #[test]
    fn three_variables_have_no_type() {
        let r = report("x^2 + y^2 + z^3", &["x", "y", "z"], 6);
        assert!(r.class.is_none());
        assert!(r.to_text().contains("dimension: finite 2"));
    }

    #[test]
    fn text_lists_candidates() {
        let t = report("x^2 + y^5", &["x", "y"], 10).to_text();
        assert!(t.contains("candidate families: A_5"), "{t}");
        assert!(t.contains("situation: flopping"));
    }
}
