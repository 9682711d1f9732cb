use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::{analyze, Dimension, InvariantReport, Jdim};
use crate::calculus::Potential;
use crate::freealg::Alphabet;
use crate::{Error, Result};

/// Row of the coarse corank table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Coarse {
    A,
    D,
    E6,
    #[serde(rename = "E-other")]
    EOther,
    #[serde(rename = "unclassified")]
    Unclassified,
}

impl Coarse {
    pub fn as_str(self) -> &'static str {
        match self {
            Coarse::A => "A",
            Coarse::D => "D",
            Coarse::E6 => "E6",
            Coarse::EOther => "E-other",
            Coarse::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for Coarse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Situation {
    Flopping,
    DivisorToCurve,
    Unknown,
}

impl Situation {
    pub fn from_jdim(jdim: Jdim) -> Situation {
        match jdim {
            Jdim::Zero => Situation::Flopping,
            Jdim::One => Situation::DivisorToCurve,
            Jdim::Inconclusive => Situation::Unknown,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Situation::Flopping => "flopping",
            Situation::DivisorToCurve => "divisor-to-curve",
            Situation::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A normal-form family with its discrete parameters. `None` stands for ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `x^2 + y^n`, or `x^2` for `A_∞`.
    A(Option<u32>),
    /// `x*y^2 + x^(2m-1) + x^(2n)` with either summand dropped at ∞.
    D { n: Option<u32>, m: Option<u32> },
    /// `x^3 + x*y^3 + y^n`, or `x^3 + x*y^3` for `E_{6,∞}`.
    E6(Option<u32>),
}

fn param(p: Option<u32>) -> String {
    p.map_or_else(|| "∞".to_string(), |n| n.to_string())
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyTag::A(Some(n)) => write!(f, "A_{n}"),
            FamilyTag::A(None) => f.write_str("A_∞"),
            FamilyTag::D { n, m } => write!(f, "D_{{{},{}}}", param(n), param(m)),
            FamilyTag::E6(n) => write!(f, "E_{{6,{}}}", param(n)),
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FamilyTag {
    pub fn validate(self) -> Result<FamilyTag> {
        let bad = match self {
            FamilyTag::A(Some(n)) => n < 2,
            FamilyTag::D { n, m } => n.is_some_and(|n| n < 2) || m.is_some_and(|m| m < 2),
            FamilyTag::E6(Some(n)) => n < 4,
            _ => false,
        };
        if bad {
            return Err(Error::Parameter(format!("{self} is outside the family's range")));
        }
        Ok(self)
    }

    /// Flop families have finite parameters; their limits are divisor-to-curve.
    pub fn is_flop(self) -> bool {
        match self {
            FamilyTag::A(n) | FamilyTag::E6(n) => n.is_some(),
            FamilyTag::D { n, .. } => n.is_some(),
        }
    }

    pub fn coarse(self) -> Coarse {
        match self {
            FamilyTag::A(_) => Coarse::A,
            FamilyTag::D { .. } => Coarse::D,
            FamilyTag::E6(_) => Coarse::E6,
        }
    }

    /// The normal form over the variables `x, y`.
    pub fn normal_form(self) -> String {
        match self {
            FamilyTag::A(Some(n)) => format!("x^2 + y^{n}"),
            FamilyTag::A(None) => "x^2".into(),
            FamilyTag::D { n, m } => {
                let mut s = String::from("x*y^2");
                if let Some(m) = m {
                    s += &format!(" + x^{}", 2 * m - 1);
                }
                if let Some(n) = n {
                    s += &format!(" + x^{}", 2 * n);
                }
                s
            }
            FamilyTag::E6(Some(n)) => format!("x^3 + x*y^3 + y^{n}"),
            FamilyTag::E6(None) => "x^3 + x*y^3".into(),
        }
    }

    pub fn potential(self, cap: usize) -> Result<Potential> {
        self.validate()?;
        let xy = Alphabet::new(["x", "y"])?;
        Potential::parse(&self.normal_form(), &xy, cap)
    }

    /// Family members whose defining terms all fit under `cap`.
    pub fn within_cap(coarse: Coarse, cap: usize) -> Vec<FamilyTag> {
        let cap = cap as u32;
        let mut tags = Vec::new();
        match coarse {
            Coarse::A => {
                tags.extend((2..=cap).map(|n| FamilyTag::A(Some(n))));
                tags.push(FamilyTag::A(None));
            }
            Coarse::D => {
                let ns: Vec<Option<u32>> =
                    (2..).take_while(|n| 2 * n <= cap).map(Some).chain([None]).collect();
                let ms: Vec<Option<u32>> =
                    (2..).take_while(|m| 2 * m - 1 <= cap).map(Some).chain([None]).collect();
                for &n in &ns {
                    for &m in &ms {
                        tags.push(FamilyTag::D { n, m });
                    }
                }
            }
            Coarse::E6 => {
                tags.extend((4..=cap).map(|n| FamilyTag::E6(Some(n))));
                tags.push(FamilyTag::E6(None));
            }
            Coarse::EOther | Coarse::Unclassified => {}
        }
        tags
    }
}

type FingerprintCache = Mutex<HashMap<(FamilyTag, usize), InvariantReport>>;

fn cache() -> &'static FingerprintCache {
    static CACHE: OnceLock<FingerprintCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Invariants of a family's normal form at `cap`. Memoized across threads.
pub fn family_fingerprint(tag: FamilyTag, cap: usize) -> Result<InvariantReport> {
    tag.validate()?;
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    if let Some(hit) = cache().lock().unwrap().get(&(tag, cap)) {
        return Ok(hit.clone());
    }
    let report = analyze(&tag.potential(cap)?, cap)?.report;
    cache().lock().unwrap().insert((tag, cap), report.clone());
    Ok(report)
}

/// Coarse type from the first four coranks.
pub fn coarse_type(report: &InvariantReport) -> Coarse {
    if report.safe_degree < 4 {
        return Coarse::Unclassified;
    }
    let c = &report.coranks[..4];
    if c.iter().all(|&k| k <= 1) {
        Coarse::A
    } else if c[..3] == [2, 2, 2] && c[3] <= 2 {
        Coarse::D
    } else if c == [2, 3, 4, 4] {
        Coarse::E6
    } else if c[..2] == [2, 3] {
        Coarse::EOther
    } else {
        Coarse::Unclassified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeClass {
    pub coarse: Coarse,
    /// Families whose fingerprint is compatible with the input.
    pub candidates: Vec<FamilyTag>,
    pub situation: Situation,
}

fn dimensions_compatible(a: Dimension, b: Dimension) -> bool {
    match (a, b) {
        (Dimension::Inconclusive, _) | (_, Dimension::Inconclusive) => true,
        _ => a == b,
    }
}

fn matches(report: &InvariantReport, situation: Situation, tag: FamilyTag, fp: &InvariantReport) -> bool {
    let window = report.safe_degree.min(fp.safe_degree);
    report.coranks[..window] == fp.coranks[..window]
        && dimensions_compatible(report.dimension, fp.dimension)
        && match situation {
            Situation::Flopping => tag.is_flop(),
            Situation::DivisorToCurve => !tag.is_flop(),
            Situation::Unknown => true,
        }
}

/// Classifies an already computed report.
pub fn classify_report(report: &InvariantReport) -> Result<TypeClass> {
    let coarse = coarse_type(report);
    let situation = Situation::from_jdim(report.jdim);
    let mut candidates = Vec::new();
    for tag in FamilyTag::within_cap(coarse, report.cap) {
        let fp = family_fingerprint(tag, report.cap)?;
        if matches(report, situation, tag, &fp) {
            candidates.push(tag);
        }
    }
    Ok(TypeClass {
        coarse,
        candidates,
        situation,
    })
}

/// Coarse type, candidate families and situation of a potential in two variables.
pub fn classify(f: &Potential, cap: usize) -> Result<TypeClass> {
    check_two_variables(f.alphabet())?;
    classify_report(&analyze(f, cap)?.report)
}

fn check_two_variables(alphabet: &Arc<Alphabet>) -> Result<()> {
    match alphabet.len() {
        2 => Ok(()),
        d => Err(Error::VariableCount(d)),
    }
}
