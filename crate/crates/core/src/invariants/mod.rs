//! Coranks, dimension and J-dimension of Jacobi algebras, computed from the
//! staircase of a truncated standard basis.
//!
//! The degree-`m` standard words descend to a basis of `J^m / J^(m+1)`, so
//! the corank sequence is read off from the staircase counts. Counts are
//! exact for every degree at most `cap - 1` whatever the certificate: the
//! truncated completion computes the ideal modulo words of degree
//! `cap + 1` and only the derivatives of terms beyond the cap are unknown.

mod classify;
mod staircase;

use serde::Serialize;

use crate::calculus::{jacobi_generators, Potential};
use crate::freealg::{LocalOrder, NcJet};
use crate::stdbasis::{complete, Certificate, RewriteSystem};
use crate::{Error, Result};

pub use classify::{
    classify, classify_report, coarse_type, family_fingerprint, Coarse, FamilyTag, Situation,
    TypeClass,
};
pub use staircase::{staircase, AvoidanceAutomaton, Growth, Staircase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Dimension {
    Finite(u64),
    /// Infinite, with standard-word counts of polynomial growth of this degree.
    Infinite(usize),
    /// Infinite with exponentially many standard words per degree.
    Exponential,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Jdim {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    Inconclusive,
}

impl Jdim {
    pub fn as_str(self) -> &'static str {
        match self {
            Jdim::Zero => "0",
            Jdim::One => "1",
            Jdim::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub cap: usize,
    /// `coranks[m - 1]` is the `m`th corank, for `m = 1..=cap`.
    pub coranks: Vec<u64>,
    /// Coranks up to this degree are exact.
    pub safe_degree: usize,
    pub dimension: Dimension,
    pub jdim: Jdim,
    pub certificate: Certificate,
}

impl InvariantReport {
    /// The `m`th corank, `m >= 1`.
    pub fn corank(&self, m: usize) -> Option<u64> {
        self.coranks.get(m.checked_sub(1)?).copied()
    }

    /// Coranks within the exact window.
    pub fn safe_coranks(&self) -> &[u64] {
        &self.coranks[..self.safe_degree.min(self.coranks.len())]
    }
}

/// Everything computed on the way to an [`InvariantReport`].
#[derive(Debug, Clone)]
pub struct Analysis {
    pub potential: Potential,
    /// One cyclic derivative per variable, zeros included.
    pub generators: Vec<NcJet>,
    pub system: RewriteSystem,
    pub staircase: Staircase,
    pub report: InvariantReport,
}

impl Analysis {
    /// Indices of variables whose derivative vanishes.
    pub fn zero_derivatives(&self) -> Vec<u8> {
        (0..self.generators.len() as u8)
            .filter(|&v| self.generators[v as usize].is_zero())
            .collect()
    }
}

/// Completes the Jacobi ideal of `f` at `cap` and derives its invariants.
pub fn analyze(f: &Potential, cap: usize) -> Result<Analysis> {
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    let f = if f.cap() == cap { f.clone() } else { f.with_cap(cap) };
    let order = LocalOrder::new(f.alphabet().clone());
    let generators = jacobi_generators(&f);
    let nonzero: Vec<NcJet> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let system = if nonzero.is_empty() {
        RewriteSystem::empty(&order, cap)
    } else {
        complete(&nonzero, &order, cap)?
    };
    let staircase = staircase::staircase(&system);
    let report = report_from(&staircase, system.certificate(), cap);
    Ok(Analysis {
        potential: f,
        generators,
        system,
        staircase,
        report,
    })
}

fn report_from(staircase: &Staircase, certificate: Certificate, cap: usize) -> InvariantReport {
    let counts = &staircase.counts;
    let safe_degree = cap.saturating_sub(1);
    let coranks = counts[1..].to_vec();

    // J^m = J^(m+1) forces J^m = 0 in a complete local quotient by a closed
    // ideal, so a vanishing exact corank proves finite dimension.
    let vanishing = (1..=safe_degree).find(|&m| counts[m] == 0);
    let dimension = match (vanishing, certificate) {
        (Some(m), _) => Dimension::Finite(counts[..m].iter().sum()),
        (None, Certificate::Exact) => match staircase.growth() {
            Growth::Finite { total } => Dimension::Finite(total),
            Growth::Polynomial { degree } => Dimension::Infinite(degree),
            Growth::Exponential => Dimension::Exponential,
        },
        (None, Certificate::TruncatedAtCap) => Dimension::Inconclusive,
    };
    let jdim = match dimension {
        Dimension::Finite(_) => Jdim::Zero,
        Dimension::Infinite(0) => Jdim::One,
        _ => Jdim::Inconclusive,
    };
    InvariantReport {
        cap,
        coranks,
        safe_degree,
        dimension,
        jdim,
        certificate,
    }
}

/// `Crk_1, …, Crk_cap` of `f`.
pub fn coranks(f: &Potential, cap: usize) -> Result<Vec<u64>> {
    Ok(analyze(f, cap)?.report.coranks)
}

pub fn dimension(f: &Potential, cap: usize) -> Result<Dimension> {
    Ok(analyze(f, cap)?.report.dimension)
}

pub fn jdim(f: &Potential, cap: usize) -> Result<Jdim> {
    Ok(analyze(f, cap)?.report.jdim)
}
