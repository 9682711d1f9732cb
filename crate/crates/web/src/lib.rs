//! Browser bindings. Every entry point takes plain strings and returns
//! either a result string or an error message for the page to show.

use std::sync::Arc;

use wasm_bindgen::prelude::*;

use ncsing::calculus::{cyclic_derivative, Potential};
use ncsing::commslice::parse_comm;
use ncsing::freealg::{parse_poly_checked, Alphabet};
use ncsing::invariants::analyze;
use ncsing::report::Report;

/// Largest cap the page accepts. Completion cost grows quickly with it.
pub const MAX_CAP: usize = 24;

fn alphabet(vars: &str) -> Result<Arc<Alphabet>, String> {
    Alphabet::parse_list(vars).map_err(|e| e.to_string())
}

fn check_cap(cap: usize) -> Result<(), String> {
    if cap == 0 || cap > MAX_CAP {
        return Err(format!("cap must be between 1 and {MAX_CAP}"));
    }
    Ok(())
}

/// Cyclic derivative of `expr` with respect to `wrt`.
#[wasm_bindgen]
pub fn derive(expr: &str, vars: &str, wrt: &str, cap: usize) -> Result<String, String> {
    check_cap(cap)?;
    let (jet, _) = parse_poly_checked(expr, &alphabet(vars)?, cap).map_err(|e| e.to_string())?;
    cyclic_derivative(&jet, wrt).map(|d| d.to_string()).map_err(|e| e.to_string())
}

/// Full report as JSON: standard basis, standard words, coranks, verdicts
/// and, for two variables, the classification.
#[wasm_bindgen]
pub fn analyze_potential(expr: &str, vars: &str, cap: usize) -> Result<String, String> {
    check_cap(cap)?;
    let f = Potential::parse(expr, &alphabet(vars)?, cap).map_err(|e| e.to_string())?;
    let analysis = analyze(&f, cap).map_err(|e| e.to_string())?;
    Report::new(&analysis).map(|r| r.to_json()).map_err(|e| e.to_string())
}

/// Commutative image of `expr` with `at` set to zero.
#[wasm_bindgen]
pub fn slice(expr: &str, vars: &str, at: &str) -> Result<String, String> {
    let p = parse_comm(expr, &alphabet(vars)?).map_err(|e| e.to_string())?;
    p.substitute_zero(at).map(|s| s.to_string()).map_err(|e| e.to_string())
}
