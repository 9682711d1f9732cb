//! Noncommutative singularity theory kernel.
//!
//! Truncated noncommutative power series over the rationals, cyclic
//! derivatives and Jacobi algebras of potentials, local standard bases in
//! the free power series ring, and the numerical invariants (coranks,
//! dimension, J-dimension) used to sort potentials into ADE-style families.
//!
//! ```
//! use ncsing::freealg::{parse_poly, Alphabet};
//! use ncsing::calculus::Potential;
//! use ncsing::invariants::{analyze, Dimension};
//!
//! let vars = Alphabet::new(["x", "y"]).unwrap();
//! let f = Potential::new(parse_poly("x^4 + x*y^2", &vars, 12).unwrap()).unwrap();
//! let analysis = analyze(&f, 12).unwrap();
//! assert_eq!(analysis.report.dimension, Dimension::Finite(9));
//! ```

pub mod calculus;
pub mod commslice;
mod error;
pub mod freealg;
pub mod invariants;
mod linalg;
pub mod report;
pub mod stdbasis;

pub use error::{Error, Result};

/// Exact coefficient field.
pub type Rational = num_rational::BigRational;
