//! Commutative polynomials, just enough to slice a hypersurface equation by
//! a coordinate hyperplane and compare the result.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::freealg::{parse_expr, same_alphabet, write_sum, Alphabet, Evaluator};
use crate::{Error, Rational, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct CommPoly {
    vars: Arc<Alphabet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl CommPoly {
    pub fn zero(vars: &Arc<Alphabet>) -> CommPoly {
        CommPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Alphabet>, c: Rational) -> CommPoly {
        let mut p = CommPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &Arc<Alphabet>, v: u8) -> CommPoly {
        let mut exps = vec![0; vars.len()];
        exps[v as usize] = 1;
        let mut p = CommPoly::zero(vars);
        p.add_term(exps, Rational::one());
        p
    }

    pub fn vars(&self) -> &Arc<Alphabet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, exps: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn check(&self, other: &CommPoly) -> Result<()> {
        if same_alphabet(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    pub fn add(&self, other: &CommPoly) -> Result<CommPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> CommPoly {
        CommPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &CommPoly) -> Result<CommPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CommPoly) -> Result<CommPoly> {
        self.check(other)?;
        let mut out = CommPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> CommPoly {
        let mut base = self.clone();
        let mut acc = CommPoly::constant(&self.vars, Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same variables");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same variables");
            }
        }
        acc
    }

    /// Restriction to the hyperplane `var = 0`.
    pub fn substitute_zero(&self, var: &str) -> Result<CommPoly> {
        let v = self.vars.index_of(var)? as usize;
        Ok(CommPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[v] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Terms by descending total degree, then descending exponents.
    fn display_order(&self) -> Vec<(&Monomial, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        terms
    }
}

struct MonomialDisplay<'a>(&'a Alphabet, &'a [u32]);

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &k) in self.1.iter().enumerate().filter(|(_, &k)| k > 0) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.0.name(v as u8))?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.display_order()
                .into_iter()
                .map(|(e, c)| (MonomialDisplay(&self.vars, e), e.iter().all(|&k| k == 0), c)),
        )
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly({self})")
    }
}

struct CommEvaluator<'a>(&'a Arc<Alphabet>);

impl Evaluator for CommEvaluator<'_> {
    type Value = CommPoly;

    fn constant(&self, q: &Rational) -> CommPoly {
        CommPoly::constant(self.0, q.clone())
    }

    fn variable(&self, name: &str, _pos: usize) -> Result<CommPoly> {
        Ok(CommPoly::var(self.0, self.0.index_of(name)?))
    }

    fn add(&self, a: CommPoly, b: CommPoly) -> CommPoly {
        a.add(&b).expect("same variables")
    }

    fn neg(&self, a: CommPoly) -> CommPoly {
        a.neg()
    }

    fn mul(&self, a: CommPoly, b: CommPoly) -> CommPoly {
        a.mul(&b).expect("same variables")
    }

    fn pow(&self, a: CommPoly, e: u32) -> CommPoly {
        a.pow(e)
    }
}

/// Parses a commutative polynomial in the given variables.
pub fn parse_comm(text: &str, vars: &Arc<Alphabet>) -> Result<CommPoly> {
    CommEvaluator(vars).eval(&parse_expr(text)?)
}
