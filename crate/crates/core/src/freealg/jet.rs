use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{same_alphabet, Alphabet, Word};
use crate::{Error, Rational, Result};

/// A noncommutative power series truncated above degree `cap`.
///
/// Arithmetic happens modulo the words of degree `cap + 1`; no stored word
/// exceeds the cap and no stored coefficient is zero.
#[derive(Clone)]
pub struct NcJet {
    alphabet: Arc<Alphabet>,
    cap: usize,
    terms: BTreeMap<Word, Rational>,
}

impl NcJet {
    pub fn zero(alphabet: &Arc<Alphabet>, cap: usize) -> NcJet {
        NcJet {
            alphabet: alphabet.clone(),
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>, cap: usize) -> NcJet {
        NcJet::monomial(alphabet, cap, Word::one(), Rational::one())
    }

    pub fn var(alphabet: &Arc<Alphabet>, cap: usize, index: u8) -> NcJet {
        NcJet::monomial(alphabet, cap, Word::letter(index), Rational::one())
    }

    /// `coeff · word`, or zero if the word is longer than `cap`.
    pub fn monomial(alphabet: &Arc<Alphabet>, cap: usize, word: Word, coeff: Rational) -> NcJet {
        let mut jet = NcJet::zero(alphabet, cap);
        jet.add_term(word, coeff);
        jet
    }

    pub fn from_terms<I>(alphabet: &Arc<Alphabet>, cap: usize, terms: I) -> NcJet
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let mut jet = NcJet::zero(alphabet, cap);
        for (w, c) in terms {
            jet.add_term(w, c);
        }
        jet
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn cap(&self) -> usize {
        self.cap
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

    /// Support words with coefficients, in local order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> + '_ {
        self.terms.iter()
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub(crate) fn into_term_map(self) -> BTreeMap<Word, Rational> {
        self.terms
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// The order-minimal term.
    pub fn leading_term(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next()
    }

    /// Degree of the lowest-degree term.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::degree)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    /// Homogeneous component of the given degree.
    pub fn homogeneous(&self, degree: usize) -> NcJet {
        NcJet::from_terms(
            &self.alphabet,
            self.cap,
            self.terms
                .iter()
                .filter(|(w, _)| w.degree() == degree)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Re-truncates (or widens) to a new cap. Returns `true` in the second
    /// slot when nonzero terms were dropped.
    pub fn with_cap(&self, cap: usize) -> (NcJet, bool) {
        let mut dropped = false;
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| {
                let keep = w.degree() <= cap;
                dropped |= !keep;
                keep
            })
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        (
            NcJet {
                alphabet: self.alphabet.clone(),
                cap,
                terms,
            },
            dropped,
        )
    }

    /// Adds `coeff · word`; returns `false` if the word was beyond the cap.
    pub(crate) fn add_term(&mut self, word: Word, coeff: Rational) -> bool {
        if word.degree() > self.cap {
            return coeff.is_zero();
        }
        if coeff.is_zero() {
            return true;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        true
    }

    fn check_compatible(&self, other: &NcJet) -> Result<()> {
        if self.cap != other.cap || !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &NcJet) -> Result<NcJet> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &NcJet) -> Result<NcJet> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    /// `self += scale · other`, assuming compatible operands.
    pub(crate) fn add_scaled(&mut self, other: &NcJet, scale: &Rational) {
        debug_assert!(self.check_compatible(other).is_ok());
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * scale);
        }
    }

    pub fn neg(&self) -> NcJet {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> NcJet {
        if factor.is_zero() {
            return NcJet::zero(&self.alphabet, self.cap);
        }
        NcJet {
            alphabet: self.alphabet.clone(),
            cap: self.cap,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * factor)).collect(),
        }
    }

    /// Concatenation product truncated at the common cap.
    pub fn mul(&self, other: &NcJet) -> Result<NcJet> {
        self.check_compatible(other)?;
        Ok(self.mul_tracked(other).0)
    }

    /// Product plus a flag telling whether a nonzero term was truncated.
    pub(crate) fn mul_tracked(&self, other: &NcJet) -> (NcJet, bool) {
        let mut out = NcJet::zero(&self.alphabet, self.cap);
        let mut dropped = false;
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if w1.degree() + w2.degree() > self.cap {
                    // right factor is sorted by degree
                    dropped = true;
                    break;
                }
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        (out, dropped)
    }

    /// `left · self · right` for words, truncated. Flag as in `mul_tracked`.
    pub(crate) fn sandwich(&self, left: &[u8], right: &[u8]) -> (NcJet, bool) {
        let mut out = NcJet::zero(&self.alphabet, self.cap);
        let mut dropped = false;
        let extra = left.len() + right.len();
        for (w, c) in &self.terms {
            if w.degree() + extra > self.cap {
                dropped = true;
                break;
            }
            out.terms
                .insert(Word::splice(left, w.letters(), right), c.clone());
        }
        (out, dropped)
    }

    pub fn pow(&self, exponent: u32) -> NcJet {
        let mut result = NcJet::one(&self.alphabet, self.cap);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_tracked(&base).0;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_tracked(&base).0;
                if base.is_zero() && result.is_zero() {
                    break;
                }
            }
        }
        result
    }

    /// Human-readable form that parses back to the same jet.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for NcJet {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap
            && same_alphabet(&self.alphabet, &other.alphabet)
            && self.terms == other.terms
    }
}

impl Eq for NcJet {}

impl Hash for NcJet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.cap.hash(state);
        self.terms.hash(state);
    }
}

impl fmt::Debug for NcJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcJet[cap {}]({})", self.cap, self)
    }
}

pub(crate) fn write_rational(f: &mut impl fmt::Write, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Writes `sum of coeff*monomial` in the shared expression syntax.
pub(crate) fn write_sum<'a, M: fmt::Display + 'a>(
    f: &mut impl fmt::Write,
    terms: impl Iterator<Item = (M, bool, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, is_one, c) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        match (first, negative) {
            (true, false) => {}
            (true, true) => f.write_str("-")?,
            (false, false) => f.write_str(" + ")?,
            (false, true) => f.write_str(" - ")?,
        }
        first = false;
        if is_one {
            write_rational(f, &abs)?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write_rational(f, &abs)?;
            write!(f, "*{mono}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for NcJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = &*self.alphabet;
        write_sum(
            f,
            self.terms
                .iter()
                .map(|(w, c)| (w.display(alphabet), w.is_one(), c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_poly;
    use proptest::prelude::*;

    fn xy() -> Arc<Alphabet> {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn p(text: &str, cap: usize) -> NcJet {
        parse_poly(text, &xy(), cap).unwrap()
    }

    #[test]
    fn multiplication_is_noncommutative() {
        let a = xy();
        let x = NcJet::var(&a, 5, 0);
        let y = NcJet::var(&a, 5, 1);
        let xy_ = x.mul(&y).unwrap();
        assert_eq!(xy_.format(), "x*y");
        assert_ne!(xy_, y.mul(&x).unwrap());
    }

    #[test]
    fn bilinear_product() {
        let prod = p("x + y", 5).mul(&p("x - y", 5)).unwrap();
        assert_eq!(prod, p("x*x - x*y + y*x - y*y", 5));
    }

    #[test]
    fn truncation_kills_high_degree() {
        let prod = p("x", 2).mul(&p("x^2", 2)).unwrap();
        assert!(prod.is_zero());
        let (_, dropped) = p("x", 2).mul_tracked(&p("x^2", 2));
        assert!(dropped);
    }

    #[test]
    fn mismatched_caps_rejected() {
        assert_eq!(p("x", 2).mul(&p("x", 3)), Err(Error::Mismatch));
        let other = Alphabet::new(["x", "z"]).unwrap();
        assert_eq!(
            p("x", 2).add(&NcJet::var(&other, 2, 0)),
            Err(Error::Mismatch)
        );
    }

    #[test]
    fn formatting() {
        assert_eq!(p("0", 4).format(), "0");
        assert_eq!(p("-x*y + 1/2*x^2 - 3", 4).format(), "-3 + 1/2*x^2 - x*y");
        assert_eq!(p("x^3*y", 6).format(), "x^3*y");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = p("x + y^2", 9);
        let mut expected = NcJet::one(&xy(), 9);
        for _ in 0..5 {
            expected = expected.mul(&f).unwrap();
        }
        assert_eq!(f.pow(5), expected);
        assert_eq!(f.pow(0), NcJet::one(&xy(), 9));
    }

    fn arb_jet(cap: usize) -> impl Strategy<Value = NcJet> {
        prop::collection::vec(
            (prop::collection::vec(0u8..2, 0..4), -3i64..4, 1i64..3),
            0..5,
        )
        .prop_map(move |terms| {
            NcJet::from_terms(
                &xy(),
                cap,
                terms.into_iter().map(|(w, n, d)| {
                    (Word::from_letters(&w), Rational::new(n.into(), d.into()))
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn product_is_associative_and_unital(a in arb_jet(6), b in arb_jet(6), c in arb_jet(6)) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let one = NcJet::one(&xy(), 6);
            prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
            prop_assert_eq!(one.mul(&a).unwrap(), a);
        }

        #[test]
        fn product_order_is_superadditive(a in arb_jet(7), b in arb_jet(7)) {
            let prod = a.mul(&b).unwrap();
            if let (Some(oa), Some(ob), Some(op)) = (a.order(), b.order(), prod.order()) {
                prop_assert!(op >= oa + ob);
            }
        }

        #[test]
        fn format_parse_roundtrip(a in arb_jet(5)) {
            let text = a.format();
            prop_assert_eq!(parse_poly(&text, &xy(), 5).unwrap(), a);
        }
    }
}
