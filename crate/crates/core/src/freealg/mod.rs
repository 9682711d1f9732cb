//! Words, truncated noncommutative power series and the local term order.

mod jet;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::{Error, Result};

pub use jet::NcJet;
pub use parse::{parse_poly, parse_poly_checked};
pub(crate) use jet::write_sum;
pub(crate) use parse::{parse_expr, Evaluator};

/// An ordered list of distinct variable names.
///
/// The declared order is the order used to break ties between words of
/// equal degree: earlier names are lexicographically smaller.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Alphabet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no variables".into()));
        }
        if names.len() > u8::MAX as usize + 1 {
            return Err(Error::InvalidAlphabet("more than 256 variables".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidAlphabet(format!("`{name}` is not a valid name")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(format!("`{name}` declared twice")));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    /// Parses a comma separated list such as `x,y,z`.
    pub fn parse_list(list: &str) -> Result<Arc<Alphabet>> {
        Alphabet::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: u8) -> &str {
        &self.names[index as usize]
    }

    pub fn index_of(&self, name: &str) -> Result<u8> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A monomial of the free algebra: a finite sequence of variable indices.
///
/// The derived order on `Word` is the local order: shorter words come
/// first, and words of equal length are compared lexicographically by
/// variable index.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn one() -> Word {
        Word(SmallVec::new())
    }

    pub fn letter(index: u8) -> Word {
        Word(SmallVec::from_slice(&[index]))
    }

    pub fn from_letters(letters: &[u8]) -> Word {
        Word(SmallVec::from_slice(letters))
    }

    /// Builds a word from a string of single-character variable names,
    /// e.g. `"xyy"`. Intended for alphabets whose names are one letter.
    pub fn parse_compact(alphabet: &Alphabet, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| alphabet.index_of(c.encode_utf8(&mut [0; 4])))
            .collect::<Result<SmallVec<_>>>()
            .map(Word)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// `prefix · self[range] · suffix` without intermediate allocations.
    pub(crate) fn splice(prefix: &[u8], middle: &[u8], suffix: &[u8]) -> Word {
        let mut out = SmallVec::with_capacity(prefix.len() + middle.len() + suffix.len());
        out.extend_from_slice(prefix);
        out.extend_from_slice(middle);
        out.extend_from_slice(suffix);
        Word(out)
    }

    /// Position of the leftmost occurrence of `needle` as a subword.
    pub fn find(&self, needle: &Word) -> Option<usize> {
        find_subword(&self.0, &needle.0)
    }

    pub fn contains(&self, needle: &Word) -> bool {
        self.find(needle).is_some()
    }

    /// The rotation of `self` that starts at position `start`.
    pub fn rotate(&self, start: usize) -> Word {
        Word::splice(&self.0[start..], &[], &self.0[..start])
    }

    /// Lexicographically least rotation; representative of the cyclic class.
    pub fn cyclic_canonical(&self) -> Word {
        (0..self.degree().max(1))
            .map(|i| if self.is_one() { self.clone() } else { self.rotate(i) })
            .min()
            .unwrap_or_default()
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

pub(crate) fn find_subword(hay: &[u8], needle: &[u8]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    if needle.is_empty() {
        return Some(0);
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0.as_slice())
    }
}

/// Renders a word as `x^2*y*x`, or `1` for the empty word.
pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == letters[i] {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.alphabet.name(letters[i]))?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// The local order on words over a fixed alphabet: lower degree is more
/// leading, ties broken lexicographically in the declared variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOrder {
    alphabet: Arc<Alphabet>,
}

impl LocalOrder {
    pub fn new(alphabet: Arc<Alphabet>) -> Self {
        LocalOrder { alphabet }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// `Less` means `w1` precedes (is more leading than) `w2`.
    pub fn compare(&self, w1: &Word, w2: &Word) -> Result<Ordering> {
        let n = self.alphabet.len();
        let valid = |w: &Word| w.letters().iter().all(|&l| (l as usize) < n);
        if !valid(w1) || !valid(w2) {
            return Err(Error::Mismatch);
        }
        Ok(w1.cmp(w2))
    }

    /// Order-minimal support word of `f` and its coefficient.
    pub fn leading_term(&self, f: &NcJet) -> Result<(Word, crate::Rational)> {
        if !same_alphabet(&self.alphabet, f.alphabet()) {
            return Err(Error::Mismatch);
        }
        f.leading_term()
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or(Error::ZeroInput)
    }
}

/// Every word of degree `degree` over `n` letters, in local order.
pub fn words_of_degree(n: usize, degree: usize) -> impl Iterator<Item = Word> {
    let total = (n as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
    (0..total).map(move |mut code| {
        let mut letters = SmallVec::from_elem(0u8, degree);
        for slot in letters.iter_mut().rev() {
            *slot = (code % n as u128) as u8;
            code /= n as u128;
        }
        Word(letters)
    })
}
