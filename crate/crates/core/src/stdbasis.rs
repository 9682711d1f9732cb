//! Truncated local standard bases of two-sided ideals in the free power
//! series ring.
//!
//! Leading words are the *least* words in the local order, so rewriting a
//! leading word replaces it by terms of higher degree. All arithmetic is
//! carried out modulo words of degree `cap + 1`, which makes every
//! reduction terminate; whenever a rewrite step drops a nonzero term at
//! the cap the resulting system is marked [`Certificate::TruncatedAtCap`].

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashSet};
use std::hash::{Hash, Hasher};
use std::ops::Bound;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::freealg::{find_subword, same_alphabet, Alphabet, LocalOrder, NcJet, Word};
use crate::{Error, Rational, Result};

type Terms = BTreeMap<Word, Rational>;

/// A monic rewrite rule `lead + tail`, read as `lead -> -tail`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    lead: Word,
    tail: NcJet,
}

impl Rule {
    /// Normalizes a nonzero jet to a monic rule. `None` for zero.
    pub fn from_jet(p: &NcJet) -> Option<Rule> {
        let (lead, coeff) = p.leading_term()?;
        let lead = lead.clone();
        let inverse = coeff.recip();
        let mut tail = p.scale(&inverse);
        tail.add_term(lead.clone(), -Rational::one());
        Some(Rule { lead, tail })
    }

    pub fn lead(&self) -> &Word {
        &self.lead
    }

    pub fn tail(&self) -> &NcJet {
        &self.tail
    }

    pub fn is_monomial(&self) -> bool {
        self.tail.is_zero()
    }

    /// `lead + tail` as a jet.
    pub fn to_jet(&self) -> NcJet {
        let mut jet = self.tail.clone();
        jet.add_term(self.lead.clone(), Rational::one());
        jet
    }

    pub fn format(&self) -> String {
        self.to_jet().format()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// The rules form a standard basis of the untruncated ideal.
    Exact,
    /// Some step touched the cap; results are valid modulo degree `cap + 1`.
    TruncatedAtCap,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::Exact => "exact",
            Certificate::TruncatedAtCap => "truncated-at-cap",
        }
    }
}

/// An interreduced set of rules sorted by leading word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
    order: LocalOrder,
    cap: usize,
    certificate: Certificate,
}

impl RewriteSystem {
    /// The system of the zero ideal.
    pub fn empty(order: &LocalOrder, cap: usize) -> RewriteSystem {
        RewriteSystem {
            rules: Vec::new(),
            order: order.clone(),
            cap,
            certificate: Certificate::Exact,
        }
    }

    /// Interreduces the given polynomials without running completion.
    /// The certificate is never `Exact` since overlaps were not checked.
    pub fn from_polynomials(polys: &[NcJet], order: &LocalOrder, cap: usize) -> Result<RewriteSystem> {
        let mut pending = Vec::new();
        for p in polys {
            if p.cap() != cap || !same_alphabet(p.alphabet(), order.alphabet()) {
                return Err(Error::Mismatch);
            }
            pending.push(p.term_map().clone());
        }
        let (rules, _) = interreduce_tracked(pending, Vec::new(), order.alphabet(), cap, true);
        Ok(RewriteSystem {
            rules,
            order: order.clone(),
            cap,
            certificate: Certificate::TruncatedAtCap,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn leads(&self) -> Vec<Word> {
        self.rules.iter().map(|r| r.lead.clone()).collect()
    }

    pub fn order(&self) -> &LocalOrder {
        &self.order
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn max_lead_degree(&self) -> usize {
        self.rules.iter().map(|r| r.lead.degree()).max().unwrap_or(0)
    }

    fn check(&self, p: &NcJet) -> Result<()> {
        if p.cap() != self.cap || !same_alphabet(p.alphabet(), self.order.alphabet()) {
            return Err(Error::Mismatch);
        }
        Ok(())
    }
}

/// Overlap ambiguity `w = lead(first)·b = a·lead(second)` with `|a| = shift`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CriticalPair {
    pub first: usize,
    pub second: usize,
    pub shift: usize,
    pub overlap: Word,
}

/// Normal form of `p`: no support word contains a leading word.
pub fn reduce(p: &NcJet, sys: &RewriteSystem) -> Result<NcJet> {
    sys.check(p)?;
    let (terms, _) = reduce_terms(p.term_map().clone(), &sys.rules, sys.cap);
    Ok(NcJet::from_terms(p.alphabet(), sys.cap, terms))
}

/// Normal form computed by rewriting randomly chosen occurrences instead of
/// the leftmost occurrence in the least reducible word. On a confluent
/// system the result equals [`reduce`].
pub fn reduce_randomized<R: Rng>(p: &NcJet, sys: &RewriteSystem, rng: &mut R) -> Result<NcJet> {
    sys.check(p)?;
    let mut terms = p.term_map().clone();
    loop {
        let mut sites = Vec::new();
        for w in terms.keys() {
            for (ri, rule) in sys.rules.iter().enumerate() {
                let lead = rule.lead.letters();
                if lead.len() > w.degree() {
                    continue;
                }
                for pos in 0..=w.degree() - lead.len() {
                    if &w.letters()[pos..pos + lead.len()] == lead {
                        sites.push((w.clone(), ri, pos));
                    }
                }
            }
        }
        if sites.is_empty() {
            break;
        }
        let (w, ri, pos) = sites.swap_remove(rng.gen_range(0..sites.len()));
        let c = terms.remove(&w).expect("site word present");
        rewrite_at(&mut terms, &w, c, &sys.rules[ri], pos, sys.cap);
    }
    Ok(NcJet::from_terms(p.alphabet(), sys.cap, terms))
}

fn find_reducer(w: &Word, rules: &[Rule]) -> Option<(usize, usize)> {
    rules
        .iter()
        .enumerate()
        .find_map(|(i, r)| find_subword(w.letters(), r.lead.letters()).map(|pos| (i, pos)))
}

/// Replaces `c·w`, where `w = u·lead·v` with `u = w[..pos]`, by `-c·u·tail·v`.
/// The term `c·w` must already be removed. Returns `true` on truncation.
fn rewrite_at(terms: &mut Terms, w: &Word, c: Rational, rule: &Rule, pos: usize, cap: usize) -> bool {
    let letters = w.letters();
    let (u, v) = (&letters[..pos], &letters[pos + rule.lead.degree()..]);
    let extra = u.len() + v.len();
    for (tw, tc) in rule.tail.terms() {
        if tw.degree() + extra > cap {
            return true;
        }
        let word = Word::splice(u, tw.letters(), v);
        let delta = -(&c * tc);
        match terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(delta);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
    false
}

/// Reduces by always rewriting the least reducible word, using the least
/// applicable leading word at its leftmost occurrence. Rules must be sorted.
fn reduce_terms(mut terms: Terms, rules: &[Rule], cap: usize) -> (Terms, bool) {
    let mut truncated = false;
    let mut cursor: Option<Word> = None;
    loop {
        let range = match &cursor {
            None => terms.range::<Word, _>(..),
            Some(c) => terms.range::<Word, _>((Bound::Excluded(c), Bound::Unbounded)),
        };
        let found = range
            .filter_map(|(w, _)| find_reducer(w, rules).map(|site| (w.clone(), site)))
            .next();
        let Some((w, (ri, pos))) = found else { break };
        let c = terms.remove(&w).expect("found word present");
        // rewriting yields only words after `w`
        truncated |= rewrite_at(&mut terms, &w, c, &rules[ri], pos, cap);
        cursor = Some(w);
    }
    (terms, truncated)
}

/// Reduces only until the least word is irreducible.
fn top_reduce(mut terms: Terms, rules: &[Rule], cap: usize) -> (Terms, bool) {
    let mut truncated = false;
    while let Some((w, (ri, pos))) = terms
        .keys()
        .next()
        .and_then(|w| find_reducer(w, rules).map(|site| (w.clone(), site)))
    {
        let c = terms.remove(&w).expect("least word present");
        truncated |= rewrite_at(&mut terms, &w, c, &rules[ri], pos, cap);
    }
    (terms, truncated)
}

/// Adds fully reduced polynomials to a sorted rule list so that no leading
/// word contains another. Existing tails are re-reduced when `tails` is set.
fn interreduce_tracked(
    mut pending: Vec<Terms>,
    mut rules: Vec<Rule>,
    alphabet: &Arc<Alphabet>,
    cap: usize,
    tails: bool,
) -> (Vec<Rule>, bool) {
    let mut truncated = false;
    while let Some(p) = pending.pop() {
        let (nf, t) = reduce_terms(p, &rules, cap);
        truncated |= t;
        let nf = NcJet::from_terms(alphabet, cap, nf);
        let Some(new) = Rule::from_jet(&nf) else { continue };
        rules.retain(|r| {
            if r.lead.contains(&new.lead) {
                pending.push(r.to_jet().into_term_map());
                false
            } else {
                true
            }
        });
        let at = rules.partition_point(|r| r.lead < new.lead);
        rules.insert(at, new);
    }
    if tails {
        truncated |= reduce_tails(&mut rules, alphabet, cap);
    }
    (rules, truncated)
}

fn reduce_tails(rules: &mut [Rule], alphabet: &Arc<Alphabet>, cap: usize) -> bool {
    let mut truncated = false;
    for i in 0..rules.len() {
        let tail = rules[i].tail.term_map().clone();
        let (nf, t) = reduce_terms(tail, rules, cap);
        truncated |= t;
        rules[i].tail = NcJet::from_terms(alphabet, cap, nf);
    }
    truncated
}

/// Interreduces a rule list: no leading word contains another as a subword
/// and every tail is in normal form. Rules must share alphabet and cap.
pub fn interreduce(rules: Vec<Rule>) -> Vec<Rule> {
    let Some(first) = rules.first() else {
        return rules;
    };
    let cap = first.tail.cap();
    let alphabet = first.tail.alphabet().clone();
    let mut pending: Vec<Terms> = rules.iter().map(|r| r.to_jet().into_term_map()).collect();
    pending.reverse();
    interreduce_tracked(pending, Vec::new(), &alphabet, cap, true).0
}

/// All proper overlaps among leading words with overlap degree at most `cap`,
/// sorted by overlap word.
pub fn critical_pairs(sys: &RewriteSystem) -> Vec<CriticalPair> {
    pairs_of(&sys.rules, sys.cap)
}

fn pairs_of(rules: &[Rule], cap: usize) -> Vec<CriticalPair> {
    let mut pairs = all_overlaps(rules)
        .filter(|p| p.overlap.degree() <= cap)
        .collect::<Vec<_>>();
    pairs.sort_by(|a, b| {
        a.overlap
            .cmp(&b.overlap)
            .then((a.first, a.second, a.shift).cmp(&(b.first, b.second, b.shift)))
    });
    pairs
}

fn all_overlaps(rules: &[Rule]) -> impl Iterator<Item = CriticalPair> + '_ {
    (0..rules.len()).flat_map(move |first| {
        (0..rules.len()).flat_map(move |second| {
            let lf = rules[first].lead.letters();
            let ls = rules[second].lead.letters();
            (1..lf.len()).filter_map(move |shift| {
                let k = lf.len() - shift;
                (k < ls.len() && lf[shift..] == ls[..k]).then(|| CriticalPair {
                    first,
                    second,
                    shift,
                    overlap: Word::splice(lf, &ls[k..], &[]),
                })
            })
        })
    })
}

/// `a·(second rule) − (first rule)·b`; leading words cancel.
fn s_element(rules: &[Rule], pair: &CriticalPair) -> (Terms, bool) {
    let w = pair.overlap.letters();
    let first = &rules[pair.first];
    let a = &w[..pair.shift];
    let b = &w[first.lead.degree()..];
    let (left, t1) = rules[pair.second].to_jet().sandwich(a, &[]);
    let (right, t2) = first.to_jet().sandwich(&[], b);
    let mut s = left;
    s.add_scaled(&right, &-Rational::one());
    debug_assert!(s.coeff(&pair.overlap).is_zero());
    (s.into_term_map(), t1 | t2)
}

fn content_key(rule: &Rule) -> u64 {
    let mut h = DefaultHasher::new();
    rule.hash(&mut h);
    h.finish()
}

/// Completes the generators to an interreduced truncated standard basis.
///
/// Critical pairs are processed in increasing order of overlap word. The
/// certificate is `Exact` when no step ever truncated a term, and every
/// overlap of the final rules that involves a non-monomial rule lies within
/// the cap and reduced to zero exactly.
pub fn complete(generators: &[NcJet], order: &LocalOrder, cap: usize) -> Result<RewriteSystem> {
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    if generators.is_empty() {
        return Err(Error::AllZero);
    }
    let mut tainted = false;
    let mut pending = Vec::new();
    for (index, g) in generators.iter().enumerate() {
        if !same_alphabet(g.alphabet(), order.alphabet()) {
            return Err(Error::Mismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroGenerator(index));
        }
        let (g_cap, dropped) = g.with_cap(cap);
        if g_cap.is_zero() {
            let order = g.order().expect("nonzero");
            return Err(Error::CapTooSmall { index, order, cap });
        }
        if !g_cap.coeff(&Word::one()).is_zero() {
            return Err(Error::UnitGenerator { index });
        }
        tainted |= dropped;
        pending.push(g_cap.into_term_map());
    }
    pending.reverse();
    let alphabet = order.alphabet().clone();
    let (mut rules, t) = interreduce_tracked(pending, Vec::new(), &alphabet, cap, true);
    tainted |= t;

    // pairs are remembered by rule content, so a rewritten rule is paired afresh
    let mut resolved: HashSet<(u64, u64, usize)> = HashSet::new();
    let verified_cleanly = loop {
        let keys: Vec<u64> = rules.iter().map(content_key).collect();
        let key = |p: &CriticalPair| (keys[p.first], keys[p.second], p.shift);
        let next = pairs_of(&rules, cap).into_iter().find(|p| !resolved.contains(&key(p)));
        if let Some(pair) = next {
            resolved.insert(key(&pair));
            let (s, t1) = s_element(&rules, &pair);
            let (nf, t2) = reduce_terms(s, &rules, cap);
            tainted |= t1 | t2;
            if !nf.is_empty() {
                let (updated, t3) = interreduce_tracked(vec![nf], rules, &alphabet, cap, true);
                tainted |= t3;
                rules = updated;
            }
            continue;
        }
        tainted |= reduce_tails(&mut rules, &alphabet, cap);
        // every pair was resolved at some point; confirm against the final rules
        let mut clean = true;
        let mut failed = None;
        for pair in pairs_of(&rules, cap) {
            let (s, t1) = s_element(&rules, &pair);
            let (nf, t2) = top_reduce(s, &rules, cap);
            clean &= !(t1 | t2);
            if !nf.is_empty() {
                failed = Some(nf);
                break;
            }
        }
        match failed {
            None => break clean,
            Some(nf) => {
                tainted = true;
                let (updated, _) = interreduce_tracked(vec![nf], rules, &alphabet, cap, true);
                rules = updated;
            }
        }
    };

    let overlaps_in_range = all_overlaps(&rules).all(|p| {
        p.overlap.degree() <= cap || (rules[p.first].is_monomial() && rules[p.second].is_monomial())
    });
    let certificate = if !tainted && verified_cleanly && overlaps_in_range {
        Certificate::Exact
    } else {
        Certificate::TruncatedAtCap
    };
    Ok(RewriteSystem {
        rules,
        order: order.clone(),
        cap,
        certificate,
    })
}
