#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use ncsing::calculus::Potential;
use ncsing::freealg::{Alphabet, NcJet, Word};
use ncsing::invariants::FamilyTag;
use ncsing::Rational;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn xy() -> Arc<Alphabet> {
    Alphabet::new(["x", "y"]).unwrap()
}

pub fn potential(text: &str, cap: usize) -> Potential {
    Potential::parse(text, &xy(), cap).unwrap()
}

pub fn terms(jet: &NcJet) -> Vec<(Vec<u8>, Rational)> {
    jet.terms().map(|(w, c)| (w.letters().to_vec(), c.clone())).collect()
}

/// Families at small parameters.
pub fn family_corpus() -> Vec<FamilyTag> {
    use FamilyTag::*;
    vec![
        A(Some(2)),
        A(Some(3)),
        A(Some(4)),
        A(Some(5)),
        A(Some(6)),
        A(None),
        D { n: Some(2), m: Some(2) },
        D { n: Some(2), m: Some(3) },
        D { n: Some(3), m: Some(2) },
        D { n: Some(3), m: Some(3) },
        D { n: Some(2), m: None },
        D { n: Some(3), m: None },
        D { n: None, m: Some(2) },
        D { n: None, m: Some(3) },
        D { n: None, m: None },
        E6(Some(4)),
        E6(Some(5)),
        E6(None),
    ]
}

/// A random potential in two variables with terms of degree `2..=max_degree`.
pub fn random_potential(seed: u64, max_degree: usize, cap: usize) -> Potential {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = xy();
    loop {
        let mut f = NcJet::zero(&a, cap);
        let count = rng.gen_range(2..=5);
        for _ in 0..count {
            let degree = rng.gen_range(2..=max_degree);
            let letters: Vec<u8> = (0..degree).map(|_| rng.gen_range(0..2)).collect();
            let c = Rational::new(
                BigInt::from(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 }),
                BigInt::from(rng.gen_range(1..=2)),
            );
            let term = NcJet::monomial(&a, cap, Word::from_letters(&letters), c);
            f = f.add(&term).unwrap();
        }
        if !f.is_zero() {
            return Potential::new(f).unwrap();
        }
    }
}
