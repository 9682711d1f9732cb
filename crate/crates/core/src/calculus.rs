//! Cyclic derivatives, Jacobi generators, substitutions and the splitting
//! of a potential into squares plus a higher-order remainder.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::freealg::{same_alphabet, Alphabet, NcJet, Word};
use crate::linalg::{self, Matrix};
use crate::{Error, Rational, Result};

/// A jet with no constant or linear terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    jet: NcJet,
}

impl Potential {
    pub fn new(jet: NcJet) -> Result<Potential> {
        if let Some((w, _)) = jet.terms().find(|(w, _)| w.degree() < 2) {
            let what = if w.is_one() { "constant" } else { "linear" };
            return Err(Error::NotAPotential(format!(
                "has a {what} term `{}`",
                w.display(jet.alphabet())
            )));
        }
        Ok(Potential { jet })
    }

    pub fn parse(text: &str, alphabet: &Arc<Alphabet>, cap: usize) -> Result<Potential> {
        Potential::new(crate::freealg::parse_poly(text, alphabet, cap)?)
    }

    pub fn jet(&self) -> &NcJet {
        &self.jet
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.jet.alphabet()
    }

    pub fn cap(&self) -> usize {
        self.jet.cap()
    }

    /// The same potential viewed with a different truncation.
    pub fn with_cap(&self, cap: usize) -> Potential {
        Potential {
            jet: self.jet.with_cap(cap).0,
        }
    }
}

/// Cyclic derivative with respect to a named variable.
pub fn cyclic_derivative(f: &NcJet, var: &str) -> Result<NcJet> {
    let v = f.alphabet().index_of(var)?;
    Ok(cyclic_derivative_at(f, v))
}

/// Sum over rotations of each word that begin with `v`, first letter removed.
pub fn cyclic_derivative_at(f: &NcJet, v: u8) -> NcJet {
    let mut out = NcJet::zero(f.alphabet(), f.cap());
    for (w, c) in f.terms() {
        let letters = w.letters();
        for (i, _) in letters.iter().enumerate().filter(|(_, &l)| l == v) {
            out.add_term(Word::splice(&letters[i + 1..], &[], &letters[..i]), c.clone());
        }
    }
    out
}

/// `[δ_v f for v in alphabet]`, zero derivatives included in place.
pub fn jacobi_generators(f: &Potential) -> Vec<NcJet> {
    (0..f.alphabet().len())
        .map(|v| cyclic_derivative_at(f.jet(), v as u8))
        .collect()
}

/// Replaces every word by its least rotation. Cyclically equivalent
/// potentials have identical derivatives, so this preserves the Jacobi ideal.
pub fn cyclic_normal_form(f: &NcJet) -> NcJet {
    NcJet::from_terms(
        f.alphabet(),
        f.cap(),
        f.terms().map(|(w, c)| (w.cyclic_canonical(), c.clone())),
    )
}

/// Symmetrized matrix of the quadratic part: entry `(i, j)` is half the sum
/// of the coefficients of `x_i x_j` and `x_j x_i`, so that the diagonal
/// holds the coefficient of `x_i^2`.
pub fn quadratic_form(f: &NcJet) -> Vec<Vec<Rational>> {
    let d = f.alphabet().len();
    let mut q = vec![vec![Rational::zero(); d]; d];
    let half = Rational::new(1.into(), 2.into());
    for (w, c) in f.terms().filter(|(w, _)| w.degree() == 2) {
        let (i, j) = (w.letters()[0] as usize, w.letters()[1] as usize);
        if i == j {
            q[i][i] += c;
        } else {
            q[i][j] += c * &half;
            q[j][i] += c * &half;
        }
    }
    q
}

/// Number of variables minus the rank of the symmetrized quadratic part.
pub fn corank1(f: &Potential) -> usize {
    f.alphabet().len() - linalg::rank(&quadratic_form(f.jet()))
}

/// A continuous algebra endomorphism given by the image of each variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<NcJet>,
}

impl Substitution {
    pub fn new(images: Vec<NcJet>) -> Result<Substitution> {
        let first = images.first().ok_or(Error::Mismatch)?;
        let alphabet = first.alphabet().clone();
        if images.len() != alphabet.len() {
            return Err(Error::Mismatch);
        }
        for (v, image) in images.iter().enumerate() {
            if image.cap() != first.cap() || !same_alphabet(image.alphabet(), &alphabet) {
                return Err(Error::Mismatch);
            }
            if !image.coeff(&Word::one()).is_zero() {
                return Err(Error::ConstantImage(alphabet.name(v as u8).to_string()));
            }
        }
        Ok(Substitution { images })
    }

    pub fn identity(alphabet: &Arc<Alphabet>, cap: usize) -> Substitution {
        Substitution {
            images: (0..alphabet.len())
                .map(|v| NcJet::var(alphabet, cap, v as u8))
                .collect(),
        }
    }

    pub fn images(&self) -> &[NcJet] {
        &self.images
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.images[0].alphabet()
    }

    pub fn cap(&self) -> usize {
        self.images[0].cap()
    }

    /// Row `v` holds the linear coefficients of the image of variable `v`.
    pub fn linear_part(&self) -> Vec<Vec<Rational>> {
        let d = self.images.len();
        self.images
            .iter()
            .map(|image| (0..d).map(|j| image.coeff(&Word::letter(j as u8))).collect())
            .collect()
    }

    /// Invertible linear part, i.e. an automorphism of the power series ring.
    pub fn is_automorphism(&self) -> bool {
        linalg::rank(&self.linear_part()) == self.images.len()
    }

    /// The substitution "first `self`, then `next`".
    pub fn followed_by(&self, next: &Substitution) -> Result<Substitution> {
        let images = self
            .images
            .iter()
            .map(|image| substitute(image, next))
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution { images })
    }

    /// Highest degree occurring in any image.
    pub fn max_image_degree(&self) -> usize {
        self.images
            .iter()
            .filter_map(NcJet::max_degree)
            .max()
            .unwrap_or(1)
    }
}

/// Ring-homomorphic image `f(s(x_1), …, s(x_d))`, truncated at the cap.
pub fn substitute(f: &NcJet, s: &Substitution) -> Result<NcJet> {
    if f.cap() != s.cap() || !same_alphabet(f.alphabet(), s.alphabet()) {
        return Err(Error::Mismatch);
    }
    let mut memo: HashMap<Word, NcJet> = HashMap::new();
    memo.insert(Word::one(), NcJet::one(f.alphabet(), f.cap()));
    let mut out = NcJet::zero(f.alphabet(), f.cap());
    for (w, c) in f.terms() {
        let image = image_of_word(w, s, &mut memo);
        out.add_scaled(&image, c);
    }
    Ok(out)
}

fn image_of_word(w: &Word, s: &Substitution, memo: &mut HashMap<Word, NcJet>) -> NcJet {
    if let Some(image) = memo.get(w) {
        return image.clone();
    }
    let letters = w.letters();
    let (last, prefix) = letters.split_last().expect("empty word is memoized");
    let head = image_of_word(&Word::from_letters(prefix), s, memo);
    let image = head.mul_tracked(&s.images[*last as usize]).0;
    memo.insert(w.clone(), image.clone());
    image
}

/// A seeded random automorphism whose images have degree at most
/// `max_image_degree`. The linear part is rejection-sampled until invertible.
pub fn random_automorphism(
    alphabet: &Arc<Alphabet>,
    cap: usize,
    seed: u64,
    max_image_degree: usize,
) -> Result<Substitution> {
    if max_image_degree == 0 {
        return Err(Error::Parameter("max_image_degree must be at least 1".into()));
    }
    let d = alphabet.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| -> Rational {
        loop {
            let n: i64 = rng.gen_range(-3..=3);
            if n != 0 {
                return Rational::new(n.into(), rng.gen_range(1i64..=2).into());
            }
        }
    };
    let linear: Matrix = loop {
        let candidate: Matrix = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into()))
                    .collect()
            })
            .collect();
        if linalg::rank(&candidate) == d {
            break candidate;
        }
    };
    let images = linear
        .iter()
        .map(|row| {
            let mut image = NcJet::zero(alphabet, cap);
            for (j, c) in row.iter().enumerate() {
                image.add_term(Word::letter(j as u8), c.clone());
            }
            for degree in 2..=max_image_degree.min(cap) {
                for _ in 0..rng.gen_range(0..=2) {
                    let letters: Vec<u8> = (0..degree).map(|_| rng.gen_range(0..d as u8)).collect();
                    image.add_term(Word::from_letters(&letters), small(&mut rng));
                }
            }
            image
        })
        .collect();
    Substitution::new(images)
}

/// Outcome of splitting off the nondegenerate quadratic part.
#[derive(Debug, Clone)]
pub struct SplitResult {
    /// Number of split square variables.
    pub r: usize,
    /// Scalars `a_i` of the split squares `a_i x_i^2`.
    pub squares: Vec<(u8, Rational)>,
    /// Variables not split off, in alphabet order.
    pub remaining: Vec<u8>,
    /// Remainder, supported on `remaining`, of order at least 3.
    pub g: NcJet,
    /// Coordinate change with `f(change) ~ Σ a_i x_i^2 + g` cyclically, up to the cap.
    pub change: Substitution,
}

impl SplitResult {
    /// `g` as a potential over the alphabet of remaining variables only.
    pub fn reduced(&self) -> Option<Potential> {
        if self.remaining.is_empty() {
            return None;
        }
        let full = self.g.alphabet();
        let names: Vec<&str> = self.remaining.iter().map(|&v| full.name(v)).collect();
        let sub = Alphabet::new(names).expect("subset of a valid alphabet");
        let position: HashMap<u8, u8> = self
            .remaining
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u8))
            .collect();
        let jet = NcJet::from_terms(
            &sub,
            self.g.cap(),
            self.g.terms().map(|(w, c)| {
                let letters: Vec<u8> = w.letters().iter().map(|l| position[l]).collect();
                (Word::from_letters(&letters), c.clone())
            }),
        );
        Some(Potential::new(jet).expect("remainder has order at least 3"))
    }

    /// `Σ a_i x_i^2` over the full alphabet.
    pub fn square_part(&self) -> NcJet {
        NcJet::from_terms(
            self.g.alphabet(),
            self.g.cap(),
            self.squares
                .iter()
                .map(|(v, a)| (Word::from_letters(&[*v, *v]), a.clone())),
        )
    }
}

/// Splits `f` into scaled squares in `r = rank` variables plus a remainder of
/// order at least 3 in the other variables, eliminating degree by degree up
/// to the cap.
pub fn split(f: &Potential) -> Result<SplitResult> {
    let alphabet = f.alphabet().clone();
    let cap = f.cap();
    let d = alphabet.len();
    let var = |v: usize| NcJet::var(&alphabet, cap, v as u8);

    // Congruence-diagonalize the quadratic part by linear substitutions.
    let mut quadratic = f.jet().homogeneous(2);
    let mut change = Substitution::identity(&alphabet, cap);
    let mut active: Vec<usize> = (0..d).collect();
    let mut squares = Vec::new();
    loop {
        let q = quadratic_form(&quadratic);
        let pivot = active.iter().copied().find(|&p| !q[p][p].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !q[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                // x_i -> x_i + x_j puts 2 q_ij on the diagonal at j
                let mut images: Vec<NcJet> = (0..d).map(var).collect();
                images[i] = var(i).add(&var(j))?;
                let step = Substitution::new(images)?;
                quadratic = substitute(&quadratic, &step)?;
                change = change.followed_by(&step)?;
                continue;
            }
        };
        let a = q[pivot][pivot].clone();
        let mut images: Vec<NcJet> = (0..d).map(var).collect();
        for &j in active.iter().filter(|&&j| j != pivot) {
            if !q[pivot][j].is_zero() {
                images[pivot].add_term(Word::letter(j as u8), -(&q[pivot][j] / &a));
            }
        }
        let step = Substitution::new(images)?;
        quadratic = substitute(&quadratic, &step)?;
        change = change.followed_by(&step)?;
        squares.push((pivot as u8, a));
        active.retain(|&v| v != pivot);
    }
    squares.sort_by_key(|(v, _)| *v);
    let is_split = |l: u8| squares.iter().any(|(v, _)| *v == l);
    let scalar = |l: u8| squares.iter().find(|(v, _)| *v == l).map(|(_, a)| a.clone());

    let mut current = cyclic_normal_form(&substitute(f.jet(), &change)?);
    let two = Rational::from_integer(2.into());
    for degree in 3..=cap {
        let mut shifts: Vec<NcJet> = (0..d).map(|_| NcJet::zero(&alphabet, cap)).collect();
        let mut any = false;
        for (w, c) in current.terms().filter(|(w, _)| w.degree() == degree) {
            let Some(start) = w.letters().iter().position(|&l| is_split(l)) else {
                continue;
            };
            let rotated = w.rotate(start);
            let (p, rest) = rotated.letters().split_first().expect("nonempty");
            let a = scalar(*p).expect("split variable");
            shifts[*p as usize].add_term(Word::from_letters(rest), -(c / (&two * &a)));
            any = true;
        }
        if !any {
            continue;
        }
        let images = (0..d)
            .map(|v| var(v).add(&shifts[v]))
            .collect::<Result<Vec<_>>>()?;
        let step = Substitution::new(images)?;
        current = cyclic_normal_form(&substitute(&current, &step)?);
        change = change.followed_by(&step)?;
    }

    let g = NcJet::from_terms(
        &alphabet,
        cap,
        current
            .terms()
            .filter(|(w, _)| w.degree() >= 3)
            .map(|(w, c)| (w.clone(), c.clone())),
    );
    debug_assert!(g
        .terms()
        .all(|(w, _)| !w.letters().iter().any(|&l| is_split(l))));
    let remaining = (0..d as u8).filter(|&v| !is_split(v)).collect();
    Ok(SplitResult {
        r: squares.len(),
        squares,
        remaining,
        g,
        change,
    })
}
