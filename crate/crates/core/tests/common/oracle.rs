//! Brute-force graded linear algebra for Jacobi algebras.
//!
//! Works in the finite-dimensional space of words of degree at most `cap`.
//! The ideal generated by the cyclic derivatives is obtained by closing
//! their span under left and right multiplication by letters, dropping
//! every word longer than `cap`. Shares nothing with the rewriting code.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

type Row = BTreeMap<usize, BigRational>;

pub struct Oracle {
    letters: usize,
    cap: usize,
    words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl Oracle {
    pub fn new(letters: usize, cap: usize) -> Oracle {
        // degree first, then lexicographic by letter index
        let mut words = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..cap {
            let mut next = Vec::new();
            for w in &layer {
                for a in 0..letters as u8 {
                    let mut v: Vec<u8> = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Oracle {
            letters,
            cap,
            words,
            index,
        }
    }

    /// `sum over rotations of w starting with v, first letter removed`.
    pub fn derivative(&self, f: &[(Vec<u8>, BigRational)], v: u8) -> Vec<(Vec<u8>, BigRational)> {
        let mut out: BTreeMap<Vec<u8>, BigRational> = BTreeMap::new();
        for (w, c) in f {
            for i in 0..w.len() {
                if w[i] == v {
                    let mut d = w[i + 1..].to_vec();
                    d.extend_from_slice(&w[..i]);
                    *out.entry(d).or_insert_with(BigRational::zero) += c;
                }
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn row(&self, terms: &[(Vec<u8>, BigRational)]) -> Row {
        let mut row = Row::new();
        for (w, c) in terms {
            if w.len() <= self.cap {
                *row.entry(self.index[w]).or_insert_with(BigRational::zero) += c;
            }
        }
        row.retain(|_, c| !c.is_zero());
        row
    }

    fn shift(&self, row: &Row, a: u8, left: bool) -> Row {
        let mut out = Row::new();
        for (&i, c) in row {
            let w = &self.words[i];
            if w.len() == self.cap {
                continue;
            }
            let mut v = Vec::with_capacity(w.len() + 1);
            if left {
                v.push(a);
                v.extend_from_slice(w);
            } else {
                v.extend_from_slice(w);
                v.push(a);
            }
            out.insert(self.index[&v], c.clone());
        }
        out
    }

    /// Pivot rows of an echelon basis of the ideal, keyed by lowest word.
    fn ideal(&self, generators: &[Vec<(Vec<u8>, BigRational)>]) -> BTreeMap<usize, Row> {
        let mut basis: BTreeMap<usize, Row> = BTreeMap::new();
        let mut queue: Vec<Row> = generators.iter().map(|g| self.row(g)).collect();
        while let Some(row) = queue.pop() {
            let Some(row) = reduce(row, &basis) else { continue };
            for a in 0..self.letters as u8 {
                queue.push(self.shift(&row, a, true));
                queue.push(self.shift(&row, a, false));
            }
            basis.insert(*row.keys().next().unwrap(), row);
        }
        basis
    }

    /// `dim J^m / J^(m+1)` for `m = 0..=cap`, from the generator list.
    pub fn graded_dims(&self, generators: &[Vec<(Vec<u8>, BigRational)>]) -> Vec<u64> {
        let basis = self.ideal(generators);
        let mut dims = vec![0u64; self.cap + 1];
        for w in &self.words {
            dims[w.len()] += 1;
        }
        for &pivot in basis.keys() {
            dims[self.words[pivot].len()] -= 1;
        }
        dims
    }

    /// Graded dimensions of the Jacobi algebra of `f`.
    pub fn jacobi_dims(&self, f: &[(Vec<u8>, BigRational)]) -> Vec<u64> {
        let gens: Vec<_> = (0..self.letters as u8).map(|v| self.derivative(f, v)).collect();
        self.graded_dims(&gens)
    }
}

fn reduce(mut row: Row, basis: &BTreeMap<usize, Row>) -> Option<Row> {
    loop {
        let (&lead, c) = row.iter().next()?;
        let Some(pivot) = basis.get(&lead) else {
            return Some(row);
        };
        let factor = c / &pivot[&lead];
        for (&i, p) in pivot {
            let slot = row.entry(i).or_insert_with(BigRational::zero);
            *slot -= &factor * p;
            if slot.is_zero() {
                row.remove(&i);
            }
        }
    }
}
