//! Words avoiding a set of forbidden subwords, via an Aho–Corasick style
//! automaton, with exact counting and growth classification.

use std::collections::VecDeque;

use serde::Serialize;

use crate::freealg::Word;
use crate::stdbasis::RewriteSystem;

const NONE: usize = usize::MAX;

/// Deterministic acceptor for the words containing no forbidden subword.
///
/// States are the prefixes of forbidden words; a state is dead when it, or
/// one of its suffixes, is a whole forbidden word. Dead states are sinks.
#[derive(Debug, Clone)]
pub struct AvoidanceAutomaton {
    letters: usize,
    next: Vec<Vec<usize>>,
    live: Vec<bool>,
}

/// Growth of the number of accepted words of length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Growth {
    /// Finitely many accepted words in total.
    Finite { total: u64 },
    /// Counts are eventually bounded by a polynomial of this degree.
    Polynomial { degree: usize },
    Exponential,
}

impl AvoidanceAutomaton {
    pub fn new(forbidden: &[Word], letters: usize) -> AvoidanceAutomaton {
        let mut children: Vec<Vec<usize>> = vec![vec![NONE; letters]];
        let mut terminal = vec![false];
        for word in forbidden {
            let mut state = 0;
            for &l in word.letters() {
                let l = l as usize;
                if children[state][l] == NONE {
                    children.push(vec![NONE; letters]);
                    terminal.push(false);
                    children[state][l] = children.len() - 1;
                }
                state = children[state][l];
            }
            terminal[state] = true;
        }

        let n = children.len();
        let mut next = children.clone();
        let mut fail = vec![0; n];
        let mut live: Vec<bool> = terminal.iter().map(|t| !t).collect();
        let mut queue = VecDeque::new();
        for l in 0..letters {
            match children[0][l] {
                NONE => next[0][l] = 0,
                child => queue.push_back(child),
            }
        }
        while let Some(state) = queue.pop_front() {
            live[state] &= live[fail[state]];
            for l in 0..letters {
                match children[state][l] {
                    NONE => next[state][l] = next[fail[state]][l],
                    child => {
                        fail[child] = next[fail[state]][l];
                        queue.push_back(child);
                    }
                }
            }
        }
        AvoidanceAutomaton { letters, next, live }
    }

    pub fn states(&self) -> usize {
        self.next.len()
    }

    fn step(&self, state: usize, letter: u8) -> usize {
        self.next[state][letter as usize]
    }

    pub fn accepts(&self, word: &Word) -> bool {
        let mut state = 0;
        if !self.live[state] {
            return false;
        }
        for &l in word.letters() {
            state = self.step(state, l);
            if !self.live[state] {
                return false;
            }
        }
        true
    }

    /// Number of accepted words of each length `0..=max_len`, saturating.
    pub fn counts(&self, max_len: usize) -> Vec<u64> {
        let mut current = vec![0u64; self.states()];
        let mut out = Vec::with_capacity(max_len + 1);
        if self.live[0] {
            current[0] = 1;
        }
        for len in 0..=max_len {
            out.push(current.iter().fold(0u64, |a, &b| a.saturating_add(b)));
            if len == max_len {
                break;
            }
            let mut following = vec![0u64; self.states()];
            for (s, &n) in current.iter().enumerate().filter(|(_, &n)| n > 0) {
                for l in 0..self.letters {
                    let t = self.next[s][l];
                    if self.live[t] {
                        following[t] = following[t].saturating_add(n);
                    }
                }
            }
            current = following;
        }
        out
    }

    /// Accepted words of length at most `max_len`, in local order.
    pub fn words(&self, max_len: usize, limit: usize) -> Vec<Word> {
        let mut out = Vec::new();
        if !self.live[0] {
            return out;
        }
        let mut layer = vec![(Vec::<u8>::new(), 0usize)];
        for _ in 0..=max_len {
            for (w, _) in &layer {
                if out.len() == limit {
                    return out;
                }
                out.push(Word::from_letters(w));
            }
            let mut following = Vec::new();
            for (w, s) in &layer {
                for l in 0..self.letters {
                    let t = self.next[*s][l];
                    if self.live[t] {
                        let mut longer = w.clone();
                        longer.push(l as u8);
                        following.push((longer, t));
                    }
                }
            }
            layer = following;
        }
        out
    }

    /// Classifies growth from the cycle structure of the live part.
    pub fn growth(&self) -> Growth {
        let n = self.states();
        let mut reachable = vec![false; n];
        if self.live[0] {
            let mut stack = vec![0];
            reachable[0] = true;
            while let Some(s) = stack.pop() {
                for &t in &self.next[s] {
                    if self.live[t] && !reachable[t] {
                        reachable[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        let (next, reach) = (&self.next, &reachable);
        let edges = move |s: usize| next[s].iter().copied().filter(move |&t| reach[t]);
        let component = strongly_connected(n, &reachable, edges);
        let count = component.iter().filter(|&&c| c != NONE).max().map_or(0, |&m| m + 1);

        let mut size = vec![0usize; count];
        let mut internal = vec![0usize; count];
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); count];
        for s in (0..n).filter(|&s| reachable[s]) {
            size[component[s]] += 1;
            for t in edges(s) {
                if component[t] == component[s] {
                    internal[component[s]] += 1;
                } else {
                    successors[component[s]].push(component[t]);
                }
            }
        }
        if (0..count).any(|c| internal[c] > size[c]) {
            return Growth::Exponential;
        }
        if (0..count).all(|c| internal[c] == 0) {
            let longest = reachable.iter().filter(|&&r| r).count();
            let total = self
                .counts(longest)
                .iter()
                .fold(0u64, |a, &b| a.saturating_add(b));
            return Growth::Finite { total };
        }
        // longest chain of cycles through the condensation DAG
        let mut best: Vec<Option<usize>> = vec![None; count];
        fn chain(c: usize, succ: &[Vec<usize>], internal: &[usize], best: &mut [Option<usize>]) -> usize {
            if let Some(b) = best[c] {
                return b;
            }
            let below = succ[c]
                .iter()
                .map(|&d| chain(d, succ, internal, best))
                .max()
                .unwrap_or(0);
            let b = below + usize::from(internal[c] > 0);
            best[c] = Some(b);
            b
        }
        let cycles = chain(component[0], &successors, &internal, &mut best);
        Growth::Polynomial { degree: cycles - 1 }
    }
}

/// Kosaraju's algorithm over the vertices with `keep[v]`. Returns a
/// component index per vertex (`NONE` for dropped vertices).
fn strongly_connected<F, I>(n: usize, keep: &[bool], edges: F) -> Vec<usize>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| keep[v]) {
        for t in edges(v) {
            reverse[t].push(v);
        }
    }
    for root in (0..n).filter(|&v| keep[v]) {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, edges(root).collect::<Vec<_>>(), 0usize)];
        while let Some((v, out, i)) = stack.last_mut() {
            if *i < out.len() {
                let t = out[*i];
                *i += 1;
                if !visited[t] {
                    visited[t] = true;
                    let out_t = edges(t).collect();
                    stack.push((t, out_t, 0));
                }
            } else {
                order.push(*v);
                stack.pop();
            }
        }
    }
    let mut component = vec![NONE; n];
    let mut count = 0;
    for &root in order.iter().rev() {
        if component[root] != NONE {
            continue;
        }
        let mut stack = vec![root];
        component[root] = count;
        while let Some(v) = stack.pop() {
            for &u in &reverse[v] {
                if component[u] == NONE {
                    component[u] = count;
                    stack.push(u);
                }
            }
        }
        count += 1;
    }
    component
}

/// Standard words of a rewrite system and their counts per degree.
#[derive(Debug, Clone)]
pub struct Staircase {
    pub forbidden: Vec<Word>,
    pub automaton: AvoidanceAutomaton,
    /// `counts[m]` standard words of degree `m`, for `m = 0..=cap`.
    pub counts: Vec<u64>,
}

impl Staircase {
    pub fn new(forbidden: Vec<Word>, letters: usize, cap: usize) -> Staircase {
        let automaton = AvoidanceAutomaton::new(&forbidden, letters);
        let counts = automaton.counts(cap);
        Staircase {
            forbidden,
            automaton,
            counts,
        }
    }

    pub fn growth(&self) -> Growth {
        self.automaton.growth()
    }

    pub fn words(&self, max_len: usize, limit: usize) -> Vec<Word> {
        self.automaton.words(max_len, limit)
    }
}

/// Staircase of the leading words of `sys`, counted up to its cap.
pub fn staircase(sys: &RewriteSystem) -> Staircase {
    Staircase::new(sys.leads(), sys.order().alphabet().len(), sys.cap())
}
