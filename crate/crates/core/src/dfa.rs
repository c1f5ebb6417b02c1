//! Complete deterministic automata.

use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::nfa::{Label, NfaEps};

/// A complete DFA. States are `0..n`; `delta[state * |Σ| + symbol]` is the
/// successor, defined for every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    accepting: Vec<bool>,
    delta: Vec<usize>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        start: usize,
        accepting: &[usize],
        delta: Vec<usize>,
    ) -> Result<Self> {
        if states == 0 {
            return Err(Error::Invalid("an automaton needs at least one state".into()));
        }
        if start >= states {
            return Err(Error::Invalid(format!("start state {start} out of range")));
        }
        if delta.len() != states * alphabet.len() {
            return Err(Error::Invalid("transition table has the wrong size".into()));
        }
        if let Some(&bad) = delta.iter().find(|&&t| t >= states) {
            return Err(Error::Invalid(format!("transition target {bad} out of range")));
        }
        let mut acc = vec![false; states];
        for &f in accepting {
            if f >= states {
                return Err(Error::Invalid(format!("accepting state {f} out of range")));
            }
            acc[f] = true;
        }
        Ok(Dfa {
            alphabet,
            start,
            accepting: acc,
            delta,
        })
    }

    /// Builds a DFA from a successor function.
    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        start: usize,
        accepting: &[usize],
        mut next: impl FnMut(usize, Sym) -> usize,
    ) -> Result<Self> {
        let sigma = alphabet.len();
        let mut delta = Vec::with_capacity(states * sigma);
        for q in 0..states {
            for a in alphabet.symbols() {
                delta.push(next(q, a));
            }
        }
        Dfa::new(alphabet, states, start, accepting, delta)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    pub fn num_accepting(&self) -> usize {
        self.accepting.iter().filter(|&&b| b).count()
    }

    #[inline]
    pub fn next(&self, q: usize, a: Sym) -> usize {
        self.delta[q * self.alphabet.len() + a.index()]
    }

    /// δ*(q, w).
    pub fn walk(&self, q: usize, w: &[Sym]) -> usize {
        w.iter().fold(q, |p, &a| self.next(p, a))
    }

    pub fn accepts(&self, w: &[Sym]) -> bool {
        self.accepting[self.walk(self.start, w)]
    }

    /// Runs `w` from the start state, returning the final state and whether
    /// it accepts.
    pub fn run(&self, w: &[Sym]) -> Result<(usize, bool)> {
        if let Some(bad) = w.iter().find(|a| a.index() >= self.alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("#{}", bad.0)));
        }
        let q = self.walk(self.start, w);
        Ok((q, self.accepting[q]))
    }

    /// Same transition graph with the accepting set inverted.
    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            start: self.start,
            accepting: self.accepting.iter().map(|b| !b).collect(),
            delta: self.delta.clone(),
        }
    }

    pub fn to_nfa(&self) -> NfaEps {
        let mut transitions = Vec::with_capacity(self.delta.len());
        for q in 0..self.num_states() {
            for a in self.alphabet.symbols() {
                transitions.push((q, Label::Sym(a), self.next(q, a)));
            }
        }
        NfaEps::new(
            self.alphabet.clone(),
            self.num_states(),
            self.start,
            &self.accepting().collect::<Vec<_>>(),
            transitions,
        )
        .expect("a valid DFA is a valid NFA")
    }

    /// Shortest distance (in symbols) from `q` to each state.
    pub fn distances_from(&self, q: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_states()];
        let mut queue = std::collections::VecDeque::from([q]);
        dist[q] = Some(0);
        while let Some(p) = queue.pop_front() {
            let d = dist[p].unwrap();
            for a in self.alphabet.symbols() {
                let r = self.next(p, a);
                if dist[r].is_none() {
                    dist[r] = Some(d + 1);
                    queue.push_back(r);
                }
            }
        }
        dist
    }
}

/// A DFA whose transition function may be partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDfa {
    pub alphabet: Alphabet,
    pub states: usize,
    pub start: usize,
    pub accepting: Vec<usize>,
    /// `delta[state * |Σ| + symbol]`
    pub delta: Vec<Option<usize>>,
}

impl PartialDfa {
    pub fn new(alphabet: Alphabet, states: usize, start: usize, accepting: &[usize]) -> Self {
        let sigma = alphabet.len();
        PartialDfa {
            alphabet,
            states,
            start,
            accepting: accepting.to_vec(),
            delta: vec![None; states * sigma],
        }
    }

    pub fn set(&mut self, from: usize, a: Sym, to: usize) {
        let sigma = self.alphabet.len();
        self.delta[from * sigma + a.index()] = Some(to);
    }

    pub fn get(&self, from: usize, a: Sym) -> Option<usize> {
        self.delta[from * self.alphabet.len() + a.index()]
    }

    pub fn is_total(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    /// Totalizes the transition function. Missing moves go to one fresh
    /// rejecting sink; a total function is returned unchanged.
    pub fn complete(self) -> Result<Dfa> {
        let dead = self.states;
        let extra = usize::from(!self.is_total());
        let sigma = self.alphabet.len();
        let mut delta: Vec<usize> = self.delta.iter().map(|t| t.unwrap_or(dead)).collect();
        if extra == 1 {
            delta.extend(std::iter::repeat_n(dead, sigma));
        }
        Dfa::new(
            self.alphabet,
            self.states + extra,
            self.start,
            &self.accepting,
            delta,
        )
    }
}

impl From<&Dfa> for PartialDfa {
    fn from(d: &Dfa) -> Self {
        PartialDfa {
            alphabet: d.alphabet.clone(),
            states: d.num_states(),
            start: d.start,
            accepting: d.accepting().collect(),
            delta: d.delta.iter().map(|&t| Some(t)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn complete_is_identity_on_total() {
        let d = Dfa::from_fn(ab(), 2, 0, &[1], |q, a| (q + a.index()) % 2).unwrap();
        let again = PartialDfa::from(&d).complete().unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn complete_adds_one_dead_state() {
        let mut p = PartialDfa::new(ab(), 1, 0, &[0]);
        p.set(0, Sym(0), 0);
        let d = p.complete().unwrap();
        assert_eq!(d.num_states(), 2);
        assert!(!d.is_accepting(1));
        assert_eq!(d.next(1, Sym(0)), 1);
        assert_eq!(d.next(1, Sym(1)), 1);
        assert_eq!(d.next(0, Sym(1)), 1);
        assert!(d.accepts(&[Sym(0), Sym(0)]));
        assert!(!d.accepts(&[Sym(0), Sym(1)]));
    }

    #[test]
    fn complement_negates_membership() {
        let d = Dfa::from_fn(ab(), 3, 0, &[2], |q, a| (q + 1 + a.index()) % 3).unwrap();
        let c = d.complement();
        for w in words_up_to(2, 10) {
            assert_ne!(d.accepts(&w), c.accepts(&w));
        }
        assert_eq!(c.complement(), d);
    }

    #[test]
    fn complement_of_empty_is_universal() {
        let d = Dfa::from_fn(ab(), 1, 0, &[], |_, _| 0).unwrap();
        let c = d.complement();
        assert!(words_up_to(2, 5).all(|w| c.accepts(&w)));
    }

    #[test]
    fn run_on_empty_word() {
        let d = Dfa::from_fn(ab(), 2, 1, &[1], |_, _| 0).unwrap();
        assert_eq!(d.run(&[]).unwrap(), (1, true));
        assert!(d.run(&[Sym(7)]).is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(Dfa::new(ab(), 0, 0, &[], vec![]).is_err());
        assert!(Dfa::new(ab(), 1, 1, &[], vec![0, 0]).is_err());
        assert!(Dfa::new(ab(), 1, 0, &[], vec![0, 3]).is_err());
    }
}
