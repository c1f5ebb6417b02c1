//! Freeness of languages given by NFAs, without determinization.
//!
//! For each order an ε-free automaton `M'` accepting the strict containers
//! of `L(M)` is built; `L(M)` is free iff `L(M) ∩ L(M')` is empty.

use crate::alphabet::{shortlex, Sym, Word};
use crate::error::{Error, Result};
use crate::nfa::{Label, NfaEps};
use crate::property::Relation;

#[derive(Debug, Clone)]
pub struct FreenessConstruction {
    pub base: NfaEps,
    /// Accepts the words having a proper relative in `L(base)`.
    pub derived: NfaEps,
    pub product: NfaEps,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessOutcome {
    pub free: bool,
    /// `(v, w)` with `v` a proper relative of `w`, both accepted.
    pub witness: Option<(Word, Word)>,
}

struct Builder {
    states: usize,
    accepting: Vec<usize>,
    transitions: Vec<(usize, Label, usize)>,
}

impl Builder {
    /// Starts from a copy of `m` occupying ids `0..m.num_states()`.
    fn from(m: &NfaEps) -> Builder {
        Builder {
            states: m.num_states(),
            accepting: Vec::new(),
            transitions: m.transitions().to_vec(),
        }
    }

    fn fresh(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    fn sym(&mut self, p: usize, a: Sym, q: usize) {
        self.transitions.push((p, Label::Sym(a), q));
    }

    /// Lets `p` behave like the start state of the embedded copy of `m`.
    fn simulate_start(&mut self, m: &NfaEps, p: usize) {
        for &(s, l, q) in m.transitions() {
            if s == m.start() {
                self.transitions.push((p, l, q));
            }
        }
    }

    fn finish(self, m: &NfaEps, start: usize) -> NfaEps {
        NfaEps::new(m.alphabet().clone(), self.states, start, &self.accepting, self.transitions)
            .expect("derived automaton is well formed")
    }
}

/// `L(m) Σ⁺`, with exactly one extra state.
fn prefix_containers(m: &NfaEps) -> NfaEps {
    let mut b = Builder::from(m);
    let f = b.fresh();
    for a in m.alphabet().symbols() {
        for q in m.accepting() {
            b.sym(q, a, f);
        }
        b.sym(f, a, f);
    }
    b.accepting.push(f);
    b.finish(m, m.start())
}

/// `Σ⁺ L(m)`.
fn suffix_containers(m: &NfaEps) -> NfaEps {
    let mut b = Builder::from(m);
    let (s0, s1) = (b.fresh(), b.fresh());
    for a in m.alphabet().symbols() {
        b.sym(s0, a, s1);
        b.sym(s1, a, s1);
    }
    b.simulate_start(m, s1);
    b.accepting.extend(m.accepting());
    if m.is_accepting(m.start()) {
        b.accepting.push(s1);
    }
    b.finish(m, s0)
}

/// `Σ⁺ L(m) Σ* ∪ Σ* L(m) Σ⁺`.
fn factor_containers(m: &NfaEps) -> Result<NfaEps> {
    let eps_in = m.is_accepting(m.start());

    let mut left = Builder::from(m);
    let (s0, s1, g) = (left.fresh(), left.fresh(), left.fresh());
    left.simulate_start(m, s1);
    let mut ends: Vec<usize> = m.accepting().collect();
    if eps_in {
        ends.push(s1);
    }
    for a in m.alphabet().symbols() {
        left.sym(s0, a, s1);
        left.sym(s1, a, s1);
        left.sym(g, a, g);
        for &q in &ends {
            left.sym(q, a, g);
        }
    }
    left.accepting = ends;
    left.accepting.push(g);
    let left = left.finish(m, s0);

    let mut right = Builder::from(m);
    let (t0, h) = (right.fresh(), right.fresh());
    right.simulate_start(m, t0);
    for a in m.alphabet().symbols() {
        right.sym(t0, a, t0);
        right.sym(h, a, h);
        for q in m.accepting() {
            right.sym(q, a, h);
        }
        if eps_in {
            right.sym(t0, a, h);
        }
    }
    right.accepting.push(h);
    let right = right.finish(m, t0);

    Ok(left.union(&right)?.remove_epsilon())
}

/// Two copies of `m`; a skipped symbol moves from the first copy to the
/// second, and only the second copy accepts.
fn subword_containers(m: &NfaEps) -> NfaEps {
    let n = m.num_states();
    let mut b = Builder::from(m);
    b.states = 2 * n;
    for &(p, l, q) in m.transitions() {
        b.transitions.push((p + n, l, q + n));
    }
    for q in 0..n {
        for a in m.alphabet().symbols() {
            b.sym(q, a, q + n);
            b.sym(q + n, a, q + n);
        }
    }
    b.accepting = m.accepting().map(|q| q + n).collect();
    b.finish(m, m.start())
}

pub fn freeness_construction(m: &NfaEps, relation: Relation) -> Result<FreenessConstruction> {
    if m.has_epsilon() {
        return Err(Error::EpsilonPresent);
    }
    let derived = match relation {
        Relation::Prefix => prefix_containers(m),
        Relation::Suffix => suffix_containers(m),
        Relation::Factor => factor_containers(m)?,
        Relation::Subword => subword_containers(m),
    };
    let product = m.intersect(&derived)?;
    Ok(FreenessConstruction {
        base: m.clone(),
        derived,
        product,
    })
}

/// Shortest, then lexicographically least, proper relative of `w` in `L(m)`.
fn proper_relative(m: &NfaEps, relation: Relation, w: &[Sym]) -> Option<Word> {
    let k = w.len();
    let mut candidates: Vec<&[Sym]> = match relation {
        Relation::Prefix => (0..k).map(|i| &w[..i]).collect(),
        Relation::Suffix => (0..k).map(|i| &w[k - i..]).collect(),
        Relation::Factor => (0..k)
            .flat_map(|len| (0..=k - len).map(move |i| &w[i..i + len]))
            .collect(),
        Relation::Subword => return shortest_subsequence(m, w),
    };
    candidates.sort_by(|a, b| shortlex(a, b));
    candidates.into_iter().find(|c| m.accepts(c)).map(<[Sym]>::to_vec)
}

/// Shortest-then-least word of `L(m)` that is a subsequence of `w`. When
/// `w` has a proper subsequence in `L(m)` the result is proper.
fn shortest_subsequence(m: &NfaEps, w: &[Sym]) -> Option<Word> {
    // greedy subsequence automaton: state i = length of the matched prefix
    // of `w` after the leftmost embedding
    let mut transitions = Vec::new();
    for i in 0..=w.len() {
        for a in m.alphabet().symbols() {
            if let Some(j) = w[i..].iter().position(|&x| x == a) {
                transitions.push((i, Label::Sym(a), i + j + 1));
            }
        }
    }
    let all: Vec<usize> = (0..=w.len()).collect();
    let sub = NfaEps::new(m.alphabet().clone(), w.len() + 1, 0, &all, transitions).ok()?;
    let v = m.intersect(&sub).ok()?.shortest_accepted()?;
    (v.len() < w.len()).then_some(v)
}

/// Decides freeness of `L(m)` for an ε-free NFA `m`.
pub fn nfa_is_free(m: &NfaEps, relation: Relation) -> Result<FreenessOutcome> {
    let c = freeness_construction(m, relation)?;
    let witness = match c.product.shortest_accepted() {
        None => None,
        Some(w) => {
            let v = proper_relative(m, relation, &w)
                .expect("a word of the product has a proper relative in the language");
            Some((v, w))
        }
    };
    Ok(FreenessOutcome {
        free: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{words_up_to, Alphabet};
    use crate::regex;
    use crate::validation::relation::properly_related;

    fn lang(expr: &str, sigma: &str) -> NfaEps {
        regex::compile(expr, &Alphabet::from_chars(sigma).unwrap()).unwrap().remove_epsilon()
    }

    #[test]
    fn equal_length_code_is_prefix_free() {
        let m = lang("ab|cd", "abcd");
        assert!(nfa_is_free(&m, Relation::Prefix).unwrap().free);
    }

    #[test]
    fn subword_witness() {
        let m = lang("a|aba", "ab");
        let out = nfa_is_free(&m, Relation::Subword).unwrap();
        let ab = Alphabet::from_chars("ab").unwrap();
        assert_eq!(out.witness, Some((ab.parse_word("a").unwrap(), ab.parse_word("aba").unwrap())));
    }

    #[test]
    fn epsilon_rejected() {
        let m = regex::compile("a*", &Alphabet::from_chars("a").unwrap()).unwrap();
        if m.has_epsilon() {
            assert!(matches!(nfa_is_free(&m, Relation::Prefix), Err(Error::EpsilonPresent)));
        }
    }

    #[test]
    fn prefix_derived_size() {
        let m = lang("(ab|b)*a", "ab");
        let d = prefix_containers(&m);
        assert_eq!(d.num_states(), m.num_states() + 1);
        assert!(d.num_transitions() <= m.num_transitions() + 2 * m.num_states() * 2);
    }

    #[test]
    fn derived_accepts_exactly_strict_containers() {
        for expr in ["ab|b", "a(ba)*", "()|bb", "aa*b"] {
            let m = lang(expr, "ab");
            let members: Vec<Word> = words_up_to(2, 6).filter(|w| m.accepts(w)).collect();
            for r in Relation::ALL {
                let d = freeness_construction(&m, r).unwrap().derived;
                for x in words_up_to(2, 6) {
                    let expect = members.iter().any(|y| properly_related(r, y, &x));
                    assert_eq!(d.accepts(&x), expect, "{expr} {r:?} {x:?}");
                }
            }
        }
    }
}
