//! Nondeterministic automata with optional ε-transitions, and the graph
//! algorithms used on them: trimming, emptiness, shortest accepted word,
//! infiniteness, products, reversal and the subset construction.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, Sym, Word};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::scc;

/// Default cap on the number of subset states built by [`NfaEps::determinize`].
pub const DEFAULT_SUBSET_CAP: usize = 1 << 20;

/// A transition label. `Eps` sorts before every symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eps,
    Sym(Sym),
}

impl Label {
    pub fn sym(self) -> Option<Sym> {
        match self {
            Label::Eps => None,
            Label::Sym(a) => Some(a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfaEps {
    alphabet: Alphabet,
    states: usize,
    start: usize,
    accepting: Vec<bool>,
    /// Sorted, without duplicates.
    transitions: Vec<(usize, Label, usize)>,
}

impl NfaEps {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        start: usize,
        accepting: &[usize],
        mut transitions: Vec<(usize, Label, usize)>,
    ) -> Result<Self> {
        if states == 0 {
            return Err(Error::Invalid("an automaton needs at least one state".into()));
        }
        if start >= states {
            return Err(Error::Invalid(format!("start state {start} out of range")));
        }
        let mut acc = vec![false; states];
        for &f in accepting {
            if f >= states {
                return Err(Error::Invalid(format!("accepting state {f} out of range")));
            }
            acc[f] = true;
        }
        for &(p, l, q) in &transitions {
            if p >= states || q >= states {
                return Err(Error::Invalid(format!("transition {p} -> {q} out of range")));
            }
            if let Label::Sym(a) = l {
                if a.index() >= alphabet.len() {
                    return Err(Error::UnknownSymbol(format!("#{}", a.0)));
                }
            }
        }
        transitions.sort_unstable();
        transitions.dedup();
        Ok(NfaEps {
            alphabet,
            states,
            start,
            accepting: acc,
            transitions,
        })
    }

    /// One state, no transitions, nothing accepted.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        NfaEps {
            alphabet,
            states: 1,
            start: 0,
            accepting: vec![false],
            transitions: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states).filter(|&q| self.accepting[q])
    }

    pub fn transitions(&self) -> &[(usize, Label, usize)] {
        &self.transitions
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.1 == Label::Eps)
    }

    /// Outgoing `(label, target)` lists, in label order.
    pub fn successors(&self) -> Vec<Vec<(Label, usize)>> {
        let mut out = vec![Vec::new(); self.states];
        for &(p, l, q) in &self.transitions {
            out[p].push((l, q));
        }
        out
    }

    fn predecessors(&self) -> Vec<Vec<(Label, usize)>> {
        let mut inc = vec![Vec::new(); self.states];
        for &(p, l, q) in &self.transitions {
            inc[q].push((l, p));
        }
        inc
    }

    /// ε-closure of a set of states.
    pub fn eps_closure(&self, succ: &[Vec<(Label, usize)>], set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &(l, q) in &succ[p] {
                if l == Label::Eps && set.insert(q) {
                    stack.push(q);
                }
            }
        }
    }

    fn step(&self, succ: &[Vec<(Label, usize)>], set: &BTreeSet<usize>, a: Sym) -> BTreeSet<usize> {
        let mut next: BTreeSet<usize> = set
            .iter()
            .flat_map(|&p| succ[p].iter())
            .filter(|(l, _)| *l == Label::Sym(a))
            .map(|&(_, q)| q)
            .collect();
        self.eps_closure(succ, &mut next);
        next
    }

    /// Membership by direct subset simulation.
    pub fn accepts(&self, w: &[Sym]) -> bool {
        let succ = self.successors();
        let mut cur = BTreeSet::from([self.start]);
        self.eps_closure(&succ, &mut cur);
        for &a in w {
            cur = self.step(&succ, &cur, a);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    fn reachable_from_start(&self, succ: &[Vec<(Label, usize)>]) -> Vec<bool> {
        let mut seen = vec![false; self.states];
        seen[self.start] = true;
        let mut stack = vec![self.start];
        while let Some(p) = stack.pop() {
            for &(_, q) in &succ[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    fn coreachable(&self, pred: &[Vec<(Label, usize)>]) -> Vec<bool> {
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = self.accepting().collect();
        while let Some(q) = stack.pop() {
            for &(_, p) in &pred[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// True iff no accepting state is reachable from the start state.
    pub fn is_empty(&self) -> bool {
        let reach = self.reachable_from_start(&self.successors());
        !self.accepting().any(|q| reach[q])
    }

    /// Keeps exactly the states that are reachable and co-reachable,
    /// renumbered in increasing order of their old ids. If nothing is
    /// accepted the result is [`NfaEps::empty_language`].
    pub fn trim(&self) -> NfaEps {
        let reach = self.reachable_from_start(&self.successors());
        let coreach = self.coreachable(&self.predecessors());
        if !coreach[self.start] {
            return NfaEps::empty_language(self.alphabet.clone());
        }
        let mut map = vec![usize::MAX; self.states];
        let mut next = 0;
        for q in 0..self.states {
            if reach[q] && coreach[q] {
                map[q] = next;
                next += 1;
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|&&(p, _, q)| map[p] != usize::MAX && map[q] != usize::MAX)
            .map(|&(p, l, q)| (map[p], l, map[q]))
            .collect();
        let accepting: Vec<usize> = self
            .accepting()
            .filter(|&q| map[q] != usize::MAX)
            .map(|q| map[q])
            .collect();
        NfaEps::new(self.alphabet.clone(), next, map[self.start], &accepting, transitions)
            .expect("trimmed automaton is well formed")
    }

    /// Shortest accepted word; among the shortest, the lexicographically
    /// least under the declared alphabet order.
    pub fn shortest_accepted(&self) -> Option<Word> {
        let succ = self.successors();
        let pred = self.predecessors();
        // symbols still needed to reach acceptance (0-1 BFS on reversed edges)
        let mut dist = vec![usize::MAX; self.states];
        let mut dq = VecDeque::new();
        for q in self.accepting() {
            dist[q] = 0;
            dq.push_back(q);
        }
        while let Some(q) = dq.pop_front() {
            for &(l, p) in &pred[q] {
                let w = usize::from(l != Label::Eps);
                if dist[q] + w < dist[p] {
                    dist[p] = dist[q] + w;
                    if w == 0 {
                        dq.push_front(p);
                    } else {
                        dq.push_back(p);
                    }
                }
            }
        }
        let close = |set: BTreeSet<usize>, remaining: usize| {
            let mut set = set;
            self.eps_closure(&succ, &mut set);
            set.retain(|&q| dist[q] == remaining);
            set
        };
        let mut remaining = dist[self.start];
        if remaining == usize::MAX {
            return None;
        }
        let mut cur = close(BTreeSet::from([self.start]), remaining);
        let mut word = Vec::with_capacity(remaining);
        while remaining > 0 {
            let best = cur
                .iter()
                .flat_map(|&p| succ[p].iter())
                .filter_map(|&(l, q)| match l {
                    Label::Sym(a) if dist[q] == remaining - 1 => Some(a),
                    _ => None,
                })
                .min()
                .expect("a state on a shortest path has a continuing edge");
            let next: BTreeSet<usize> = cur
                .iter()
                .flat_map(|&p| succ[p].iter())
                .filter(|&&(l, q)| l == Label::Sym(best) && dist[q] == remaining - 1)
                .map(|&(_, q)| q)
                .collect();
            word.push(best);
            remaining -= 1;
            cur = close(next, remaining);
        }
        Some(word)
    }

    /// True iff the accepted language is infinite: after trimming, some
    /// symbol-labelled transition lies inside a strongly connected component.
    pub fn is_language_infinite(&self) -> bool {
        let t = self.trim();
        let succ: Vec<Vec<usize>> = t
            .successors()
            .into_iter()
            .map(|v| v.into_iter().map(|(_, q)| q).collect())
            .collect();
        let (comp, _) = scc::tarjan(t.states, &succ);
        t.transitions
            .iter()
            .any(|&(p, l, q)| l != Label::Eps && comp[p] == comp[q])
    }

    /// Product automaton over the reachable pairs.
    pub fn intersect(&self, other: &NfaEps) -> Result<NfaEps> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if self.has_epsilon() || other.has_epsilon() {
            return Err(Error::EpsilonPresent);
        }
        let s1 = self.successors();
        let s2 = other.successors();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut transitions = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            for &(l1, p2) in &s1[p] {
                for &(l2, q2) in &s2[q] {
                    if l1 != l2 {
                        continue;
                    }
                    let next = ids.len();
                    let id = *ids.entry((p2, q2)).or_insert_with(|| {
                        order.push((p2, q2));
                        next
                    });
                    transitions.push((i, l1, id));
                }
            }
            i += 1;
        }
        let accepting: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| self.accepting[p] && other.accepting[q])
            .map(|(i, _)| i)
            .collect();
        NfaEps::new(self.alphabet.clone(), order.len(), 0, &accepting, transitions)
    }

    /// Automaton for the reversed language: edges reversed, a fresh start
    /// state with ε-moves to the old accepting states, and the old start as
    /// the only accepting state.
    pub fn reverse(&self) -> NfaEps {
        let fresh = self.states;
        let mut transitions: Vec<_> = self.transitions.iter().map(|&(p, l, q)| (q, l, p)).collect();
        transitions.extend(self.accepting().map(|f| (fresh, Label::Eps, f)));
        NfaEps::new(self.alphabet.clone(), self.states + 1, fresh, &[self.start], transitions)
            .expect("reversal is well formed")
    }

    /// Equivalent automaton without ε-transitions (same state set).
    pub fn remove_epsilon(&self) -> NfaEps {
        if !self.has_epsilon() {
            return self.clone();
        }
        let succ = self.successors();
        let mut transitions = Vec::new();
        let mut accepting = Vec::new();
        for q in 0..self.states {
            let mut c = BTreeSet::from([q]);
            self.eps_closure(&succ, &mut c);
            if c.iter().any(|&p| self.accepting[p]) {
                accepting.push(q);
            }
            for &p in &c {
                for &(l, t) in &succ[p] {
                    if l != Label::Eps {
                        transitions.push((q, l, t));
                    }
                }
            }
        }
        NfaEps::new(self.alphabet.clone(), self.states, self.start, &accepting, transitions)
            .expect("epsilon removal is well formed")
    }

    /// Subset construction with the default cap.
    pub fn determinize(&self) -> Result<Dfa> {
        self.determinize_with_cap(DEFAULT_SUBSET_CAP)
    }

    /// Subset construction over reachable subsets. The result is complete; an
    /// empty subset, if reached, becomes the dead state.
    pub fn determinize_with_cap(&self, cap: usize) -> Result<Dfa> {
        let succ = self.successors();
        let mut start = BTreeSet::from([self.start]);
        self.eps_closure(&succ, &mut start);
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut order = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < order.len() {
            for a in self.alphabet.symbols() {
                let next = self.step(&succ, &order[i], a);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = order.len();
                        if id >= cap {
                            return Err(Error::ResourceLimit {
                                what: "subset states",
                                count: id + 1,
                                cap,
                            });
                        }
                        ids.insert(next.clone(), id);
                        order.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|&q| self.accepting[q]))
            .map(|(i, _)| i)
            .collect();
        Dfa::new(self.alphabet.clone(), order.len(), 0, &accepting, delta)
    }

    /// Disjoint union under a fresh start state joined by ε-moves.
    pub fn union(&self, other: &NfaEps) -> Result<NfaEps> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let off = self.states;
        let fresh = self.states + other.states;
        let mut transitions = self.transitions.clone();
        transitions.extend(other.transitions.iter().map(|&(p, l, q)| (p + off, l, q + off)));
        transitions.push((fresh, Label::Eps, self.start));
        transitions.push((fresh, Label::Eps, other.start + off));
        let accepting: Vec<usize> = self
            .accepting()
            .chain(other.accepting().map(|q| q + off))
            .collect();
        NfaEps::new(self.alphabet.clone(), fresh + 1, fresh, &accepting, transitions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{power, words_up_to};

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn a() -> Sym {
        Sym(0)
    }
    fn b() -> Sym {
        Sym(1)
    }

    /// (aa)* ∪ a(aaa)* style unary cycle acceptor.
    fn cycle(n: usize, acc: &[usize]) -> NfaEps {
        let alph = Alphabet::from_chars("a").unwrap();
        let t = (0..n).map(|q| (q, Label::Sym(Sym(0)), (q + 1) % n)).collect();
        NfaEps::new(alph, n, 0, acc, t).unwrap()
    }

    #[test]
    fn epsilon_only_start() {
        let m = NfaEps::new(ab(), 1, 0, &[0], vec![]).unwrap();
        let d = m.determinize().unwrap();
        assert!(d.num_states() <= 2);
        assert!(d.accepts(&[]));
        assert!(!d.accepts(&[a()]));
        assert_eq!(m.shortest_accepted(), Some(vec![]));
        assert!(!m.is_language_infinite());
    }

    #[test]
    fn epsilon_cycle_determinizes_to_epsilon() {
        let m = NfaEps::new(ab(), 2, 0, &[0], vec![(0, Label::Eps, 1), (1, Label::Eps, 0)]).unwrap();
        let d = m.determinize().unwrap();
        assert!(d.accepts(&[]));
        assert!(words_up_to(2, 4).skip(1).all(|w| !d.accepts(&w)));
    }

    #[test]
    fn epsilon_self_loop_is_finite() {
        let m = NfaEps::new(ab(), 1, 0, &[0], vec![(0, Label::Eps, 0)]).unwrap();
        assert!(!m.is_language_infinite());
        let star = cycle(1, &[0]);
        assert!(star.is_language_infinite());
    }

    #[test]
    fn trim_removes_unreachable_accepting() {
        let m = NfaEps::new(ab(), 3, 0, &[1, 2], vec![(0, Label::Sym(a()), 1)]).unwrap();
        let t = m.trim();
        assert_eq!(t.num_states(), 2);
        assert_eq!(t.accepting().count(), 1);
        let none = NfaEps::new(ab(), 2, 0, &[1], vec![]).unwrap().trim();
        assert_eq!(none, NfaEps::empty_language(ab()));
        assert!(none.is_empty());
    }

    #[test]
    fn emptiness() {
        assert!(NfaEps::new(ab(), 2, 0, &[], vec![(0, Label::Sym(a()), 1)]).unwrap().is_empty());
        assert!(!NfaEps::new(ab(), 1, 0, &[0], vec![]).unwrap().is_empty());
    }

    #[test]
    fn intersection_of_counters() {
        let even = cycle(2, &[0]);
        let three = cycle(3, &[0]);
        let both = even.intersect(&three).unwrap();
        for k in 0..=18 {
            assert_eq!(both.accepts(&power(&[Sym(0)], k)), k % 6 == 0, "k = {k}");
        }
        let universal = cycle(1, &[0]);
        let same = even.intersect(&universal).unwrap();
        for k in 0..=10 {
            assert_eq!(same.accepts(&power(&[Sym(0)], k)), even.accepts(&power(&[Sym(0)], k)));
        }
        assert_eq!(
            even.intersect(&NfaEps::empty_language(ab())),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn reverse_of_ab_is_ba() {
        let m = NfaEps::new(ab(), 3, 0, &[2], vec![(0, Label::Sym(a()), 1), (1, Label::Sym(b()), 2)]).unwrap();
        let r = m.reverse();
        assert!(r.accepts(&[b(), a()]));
        assert!(!r.accepts(&[a(), b()]));
        let rr = r.reverse();
        for w in words_up_to(2, 6) {
            assert_eq!(rr.accepts(&w), m.accepts(&w));
        }
    }

    #[test]
    fn shortest_prefers_lexicographic() {
        // accepts ba and ab; shortest lexicographic is ab
        let m = NfaEps::new(
            ab(),
            4,
            0,
            &[3],
            vec![
                (0, Label::Sym(b()), 1),
                (1, Label::Sym(a()), 3),
                (0, Label::Eps, 2),
                (2, Label::Sym(a()), 1),
                (1, Label::Sym(b()), 3),
            ],
        )
        .unwrap();
        assert_eq!(m.shortest_accepted(), Some(vec![a(), a()]));
        assert_eq!(NfaEps::empty_language(ab()).shortest_accepted(), None);
    }

    #[test]
    fn remove_epsilon_preserves_language() {
        let m = NfaEps::new(
            ab(),
            3,
            0,
            &[2],
            vec![(0, Label::Eps, 1), (1, Label::Sym(a()), 1), (1, Label::Eps, 2), (2, Label::Sym(b()), 0)],
        )
        .unwrap();
        let e = m.remove_epsilon();
        assert!(!e.has_epsilon());
        for w in words_up_to(2, 7) {
            assert_eq!(m.accepts(&w), e.accepts(&w));
        }
    }

    #[test]
    fn subset_cap_is_reported() {
        // (a|b)* a (a|b)^k needs 2^(k+1) subset states
        let k = 6;
        let mut t = vec![(0, Label::Sym(a()), 0), (0, Label::Sym(b()), 0), (0, Label::Sym(a()), 1)];
        for i in 1..=k {
            t.push((i, Label::Sym(a()), i + 1));
            t.push((i, Label::Sym(b()), i + 1));
        }
        let m = NfaEps::new(ab(), k + 2, 0, &[k + 1], t).unwrap();
        assert!(m.determinize_with_cap(16).unwrap_err().is_resource_limit());
        assert_eq!(m.determinize().unwrap().num_states(), 1 << (k + 1));
    }
}
