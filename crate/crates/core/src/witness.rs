//! Minimal witnesses.
//!
//! A witness is minimal under the order `(|w|, |v|, |u|)`; ties are broken
//! by lexicographic order of `w`, then `v`, then `u`. Witnesses are read
//! off the checker automaton in two steps:
//!
//! 1. a label-setting search with cost vectors `(|w|, |v|, |u|)` from the
//!    start state and from the accepting states, which marks every move
//!    lying on some path of optimal cost;
//! 2. one greedy pass per word (`w`, then `v`, then `u`) over the optimal
//!    moves, each pass fixing the lexicographically least word and pruning
//!    the moves that disagree with it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::alphabet::{Sym, Word};
use crate::checker::{build_checker, Checker, CheckerEdge, Layout};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::Label;
use crate::property::{Mode, PropertyQuery, Relation};
use crate::validation::relation::{leftmost_embedding, leftmost_occurrence, relation_holds};

/// Where `v` (and `u`) sit inside `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// Half-open ranges of `w` (prefix, suffix and factor relations).
    Segments {
        v: (usize, usize),
        u: Option<(usize, usize)>,
    },
    /// Sorted positions of `w` (subword relation).
    Embedding { v: Vec<usize>, u: Option<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Present for convexity witnesses only.
    pub u: Option<Word>,
    pub v: Word,
    pub w: Word,
    pub decomposition: Decomposition,
}

/// `(|w|, |v|, |u|)`, compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WitnessCost(pub [u32; 3]);

impl Witness {
    /// Builds a witness, computing the leftmost decomposition. Returns
    /// `None` if the words are not related as required.
    pub fn new(relation: Relation, u: Option<Word>, v: Word, w: Word) -> Option<Witness> {
        let decomposition = match relation {
            Relation::Subword => {
                let vpos = leftmost_embedding(&v, &w)?;
                let upos = match &u {
                    Some(u) => Some(leftmost_embedding(u, &v)?.into_iter().map(|i| vpos[i]).collect()),
                    None => None,
                };
                Decomposition::Embedding { v: vpos, u: upos }
            }
            _ => {
                if !relation_holds(relation, &v, &w) {
                    return None;
                }
                let vs = match relation {
                    Relation::Prefix => 0,
                    Relation::Suffix => w.len() - v.len(),
                    _ => leftmost_occurrence(&v, &w)?,
                };
                let us = match &u {
                    Some(u) => {
                        if !relation_holds(relation, u, &v) {
                            return None;
                        }
                        let off = match relation {
                            Relation::Prefix => 0,
                            Relation::Suffix => v.len() - u.len(),
                            _ => leftmost_occurrence(u, &v)?,
                        };
                        Some((vs + off, vs + off + u.len()))
                    }
                    None => None,
                };
                Decomposition::Segments {
                    v: (vs, vs + v.len()),
                    u: us,
                }
            }
        };
        Some(Witness { u, v, w, decomposition })
    }

    pub fn cost(&self) -> WitnessCost {
        WitnessCost([
            self.w.len() as u32,
            self.v.len() as u32,
            self.u.as_ref().map_or(0, |u| u.len() as u32),
        ])
    }

    /// The size of a witness is the length of its outer word.
    pub fn size(&self) -> usize {
        self.w.len()
    }

    /// Checks that the recorded positions really spell `v` and `u`.
    pub fn decomposition_consistent(&self) -> bool {
        match &self.decomposition {
            Decomposition::Segments { v, u } => {
                let seg = |(a, b): (usize, usize)| (a <= b && b <= self.w.len()).then(|| &self.w[a..b]);
                seg(*v) == Some(&self.v[..])
                    && match (u, &self.u) {
                        (Some(r), Some(word)) => seg(*r) == Some(&word[..]) && v.0 <= r.0 && r.1 <= v.1,
                        (None, None) => true,
                        _ => false,
                    }
            }
            Decomposition::Embedding { v, u } => {
                let spell = |pos: &[usize]| -> Option<Word> {
                    if !pos.windows(2).all(|p| p[0] < p[1]) {
                        return None;
                    }
                    pos.iter().map(|&i| self.w.get(i).copied()).collect()
                };
                spell(v).as_ref() == Some(&self.v)
                    && match (u, &self.u) {
                        (Some(p), Some(word)) => {
                            spell(p).as_ref() == Some(word) && p.iter().all(|i| v.contains(i))
                        }
                        (None, None) => true,
                        _ => false,
                    }
            }
        }
    }
}

/// Checks the witness conditions with direct DFA runs.
pub fn verify_witness(d: &Dfa, q: &PropertyQuery, cand: &Witness) -> bool {
    let complemented;
    let d = if q.converse {
        complemented = d.complement();
        &complemented
    } else {
        d
    };
    let r = q.relation;
    let alive = |w: &[Sym]| w.iter().all(|a| a.index() < d.alphabet().len());
    if !alive(&cand.v) || !alive(&cand.w) || !cand.u.as_deref().is_none_or(alive) {
        return false;
    }
    let in_l = |w: &[Sym]| d.accepts(w);
    match q.mode {
        Mode::Convex => match &cand.u {
            Some(u) => {
                in_l(u)
                    && !in_l(&cand.v)
                    && in_l(&cand.w)
                    && relation_holds(r, u, &cand.v)
                    && relation_holds(r, &cand.v, &cand.w)
            }
            None => false,
        },
        Mode::Closed => {
            cand.u.is_none() && !in_l(&cand.v) && in_l(&cand.w) && relation_holds(r, &cand.v, &cand.w)
        }
        Mode::Free => {
            cand.u.is_none()
                && in_l(&cand.v)
                && in_l(&cand.w)
                && cand.v != cand.w
                && relation_holds(r, &cand.v, &cand.w)
        }
    }
}

/// Upper bound on the size of a minimal witness for an `n`-state DFA.
pub fn witness_bound(n: u64, relation: Relation, mode: Mode) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidArgument("witness bounds need n >= 1".into()));
    }
    Ok(match (relation, mode) {
        (Relation::Factor | Relation::Suffix, Mode::Convex) => 3 * n * n * n + n * n + n - 1,
        (Relation::Factor | Relation::Suffix, _) => 2 * n * n + n - 1,
        (Relation::Prefix, Mode::Convex) => 2 * n - 1,
        (Relation::Prefix, Mode::Closed) => n,
        (Relation::Prefix, Mode::Free) => 2 * n - 1,
        (Relation::Subword, Mode::Closed) => n,
        (Relation::Subword, Mode::Free) => 2 * n - 1,
        (Relation::Subword, Mode::Convex) => 3 * n - 2,
    })
}

/// The minimal witness for `q` on `d`, or `None` when the property holds.
pub fn minimal_witness(d: &Dfa, q: &PropertyQuery) -> Result<Option<Witness>> {
    let checker = build_checker(d, q, Layout::Reachable)?;
    Ok(minimal_witness_in(&checker))
}

type Cost = [u32; 3];
const INF: Cost = [u32::MAX; 3];

#[inline]
fn add(a: Cost, b: Cost) -> Cost {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
fn edge_cost(e: &CheckerEdge) -> Cost {
    if e.label == Label::Eps {
        [0; 3]
    } else {
        [1, u32::from(e.emits(1)), u32::from(e.emits(2))]
    }
}

/// Lexicographic label-setting search. Edge costs are componentwise
/// non-negative, so settled labels are final.
fn label_setting(
    n: usize,
    sources: impl Iterator<Item = usize>,
    mut relax: impl FnMut(usize, &mut dyn FnMut(usize, Cost)),
) -> Vec<Cost> {
    let mut dist = vec![INF; n];
    let mut heap = BinaryHeap::new();
    for s in sources {
        dist[s] = [0; 3];
        heap.push(Reverse(([0u32; 3], s)));
    }
    while let Some(Reverse((d, s))) = heap.pop() {
        if d > dist[s] {
            continue;
        }
        relax(s, &mut |t, c| {
            let nd = add(d, c);
            if nd < dist[t] {
                dist[t] = nd;
                heap.push(Reverse((nd, t)));
            }
        });
    }
    dist
}

/// Minimal witness read off an already built checker.
pub fn minimal_witness_in(c: &Checker) -> Option<Witness> {
    let n = c.num_states();
    let (in_off, in_idx) = c.incoming();
    let edges = c.edges();

    let fwd = label_setting(n, std::iter::once(c.start()), |s, relax| {
        for e in c.edges_from(s) {
            relax(e.dst as usize, edge_cost(e));
        }
    });
    let bwd = label_setting(n, (0..n).filter(|&s| c.is_accepting(s)), |t, relax| {
        for &i in &in_idx[in_off[t]..in_off[t + 1]] {
            let e = &edges[i as usize];
            relax(e.src as usize, edge_cost(e));
        }
    });
    let opt = bwd[c.start()];
    if opt == INF {
        return None;
    }
    debug_assert!(edges.iter().all(|e| edge_cost(e).iter().all(|&x| x <= 1)));

    let tracks = c.arity();
    let mut allowed: Vec<bool> = (0..n)
        .map(|s| fwd[s] != INF && bwd[s] != INF && add(fwd[s], bwd[s]) == opt)
        .collect();
    let mut fixed: Vec<Word> = Vec::with_capacity(tracks);

    let admissible = |e: &CheckerEdge, allowed: &[bool], fixed: &[Word]| -> bool {
        let (s, t) = (e.src as usize, e.dst as usize);
        if !allowed[s] || !allowed[t] || add(add(fwd[s], edge_cost(e)), bwd[t]) != opt {
            return false;
        }
        let Label::Sym(a) = e.label else { return true };
        fixed
            .iter()
            .enumerate()
            .all(|(k, word)| !e.emits(k) || word[fwd[s][k] as usize] == a)
    };

    for track in 0..tracks {
        let target = opt[track] as usize;
        let mut visited = vec![false; n];
        let close = |frontier: Vec<usize>, visited: &mut Vec<bool>, allowed: &[bool], fixed: &[Word]| {
            let mut stack = frontier.clone();
            let mut out = frontier;
            while let Some(s) = stack.pop() {
                for e in c.edges_from(s) {
                    let t = e.dst as usize;
                    if !e.emits(track) && !visited[t] && admissible(e, allowed, fixed) {
                        visited[t] = true;
                        out.push(t);
                        stack.push(t);
                    }
                }
            }
            out
        };
        visited[c.start()] = true;
        let mut frontier = close(vec![c.start()], &mut visited, &allowed, &fixed);
        let mut word: Word = Vec::with_capacity(target);
        for _ in 0..target {
            let best = frontier
                .iter()
                .flat_map(|&s| c.edges_from(s))
                .filter(|e| e.emits(track) && admissible(e, &allowed, &fixed))
                .filter_map(|e| e.label.sym())
                .min()
                .expect("every state on an optimal path can continue");
            let mut next = Vec::new();
            for &s in &frontier {
                for e in c.edges_from(s) {
                    let t = e.dst as usize;
                    if e.emits(track) && e.label == Label::Sym(best) && !visited[t] && admissible(e, &allowed, &fixed) {
                        visited[t] = true;
                        next.push(t);
                    }
                }
            }
            word.push(best);
            frontier = close(next, &mut visited, &allowed, &fixed);
        }
        fixed.push(word);

        // keep the states lying on an admissible path that spells the new word
        let mut keep = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&s| visited[s] && c.is_accepting(s)).collect();
        for &s in &stack {
            keep[s] = true;
        }
        while let Some(t) = stack.pop() {
            for &i in &in_idx[in_off[t]..in_off[t + 1]] {
                let e = &edges[i as usize];
                let s = e.src as usize;
                if visited[s] && !keep[s] && admissible(e, &allowed, &fixed) {
                    keep[s] = true;
                    stack.push(s);
                }
            }
        }
        debug_assert!(keep[c.start()]);
        for s in 0..n {
            allowed[s] = allowed[s] && visited[s] && keep[s];
        }
    }

    let mut words = fixed.into_iter();
    let w = words.next().expect("outer word");
    let v = words.next().expect("middle word");
    let u = words.next();
    Witness::new(c.relation(), u, v, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{power, Alphabet};

    fn unary(n: usize, acc: &[usize]) -> Dfa {
        Dfa::from_fn(Alphabet::from_chars("a").unwrap(), n, 0, acc, |q, _| (q + 1) % n).unwrap()
    }

    fn a(k: usize) -> Word {
        power(&[Sym(0)], k)
    }

    #[test]
    fn unary_prefix_convex() {
        let d = unary(4, &[3]);
        let wit = minimal_witness(&d, &"prefix-convex".parse().unwrap()).unwrap().unwrap();
        assert_eq!((wit.u.clone().unwrap(), wit.v.clone(), wit.w.clone()), (a(3), a(4), a(7)));
        assert!(wit.decomposition_consistent());
    }

    #[test]
    fn unary_prefix_closed() {
        let d = unary(5, &[0]);
        let wit = minimal_witness(&d, &"prefix-closed".parse().unwrap()).unwrap().unwrap();
        assert_eq!((wit.v, wit.w), (a(1), a(5)));
    }

    #[test]
    fn unary_subword_closed() {
        let d = unary(5, &[0, 1, 2, 3]);
        let wit = minimal_witness(&d, &"subword-closed".parse().unwrap()).unwrap().unwrap();
        assert_eq!((wit.v, wit.w), (a(4), a(5)));
    }

    #[test]
    fn sigma_star_free_witness() {
        let d = Dfa::from_fn(Alphabet::from_chars("ab").unwrap(), 1, 0, &[0], |_, _| 0).unwrap();
        for r in Relation::ALL {
            let q = PropertyQuery::new(r, Mode::Free);
            let wit = minimal_witness(&d, &q).unwrap().unwrap();
            assert_eq!((wit.v.clone(), wit.w.clone()), (vec![], vec![Sym(0)]), "{q}");
            assert!(verify_witness(&d, &q, &wit));
            for m in [Mode::Convex, Mode::Closed] {
                assert!(minimal_witness(&d, &PropertyQuery::new(r, m)).unwrap().is_none());
            }
        }
    }

    #[test]
    fn verify_rejects_bad_candidates() {
        let d = unary(4, &[3]);
        let q: PropertyQuery = "prefix-convex".parse().unwrap();
        let bad = Witness::new(Relation::Prefix, Some(a(3)), a(3), a(7)).unwrap();
        assert!(!verify_witness(&d, &q, &bad));
        let eps_free = Witness::new(Relation::Prefix, None, vec![], a(1)).unwrap();
        let sigma_star = unary(1, &[0]);
        assert!(verify_witness(&sigma_star, &"prefix-free".parse().unwrap(), &eps_free));
    }

    #[test]
    fn bounds_table() {
        assert_eq!(witness_bound(5, Relation::Prefix, Mode::Convex).unwrap(), 9);
        assert_eq!(witness_bound(5, Relation::Subword, Mode::Convex).unwrap(), 13);
        assert_eq!(witness_bound(3, Relation::Factor, Mode::Convex).unwrap(), 92);
        assert_eq!(witness_bound(3, Relation::Suffix, Mode::Free).unwrap(), 20);
        assert!(witness_bound(0, Relation::Prefix, Mode::Closed).is_err());
    }

    #[test]
    fn decomposition_for_subwords() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let w = |s: &str| ab.parse_word(s).unwrap();
        let wit = Witness::new(Relation::Subword, Some(w("a")), w("ab"), w("baab")).unwrap();
        assert_eq!(
            wit.decomposition,
            Decomposition::Embedding {
                v: vec![1, 3],
                u: Some(vec![1])
            }
        );
        assert!(wit.decomposition_consistent());
        assert!(Witness::new(Relation::Factor, None, w("ab"), w("aab")).unwrap().decomposition_consistent());
        assert!(Witness::new(Relation::Factor, None, w("bb"), w("aab")).is_none());
    }
}
