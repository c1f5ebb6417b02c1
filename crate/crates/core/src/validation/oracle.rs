//! Reference witness search, independent of the checker automata.
//!
//! Two strategies:
//!
//! * enumeration of all words up to a horizon, in length-then-lex order,
//!   testing the witness definitions directly;
//! * for the prefix, suffix and factor orders, an exact search over the
//!   transition monoid. Every witness splits as `w = o1·v·o2` and (for
//!   convexity) `v = i1·u·i2`, and whether it is a witness depends only on
//!   the transition maps of the pieces. Each piece is replaced by the
//!   shortest, lexicographically least word with the same map, which yields
//!   the optimal cost; the least outer word among optimal splittings is then
//!   searched directly for its least `v` and `u`.
//!
//! The monoid strategy reaches horizons far beyond enumeration (witness
//! bounds are cubic in the number of states) and is cross-checked against
//! enumeration where both apply.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{shortlex, Sym, Word};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::NfaEps;
use crate::property::{Mode, PropertyQuery, Relation};
use crate::validation::relation::relation_holds;
use crate::witness::Witness;

/// Cap on the number of words enumerated.
pub const ENUMERATION_CAP: usize = 1 << 22;
/// Cap on the transition monoid size.
pub const MONOID_CAP: usize = 1 << 12;
/// Horizons whose word count stays below this are always enumerated.
const SMALL_ENUMERATION: usize = 1 << 12;

#[derive(Debug, Clone, Copy)]
pub enum Lang<'a> {
    Dfa(&'a Dfa),
    Nfa(&'a NfaEps),
}

impl<'a> From<&'a Dfa> for Lang<'a> {
    fn from(d: &'a Dfa) -> Self {
        Lang::Dfa(d)
    }
}

impl<'a> From<&'a NfaEps> for Lang<'a> {
    fn from(m: &'a NfaEps) -> Self {
        Lang::Nfa(m)
    }
}

impl Lang<'_> {
    fn sigma(&self) -> usize {
        match self {
            Lang::Dfa(d) => d.alphabet().len(),
            Lang::Nfa(m) => m.alphabet().len(),
        }
    }
}

/// Outcome of a bounded search. No witness means none up to the horizon.
#[derive(Debug, Clone)]
pub struct OracleVerdict {
    pub query: PropertyQuery,
    pub max_len: usize,
    pub witness: Option<Witness>,
}

impl OracleVerdict {
    /// One-sided: true means no witness with `|w| <= max_len`.
    pub fn holds_up_to_horizon(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn brute_force_verdict<'a>(lang: impl Into<Lang<'a>>, q: &PropertyQuery, max_len: usize) -> Result<OracleVerdict> {
    Ok(OracleVerdict {
        query: *q,
        max_len,
        witness: brute_force_minimal_witness(lang, q, max_len)?,
    })
}

/// Minimal witness with `|w| <= max_len` under the same order as the
/// witness engine: `(|w|, |v|, |u|)`, then `w`, `v`, `u` lexicographically.
pub fn brute_force_minimal_witness<'a>(
    lang: impl Into<Lang<'a>>,
    q: &PropertyQuery,
    max_len: usize,
) -> Result<Option<Witness>> {
    let lang = lang.into();
    q.validate()?;
    let small = word_count(lang.sigma(), max_len).is_some_and(|c| c <= SMALL_ENUMERATION);
    if small || q.relation == Relation::Subword {
        return enumerate_minimal_witness(lang, q, max_len);
    }
    let owned;
    let d = match lang {
        Lang::Dfa(d) => d,
        Lang::Nfa(m) => {
            owned = m.determinize()?;
            &owned
        }
    };
    Ok(monoid_minimal_witness(d, q)?.filter(|w| w.w.len() <= max_len))
}

fn word_count(sigma: usize, max_len: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=max_len {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(sigma)?;
    }
    Some(total)
}

/// Membership of every word up to a length, indexed by length and by the
/// base-|Σ| value of the word.
struct Table {
    sigma: usize,
    member: Vec<Vec<bool>>,
}

impl Table {
    fn build(lang: Lang<'_>, max_len: usize, negate: bool) -> Result<Table> {
        let sigma = lang.sigma();
        match word_count(sigma, max_len) {
            Some(c) if c <= ENUMERATION_CAP => {}
            c => {
                return Err(Error::ResourceLimit {
                    what: "enumerated words",
                    count: c.unwrap_or(usize::MAX),
                    cap: ENUMERATION_CAP,
                })
            }
        }
        let mut member = Vec::with_capacity(max_len + 1);
        match lang {
            Lang::Dfa(d) => {
                let mut layer = vec![d.start()];
                for len in 0..=max_len {
                    if len > 0 {
                        layer = layer
                            .iter()
                            .flat_map(|&q| (0..sigma).map(move |a| d.next(q, Sym(a as u32))))
                            .collect();
                    }
                    member.push(layer.iter().map(|&q| d.is_accepting(q) != negate).collect());
                }
            }
            Lang::Nfa(m) => {
                let succ = m.successors();
                let close = |mut set: std::collections::BTreeSet<usize>| {
                    m.eps_closure(&succ, &mut set);
                    set
                };
                let mut layer = vec![close([m.start()].into())];
                for len in 0..=max_len {
                    if len > 0 {
                        layer = layer
                            .iter()
                            .flat_map(|set| {
                                (0..sigma).map(|a| {
                                    let a = crate::nfa::Label::Sym(Sym(a as u32));
                                    close(
                                        set.iter()
                                            .flat_map(|&p| succ[p].iter())
                                            .filter(|&&(l, _)| l == a)
                                            .map(|&(_, q)| q)
                                            .collect(),
                                    )
                                })
                            })
                            .collect();
                    }
                    member.push(
                        layer
                            .iter()
                            .map(|s| s.iter().any(|&q| m.is_accepting(q)) != negate)
                            .collect(),
                    );
                }
            }
        }
        Ok(Table { sigma, member })
    }

    fn contains(&self, w: &[Sym]) -> bool {
        let idx = w.iter().fold(0usize, |acc, s| acc * self.sigma + s.index());
        self.member[w.len()][idx]
    }
}

fn word_at(sigma: usize, len: usize, mut idx: usize) -> Word {
    let mut w = vec![Sym(0); len];
    for slot in w.iter_mut().rev() {
        *slot = Sym((idx % sigma) as u32);
        idx /= sigma;
    }
    w
}

/// All `x` with `x ⊴ y` (with repetitions for subwords).
fn relatives(relation: Relation, y: &[Sym]) -> Vec<Word> {
    let k = y.len();
    match relation {
        Relation::Prefix => (0..=k).map(|i| y[..i].to_vec()).collect(),
        Relation::Suffix => (0..=k).map(|i| y[k - i..].to_vec()).collect(),
        Relation::Factor => (0..=k)
            .flat_map(|len| (0..=k - len).map(move |i| y[i..i + len].to_vec()))
            .collect(),
        Relation::Subword => (0u64..1 << k)
            .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| y[i]).collect())
            .collect(),
    }
}

/// `(|v|, |u|, v, u)` for the best inner words of `w`, if any.
type Inner = (usize, usize, Word, Option<Word>);

fn best_inner(
    q: &PropertyQuery,
    w: &[Sym],
    in_l: &dyn Fn(&[Sym]) -> bool,
    v_len: Option<usize>,
    u_len: Option<usize>,
) -> Option<Inner> {
    let mut best: Option<Inner> = None;
    for v in relatives(q.relation, w) {
        if v.len() >= w.len() || v_len.is_some_and(|l| l != v.len()) {
            continue;
        }
        let cand = match q.mode {
            Mode::Closed if !in_l(&v) => (v.len(), 0, v, None),
            Mode::Free if in_l(&v) => (v.len(), 0, v, None),
            Mode::Convex if !in_l(&v) => {
                let u = relatives(q.relation, &v)
                    .into_iter()
                    .filter(|u| u_len.is_none_or(|l| l == u.len()) && in_l(u))
                    .min_by(|a, b| shortlex(a, b));
                match u {
                    Some(u) => (v.len(), u.len(), v, Some(u)),
                    None => continue,
                }
            }
            _ => continue,
        };
        let better = match &best {
            None => true,
            Some(b) => (cand.0, cand.1, &cand.2, &cand.3) < (b.0, b.1, &b.2, &b.3),
        };
        if better {
            best = Some(cand);
        }
    }
    best
}

/// Exhaustive search over all words `w` with `|w| <= max_len`.
pub fn enumerate_minimal_witness<'a>(
    lang: impl Into<Lang<'a>>,
    q: &PropertyQuery,
    max_len: usize,
) -> Result<Option<Witness>> {
    q.validate()?;
    let lang = lang.into();
    let table = Table::build(lang, max_len, q.converse)?;
    let in_l = |x: &[Sym]| table.contains(x);
    let sigma = table.sigma;
    for len in 0..=max_len {
        let mut best: Option<(Inner, Word)> = None;
        for (idx, &member) in table.member[len].iter().enumerate() {
            if !member {
                continue;
            }
            let w = word_at(sigma, len, idx);
            if let Some(inner) = best_inner(q, &w, &in_l, None, None) {
                // words come in lex order, so only a cheaper inner pair wins
                if best.as_ref().is_none_or(|(b, _)| (inner.0, inner.1) < (b.0, b.1)) {
                    best = Some((inner, w));
                }
            }
        }
        if let Some(((_, _, v, u), w)) = best {
            return Ok(Witness::new(q.relation, u, v, w));
        }
    }
    Ok(None)
}

/// Transition maps of all words, each with its shortest, least word.
struct Monoid {
    maps: Vec<Vec<u32>>,
    reps: Vec<Word>,
}

impl Monoid {
    fn build(d: &Dfa, cap: usize) -> Result<Monoid> {
        let n = d.num_states();
        let id: Vec<u32> = (0..n as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(id.clone(), 0)]);
        let mut maps = vec![id];
        let mut reps = vec![Vec::new()];
        let mut i = 0;
        // breadth first, so the first word found for a map is shortest and,
        // expanding in order, lexicographically least
        while i < maps.len() {
            for a in d.alphabet().symbols() {
                let next: Vec<u32> = maps[i].iter().map(|&q| d.next(q as usize, a) as u32).collect();
                if !index.contains_key(&next) {
                    if maps.len() >= cap {
                        return Err(Error::ResourceLimit {
                            what: "monoid elements",
                            count: maps.len() + 1,
                            cap,
                        });
                    }
                    index.insert(next.clone(), maps.len());
                    let mut w = reps[i].clone();
                    w.push(a);
                    maps.push(next);
                    reps.push(w);
                }
            }
            i += 1;
        }
        Ok(Monoid { maps, reps })
    }
}

/// Shortest, least words from `from` to each state; with `nonempty`, the
/// words must be nonempty.
fn state_words(d: &Dfa, from: usize, nonempty: bool) -> Vec<Option<Word>> {
    let n = d.num_states();
    // node = state + n * (word is nonempty)
    let mut best: Vec<Option<Word>> = vec![None; 2 * n];
    best[from] = Some(Vec::new());
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        let word = best[x].clone().expect("queued nodes are labelled");
        for a in d.alphabet().symbols() {
            let y = d.next(x % n, a) + n;
            if best[y].is_none() {
                let mut w = word.clone();
                w.push(a);
                best[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    (0..n)
        .map(|q| {
            let hit = best[q + n].clone();
            if nonempty {
                hit
            } else {
                best[q].clone().or(hit)
            }
        })
        .collect()
}

fn least<'w>(a: Option<&'w Word>, b: Option<&'w Word>) -> Option<&'w Word> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if shortlex(x, y).is_le() { x } else { y }),
        (x, y) => x.or(y),
    }
}

/// Candidate words for an outer piece: per state, the best word overall
/// and the best nonempty word.
struct Pieces {
    any: Vec<Option<Word>>,
    nonempty: Vec<Option<Word>>,
}

impl Pieces {
    /// Words leading from the start state to each state.
    fn from_start(d: &Dfa) -> Pieces {
        Pieces {
            any: state_words(d, d.start(), false),
            nonempty: state_words(d, d.start(), true),
        }
    }

    /// Words leading from each state into the (possibly complemented)
    /// accepting set.
    fn to_accepting(d: &Dfa, in_f: &dyn Fn(usize) -> bool) -> Pieces {
        let n = d.num_states();
        let pick = |nonempty: bool| -> Vec<Option<Word>> {
            (0..n)
                .map(|r| {
                    let words = state_words(d, r, nonempty);
                    (0..n)
                        .filter(|&f| in_f(f))
                        .fold(None, |acc, f| least(acc, words[f].as_ref()))
                        .cloned()
                })
                .collect()
        };
        Pieces {
            any: pick(false),
            nonempty: pick(true),
        }
    }

    /// `(word, nonempty)` options at state `s`; a forced-empty piece only
    /// allows ε at the identity position.
    fn options(&self, s: usize, free: bool) -> Vec<(&Word, bool)> {
        let mut out = Vec::new();
        if let Some(w) = &self.any[s] {
            out.push((w, !w.is_empty()));
            if free && w.is_empty() {
                if let Some(ne) = &self.nonempty[s] {
                    out.push((ne, true));
                }
            }
        }
        out
    }
}

/// Keeps the splittings of least cost.
fn offer<'w>(best: &mut [usize; 3], cands: &mut Vec<Vec<&'w Word>>, cost: [usize; 3], parts: Vec<&'w Word>) {
    if cost < *best {
        *best = cost;
        cands.clear();
    }
    if cost == *best {
        cands.push(parts);
    }
}

/// Exact minimal witness for the prefix, suffix and factor orders.
pub fn monoid_minimal_witness(d: &Dfa, q: &PropertyQuery) -> Result<Option<Witness>> {
    q.validate()?;
    if q.relation == Relation::Subword {
        return Err(Error::InvalidArgument("the monoid oracle covers prefix, suffix and factor".into()));
    }
    let complemented;
    let d = if q.converse {
        complemented = d.complement();
        &complemented
    } else {
        d
    };
    let n = d.num_states();
    let monoid = Monoid::build(d, MONOID_CAP)?;
    let q0 = d.start();
    let in_f = |s: usize| d.is_accepting(s);
    let (left_open, right_open) = match q.relation {
        Relation::Prefix => (false, true),
        Relation::Suffix => (true, false),
        _ => (true, true),
    };
    let free = q.mode == Mode::Free;
    let to_state = Pieces::from_start(d);
    let to_accept = Pieces::to_accepting(d, &in_f);
    let empty = Vec::new();

    // left outer options: (state after o1, word, nonempty)
    let lefts: Vec<(usize, &Word, bool)> = if left_open {
        (0..n)
            .flat_map(|p| to_state.options(p, free).into_iter().map(move |(w, ne)| (p, w, ne)))
            .collect()
    } else {
        vec![(q0, &empty, false)]
    };
    let rights = |r: usize| -> Vec<(&Word, bool)> {
        if right_open {
            to_accept.options(r, free)
        } else if in_f(r) {
            vec![(&empty, false)]
        } else {
            Vec::new()
        }
    };
    let all_maps: Vec<usize> = (0..monoid.maps.len()).collect();
    let identity = vec![0usize];
    let i1_maps = if left_open { &all_maps } else { &identity };
    let i2_maps = if right_open { &all_maps } else { &identity };

    let mut best_cost = [usize::MAX; 3];
    let mut cands: Vec<Vec<&Word>> = Vec::new();
    let compose = |f: &[u32], g: &[u32]| -> Vec<u32> { f.iter().map(|&x| g[x as usize]).collect() };

    match q.mode {
        Mode::Closed | Mode::Free => {
            for (v_idx, fv) in monoid.maps.iter().enumerate() {
                let v_in = in_f(fv[q0] as usize);
                if v_in != free {
                    continue;
                }
                let v = &monoid.reps[v_idx];
                for &(p, o1, ne1) in &lefts {
                    let r = fv[p] as usize;
                    for (o2, ne2) in rights(r) {
                        if free && !ne1 && !ne2 {
                            continue;
                        }
                        let cost = [o1.len() + v.len() + o2.len(), v.len(), 0];
                        offer(&mut best_cost, &mut cands, cost, vec![o1, v, o2]);
                    }
                }
            }
        }
        Mode::Convex => {
            for (u_idx, fu) in monoid.maps.iter().enumerate() {
                if !in_f(fu[q0] as usize) {
                    continue;
                }
                let u = &monoid.reps[u_idx];
                for &i1_idx in i1_maps {
                    let fi1 = &monoid.maps[i1_idx];
                    let i1 = &monoid.reps[i1_idx];
                    let f_left = compose(fi1, fu);
                    for &i2_idx in i2_maps {
                        let fi2 = &monoid.maps[i2_idx];
                        let i2 = &monoid.reps[i2_idx];
                        let fv = compose(&f_left, fi2);
                        if in_f(fv[q0] as usize) {
                            continue;
                        }
                        let v_len = i1.len() + u.len() + i2.len();
                        for &(p, o1, _) in &lefts {
                            for (o2, _) in rights(fv[p] as usize) {
                                let cost = [o1.len() + v_len + o2.len(), v_len, u.len()];
                                offer(&mut best_cost, &mut cands, cost, vec![o1, i1, u, i2, o2]);
                            }
                        }
                    }
                }
            }
        }
    }

    let Some(w) = cands
        .iter()
        .map(|parts| parts.iter().flat_map(|p| p.iter().copied()).collect::<Word>())
        .min()
    else {
        return Ok(None);
    };
    let in_l = |x: &[Sym]| d.accepts(x);
    let (_, _, v, u) = best_inner(q, &w, &in_l, Some(best_cost[1]), (q.mode == Mode::Convex).then_some(best_cost[2]))
        .expect("the least outer word has an optimal splitting");
    Ok(Witness::new(q.relation, u, v, w))
}

/// Checks the witness definition on explicit words; used by tests.
pub fn is_witness(in_l: &dyn Fn(&[Sym]) -> bool, q: &PropertyQuery, u: Option<&[Sym]>, v: &[Sym], w: &[Sym]) -> bool {
    let r = q.relation;
    let member = |x: &[Sym]| in_l(x) != q.converse;
    match (q.mode, u) {
        (Mode::Convex, Some(u)) => {
            member(u) && !member(v) && member(w) && relation_holds(r, u, v) && relation_holds(r, v, w)
        }
        (Mode::Closed, None) => !member(v) && member(w) && relation_holds(r, v, w),
        (Mode::Free, None) => member(v) && member(w) && v != w && relation_holds(r, v, w),
        _ => false,
    }
}
