//! Product automata whose languages are the outer words of witnesses.
//!
//! A checker runs up to three copies of the input DFA side by side: one on
//! the outer word `w`, one on the middle word `v` and, for convexity, one
//! on the inner word `u`. Its state carries a phase flag that fixes which
//! copies advance on the next symbol; ε-moves switch to the next phase.
//! For the subword relation there is a single phase and every symbol
//! nondeterministically picks which copies advance.
//!
//! Freeness checkers carry an extra bit recording that at least one symbol
//! went to `w` alone, so that `v` is a proper relative of `w`.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::{Label, NfaEps};
use crate::property::{Mode, PropertyQuery, Relation};

/// Default cap on checker states.
pub const DEFAULT_STATE_CAP: usize = 1 << 22;

/// Set of copies (tracks) advancing on a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Tracks(u8);

impl Tracks {
    pub const NONE: Tracks = Tracks(0);
    pub const W: Tracks = Tracks(1);
    pub const WV: Tracks = Tracks(3);
    pub const WVU: Tracks = Tracks(7);

    /// Track 0 is `w`, 1 is `v`, 2 is `u`.
    pub fn contains(self, track: usize) -> bool {
        self.0 & (1 << track) != 0
    }
}

struct Phase {
    patterns: &'static [Tracks],
    started: Tracks,
}

const fn ph(patterns: &'static [Tracks], started: Tracks) -> Phase {
    Phase { patterns, started }
}

const W: Tracks = Tracks::W;
const WV: Tracks = Tracks::WV;
const WVU: Tracks = Tracks::WVU;

static FACTOR_CONVEX: [Phase; 5] = [
    ph(&[W], W),
    ph(&[WV], WV),
    ph(&[WVU], WVU),
    ph(&[WV], WVU),
    ph(&[W], WVU),
];
static PREFIX_CONVEX: [Phase; 3] = [ph(&[WVU], WVU), ph(&[WV], WVU), ph(&[W], WVU)];
static SUFFIX_CONVEX: [Phase; 3] = [ph(&[W], W), ph(&[WV], WV), ph(&[WVU], WVU)];
static SUBWORD_CONVEX: [Phase; 1] = [ph(&[W, WV, WVU], WVU)];
static FACTOR_PAIR: [Phase; 3] = [ph(&[W], W), ph(&[WV], WV), ph(&[W], WV)];
static PREFIX_PAIR: [Phase; 2] = [ph(&[WV], WV), ph(&[W], WV)];
static SUFFIX_PAIR: [Phase; 2] = [ph(&[W], W), ph(&[WV], WV)];
static SUBWORD_PAIR: [Phase; 1] = [ph(&[W, WV], WV)];

fn scheme(relation: Relation, mode: Mode) -> &'static [Phase] {
    match (mode, relation) {
        (Mode::Convex, Relation::Factor) => &FACTOR_CONVEX,
        (Mode::Convex, Relation::Prefix) => &PREFIX_CONVEX,
        (Mode::Convex, Relation::Suffix) => &SUFFIX_CONVEX,
        (Mode::Convex, Relation::Subword) => &SUBWORD_CONVEX,
        (_, Relation::Factor) => &FACTOR_PAIR,
        (_, Relation::Prefix) => &PREFIX_PAIR,
        (_, Relation::Suffix) => &SUFFIX_PAIR,
        (_, Relation::Subword) => &SUBWORD_PAIR,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Every state the construction rules range over.
    Full,
    /// Only states reachable from the start state.
    Reachable,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckerOptions {
    pub layout: Layout,
    /// Add the properness bit to freeness checkers.
    pub properness: bool,
    pub state_cap: usize,
}

impl Default for CheckerOptions {
    fn default() -> Self {
        CheckerOptions {
            layout: Layout::Reachable,
            properness: true,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

impl CheckerOptions {
    pub fn layout(layout: Layout) -> Self {
        CheckerOptions {
            layout,
            ..Default::default()
        }
    }
}

/// A checker state: DFA states of the `w`, `v` (and `u`) copies, the
/// 1-based phase flag and the properness bit where present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CheckerState {
    pub components: [u32; 3],
    pub arity: u8,
    pub flag: Option<u8>,
    pub proper: Option<bool>,
}

impl CheckerState {
    pub fn components(&self) -> &[u32] {
        &self.components[..self.arity as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckerEdge {
    pub src: u32,
    pub dst: u32,
    pub label: Label,
    /// Copies advanced by this move; empty for ε-moves.
    pub advance: Tracks,
}

impl CheckerEdge {
    /// Whether this move consumes a symbol of the word on `track`.
    #[inline]
    pub fn emits(&self, track: usize) -> bool {
        self.label != Label::Eps && self.advance.contains(track)
    }
}

/// A checker automaton, stored as an edge list grouped by source state.
#[derive(Debug, Clone)]
pub struct Checker {
    relation: Relation,
    mode: Mode,
    alphabet: Alphabet,
    states: Vec<CheckerState>,
    accepting: Vec<bool>,
    edges: Vec<CheckerEdge>,
    offsets: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    phase: u8,
    comps: [u32; 3],
    bit: bool,
}

struct Construction<'a> {
    dfa: &'a Dfa,
    mode: Mode,
    phases: &'static [Phase],
    arity: usize,
    properness: bool,
    flagged: bool,
}

impl Construction<'_> {
    fn start(&self) -> Key {
        let q0 = self.dfa.start() as u32;
        Key {
            phase: 0,
            comps: [q0; 3],
            bit: false,
        }
    }

    fn is_accepting(&self, k: &Key) -> bool {
        if k.phase as usize != self.phases.len() - 1 {
            return false;
        }
        let f = |i: usize| self.dfa.is_accepting(k.comps[i] as usize);
        match self.mode {
            Mode::Convex => f(0) && !f(1) && f(2),
            Mode::Closed => f(0) && !f(1),
            Mode::Free => f(0) && f(1) && (k.bit || !self.properness),
        }
    }

    fn state(&self, k: &Key) -> CheckerState {
        let mut comps = [0u32; 3];
        comps[..self.arity].copy_from_slice(&k.comps[..self.arity]);
        CheckerState {
            components: comps,
            arity: self.arity as u8,
            flag: self.flagged.then_some(k.phase + 1),
            proper: (self.mode == Mode::Free && self.properness).then_some(k.bit),
        }
    }

    fn successors(&self, k: &Key, out: &mut Vec<(Label, Tracks, Key)>) {
        out.clear();
        let phase = &self.phases[k.phase as usize];
        for a in self.dfa.alphabet().symbols() {
            for &pat in phase.patterns {
                let mut next = *k;
                for t in 0..self.arity {
                    if pat.contains(t) {
                        next.comps[t] = self.dfa.next(k.comps[t] as usize, a) as u32;
                    }
                }
                if self.mode == Mode::Free && self.properness && pat == Tracks::W {
                    next.bit = true;
                }
                out.push((Label::Sym(a), pat, next));
            }
        }
        if (k.phase as usize) + 1 < self.phases.len() {
            let mut next = *k;
            next.phase += 1;
            out.push((Label::Eps, Tracks::NONE, next));
        }
    }

    /// Every key in the rule domain, phase-major, components in
    /// lexicographic order.
    fn all_keys(&self) -> Vec<Key> {
        let n = self.dfa.num_states() as u32;
        let q0 = self.dfa.start() as u32;
        let bits: &[bool] = if self.mode == Mode::Free && self.properness {
            &[false, true]
        } else {
            &[false]
        };
        let mut keys = Vec::new();
        for (pi, phase) in self.phases.iter().enumerate() {
            let ranges: Vec<Vec<u32>> = (0..3)
                .map(|t| {
                    if t < self.arity && phase.started.contains(t) {
                        (0..n).collect()
                    } else {
                        vec![q0]
                    }
                })
                .collect();
            for &c0 in &ranges[0] {
                for &c1 in &ranges[1] {
                    for &c2 in &ranges[2] {
                        for &bit in bits {
                            keys.push(Key {
                                phase: pi as u8,
                                comps: [c0, c1, c2],
                                bit,
                            });
                        }
                    }
                }
            }
        }
        keys
    }
}

/// Builds the checker for `query` on `dfa`. A converse query is answered on
/// the complement of `dfa`. The `almost` flag is ignored here.
pub fn build_checker(dfa: &Dfa, query: &PropertyQuery, layout: Layout) -> Result<Checker> {
    build_checker_with(dfa, query, CheckerOptions::layout(layout))
}

pub fn build_checker_with(dfa: &Dfa, query: &PropertyQuery, opts: CheckerOptions) -> Result<Checker> {
    query.validate()?;
    let complemented;
    let dfa = if query.converse {
        complemented = dfa.complement();
        &complemented
    } else {
        dfa
    };
    let phases = scheme(query.relation, query.mode);
    let c = Construction {
        dfa,
        mode: query.mode,
        phases,
        arity: if query.mode == Mode::Convex { 3 } else { 2 },
        properness: opts.properness,
        flagged: query.relation != Relation::Subword,
    };

    let mut ids: HashMap<Key, u32> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let too_many = |count: usize| Error::ResourceLimit {
        what: "checker states",
        count,
        cap: opts.state_cap,
    };
    let full = opts.layout == Layout::Full;
    if full {
        keys = c.all_keys();
        if keys.len() > opts.state_cap {
            return Err(too_many(keys.len()));
        }
        ids.reserve(keys.len());
        for (i, k) in keys.iter().enumerate() {
            ids.insert(*k, i as u32);
        }
    } else {
        keys.push(c.start());
        ids.insert(c.start(), 0);
    }

    let mut edges = Vec::new();
    let mut offsets = vec![0];
    let mut scratch = Vec::new();
    let mut queue: VecDeque<u32> = (0..keys.len() as u32).collect();
    while let Some(src) = queue.pop_front() {
        let key = keys[src as usize];
        c.successors(&key, &mut scratch);
        for &(label, advance, next) in &scratch {
            let dst = match ids.get(&next) {
                Some(&id) => id,
                None if full => unreachable!("rule domain is closed under the rules"),
                None => {
                    let id = keys.len();
                    if id >= opts.state_cap {
                        return Err(too_many(id + 1));
                    }
                    keys.push(next);
                    ids.insert(next, id as u32);
                    queue.push_back(id as u32);
                    id as u32
                }
            };
            edges.push(CheckerEdge {
                src,
                dst,
                label,
                advance,
            });
        }
        offsets.push(edges.len());
    }

    Ok(Checker {
        relation: query.relation,
        mode: query.mode,
        alphabet: dfa.alphabet().clone(),
        accepting: keys.iter().map(|k| c.is_accepting(k)).collect(),
        states: keys.iter().map(|k| c.state(k)).collect(),
        edges,
        offsets,
    })
}

impl Checker {
    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of tracks: 3 for convexity, 2 otherwise.
    pub fn arity(&self) -> usize {
        if self.mode == Mode::Convex {
            3
        } else {
            2
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Number of rule applications. Two rules may yield the same
    /// (source, label, target) triple; both are counted.
    pub fn num_transitions(&self) -> usize {
        self.edges.len()
    }

    pub fn num_accepting(&self) -> usize {
        self.accepting.iter().filter(|&&b| b).count()
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn state(&self, id: usize) -> &CheckerState {
        &self.states[id]
    }

    pub fn is_accepting(&self, id: usize) -> bool {
        self.accepting[id]
    }

    pub fn edges(&self) -> &[CheckerEdge] {
        &self.edges
    }

    pub fn edges_from(&self, id: usize) -> &[CheckerEdge] {
        &self.edges[self.offsets[id]..self.offsets[id + 1]]
    }

    /// Edge indices grouped by target state.
    pub(crate) fn incoming(&self) -> (Vec<usize>, Vec<u32>) {
        let n = self.num_states();
        let mut counts = vec![0usize; n + 1];
        for e in &self.edges {
            counts[e.dst as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut idx = vec![0u32; self.edges.len()];
        for (i, e) in self.edges.iter().enumerate() {
            idx[fill[e.dst as usize]] = i as u32;
            fill[e.dst as usize] += 1;
        }
        (counts, idx)
    }

    /// True iff no accepting state is reachable from the start state.
    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.num_states()];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(s) = stack.pop() {
            if self.accepting[s] {
                return false;
            }
            for e in self.edges_from(s) {
                if !seen[e.dst as usize] {
                    seen[e.dst as usize] = true;
                    stack.push(e.dst as usize);
                }
            }
        }
        true
    }

    /// The checker as a plain NFA-ε (duplicate triples merged).
    pub fn to_nfa(&self) -> NfaEps {
        let transitions = self
            .edges
            .iter()
            .map(|e| (e.src as usize, e.label, e.dst as usize))
            .collect();
        let accepting: Vec<usize> = (0..self.num_states()).filter(|&s| self.accepting[s]).collect();
        NfaEps::new(self.alphabet.clone(), self.num_states(), 0, &accepting, transitions)
            .expect("checker is a well-formed automaton")
    }

    /// Number of reachable states (equal to `num_states` for the reachable
    /// layout).
    pub fn num_reachable(&self) -> usize {
        let mut seen = vec![false; self.num_states()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(s) = stack.pop() {
            for e in self.edges_from(s) {
                if !seen[e.dst as usize] {
                    seen[e.dst as usize] = true;
                    count += 1;
                    stack.push(e.dst as usize);
                }
            }
        }
        count
    }
}

/// Closed-form size `(states, transitions)` of the full-layout checker
/// without the properness bit.
pub fn checker_size_formula(n: u64, sigma: u64, relation: Relation, mode: Mode) -> (u64, u64) {
    let (n2, n3) = (n * n, n * n * n);
    match (mode, relation) {
        (Mode::Convex, Relation::Factor) => (3 * n3 + n2 + n, (3 * sigma + 2) * n3 + (sigma + 1) * (n2 + n)),
        (Mode::Convex, Relation::Prefix) => (3 * n3, (3 * sigma + 2) * n3),
        (Mode::Convex, Relation::Suffix) => (n3 + n2 + n, sigma * n3 + (sigma + 1) * (n2 + n)),
        (Mode::Convex, Relation::Subword) => (n3, 3 * sigma * n3),
        (_, Relation::Factor) => (2 * n2 + n, (2 * sigma + 1) * n2 + (sigma + 1) * n),
        (_, Relation::Prefix) => (2 * n2, (2 * sigma + 1) * n2),
        (_, Relation::Suffix) => (n2 + n, sigma * n2 + (sigma + 1) * n),
        (_, Relation::Subword) => (n2, 2 * sigma * n2),
    }
}

/// Sizes stated in the literature for the constructions that have a
/// published count, as `(states, transitions)`.
pub fn published_size(n: u64, sigma: u64, relation: Relation, mode: Mode) -> (Option<u64>, Option<u64>) {
    let (n2, n3) = (n * n, n * n * n);
    match (mode, relation) {
        (Mode::Convex, Relation::Factor) => (
            Some(3 * n3 + n2 + n),
            Some((3 * sigma + 2) * n3 + (sigma + 1) * (n2 + n)),
        ),
        (Mode::Convex, Relation::Prefix) => (Some(3 * n3), Some(3 * (sigma + 1) * n3)),
        (Mode::Convex, Relation::Suffix) => (Some(n3), Some(sigma * n3 + (sigma + 1) * (n2 + n))),
        (Mode::Convex, Relation::Subword) => (Some(n3), Some(sigma * n3)),
        (Mode::Closed | Mode::Free, Relation::Factor) => {
            (Some(2 * n2 + n), Some((2 * sigma + 1) * n2 + (sigma + 1)))
        }
        _ => (None, None),
    }
}
