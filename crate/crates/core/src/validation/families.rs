//! Extremal automaton families: languages whose minimal witnesses are as
//! long as the witness bounds allow (or asymptotically so).

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, Sym};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::format::Automaton;
use crate::nfa::{Label, NfaEps};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Over {0,1}; long witnesses for factor- and suffix-closure, with
    /// outer word length `(n+1)²−1`.
    XuFactorClosure,
    /// `bbb(a^{n-1})⁺ ∪ bb(a+…+a^{n-1})(a^n)* ∪ b(a^{n+1})⁺`.
    NscSuffixConvex,
    /// The previous language followed by `b`.
    NscFactorConvex,
    /// `bb(a^n)⁺b ∪ b(a^{n+1})⁺b`.
    FactorFreeHard,
    /// `bb(a^n)⁺ ∪ b(a^{n+1})⁺`.
    SuffixFreeHard,
    /// `a^{n-1}(a^n)*`.
    UnaryNpc,
    /// `(a^n)*`.
    UnaryPrefixClosed,
    /// `(a^n)*(ε+a+…+a^{n-2})`.
    UnarySubwordClosed,
    /// `(a^n)⁺bb ∪ (a^{n+1})⁺b` as an NFA with `2n+4` states.
    NfaPrefixFreeHard,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::XuFactorClosure,
        Family::NscSuffixConvex,
        Family::NscFactorConvex,
        Family::FactorFreeHard,
        Family::SuffixFreeHard,
        Family::UnaryNpc,
        Family::UnaryPrefixClosed,
        Family::UnarySubwordClosed,
        Family::NfaPrefixFreeHard,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::XuFactorClosure => "xu-factor-closure",
            Family::NscSuffixConvex => "nsc-suffix-convex",
            Family::NscFactorConvex => "nsc-factor-convex",
            Family::FactorFreeHard => "factor-free-hard",
            Family::SuffixFreeHard => "suffix-free-hard",
            Family::UnaryNpc => "unary-npc",
            Family::UnaryPrefixClosed => "unary-prefix-closed",
            Family::UnarySubwordClosed => "unary-subword-closed",
            Family::NfaPrefixFreeHard => "nfa-prefix-free-hard",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::NscSuffixConvex | Family::NscFactorConvex => 3,
            _ => 2,
        }
    }

    /// Number of states of the generated automaton.
    pub fn states(self, n: usize) -> usize {
        match self {
            Family::XuFactorClosure => 2 * n + 4,
            Family::NscSuffixConvex => 3 * n + 5,
            Family::NscFactorConvex => 3 * n + 6,
            Family::FactorFreeHard => 2 * n + 6,
            Family::SuffixFreeHard => 2 * n + 5,
            Family::UnaryNpc | Family::UnaryPrefixClosed | Family::UnarySubwordClosed => n,
            Family::NfaPrefixFreeHard => 2 * n + 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "xu" {
            return Ok(Family::XuFactorClosure);
        }
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n }
    }
}

/// Table-driven DFA; unspecified moves go to `dead`.
struct Table {
    sigma: usize,
    delta: Vec<usize>,
    accepting: Vec<usize>,
}

impl Table {
    fn new(states: usize, sigma: usize, dead: usize) -> Table {
        Table {
            sigma,
            delta: vec![dead; states * sigma],
            accepting: Vec::new(),
        }
    }

    fn set(&mut self, p: usize, a: usize, q: usize) {
        self.delta[p * self.sigma + a] = q;
    }

    fn build(self, alphabet: Alphabet, start: usize) -> Dfa {
        let states = self.delta.len() / self.sigma;
        Dfa::new(alphabet, states, start, &self.accepting, self.delta).expect("family tables are well formed")
    }
}

const A: usize = 0;
const B: usize = 1;

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn unary(n: usize, accept: impl Fn(usize) -> bool) -> Dfa {
    let acc: Vec<usize> = (0..n).filter(|&k| accept(k)).collect();
    Dfa::from_fn(Alphabet::from_chars("a").unwrap(), n, 0, &acc, |q, _| (q + 1) % n).unwrap()
}

fn xu(n: usize) -> Dfa {
    // q_i = i (0..=n+1), p_j = n + 2 + j (0..=n+1); q_{n+1} is the dead state
    let q = |i: usize| i;
    let p = |j: usize| n + 2 + j;
    let dead = q(n + 1);
    let mut t = Table::new(2 * n + 4, 2, dead);
    t.set(q(0), 0, q(0));
    t.set(q(0), 1, q(1));
    for i in 1..=n {
        t.set(q(i), 0, if i < n { q(i + 1) } else { q(1) });
        let on1 = match i {
            _ if i + 1 < n => q(1),
            _ if i + 1 == n => p(0),
            _ => dead,
        };
        t.set(q(i), 1, on1);
    }
    for j in 0..=n {
        // p_0..p_n is a cycle on 0; routing p_n to q_0 instead would let the
        // final block of zeros be arbitrarily long and admit short witnesses
        t.set(p(j), 0, if j < n { p(j + 1) } else { p(0) });
        t.set(p(j), 1, if j < n { dead } else { p(n + 1) });
    }
    t.accepting = (0..2 * n + 4).filter(|&s| s != dead).collect();
    t.build(Alphabet::from_chars("01").unwrap(), q(0))
}

/// Lays out `start, b-chain, cycles…, dead`. Each cycle hangs off the
/// state reached by `b^k` and has the given length; returns the ids of the
/// cycle states (`ids[j]` is reached after `j` further `a`s, mod length).
struct Layout {
    next: usize,
}

impl Layout {
    fn take(&mut self, k: usize) -> Vec<usize> {
        let ids = (self.next..self.next + k).collect();
        self.next += k;
        ids
    }
}

/// Attaches an `a`-cycle of length `len` to `anchor`: `anchor -a-> c[1 % len]`.
fn cycle(t: &mut Table, anchor: usize, c: &[usize]) {
    let len = c.len();
    t.set(anchor, A, c[1 % len]);
    for j in 0..len {
        t.set(c[j], A, c[(j + 1) % len]);
    }
}

/// The nsc language; with `trailing_b` its concatenation with `b`.
fn nsc(n: usize, trailing_b: bool) -> Dfa {
    let states = if trailing_b { 3 * n + 6 } else { 3 * n + 5 };
    let mut l = Layout { next: 0 };
    let [start, s1, s2, s3] = l.take(4)[..] else { unreachable!() };
    let c1 = l.take(n + 1);
    let c2 = l.take(n);
    let c3 = l.take(n - 1);
    let f = trailing_b.then(|| l.take(1)[0]);
    let dead = l.take(1)[0];
    debug_assert_eq!(l.next, states);

    let mut t = Table::new(states, 2, dead);
    t.set(start, B, s1);
    t.set(s1, B, s2);
    t.set(s2, B, s3);
    cycle(&mut t, s1, &c1);
    cycle(&mut t, s2, &c2);
    cycle(&mut t, s3, &c3);
    let ends: Vec<usize> = std::iter::once(c1[0])
        .chain(c2[1..].iter().copied())
        .chain(std::iter::once(c3[0]))
        .collect();
    match f {
        Some(f) => {
            for &e in &ends {
                t.set(e, B, f);
            }
            t.accepting = vec![f];
        }
        None => t.accepting = ends,
    }
    t.build(ab(), start)
}

/// `bb(a^n)⁺ ∪ b(a^{n+1})⁺`, optionally followed by `b`.
fn free_hard(n: usize, trailing_b: bool) -> Dfa {
    let states = if trailing_b { 2 * n + 6 } else { 2 * n + 5 };
    let mut l = Layout { next: 0 };
    let [start, s1, s2] = l.take(3)[..] else { unreachable!() };
    let long = l.take(n + 1);
    let short = l.take(n);
    let f = trailing_b.then(|| l.take(1)[0]);
    let dead = l.take(1)[0];
    debug_assert_eq!(l.next, states);

    let mut t = Table::new(states, 2, dead);
    t.set(start, B, s1);
    t.set(s1, B, s2);
    cycle(&mut t, s1, &long);
    cycle(&mut t, s2, &short);
    match f {
        Some(f) => {
            t.set(long[0], B, f);
            t.set(short[0], B, f);
            t.accepting = vec![f];
        }
        None => t.accepting = vec![long[0], short[0]],
    }
    t.build(ab(), start)
}

fn nfa_prefix_free_hard(n: usize) -> NfaEps {
    // s, short cycle (n), m, long cycle (n+1), f
    let s = 0;
    let short: Vec<usize> = (1..=n).collect();
    let m = n + 1;
    let long: Vec<usize> = (n + 2..=2 * n + 2).collect();
    let f = 2 * n + 3;
    let (a, b) = (Label::Sym(Sym(0)), Label::Sym(Sym(1)));
    let mut tr = Vec::new();
    for c in [&short, &long] {
        let len = c.len();
        tr.push((s, a, c[1 % len]));
        for j in 0..len {
            tr.push((c[j], a, c[(j + 1) % len]));
        }
    }
    tr.push((short[0], b, m));
    tr.push((m, b, f));
    tr.push((long[0], b, f));
    NfaEps::new(ab(), 2 * n + 4, s, &[f], tr).expect("family automaton is well formed")
}

pub fn make_family(spec: FamilySpec) -> Result<Automaton> {
    let FamilySpec { family, n } = spec;
    if n < family.min_n() {
        return Err(Error::InvalidArgument(format!(
            "{family} needs n >= {}, got {n}",
            family.min_n()
        )));
    }
    Ok(match family {
        Family::XuFactorClosure => Automaton::Dfa(xu(n)),
        Family::NscSuffixConvex => Automaton::Dfa(nsc(n, false)),
        Family::NscFactorConvex => Automaton::Dfa(nsc(n, true)),
        Family::FactorFreeHard => Automaton::Dfa(free_hard(n, true)),
        Family::SuffixFreeHard => Automaton::Dfa(free_hard(n, false)),
        Family::UnaryNpc => Automaton::Dfa(unary(n, |k| k == n - 1)),
        Family::UnaryPrefixClosed => Automaton::Dfa(unary(n, |k| k == 0)),
        Family::UnarySubwordClosed => Automaton::Dfa(unary(n, |k| k + 1 < n)),
        Family::NfaPrefixFreeHard => Automaton::Nfa(nfa_prefix_free_hard(n)),
    })
}

/// Convenience for the DFA families.
pub fn make_dfa(family: Family, n: usize) -> Result<Dfa> {
    match make_family(FamilySpec::new(family, n))? {
        Automaton::Dfa(d) => Ok(d),
        Automaton::Nfa(_) => Err(Error::InvalidArgument(format!("{family} is an NFA family"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;

    fn is_multiple(k: usize, m: usize) -> bool {
        k.is_multiple_of(m)
    }

    /// Splits `w` as `b^j a^k` if it has that shape.
    fn shape(w: &[Sym]) -> Option<(usize, usize, bool)> {
        let (body, trailing) = match w.split_last() {
            Some((Sym(1), rest)) if rest.last() == Some(&Sym(0)) => (rest, true),
            _ => (w, false),
        };
        let j = body.iter().take_while(|s| s.0 == 1).count();
        body[j..].iter().all(|s| s.0 == 0).then_some((j, body.len() - j, trailing))
    }

    fn nsc_member(n: usize, w: &[Sym], trailing_b: bool) -> bool {
        match shape(w) {
            Some((j, k, t)) if t == trailing_b => match j {
                3 => k >= 1 && is_multiple(k, n - 1),
                2 => !is_multiple(k, n),
                1 => k >= 1 && is_multiple(k, n + 1),
                _ => false,
            },
            _ => false,
        }
    }

    fn free_member(n: usize, w: &[Sym], trailing_b: bool) -> bool {
        match shape(w) {
            Some((j, k, t)) if t == trailing_b => match j {
                2 => k >= 1 && is_multiple(k, n),
                1 => k >= 1 && is_multiple(k, n + 1),
                _ => false,
            },
            _ => false,
        }
    }

    #[test]
    fn state_counts() {
        for family in Family::ALL {
            for n in family.min_n()..8 {
                let a = make_family(FamilySpec::new(family, n)).unwrap();
                assert_eq!(a.num_states(), family.states(n), "{family} n={n}");
            }
        }
        assert!(make_family(FamilySpec::new(Family::NscSuffixConvex, 2)).is_err());
        assert_eq!("xu".parse::<Family>().unwrap(), Family::XuFactorClosure);
    }

    #[test]
    fn languages_by_membership() {
        for n in 3..6 {
            let l = make_dfa(Family::NscSuffixConvex, n).unwrap();
            let lb = make_dfa(Family::NscFactorConvex, n).unwrap();
            let ff = make_dfa(Family::FactorFreeHard, n).unwrap();
            let sf = make_dfa(Family::SuffixFreeHard, n).unwrap();
            for w in words_up_to(2, 12) {
                assert_eq!(l.accepts(&w), nsc_member(n, &w, false), "{w:?}");
                assert_eq!(lb.accepts(&w), nsc_member(n, &w, true), "{w:?}");
                assert_eq!(ff.accepts(&w), free_member(n, &w, true), "{w:?}");
                assert_eq!(sf.accepts(&w), free_member(n, &w, false), "{w:?}");
            }
        }
    }

    #[test]
    fn nfa_family_is_reversed_suffix_family() {
        for n in 2..5 {
            let Automaton::Nfa(m) = make_family(FamilySpec::new(Family::NfaPrefixFreeHard, n)).unwrap() else {
                panic!()
            };
            assert!(!m.has_epsilon());
            let sf = make_dfa(Family::SuffixFreeHard, n).unwrap();
            for w in words_up_to(2, 13) {
                let r: Vec<Sym> = w.iter().rev().copied().collect();
                assert_eq!(m.accepts(&w), sf.accepts(&r), "{w:?}");
            }
        }
    }

    #[test]
    fn xu_shape() {
        let d = make_dfa(Family::XuFactorClosure, 5).unwrap();
        assert_eq!(d.num_states(), 14);
        assert_eq!(d.num_accepting(), 13);
        let bits = Alphabet::from_chars("01").unwrap();
        let w = |s: &str| bits.parse_word(s).unwrap();
        let zeros = |k: usize| "0".repeat(k);
        assert!(d.accepts(&w(&format!("1{}1{}1", zeros(3), zeros(29)))));
        assert!(!d.accepts(&w(&format!("1{}1", zeros(29)))));
    }

    #[test]
    fn unary_families() {
        let a = |k: usize| vec![Sym(0); k];
        let npc = make_dfa(Family::UnaryNpc, 4).unwrap();
        assert!(npc.accepts(&a(3)) && npc.accepts(&a(7)) && !npc.accepts(&a(4)));
        let pc = make_dfa(Family::UnaryPrefixClosed, 4).unwrap();
        assert!(pc.accepts(&a(0)) && pc.accepts(&a(8)) && !pc.accepts(&a(1)));
        let sc = make_dfa(Family::UnarySubwordClosed, 4).unwrap();
        assert!(sc.accepts(&a(6)) && !sc.accepts(&a(3)) && !sc.accepts(&a(7)));
    }
}
