//! Context-free grammars: reduction, finiteness and subword-freeness.
//!
//! An infinite context-free language is never subword-free (pump a long
//! word). A finite one is enumerated and checked pairwise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::alphabet::{shortlex, Alphabet, Sym, Word, EPS};
use crate::error::{Error, Result};
use crate::scc;
use crate::validation::relation::leftmost_embedding;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GSym {
    T(Sym),
    N(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub head: usize,
    pub body: Vec<GSym>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    terminals: Alphabet,
    nonterminals: Vec<String>,
    start: usize,
    productions: Vec<Production>,
}

/// Caps for enumerating a finite language.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationLimits {
    pub max_words: usize,
    pub max_len: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_words: 100_000,
            max_len: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubwordFreeness {
    pub free: bool,
    pub infinite: bool,
    /// `(v, w)` with `v` a proper subword of `w`; absent for infinite
    /// languages.
    pub witness: Option<(Word, Word)>,
}

fn is_nonterminal(tok: &str) -> bool {
    tok.chars().next().is_some_and(char::is_uppercase)
}

impl Cfg {
    pub fn new(
        terminals: Alphabet,
        nonterminals: Vec<String>,
        start: usize,
        productions: Vec<Production>,
    ) -> Result<Cfg> {
        if start >= nonterminals.len() {
            return Err(Error::Invalid("start symbol out of range".into()));
        }
        for p in &productions {
            let bad = p.head >= nonterminals.len()
                || p.body.iter().any(|s| match *s {
                    GSym::T(a) => a.index() >= terminals.len(),
                    GSym::N(x) => x >= nonterminals.len(),
                });
            if bad {
                return Err(Error::Invalid("production uses an undeclared symbol".into()));
            }
        }
        Ok(Cfg {
            terminals,
            nonterminals,
            start,
            productions,
        })
    }

    /// Parses `Head -> x y | z` lines. Capitalized tokens are nonterminals,
    /// other tokens terminals, `eps` is the empty body. The first head is
    /// the start symbol; terminals are ordered lexicographically.
    pub fn parse(text: &str) -> Result<Cfg> {
        let mut rules: Vec<(usize, String, Vec<Vec<String>>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::syntax(i + 1, "expected `Head -> body`"))?;
            let head = head.trim();
            if !is_nonterminal(head) || head.contains(char::is_whitespace) {
                return Err(Error::syntax(i + 1, format!("bad head `{head}`")));
            }
            let bodies = rhs
                .split('|')
                .map(|alt| {
                    let toks: Vec<String> = alt.split_whitespace().map(str::to_string).collect();
                    if toks.is_empty() {
                        Err(Error::syntax(i + 1, "empty alternative (write `eps`)"))
                    } else if toks.iter().any(|t| t == EPS) {
                        if toks.len() == 1 {
                            Ok(Vec::new())
                        } else {
                            Err(Error::syntax(i + 1, "`eps` must stand alone"))
                        }
                    } else {
                        Ok(toks)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            rules.push((i + 1, head.to_string(), bodies));
        }
        if rules.is_empty() {
            return Err(Error::syntax(1, "no productions"));
        }

        let mut nonterminals: Vec<String> = Vec::new();
        let mut terms: BTreeSet<String> = BTreeSet::new();
        let nt_index = |name: &str, nts: &mut Vec<String>| match nts.iter().position(|x| x == name) {
            Some(i) => i,
            None => {
                nts.push(name.to_string());
                nts.len() - 1
            }
        };
        for (_, head, bodies) in &rules {
            nt_index(head, &mut nonterminals);
            for t in bodies.iter().flatten() {
                if !is_nonterminal(t) {
                    terms.insert(t.clone());
                }
            }
        }
        let heads: BTreeSet<&str> = rules.iter().map(|(_, h, _)| h.as_str()).collect();
        let terminals = Alphabet::new(terms)?;
        let mut productions = Vec::new();
        for (line, head, bodies) in &rules {
            let h = nt_index(head, &mut nonterminals);
            for body in bodies {
                let mut syms = Vec::new();
                for t in body {
                    if is_nonterminal(t) {
                        if !heads.contains(t.as_str()) {
                            return Err(Error::syntax(*line, format!("nonterminal `{t}` has no productions")));
                        }
                        syms.push(GSym::N(nt_index(t, &mut nonterminals)));
                    } else {
                        syms.push(GSym::T(terminals.sym(t)?));
                    }
                }
                productions.push(Production { head: h, body: syms });
            }
        }
        Cfg::new(terminals, nonterminals, 0, productions)
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    /// Grammar with no productions: generates nothing.
    fn empty(&self) -> Cfg {
        Cfg {
            terminals: self.terminals.clone(),
            nonterminals: vec![self.nonterminals[self.start].clone()],
            start: 0,
            productions: Vec::new(),
        }
    }

    pub fn is_empty_language(&self) -> bool {
        !self.generating()[self.start]
    }

    fn generating(&self) -> Vec<bool> {
        let mut gen = vec![false; self.nonterminals.len()];
        loop {
            let mut changed = false;
            for p in &self.productions {
                if !gen[p.head]
                    && p.body.iter().all(|s| match *s {
                        GSym::T(_) => true,
                        GSym::N(x) => gen[x],
                    })
                {
                    gen[p.head] = true;
                    changed = true;
                }
            }
            if !changed {
                return gen;
            }
        }
    }

    /// Keeps only the given nonterminals (renumbered in order) and the
    /// productions mentioning nothing else.
    fn restrict(&self, keep: &[bool]) -> Cfg {
        let mut map = vec![usize::MAX; keep.len()];
        let mut names = Vec::new();
        for (i, &k) in keep.iter().enumerate() {
            if k {
                map[i] = names.len();
                names.push(self.nonterminals[i].clone());
            }
        }
        let productions = self
            .productions
            .iter()
            .filter(|p| {
                keep[p.head]
                    && p.body.iter().all(|s| match *s {
                        GSym::N(x) => keep[x],
                        GSym::T(_) => true,
                    })
            })
            .map(|p| Production {
                head: map[p.head],
                body: p
                    .body
                    .iter()
                    .map(|s| match *s {
                        GSym::N(x) => GSym::N(map[x]),
                        t => t,
                    })
                    .collect(),
            })
            .collect();
        Cfg {
            terminals: self.terminals.clone(),
            nonterminals: names,
            start: map[self.start],
            productions,
        }
    }

    /// Removes non-generating, then unreachable nonterminals.
    pub fn reduce(&self) -> Cfg {
        let gen = self.generating();
        if !gen[self.start] {
            return self.empty();
        }
        let g = self.restrict(&gen);
        let mut reach = vec![false; g.nonterminals.len()];
        reach[g.start] = true;
        let mut stack = vec![g.start];
        while let Some(a) = stack.pop() {
            for p in g.productions.iter().filter(|p| p.head == a) {
                for s in &p.body {
                    if let GSym::N(x) = *s {
                        if !reach[x] {
                            reach[x] = true;
                            stack.push(x);
                        }
                    }
                }
            }
        }
        g.restrict(&reach)
    }

    fn nullable(&self) -> Vec<bool> {
        let mut null = vec![false; self.nonterminals.len()];
        loop {
            let mut changed = false;
            for p in &self.productions {
                if !null[p.head] && p.body.iter().all(|s| matches!(*s, GSym::N(x) if null[x])) {
                    null[p.head] = true;
                    changed = true;
                }
            }
            if !changed {
                return null;
            }
        }
    }

    /// Equivalent grammar for `L \ {ε}` without ε- or unit productions.
    fn normalize(&self) -> Cfg {
        let null = self.nullable();
        let mut bodies: BTreeSet<(usize, Vec<GSym>)> = BTreeSet::new();
        for p in &self.productions {
            let mut variants: Vec<Vec<GSym>> = vec![Vec::new()];
            for &s in &p.body {
                let optional = matches!(s, GSym::N(x) if null[x]);
                let mut next = Vec::with_capacity(variants.len() * 2);
                for v in variants {
                    if optional {
                        next.push(v.clone());
                    }
                    let mut v = v;
                    v.push(s);
                    next.push(v);
                }
                variants = next;
            }
            for v in variants {
                if !v.is_empty() {
                    bodies.insert((p.head, v));
                }
            }
        }

        let n = self.nonterminals.len();
        // unit[a][b]: a derives b through unit productions alone
        let mut unit = vec![vec![false; n]; n];
        for (a, row) in unit.iter_mut().enumerate() {
            row[a] = true;
        }
        loop {
            let mut changed = false;
            for (h, body) in &bodies {
                if let [GSym::N(b)] = body[..] {
                    for a in 0..n {
                        if unit[a][*h] && !unit[a][b] {
                            unit[a][b] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut productions = BTreeSet::new();
        for (h, body) in &bodies {
            if matches!(body[..], [GSym::N(_)]) {
                continue;
            }
            for a in 0..n {
                if unit[a][*h] {
                    productions.insert((a, body.clone()));
                }
            }
        }
        Cfg {
            productions: productions.into_iter().map(|(head, body)| Production { head, body }).collect(),
            ..self.clone()
        }
    }

    /// Reduced, ε-free, unit-free grammar (for `L \ {ε}`) and whether `ε ∈ L`.
    fn normal_form(&self) -> (Cfg, bool) {
        let r = self.reduce();
        if r.productions.is_empty() {
            return (r, false);
        }
        let eps = r.nullable()[r.start];
        (r.normalize().reduce(), eps)
    }

    fn body_graph(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.nonterminals.len()];
        for p in &self.productions {
            for s in &p.body {
                if let GSym::N(x) = *s {
                    succ[p.head].push(x);
                }
            }
        }
        succ
    }

    pub fn is_infinite(&self) -> bool {
        let (g, _) = self.normal_form();
        scc::has_cycle(g.nonterminals.len(), &g.body_graph())
    }

    /// All words of a finite language, in length-then-lex order.
    pub fn enumerate(&self, limits: EnumerationLimits) -> Result<Vec<Word>> {
        let (g, eps) = self.normal_form();
        let n = g.nonterminals.len();
        let succ = g.body_graph();
        if scc::has_cycle(n, &succ) {
            return Err(Error::InvalidArgument("the language is infinite".into()));
        }
        let (comp, count) = scc::tarjan(n, &succ);
        // acyclic: every component is a single nonterminal; low ids first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| comp[a]);
        debug_assert_eq!(count, n);

        let mut langs: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); n];
        for &a in &order {
            let mut set = BTreeSet::new();
            for p in g.productions.iter().filter(|p| p.head == a) {
                let mut partial: BTreeSet<Word> = BTreeSet::from([Vec::new()]);
                for s in &p.body {
                    let mut next = BTreeSet::new();
                    for prefix in &partial {
                        match *s {
                            GSym::T(t) => {
                                let mut w = prefix.clone();
                                w.push(t);
                                next.insert(w);
                            }
                            GSym::N(x) => {
                                for tail in &langs[x] {
                                    if prefix.len() + tail.len() > limits.max_len {
                                        return Err(Error::ResourceLimit {
                                            what: "word length",
                                            count: prefix.len() + tail.len(),
                                            cap: limits.max_len,
                                        });
                                    }
                                    let mut w = prefix.clone();
                                    w.extend_from_slice(tail);
                                    next.insert(w);
                                }
                            }
                        }
                        if next.len() > limits.max_words {
                            return Err(Error::ResourceLimit {
                                what: "enumerated words",
                                count: next.len(),
                                cap: limits.max_words,
                            });
                        }
                    }
                    partial = next;
                }
                set.extend(partial);
                if set.len() > limits.max_words {
                    return Err(Error::ResourceLimit {
                        what: "enumerated words",
                        count: set.len(),
                        cap: limits.max_words,
                    });
                }
            }
            langs[a] = set;
        }
        let mut words: Vec<Word> = if g.productions.is_empty() {
            Vec::new()
        } else {
            std::mem::take(&mut langs[g.start]).into_iter().collect()
        };
        if eps {
            words.push(Vec::new());
        }
        words.sort_by(|a, b| shortlex(a, b));
        Ok(words)
    }

    pub fn is_subword_free(&self) -> Result<SubwordFreeness> {
        self.is_subword_free_with(EnumerationLimits::default())
    }

    pub fn is_subword_free_with(&self, limits: EnumerationLimits) -> Result<SubwordFreeness> {
        if self.is_infinite() {
            return Ok(SubwordFreeness {
                free: false,
                infinite: true,
                witness: None,
            });
        }
        let words = self.enumerate(limits)?;
        let witness = first_subword_pair(&words);
        Ok(SubwordFreeness {
            free: witness.is_none(),
            infinite: false,
            witness,
        })
    }

    /// Membership by a fixpoint over substrings; handles ε- and unit
    /// productions directly. Cubic in `|w|` per round; meant for testing.
    pub fn generates(&self, w: &[Sym]) -> bool {
        let n = self.nonterminals.len();
        let len = w.len();
        // derives[i][j][a]: nonterminal a derives w[i..j]
        let mut derives = vec![vec![vec![false; n]; len + 1]; len + 1];
        loop {
            let mut changed = false;
            for i in 0..=len {
                for j in i..=len {
                    for p in &self.productions {
                        if derives[i][j][p.head] {
                            continue;
                        }
                        // reach[k]: the body prefix read so far can end at k
                        let mut reach = vec![false; len + 1];
                        reach[i] = true;
                        for s in &p.body {
                            let mut next = vec![false; len + 1];
                            for k in i..=j {
                                if !reach[k] {
                                    continue;
                                }
                                match *s {
                                    GSym::T(t) => {
                                        if k < j && w[k] == t {
                                            next[k + 1] = true;
                                        }
                                    }
                                    GSym::N(x) => {
                                        for (m, slot) in next.iter_mut().enumerate().take(j + 1).skip(k) {
                                            if derives[k][m][x] {
                                                *slot = true;
                                            }
                                        }
                                    }
                                }
                            }
                            reach = next;
                        }
                        if reach[j] {
                            derives[i][j][p.head] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return derives[0][len][self.start];
            }
        }
    }
}

/// First `(v, w)` with `v` a proper subword of `w`, ordered by `w` and then
/// `v` in length-then-lex order. `words` must be sorted that way.
pub fn first_subword_pair(words: &[Word]) -> Option<(Word, Word)> {
    for (j, w) in words.iter().enumerate() {
        for v in &words[..j] {
            if v.len() < w.len() && leftmost_embedding(v, w).is_some() {
                return Some((v.clone(), w.clone()));
            }
        }
    }
    None
}

/// Start rules first, so the output re-parses to the same grammar whenever
/// the start symbol has at least one production.
impl fmt::Display for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_head: BTreeMap<usize, Vec<&Production>> = BTreeMap::new();
        for p in &self.productions {
            by_head.entry(p.head).or_default().push(p);
        }
        let mut heads: Vec<usize> = by_head.keys().copied().collect();
        heads.sort_by_key(|&h| (h != self.start, h));
        for h in heads {
            let alts: Vec<String> = by_head[&h]
                .iter()
                .map(|p| {
                    if p.body.is_empty() {
                        EPS.to_string()
                    } else {
                        p.body
                            .iter()
                            .map(|s| match *s {
                                GSym::T(t) => self.terminals.token(t).to_string(),
                                GSym::N(x) => self.nonterminals[x].clone(),
                            })
                            .collect::<Vec<_>>()
                            .join(" ")
                    }
                })
                .collect();
            writeln!(f, "{} -> {}", self.nonterminals[h], alts.join(" | "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;

    fn g(text: &str) -> Cfg {
        Cfg::parse(text).unwrap()
    }

    fn words(g: &Cfg) -> Vec<String> {
        g.enumerate(EnumerationLimits::default())
            .unwrap()
            .iter()
            .map(|w| g.terminals().render(w))
            .collect()
    }

    #[test]
    fn reduce_examples() {
        let no_base = g("S -> a S");
        assert!(no_base.reduce().productions().is_empty());
        assert!(no_base.is_empty_language());
        let unused = g("S -> a | b\nX -> c");
        assert_eq!(unused.reduce().nonterminals(), ["S"]);
        let dyck = g("S -> a S b | eps");
        assert_eq!(dyck.reduce(), dyck);
    }

    #[test]
    fn infiniteness() {
        assert!(g("S -> a S b | eps").is_infinite());
        assert!(!g("S -> a | b").is_infinite());
        let ab = g("S -> A B\nA -> a\nB -> b | eps");
        assert!(!ab.is_infinite());
        assert_eq!(words(&ab), ["a", "ab"]);
        // ε- and unit-cycles do not make a language infinite
        assert!(!g("S -> A | a\nA -> S | B B\nB -> eps").is_infinite());
        assert!(g("S -> A A | a\nA -> S").is_infinite());
    }

    #[test]
    fn subword_freeness() {
        let inf = g("S -> a S b | a b").is_subword_free().unwrap();
        assert!(!inf.free && inf.infinite && inf.witness.is_none());
        assert!(g("S -> a b | b a").is_subword_free().unwrap().free);
        let gr = g("S -> a | a b a");
        let out = gr.is_subword_free().unwrap();
        let t = gr.terminals();
        assert_eq!(out.witness, Some((t.parse_word("a").unwrap(), t.parse_word("aba").unwrap())));
    }

    #[test]
    fn epsilon_is_a_subword_of_everything() {
        let out = g("S -> eps | b").is_subword_free().unwrap();
        assert_eq!(out.witness, Some((vec![], vec![Sym(0)])));
    }

    #[test]
    fn limits() {
        let big = g("S -> A A A A\nA -> a | b | c | d | e | f");
        let lim = EnumerationLimits { max_words: 100, max_len: 10 };
        assert!(matches!(big.enumerate(lim), Err(Error::ResourceLimit { .. })));
        assert_eq!(big.enumerate(EnumerationLimits::default()).unwrap().len(), 1296);
    }

    #[test]
    fn parse_errors() {
        assert!(Cfg::parse("").is_err());
        assert!(Cfg::parse("s -> a").is_err());
        assert!(Cfg::parse("S -> a | ").is_err());
        assert!(Cfg::parse("S -> A").is_err());
        assert!(Cfg::parse("S => a").is_err());
    }

    #[test]
    fn membership_matches_enumeration() {
        let gr = g("S -> A B | c\nA -> a | eps\nB -> b A | A");
        let lang = gr.enumerate(EnumerationLimits::default()).unwrap();
        for w in words_up_to(3, 4) {
            assert_eq!(gr.generates(&w), lang.contains(&w), "{w:?}");
        }
        assert!(g("S -> a S b | eps").generates(&[Sym(0), Sym(0), Sym(1), Sym(1)]));
    }

    #[test]
    fn display_roundtrip() {
        let gr = g("S -> a S b | eps\nT -> c");
        assert_eq!(Cfg::parse(&gr.to_string()).unwrap(), gr);
    }
}
