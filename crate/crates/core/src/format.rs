//! Line-oriented text format for automata, plus Graphviz export.
//!
//! ```text
//! type: dfa
//! alphabet: a b
//! states: 2
//! start: 0
//! accept: 1
//! complete
//! 0 a 1
//! 1 b 0
//! ```
//!
//! `#` starts a comment. `complete` (DFAs only) routes missing moves to a
//! fresh dead state. In NFAs the label `eps` is an ε-move.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, EPS};
use crate::dfa::{Dfa, PartialDfa};
use crate::error::{Error, Result};
use crate::nfa::{Label, NfaEps};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(NfaEps),
}

impl Automaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Automaton::Dfa(d) => d.alphabet(),
            Automaton::Nfa(m) => m.alphabet(),
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            Automaton::Dfa(d) => d.num_states(),
            Automaton::Nfa(m) => m.num_states(),
        }
    }

    pub fn to_nfa(&self) -> NfaEps {
        match self {
            Automaton::Dfa(d) => d.to_nfa(),
            Automaton::Nfa(m) => m.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Automaton::Dfa(d) => write_dfa(d),
            Automaton::Nfa(m) => write_nfa(m),
        }
    }

    pub fn to_dot(&self) -> String {
        match self {
            Automaton::Dfa(d) => to_dot(&d.to_nfa()),
            Automaton::Nfa(m) => to_dot(m),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Dfa,
    Nfa,
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::syntax(line, format!("expected a state number, found `{s}`")))
}

/// Parses the automaton text format.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let mut kind = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut states = None;
    let mut start = None;
    let mut accept: Option<Vec<usize>> = None;
    let mut complete = false;
    let mut transitions: Vec<(usize, usize, String, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if kind.is_none() {
            kind = Some(match line {
                "type: dfa" => Kind::Dfa,
                "type: nfa" => Kind::Nfa,
                _ => return Err(Error::syntax(line_no, "first line must be `type: dfa` or `type: nfa`")),
            });
            continue;
        }
        if line == "complete" {
            complete = true;
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "alphabet" => {
                    let a = Alphabet::new(value.split_whitespace())
                        .map_err(|e| Error::syntax(line_no, e.to_string()))?;
                    alphabet = Some(a);
                }
                "states" => states = Some(parse_usize(line_no, value)?),
                "start" => start = Some(parse_usize(line_no, value)?),
                "accept" => {
                    accept = Some(
                        value
                            .split_whitespace()
                            .map(|s| parse_usize(line_no, s))
                            .collect::<Result<_>>()?,
                    )
                }
                other => return Err(Error::syntax(line_no, format!("unknown directive `{other}`"))),
            }
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::syntax(line_no, "expected `<src> <symbol> <dst>`"));
        }
        transitions.push((
            line_no,
            parse_usize(line_no, parts[0])?,
            parts[1].to_string(),
            parse_usize(line_no, parts[2])?,
        ));
    }

    let kind = kind.ok_or_else(|| Error::syntax(1, "empty automaton file"))?;
    let alphabet = alphabet.ok_or_else(|| Error::syntax(1, "missing `alphabet:`"))?;
    let states = states.ok_or_else(|| Error::syntax(1, "missing `states:`"))?;
    let start = start.ok_or_else(|| Error::syntax(1, "missing `start:`"))?;
    let accept = accept.unwrap_or_default();
    if states == 0 {
        return Err(Error::syntax(1, "`states:` must be at least 1"));
    }
    for &(line, p, _, q) in &transitions {
        if p >= states || q >= states {
            return Err(Error::syntax(line, format!("state out of range (states: {states})")));
        }
    }

    match kind {
        Kind::Dfa => {
            let mut partial = PartialDfa::new(alphabet.clone(), states, start, &accept);
            for (line, p, tok, q) in transitions {
                if tok == EPS {
                    return Err(Error::EpsilonInDfa);
                }
                let a = alphabet.sym(&tok)?;
                if partial.get(p, a).is_some() {
                    return Err(Error::DuplicateTransition {
                        line,
                        state: p,
                        symbol: tok,
                    });
                }
                partial.set(p, a, q);
            }
            if !complete {
                for p in 0..states {
                    for a in alphabet.symbols() {
                        if partial.get(p, a).is_none() {
                            return Err(Error::NotTotal {
                                state: p,
                                symbol: alphabet.token(a).to_string(),
                            });
                        }
                    }
                }
            }
            Ok(Automaton::Dfa(partial.complete()?))
        }
        Kind::Nfa => {
            if complete {
                return Err(Error::syntax(1, "`complete` is only allowed for dfa"));
            }
            let mut t = Vec::with_capacity(transitions.len());
            for (_, p, tok, q) in transitions {
                let label = if tok == EPS {
                    Label::Eps
                } else {
                    Label::Sym(alphabet.sym(&tok)?)
                };
                t.push((p, label, q));
            }
            Ok(Automaton::Nfa(NfaEps::new(alphabet, states, start, &accept, t)?))
        }
    }
}

fn header(out: &mut String, kind: &str, alphabet: &Alphabet, states: usize, start: usize, accept: &[usize]) {
    let _ = writeln!(out, "type: {kind}");
    let _ = writeln!(out, "alphabet: {}", alphabet.tokens().join(" "));
    let _ = writeln!(out, "states: {states}");
    let _ = writeln!(out, "start: {start}");
    let acc: Vec<String> = accept.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "accept: {}", acc.join(" "));
}

pub fn write_dfa(d: &Dfa) -> String {
    let mut out = String::new();
    let acc: Vec<usize> = d.accepting().collect();
    header(&mut out, "dfa", d.alphabet(), d.num_states(), d.start(), &acc);
    for q in 0..d.num_states() {
        for a in d.alphabet().symbols() {
            let _ = writeln!(out, "{q} {} {}", d.alphabet().token(a), d.next(q, a));
        }
    }
    out
}

pub fn write_nfa(m: &NfaEps) -> String {
    let mut out = String::new();
    let acc: Vec<usize> = m.accepting().collect();
    header(&mut out, "nfa", m.alphabet(), m.num_states(), m.start(), &acc);
    for &(p, l, q) in m.transitions() {
        let tok = match l {
            Label::Eps => EPS,
            Label::Sym(a) => m.alphabet().token(a),
        };
        let _ = writeln!(out, "{p} {tok} {q}");
    }
    out
}

/// Graphviz rendering; parallel edges are merged into one labelled edge.
pub fn to_dot(m: &NfaEps) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
    for q in 0..m.num_states() {
        let shape = if m.is_accepting(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {q} [shape={shape}];");
    }
    let _ = writeln!(out, "  __start -> {};", m.start());
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for &(p, l, q) in m.transitions() {
        let tok = match l {
            Label::Eps => "ε".to_string(),
            Label::Sym(a) => m.alphabet().token(a).to_string(),
        };
        edges.entry((p, q)).or_default().push(tok);
    }
    for ((p, q), labels) in edges {
        let _ = writeln!(out, "  {p} -> {q} [label=\"{}\"];", labels.join(","));
    }
    out.push_str("}\n");
    out
}
