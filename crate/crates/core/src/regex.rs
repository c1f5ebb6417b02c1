//! A minimal expression-to-NFA compiler: single-character literals,
//! juxtaposition, `|`, postfix `*` and `+`, parentheses, and `()` for ε.
//! It exists to describe test languages compactly, not as a regex engine.

use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::nfa::{Label, NfaEps};

#[derive(Debug, Clone)]
enum Expr {
    Eps,
    Lit(Sym),
    Cat(Box<Expr>, Box<Expr>),
    Alt(Box<Expr>, Box<Expr>),
    Star(Box<Expr>),
    Plus(Box<Expr>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::InvalidArgument(format!("expression, column {}: {msg}", self.pos + 1))
    }

    fn alt(&mut self) -> Result<Expr> {
        let mut e = self.cat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            e = Expr::Alt(Box::new(e), Box::new(self.cat()?));
        }
        Ok(e)
    }

    fn cat(&mut self) -> Result<Expr> {
        let mut e: Option<Expr> = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let f = self.postfix()?;
            e = Some(match e {
                None => f,
                Some(prev) => Expr::Cat(Box::new(prev), Box::new(f)),
            });
        }
        Ok(e.unwrap_or(Expr::Eps))
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => e = Expr::Star(Box::new(e)),
                Some('+') => e = Expr::Plus(Box::new(e)),
                _ => return Ok(e),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c == '*' || c == '+' => Err(self.err("dangling operator")),
            Some(c) => {
                self.pos += 1;
                let mut buf = [0u8; 4];
                Ok(Expr::Lit(self.alphabet.sym(c.encode_utf8(&mut buf))?))
            }
            None => Err(self.err("unexpected end")),
        }
    }
}

struct Builder {
    states: usize,
    transitions: Vec<(usize, Label, usize)>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    /// Returns (entry, exit) of the fragment.
    fn build(&mut self, e: &Expr) -> (usize, usize) {
        match e {
            Expr::Eps => {
                let s = self.fresh();
                (s, s)
            }
            Expr::Lit(a) => {
                let (s, t) = (self.fresh(), self.fresh());
                self.transitions.push((s, Label::Sym(*a), t));
                (s, t)
            }
            Expr::Cat(x, y) => {
                let (s1, t1) = self.build(x);
                let (s2, t2) = self.build(y);
                self.transitions.push((t1, Label::Eps, s2));
                (s1, t2)
            }
            Expr::Alt(x, y) => {
                let (s, t) = (self.fresh(), self.fresh());
                for part in [x, y] {
                    let (si, ti) = self.build(part);
                    self.transitions.push((s, Label::Eps, si));
                    self.transitions.push((ti, Label::Eps, t));
                }
                (s, t)
            }
            Expr::Star(x) | Expr::Plus(x) => {
                let (s, t) = (self.fresh(), self.fresh());
                let (si, ti) = self.build(x);
                self.transitions.push((s, Label::Eps, si));
                self.transitions.push((ti, Label::Eps, t));
                self.transitions.push((ti, Label::Eps, si));
                if matches!(e, Expr::Star(_)) {
                    self.transitions.push((s, Label::Eps, t));
                }
                (s, t)
            }
        }
    }
}

/// Compiles `expr` over `alphabet` (whose tokens must be single characters).
pub fn compile(expr: &str, alphabet: &Alphabet) -> Result<NfaEps> {
    let mut p = Parser {
        chars: expr.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        alphabet,
    };
    let e = p.alt()?;
    if p.pos != p.chars.len() {
        return Err(p.err("unbalanced `)`"));
    }
    let mut b = Builder {
        states: 0,
        transitions: Vec::new(),
    };
    let (s, t) = b.build(&e);
    NfaEps::new(alphabet.clone(), b.states, s, &[t], b.transitions)
}
