//! Symbols, alphabets and words.
//!
//! A [`Sym`] is an index into an [`Alphabet`]; the declared order of the
//! alphabet is the order used for every lexicographic comparison of words.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Reserved token for the empty-word label.
pub const EPS: &str = "eps";

/// A symbol, represented by its position in the declared alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u32);

impl Sym {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word is a finite sequence of symbols; the empty vector is ε.
pub type Word = Vec<Sym>;

/// An ordered set of symbol tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Sym>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet {
            tokens: Vec::new(),
            index: HashMap::new(),
        };
        for tok in tokens {
            let tok = tok.into();
            if tok.is_empty() || tok.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(format!("bad symbol token `{tok}`")));
            }
            if tok == EPS {
                return Err(Error::InvalidArgument(
                    "`eps` is reserved and cannot be a symbol".into(),
                ));
            }
            if out.index.contains_key(&tok) {
                return Err(Error::InvalidArgument(format!("duplicate symbol `{tok}`")));
            }
            out.index.insert(tok.clone(), Sym(out.tokens.len() as u32));
            out.tokens.push(tok);
        }
        Ok(out)
    }

    /// Alphabet whose tokens are the characters of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + Clone {
        (0..self.tokens.len() as u32).map(Sym)
    }

    pub fn token(&self, s: Sym) -> &str {
        &self.tokens[s.index()]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn lookup(&self, tok: &str) -> Option<Sym> {
        self.index.get(tok).copied()
    }

    pub fn sym(&self, tok: &str) -> Result<Sym> {
        self.lookup(tok)
            .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))
    }

    fn single_char(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a rendered word. `(eps)` and the empty string denote ε; with
    /// single-character tokens the text is read character by character,
    /// otherwise tokens are whitespace separated.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "(eps)" {
            return Ok(Vec::new());
        }
        if self.single_char() && !text.contains(char::is_whitespace) {
            text.chars()
                .map(|c| self.sym(c.encode_utf8(&mut [0u8; 4])))
                .collect()
        } else {
            text.split_whitespace().map(|t| self.sym(t)).collect()
        }
    }

    pub fn render(&self, w: &[Sym]) -> String {
        if w.is_empty() {
            return "(eps)".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        w.iter()
            .map(|&s| self.token(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn display<'a>(&'a self, w: &'a [Sym]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Alphabet, &'a [Sym]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render(self.1))
            }
        }
        D(self, w)
    }
}

/// Length-then-lexicographic order on words.
pub fn shortlex(a: &[Sym], b: &[Sym]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Iterates over all words of exactly `len` symbols over `sigma` symbols in
/// lexicographic order.
pub fn words_of_length(sigma: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = if sigma == 0 {
        usize::from(len == 0)
    } else {
        sigma.checked_pow(len as u32).unwrap_or(usize::MAX)
    };
    (0..total).map(move |mut code| {
        let mut w = vec![Sym(0); len];
        for slot in w.iter_mut().rev() {
            *slot = Sym((code % sigma) as u32);
            code /= sigma;
        }
        w
    })
}

/// All words of length at most `max_len`, shortest first, lexicographic
/// within a length.
pub fn words_up_to(sigma: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_length(sigma, len))
}

/// `w` repeated `k` times.
pub fn power(w: &[Sym], k: usize) -> Word {
    w.repeat(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_is_reserved() {
        assert!(Alphabet::new(["a", "eps"]).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
    }

    #[test]
    fn render_and_parse() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let w = ab.parse_word("abba").unwrap();
        assert_eq!(ab.render(&w), "abba");
        assert_eq!(ab.render(&[]), "(eps)");
        assert_eq!(ab.parse_word("(eps)").unwrap(), Vec::<Sym>::new());
        assert!(ab.parse_word("abc").is_err());

        let multi = Alphabet::new(["x1", "y"]).unwrap();
        let w = multi.parse_word("x1 y x1").unwrap();
        assert_eq!(multi.render(&w), "x1 y x1");
    }

    #[test]
    fn enumeration_order() {
        let ws: Vec<_> = words_up_to(2, 2).collect();
        assert_eq!(ws.len(), 7);
        assert!(ws.windows(2).all(|p| shortlex(&p[0], &p[1]) == Ordering::Less));
        assert_eq!(words_of_length(1, 0).count(), 1);
    }
}
