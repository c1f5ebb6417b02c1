//! The twelve properties: a relation paired with a mode.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Prefix,
    Suffix,
    Factor,
    Subword,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Convex,
    Closed,
    Free,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::Prefix, Relation::Suffix, Relation::Factor, Relation::Subword];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Prefix => "prefix",
            Relation::Suffix => "suffix",
            Relation::Factor => "factor",
            Relation::Subword => "subword",
        }
    }
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Convex, Mode::Closed, Mode::Free];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Convex => "convex",
            Mode::Closed => "closed",
            Mode::Free => "free",
        }
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown relation `{s}`")))
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown mode `{s}`")))
    }
}

/// Which property to decide. `converse` is only meaningful for closure and
/// asks whether the language is closed under the converse relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PropertyQuery {
    pub relation: Relation,
    pub mode: Mode,
    pub converse: bool,
    pub almost: bool,
}

impl PropertyQuery {
    pub fn new(relation: Relation, mode: Mode) -> Self {
        PropertyQuery {
            relation,
            mode,
            converse: false,
            almost: false,
        }
    }

    pub fn converse(relation: Relation) -> Self {
        PropertyQuery {
            converse: true,
            ..PropertyQuery::new(relation, Mode::Closed)
        }
    }

    /// Converse factor closure; the languages with this property are the
    /// two-sided ideals.
    pub fn ideal() -> Self {
        PropertyQuery::converse(Relation::Factor)
    }

    pub fn with_almost(mut self, almost: bool) -> Self {
        self.almost = almost;
        self
    }

    /// All twelve plain queries, relation-major.
    pub fn all() -> impl Iterator<Item = PropertyQuery> {
        Relation::ALL
            .into_iter()
            .flat_map(|r| Mode::ALL.into_iter().map(move |m| PropertyQuery::new(r, m)))
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.converse && self.mode != Mode::Closed {
            return Err(Error::InvalidArgument(
                "converse is only defined for closure properties".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for PropertyQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.almost {
            f.write_str("almost-")?;
        }
        if self.converse {
            if self.relation == Relation::Factor {
                return f.write_str("ideal");
            }
            f.write_str("converse-")?;
        }
        write!(f, "{}-{}", self.relation.name(), self.mode.name())
    }
}

impl FromStr for PropertyQuery {
    type Err = Error;

    /// Accepts `<relation>-<mode>`, `converse-<relation>-closed`, `ideal`,
    /// each optionally prefixed with `almost-`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let (almost, rest) = match s.strip_prefix("almost-") {
            Some(r) => (true, r),
            None => (false, s),
        };
        if rest == "ideal" {
            return Ok(PropertyQuery::ideal().with_almost(almost));
        }
        let (converse, rest) = match rest.strip_prefix("converse-") {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let (rel, mode) = rest
            .split_once('-')
            .ok_or_else(|| Error::InvalidArgument(format!("bad property `{s}`")))?;
        let q = PropertyQuery {
            relation: rel.parse()?,
            mode: mode.parse()?,
            converse,
            almost,
        };
        q.validate()?;
        Ok(q)
    }
}
