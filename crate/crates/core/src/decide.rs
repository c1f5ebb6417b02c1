//! Decision procedures built on the checker automata.

use std::fmt;

use crate::checker::{build_checker, build_checker_with, CheckerOptions, Layout};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::property::PropertyQuery;
use crate::witness::{minimal_witness_in, Witness};

/// Size of the checker explored for a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckerStats {
    pub states: usize,
    pub transitions: usize,
    pub reachable: usize,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub query: PropertyQuery,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub stats: CheckerStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlmostVerdict {
    Holds,
    /// At least one but finitely many witnesses.
    Almost,
    NotAlmost,
}

impl AlmostVerdict {
    pub fn name(self) -> &'static str {
        match self {
            AlmostVerdict::Holds => "holds",
            AlmostVerdict::Almost => "almost",
            AlmostVerdict::NotAlmost => "not-almost",
        }
    }
}

impl fmt::Display for AlmostVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn plain(q: &PropertyQuery) -> Result<()> {
    q.validate()?;
    if q.almost {
        return Err(Error::InvalidArgument(format!("{q}: use decide_almost")));
    }
    Ok(())
}

/// Decides `q` on `d`; on failure the verdict carries a minimal witness.
pub fn decide(d: &Dfa, q: &PropertyQuery) -> Result<Verdict> {
    decide_with(d, q, CheckerOptions::default())
}

pub fn decide_with(d: &Dfa, q: &PropertyQuery, opts: CheckerOptions) -> Result<Verdict> {
    plain(q)?;
    let checker = build_checker_with(d, q, opts)?;
    let witness = minimal_witness_in(&checker);
    Ok(Verdict {
        query: *q,
        holds: witness.is_none(),
        witness,
        stats: CheckerStats {
            states: checker.num_states(),
            transitions: checker.num_transitions(),
            reachable: checker.num_reachable(),
        },
    })
}

/// Whether `L(d)` is a two-sided ideal, i.e. converse-factor-closed.
pub fn decide_ideal(d: &Dfa) -> Result<bool> {
    let checker = build_checker(d, &PropertyQuery::ideal(), Layout::Reachable)?;
    Ok(checker.is_empty())
}

/// Classifies the witness set of `q` as empty, finite or infinite.
pub fn decide_almost(d: &Dfa, q: &PropertyQuery) -> Result<AlmostVerdict> {
    q.validate()?;
    let checker = build_checker(d, q, Layout::Reachable)?;
    Ok(if checker.is_empty() {
        AlmostVerdict::Holds
    } else if checker.to_nfa().is_language_infinite() {
        AlmostVerdict::NotAlmost
    } else {
        AlmostVerdict::Almost
    })
}

/// All twelve plain properties, relation-major.
pub fn decide_all(d: &Dfa) -> Result<Vec<Verdict>> {
    PropertyQuery::all().map(|q| decide(d, &q)).collect()
}
