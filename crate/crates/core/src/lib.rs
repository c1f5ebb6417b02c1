//! Deciding convexity, closure and freeness of regular languages with
//! respect to the prefix, suffix, factor and subword orders, with minimal
//! witnesses when a property fails.

pub mod alphabet;
pub mod cfg;
pub mod checker;
pub mod decide;
pub mod dfa;
pub mod error;
pub mod format;
pub mod nfa;
pub mod nfa_free;
pub mod property;
pub mod regex;
pub mod scc;
pub mod validation;
pub mod witness;

pub use alphabet::{Alphabet, Sym, Word};
pub use checker::{build_checker, build_checker_with, checker_size_formula, Checker, CheckerOptions, Layout};
pub use decide::{decide, decide_almost, decide_with, decide_ideal, AlmostVerdict, CheckerStats, Verdict};
pub use dfa::{Dfa, PartialDfa};
pub use error::{Error, Result};
pub use format::{parse_automaton, Automaton};
pub use nfa::{Label, NfaEps};
pub use nfa_free::{nfa_is_free, FreenessConstruction};
pub use property::{Mode, PropertyQuery, Relation};
pub use witness::{minimal_witness, verify_witness, witness_bound, Decomposition, Witness, WitnessCost};
