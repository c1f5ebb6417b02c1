//! Randomized invariants.

mod common;

use langconvex::cfg::{Cfg, GSym, Production};
use langconvex::validation::{properly_related, relation_holds};
use langconvex::{
    decide, minimal_witness, parse_automaton, verify_witness, Alphabet, Automaton, Dfa, PropertyQuery, Relation, Sym,
    Witness, Word,
};
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0u32..2).prop_map(Sym), 0..=max)
}

fn relation() -> impl Strategy<Value = Relation> {
    prop::sample::select(Relation::ALL.to_vec())
}

fn query() -> impl Strategy<Value = PropertyQuery> {
    prop::sample::select(PropertyQuery::all().collect::<Vec<_>>())
}

fn dfa(max_states: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(|n| {
        (prop::collection::vec(0..n, 2 * n), prop::collection::vec(any::<bool>(), n)).prop_map(move |(delta, acc)| {
            let acc: Vec<usize> = (0..n).filter(|&q| acc[q]).collect();
            Dfa::new(common::binary(), n, 0, &acc, delta).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn relations_are_partial_orders(r in relation(), x in word(5), y in word(5), z in word(5)) {
        prop_assert!(relation_holds(r, &x, &x));
        prop_assert!(!properly_related(r, &x, &x));
        if relation_holds(r, &x, &y) && relation_holds(r, &y, &x) {
            prop_assert_eq!(&x, &y);
        }
        if relation_holds(r, &x, &y) && relation_holds(r, &y, &z) {
            prop_assert!(relation_holds(r, &x, &z));
        }
    }

    #[test]
    fn relations_refine(x in word(5), y in word(6)) {
        let p = relation_holds(Relation::Prefix, &x, &y);
        let s = relation_holds(Relation::Suffix, &x, &y);
        let f = relation_holds(Relation::Factor, &x, &y);
        let sub = relation_holds(Relation::Subword, &x, &y);
        prop_assert!(!(p || s) || f);
        prop_assert!(!f || sub);
    }

    #[test]
    fn leftmost_decomposition_is_consistent(r in relation(), x in word(4), y in word(7)) {
        let q = PropertyQuery::new(r, langconvex::Mode::Free);
        if let Some(w) = Witness::new(q.relation, None, x.clone(), y.clone()) {
            prop_assert!(w.decomposition_consistent());
            prop_assert!(relation_holds(r, &x, &y));
        } else {
            prop_assert!(!relation_holds(r, &x, &y));
        }
    }

    #[test]
    fn automaton_text_round_trips(d in dfa(5)) {
        let a = Automaton::Dfa(d);
        prop_assert_eq!(parse_automaton(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn words_render_and_parse(w in word(8)) {
        let ab = common::binary();
        prop_assert_eq!(ab.parse_word(&ab.render(&w)).unwrap(), w.clone());
        let spaced = Alphabet::new(["x1", "y2"]).unwrap();
        prop_assert_eq!(spaced.parse_word(&spaced.render(&w)).unwrap(), w);
    }

    #[test]
    fn witnesses_verify(d in dfa(4), q in query()) {
        let v = decide(&d, &q).unwrap();
        prop_assert_eq!(v.holds, v.witness.is_none());
        if let Some(w) = &v.witness {
            prop_assert!(verify_witness(&d, &q, w));
            prop_assert_eq!(minimal_witness(&d, &q).unwrap(), Some(w.clone()));
        }
    }

    #[test]
    fn complement_swaps_closure(d in dfa(4), r in relation()) {
        // L is R-closed iff its complement is closed under the converse relation
        let closed = decide(&d, &PropertyQuery::new(r, langconvex::Mode::Closed)).unwrap().holds;
        let converse = decide(&d.complement(), &PropertyQuery::converse(r)).unwrap().holds;
        prop_assert_eq!(closed, converse);
    }

    #[test]
    fn closed_and_free_imply_convex(d in dfa(4), r in relation()) {
        let mode = |m| decide(&d, &PropertyQuery::new(r, m)).unwrap().holds;
        let convex = mode(langconvex::Mode::Convex);
        prop_assert!(!mode(langconvex::Mode::Closed) || convex);
        prop_assert!(!mode(langconvex::Mode::Free) || convex);
    }
}

fn grammar() -> impl Strategy<Value = Cfg> {
    // up to 3 nonterminals, bodies of length ≤ 3 over {a, b, A, B, C}
    let sym = prop_oneof![(0u32..2).prop_map(|t| GSym::T(Sym(t))), (0usize..3).prop_map(GSym::N)];
    let prod = (0usize..3, prop::collection::vec(sym, 0..=3)).prop_map(|(head, body)| Production { head, body });
    prop::collection::vec(prod, 1..7).prop_map(|ps| {
        Cfg::new(common::binary(), vec!["S".into(), "A".into(), "B".into()], 0, ps).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_preserves_membership(g in grammar(), ws in prop::collection::vec(word(5), 8)) {
        let r = g.reduce();
        for w in &ws {
            prop_assert_eq!(g.generates(w), r.generates(w));
        }
    }

    #[test]
    fn grammar_display_round_trips(g in grammar()) {
        // a start symbol without rules has no textual form
        prop_assume!(g.productions().iter().any(|p| p.head == g.start()));
        let again = Cfg::parse(&g.to_string());
        prop_assume!(again.is_ok());
        let again = again.unwrap();
        for w in langconvex::alphabet::words_up_to(2, 4) {
            let rendered = g.terminals().render(&w);
            let expected = match again.terminals().parse_word(&rendered) {
                Ok(w2) => again.generates(&w2),
                Err(_) => false,
            };
            prop_assert_eq!(g.generates(&w), expected);
        }
    }

    #[test]
    fn finite_grammars_enumerate_their_language(g in grammar()) {
        if !g.is_infinite() {
            let words = g.enumerate(Default::default()).unwrap();
            for w in &words {
                prop_assert!(g.generates(w));
            }
            let max = words.iter().map(Vec::len).max().unwrap_or(0);
            let count = langconvex::alphabet::words_up_to(2, max).filter(|w| g.generates(w)).count();
            prop_assert_eq!(count, words.len());
            let out = g.is_subword_free().unwrap();
            let pair = words.iter().any(|v| words.iter().any(|w| properly_related(Relation::Subword, v, w)));
            prop_assert_eq!(out.free, !pair);
        }
    }
}
