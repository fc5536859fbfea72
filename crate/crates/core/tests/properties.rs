use std::collections::BTreeSet;

use follres::order::{OrderStore, Relation};
use follres::proofnet::*;
use follres::prover::{prove, validate};
use follres::term::{unify_atoms, Atom, Formula, Sequent, Substitution, Term};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const METAS: usize = 3;
const POSITIONS: u32 = 3;

fn order_term(i: usize) -> Term {
    if i < METAS {
        Term::meta(&format!("m{i}"), 0)
    } else {
        Term::Pos((i - METAS) as u32)
    }
}

fn value(i: usize, metas: &[u32]) -> u32 {
    if i < METAS {
        metas[i]
    } else {
        5 * (i - METAS + 1) as u32
    }
}

fn models(facts: &[(usize, usize, bool)]) -> Vec<Vec<u32>> {
    let range = 0..=5 * (POSITIONS + 1);
    let mut out = Vec::new();
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                let m = [a, b, c];
                let ok = facts.iter().all(|&(lo, hi, strict)| {
                    let (x, y) = (value(lo, &m), value(hi, &m));
                    if strict {
                        x < y
                    } else {
                        x <= y
                    }
                });
                if ok {
                    out.push(m.to_vec());
                }
            }
        }
    }
    out
}

fn fact_strategy() -> impl Strategy<Value = (usize, usize, bool)> {
    let n = METAS + POSITIONS as usize;
    (0..n, 0..n, any::<bool>())
}

fn atom_strategy() -> impl Strategy<Value = Atom> {
    let term = prop_oneof![
        Just(Term::meta("a", 1)),
        Just(Term::meta("b", 1)),
        Just(Term::eigen("x", 0)),
        Just(Term::eigen("y", 0)),
        Just(Term::Pos(0)),
        Just(Term::Pos(1)),
    ];
    prop::collection::vec(term, 2).prop_map(|args| Atom::new("p", args))
}

fn leaf() -> impl Strategy<Value = Formula> {
    let arg = prop_oneof![Just(Term::var("x")), Just(Term::constant("0")), Just(Term::constant("1"))];
    (prop_oneof![Just("p"), Just("q")], prop::option::of(arg))
        .prop_map(|(pred, arg)| Formula::atom(pred, arg.into_iter().collect()))
}

fn formula() -> impl Strategy<Value = Formula> {
    let body = leaf().prop_recursive(2, 4, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::limp(a, b)),
        ]
    });
    (body, 0..3usize).prop_map(|(f, q)| match q {
        0 if !f.free_vars().contains("x") => f,
        1 => Formula::exists("x", f),
        _ => Formula::forall("x", f),
    })
}

fn rename_binder(f: &Formula, to: &str) -> Formula {
    match f {
        Formula::Forall(x, b) => Formula::forall(to, b.instantiate(x, &Term::var(to))),
        Formula::Exists(x, b) => Formula::exists(to, b.instantiate(x, &Term::var(to))),
        other => other.clone(),
    }
}

fn net_pairs(seq: &Sequent, wrong_side_filter: bool) -> BTreeSet<Vec<(usize, usize)>> {
    let config = NetConfig { wrong_side_filter, all: true, ..NetConfig::default() };
    prove_net_with(seq, &OrderStore::new(), config)
        .nets
        .iter()
        .map(|n| n.matching.pairs.iter().map(|(&p, &q)| (p, q)).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_store_matches_brute_force(facts in prop::collection::vec(fact_strategy(), 0..6)) {
        let mut store = OrderStore::new();
        for i in 0..METAS + POSITIONS as usize {
            store.register(&order_term(i)).unwrap();
        }
        let consistent = facts.iter().all(|&(lo, hi, strict)| {
            store.assert_order(&order_term(lo), &order_term(hi), strict).is_ok()
        });
        let models = models(&facts);
        prop_assert_eq!(consistent, !models.is_empty());
        if consistent {
            for a in 0..METAS + POSITIONS as usize {
                for b in 0..METAS + POSITIONS as usize {
                    let always_leq = models.iter().all(|m| value(a, m) <= value(b, m));
                    let always_lt = models.iter().all(|m| value(a, m) < value(b, m));
                    let rel = store.entails(&order_term(a), &order_term(b));
                    prop_assert_eq!(matches!(rel, Relation::Lt), always_lt, "{} {} {:?}", a, b, facts);
                    prop_assert_eq!(matches!(rel, Relation::Lt | Relation::Leq | Relation::Eq), always_leq, "{} {} {:?}", a, b, facts);
                }
            }
        }
    }

    #[test]
    fn unification_is_symmetric(a in atom_strategy(), b in atom_strategy()) {
        let ab = unify_atoms(&a, &b, &Substitution::new());
        let ba = unify_atoms(&b, &a, &Substitution::new());
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let Some(s) = ab {
            prop_assert_eq!(a.substitute(&s), b.substitute(&s));
        }
    }

    #[test]
    fn identity_sequents_give_strict_nets(f in formula()) {
        let seq = Sequent::new(vec![f.clone()], rename_binder(&f, "z"));
        let d = prove(&seq, &OrderStore::new());
        prop_assert!(d.is_some(), "{}", seq);
        prop_assert!(validate(&d.unwrap()).is_ok());
        let report = prove_net_with(&seq, &OrderStore::new(), NetConfig::default());
        prop_assert!(!report.nets.is_empty());
        for net in &report.nets {
            let aps = &net.abstract_structure;
            prop_assert_eq!(net.contraction.trace.len(), aps.edges.len());
            prop_assert_eq!(net.contraction.trace.len() + 1, aps.labels.len());
            prop_assert!(is_strict(&report.structure, &net.matching));
        }
    }

    #[test]
    fn antecedent_order_is_irrelevant(a in formula(), b in formula(), c in formula()) {
        let a2 = rename_binder(&a, "y");
        let b2 = rename_binder(&b, "z");
        let goal = Formula::tensor(rename_binder(&c, "w"), Formula::tensor(a2, b2));
        let forward = Sequent::new(vec![c.clone(), a.clone(), b.clone()], goal.clone());
        let backward = Sequent::new(vec![b, a, c], goal);
        let store = OrderStore::new();
        let f = prove(&forward, &store).is_some();
        prop_assert_eq!(f, prove(&backward, &store).is_some());
        prop_assert_eq!(f, !prove_net(&forward, &store).is_empty());
        prop_assert_eq!(f, !prove_net(&backward, &store).is_empty());
    }

    #[test]
    fn wrong_side_filter_keeps_every_net(a in formula(), b in formula(), g in formula()) {
        let seq = Sequent::new(vec![a, rename_binder(&b, "y")], rename_binder(&g, "z"));
        prop_assert_eq!(net_pairs(&seq, true), net_pairs(&seq, false));
    }

    #[test]
    fn work_list_and_random_orders_agree(f in formula(), seed in any::<u64>()) {
        let seq = Sequent::new(vec![f.clone()], rename_binder(&f, "z"));
        let ps = unfold(&seq);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for_each_matching(&ps, &OrderStore::new(), NetConfig { wrong_side_filter: false, ..NetConfig::default() }, &mut |m| {
            let aps = abstract_structure(&ps, &m.pairs, &m.subst);
            let fixed = contract(&aps).success();
            let shuffled = contract_with(&aps, &mut |n| rng.gen_range(0..n)).success();
            assert_eq!(fixed, shuffled);
            false
        });
    }
}

#[test]
fn stuck_trace_of_underivable_sequent() {
    let seq = follres::parse::parse_sequent("forall y. (a * b(y)) |- a * forall x. b(x)").unwrap();
    let ps = unfold(&seq);
    let config = NetConfig { wrong_side_filter: false, ..NetConfig::default() };
    let mut traces = Vec::new();
    for_each_matching(&ps, &OrderStore::new(), config, &mut |m| {
        let c = contract(&abstract_structure(&ps, &m.pairs, &m.subst));
        traces.push((c.success(), c.trace.iter().map(|s| s.kind).collect::<String>(), c.residual_vertices.len()));
        false
    });
    assert_eq!(traces, vec![(false, "ccc".to_string(), 3)]);
}

#[test]
fn did_store_orders_gap_subject_before_clause_end() {
    let lex = follres::translate::Lexicon::load(std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/demo.lex"))).unwrap();
    let words = ["John", "left", "before", "Mary", "did"];
    let inst = &follres::translate::sentence_instances(&lex, &words, &follres::cat::CatFormula::atom("s")).unwrap()[0];
    let names = inst.sequent.antecedent[2].binders();
    let (b, x0) = (Term::var(&names[0]), Term::var(&names[2]));
    assert_eq!(inst.store.entails(&x0, &b), Relation::Lt);
    assert_eq!(inst.store.entails(&Term::Pos(3), &b), Relation::Leq);
}
