//! Backward focused sequent search for MILL1 with order constraints.
//!
//! Quantifier instantiation is delayed through metavariables. Each created
//! term carries a level recording when it was introduced, and a metavariable
//! may only be bound to an eigenvariable introduced before it. Context
//! splitting is lazy: unused hypotheses flow from one premiss to the next, and
//! every hypothesis is owned by the branch that introduced it, so it can
//! never be consumed after that branch has closed.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bindings::Bindings;
use crate::cat::CatFormula;
use crate::order::OrderStore;
use crate::patterns::{schema, Pattern};
use crate::translate::Translator;
use crate::term::{free_eigenvariables, Atom, Formula, Sequent, Substitution, Term};

/// Sequent calculus rule names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    Ax,
    LTensor,
    RTensor,
    LLimp,
    RLimp,
    LForall,
    RForall,
    LExists,
    RExists,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Ax => "Ax",
            Rule::LTensor => "L*",
            Rule::RTensor => "R*",
            Rule::LLimp => "L-o",
            Rule::RLimp => "R-o",
            Rule::LForall => "Lforall",
            Rule::RForall => "Rforall",
            Rule::LExists => "Lexists",
            Rule::RExists => "Rexists",
        };
        write!(f, "{s}")
    }
}

/// A sequent derivation with the final substitution applied throughout.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premisses: Vec<Derivation>,
    /// The antecedent formula the rule acts on, for left rules and axioms.
    pub principal: Option<Formula>,
    /// The witness or eigenvariable of a quantifier rule.
    pub term: Option<Term>,
    /// The substitution in force, recorded at axioms.
    pub unifier: Option<Substitution>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        1 + self.premisses.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn axioms(&self) -> usize {
        if self.rule == Rule::Ax {
            1
        } else {
            self.premisses.iter().map(Derivation::axioms).sum()
        }
    }

    fn write_tree(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        writeln!(f, "{:indent$}{}  [{}]", "", self.conclusion, self.rule, indent = indent)?;
        for p in &self.premisses {
            p.write_tree(f, indent + 2)?;
        }
        Ok(())
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_tree(f, 0)
    }
}

/// Search counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProverStats {
    pub steps: u64,
    pub axioms_tried: u64,
    pub proofs: u64,
}

#[derive(Clone)]
struct State {
    b: Bindings,
    level: u32,
    arena: Vec<Formula>,
    pool: Vec<(usize, usize)>,
}

impl State {
    fn push(&mut self, f: Formula) -> usize {
        self.arena.push(f);
        self.arena.len() - 1
    }

    fn next_level(&mut self) -> u32 {
        self.level += 1;
        self.level
    }

    fn closed_at(&self, depth: usize) -> bool {
        self.pool.iter().all(|&(_, owner)| owner < depth)
    }

    fn fresh_eigen(&mut self, x: &str) -> Option<Term> {
        let level = self.next_level();
        let t = Term::eigen(x, level);
        self.b.introduce(x, t.clone()).then_some(t)
    }

    fn fresh_meta(&mut self, x: &str) -> Term {
        let level = self.next_level();
        let t = Term::meta(x, level);
        self.b.introduce(x, t.clone());
        t
    }
}

/// A partial proof tree over arena indices.
#[derive(Clone, Debug)]
struct Node {
    rule: Rule,
    principal: Option<usize>,
    created: Vec<usize>,
    goal: usize,
    term: Option<Term>,
    premisses: Vec<Node>,
}

impl Node {
    fn leaf(rule: Rule, principal: usize, goal: usize) -> Node {
        Node { rule, principal: Some(principal), created: Vec::new(), goal, term: None, premisses: Vec::new() }
    }
}

/// An invertible left step performed when a hypothesis enters the context.
#[derive(Clone, Debug)]
struct Event {
    rule: Rule,
    principal: usize,
    created: Vec<usize>,
    term: Option<Term>,
}

fn wrap(events: &[Event], inner: Node) -> Node {
    events.iter().rev().fold(inner, |acc, e| Node {
        rule: e.rule,
        principal: Some(e.principal),
        created: e.created.clone(),
        goal: acc.goal,
        term: e.term.clone(),
        premisses: vec![acc],
    })
}

type Cont<'a> = dyn FnMut(State, Node) -> bool + 'a;

/// Backward proof search engine.
pub struct Prover {
    stats: Cell<ProverStats>,
}

impl Default for Prover {
    fn default() -> Self {
        Prover::new()
    }
}

impl Prover {
    pub fn new() -> Prover {
        Prover { stats: Cell::new(ProverStats::default()) }
    }

    pub fn stats(&self) -> ProverStats {
        self.stats.get()
    }

    fn tick(&self) {
        let mut s = self.stats.get();
        s.steps += 1;
        self.stats.set(s);
    }

    /// Finds one derivation of `seq` consistent with `store`.
    pub fn prove(&self, seq: &Sequent, store: &OrderStore) -> Option<Derivation> {
        self.prove_all(seq, store, 1).into_iter().next()
    }

    /// Finds up to `limit` derivations. Distinct derivations may share the
    /// same axiom linking.
    pub fn prove_all(&self, seq: &Sequent, store: &OrderStore, limit: usize) -> Vec<Derivation> {
        let seq = if seq.binders_distinct() { seq.clone() } else { seq.rename_apart() };
        if limit == 0 || !polarity_balanced(&seq) {
            return Vec::new();
        }
        let mut st = State { b: Bindings::new(store.clone(), true), level: 0, arena: Vec::new(), pool: Vec::new() };
        if !seq.formulas().flat_map(|f| f.atoms()).all(|a| st.b.register_rigid(a)) {
            return Vec::new();
        }
        let mut events = Vec::new();
        for f in &seq.antecedent {
            let id = st.push(f.clone());
            if !add_hyp(&mut st, id, 0, &mut events) {
                return Vec::new();
            }
        }
        let goal = st.push(seq.succedent.clone());
        let mut out = Vec::new();
        self.goal(st, goal, 0, false, &mut |st, node| {
            let node = wrap(&events, node);
            if let Ok(d) = rebuild(&node, &st) {
                if validate(&d).is_ok() && d.conclusion.antecedent.len() == seq.antecedent.len() {
                    let mut s = self.stats.get();
                    s.proofs += 1;
                    self.stats.set(s);
                    out.push(d);
                }
            }
            out.len() >= limit
        });
        out
    }

    fn goal(&self, mut st: State, c: usize, depth: usize, focus_right: bool, k: &mut Cont<'_>) -> bool {
        self.tick();
        match st.arena[c].clone() {
            Formula::Limp(a, b) => {
                let ia = st.push(*a);
                let mut events = Vec::new();
                if !add_hyp(&mut st, ia, depth, &mut events) {
                    return false;
                }
                let ib = st.push(*b);
                self.goal(st, ib, depth, false, &mut |st, p| {
                    let node = Node {
                        rule: Rule::RLimp,
                        principal: None,
                        created: vec![ia],
                        goal: c,
                        term: None,
                        premisses: vec![wrap(&events, p)],
                    };
                    k(st, node)
                })
            }
            Formula::Forall(x, body) => {
                let Some(e) = st.fresh_eigen(&x) else {
                    return false;
                };
                let ib = st.push(body.instantiate(&x, &e));
                self.goal(st, ib, depth, false, &mut |st, p| {
                    let node = Node {
                        rule: Rule::RForall,
                        principal: None,
                        created: Vec::new(),
                        goal: c,
                        term: Some(e.clone()),
                        premisses: vec![p],
                    };
                    k(st, node)
                })
            }
            Formula::Tensor(..) | Formula::Exists(..) => {
                if self.right_focus(st.clone(), c, depth, k) {
                    return true;
                }
                if focus_right {
                    return false;
                }
                self.left_choices(st, c, depth, k)
            }
            Formula::Atom(_) => self.left_choices(st, c, depth, k),
        }
    }

    fn right_focus(&self, mut st: State, c: usize, depth: usize, k: &mut Cont<'_>) -> bool {
        match st.arena[c].clone() {
            Formula::Tensor(a, b) => {
                let ia = st.push(*a);
                let ib = st.push(*b);
                self.goal(st, ia, depth + 1, true, &mut |st1, pa| {
                    self.goal(st1, ib, depth + 1, true, &mut |st2, pb| {
                        if !st2.closed_at(depth) {
                            return false;
                        }
                        let node = Node {
                            rule: Rule::RTensor,
                            principal: None,
                            created: Vec::new(),
                            goal: c,
                            term: None,
                            premisses: vec![pa.clone(), pb],
                        };
                        k(st2, node)
                    })
                })
            }
            Formula::Exists(x, body) => {
                let m = st.fresh_meta(&x);
                let ib = st.push(body.instantiate(&x, &m));
                self.goal(st, ib, depth, true, &mut |st, p| {
                    let node = Node {
                        rule: Rule::RExists,
                        principal: None,
                        created: Vec::new(),
                        goal: c,
                        term: Some(m.clone()),
                        premisses: vec![p],
                    };
                    k(st, node)
                })
            }
            _ => self.goal(st, c, depth, false, k),
        }
    }

    fn left_choices(&self, st: State, c: usize, depth: usize, k: &mut Cont<'_>) -> bool {
        let goal_atom = match &st.arena[c] {
            Formula::Atom(a) => Some((a.pred.clone(), a.args.len())),
            _ => None,
        };
        for i in 0..st.pool.len() {
            let (id, _) = st.pool[i];
            if let Some(g) = &goal_atom {
                if let Some(h) = head_atom(&st.arena[id]) {
                    if (&h.pred, h.args.len()) != (&g.0, g.1) {
                        continue;
                    }
                }
            }
            let mut next = st.clone();
            next.pool.remove(i);
            if self.left_focus(next, id, c, depth, k) {
                return true;
            }
        }
        false
    }

    fn left_focus(&self, mut st: State, e: usize, c: usize, depth: usize, k: &mut Cont<'_>) -> bool {
        self.tick();
        match st.arena[e].clone() {
            Formula::Atom(h) => {
                let Formula::Atom(g) = st.arena[c].clone() else {
                    return false;
                };
                let mut s = self.stats.get();
                s.axioms_tried += 1;
                self.stats.set(s);
                if !st.b.unify_atoms(&h, &g) || !st.closed_at(depth) {
                    return false;
                }
                k(st, Node::leaf(Rule::Ax, e, c))
            }
            Formula::Forall(x, body) => {
                let m = st.fresh_meta(&x);
                let ib = st.push(body.instantiate(&x, &m));
                self.left_focus(st, ib, c, depth, &mut |st, p| {
                    let node = Node {
                        rule: Rule::LForall,
                        principal: Some(e),
                        created: vec![ib],
                        goal: c,
                        term: Some(m.clone()),
                        premisses: vec![p],
                    };
                    k(st, node)
                })
            }
            Formula::Limp(a, b) => {
                let ia = st.push(*a);
                let ib = st.push(*b);
                self.goal(st, ia, depth + 1, true, &mut |st1, pa| {
                    self.left_focus(st1, ib, c, depth, &mut |st2, pb| {
                        let node = Node {
                            rule: Rule::LLimp,
                            principal: Some(e),
                            created: vec![ib],
                            goal: c,
                            term: None,
                            premisses: vec![pa.clone(), pb],
                        };
                        k(st2, node)
                    })
                })
            }
            Formula::Tensor(..) | Formula::Exists(..) => {
                let mut events = Vec::new();
                if !add_hyp(&mut st, e, depth, &mut events) {
                    return false;
                }
                self.goal(st, c, depth, false, &mut |st, p| k(st, wrap(&events, p)))
            }
        }
    }
}

/// Adds a hypothesis to the context, decomposing products and existentials.
fn add_hyp(st: &mut State, id: usize, owner: usize, events: &mut Vec<Event>) -> bool {
    match st.arena[id].clone() {
        Formula::Tensor(a, b) => {
            let ia = st.push(*a);
            let ib = st.push(*b);
            events.push(Event { rule: Rule::LTensor, principal: id, created: vec![ia, ib], term: None });
            add_hyp(st, ia, owner, events) && add_hyp(st, ib, owner, events)
        }
        Formula::Exists(x, body) => {
            let Some(e) = st.fresh_eigen(&x) else {
                return false;
            };
            let ib = st.push(body.instantiate(&x, &e));
            events.push(Event { rule: Rule::LExists, principal: id, created: vec![ib], term: Some(e) });
            add_hyp(st, ib, owner, events)
        }
        _ => {
            st.pool.push((id, owner));
            true
        }
    }
}

/// The atom reached by following quantifiers and implication targets, if any.
fn head_atom(f: &Formula) -> Option<&Atom> {
    match f {
        Formula::Atom(a) => Some(a),
        Formula::Forall(_, b) | Formula::Limp(_, b) => head_atom(b),
        _ => None,
    }
}

/// Each axiom pairs one positive and one negative occurrence of the same
/// predicate, so the signed counts must cancel.
fn polarity_balanced(seq: &Sequent) -> bool {
    fn walk(f: &Formula, positive: bool, acc: &mut BTreeMap<(String, usize), i64>) {
        match f {
            Formula::Atom(a) => {
                *acc.entry((a.pred.clone(), a.args.len())).or_default() += if positive { 1 } else { -1 };
            }
            Formula::Tensor(a, b) => {
                walk(a, positive, acc);
                walk(b, positive, acc);
            }
            Formula::Limp(a, b) => {
                walk(a, !positive, acc);
                walk(b, positive, acc);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => walk(b, positive, acc),
        }
    }
    let mut acc = BTreeMap::new();
    for f in &seq.antecedent {
        walk(f, false, &mut acc);
    }
    walk(&seq.succedent, true, &mut acc);
    acc.values().all(|&v| v == 0)
}

fn rebuild(node: &Node, st: &State) -> Result<Derivation, String> {
    fn ante(node: &Node) -> Vec<usize> {
        let mut out: Vec<usize> = node.premisses.iter().flat_map(ante).collect();
        for c in &node.created {
            if let Some(pos) = out.iter().position(|x| x == c) {
                out.remove(pos);
            }
        }
        if let Some(p) = node.principal {
            out.push(p);
        }
        out.sort_unstable();
        out
    }
    fn build(node: &Node, st: &State) -> Derivation {
        let f = |i: usize| st.b.subst.apply(&st.arena[i]);
        let antecedent = ante(node).into_iter().map(f).collect();
        Derivation {
            rule: node.rule,
            conclusion: Sequent::new(antecedent, f(node.goal)),
            premisses: node.premisses.iter().map(|p| build(p, st)).collect(),
            principal: node.principal.map(f),
            term: node.term.as_ref().map(|t| st.b.subst.resolve(t)),
            unifier: (node.rule == Rule::Ax).then(|| st.b.subst.clone()),
        }
    }
    Ok(build(node, st))
}

fn remove_one(list: &mut Vec<Formula>, f: &Formula) -> bool {
    match list.iter().position(|g| g == f) {
        Some(i) => {
            list.remove(i);
            true
        }
        None => false,
    }
}

fn same_multiset(a: &[Formula], b: &[Formula]) -> bool {
    let mut b = b.to_vec();
    a.len() == b.len() && a.iter().all(|f| remove_one(&mut b, f))
}

/// Checks every inference of a derivation against the rules of MILL1.
pub fn validate(d: &Derivation) -> Result<(), String> {
    for p in &d.premisses {
        validate(p)?;
    }
    let err = |m: &str| Err(format!("{} at `{}`: {m}", d.rule, d.conclusion));
    let concl = &d.conclusion;
    let arity = match d.rule {
        Rule::Ax => 0,
        Rule::RTensor | Rule::LLimp => 2,
        _ => 1,
    };
    if d.premisses.len() != arity {
        return err("wrong number of premisses");
    }
    let principal = d.principal.clone();
    let mut rest = concl.antecedent.clone();
    if let Some(p) = &principal {
        if !remove_one(&mut rest, p) {
            return err("principal formula missing from the antecedent");
        }
    }
    match d.rule {
        Rule::Ax => {
            let Some(p) = principal else { return err("no principal") };
            if !rest.is_empty() || p != concl.succedent || !matches!(p, Formula::Atom(_)) {
                return err("not an atomic identity");
            }
        }
        Rule::LTensor => {
            let Some(Formula::Tensor(a, b)) = principal else { return err("principal is not a product") };
            let prem = &d.premisses[0].conclusion;
            let mut expect = rest.clone();
            expect.push(*a);
            expect.push(*b);
            if !same_multiset(&prem.antecedent, &expect) || prem.succedent != concl.succedent {
                return err("premiss mismatch");
            }
        }
        Rule::RTensor => {
            let Formula::Tensor(a, b) = &concl.succedent else { return err("succedent is not a product") };
            let (p1, p2) = (&d.premisses[0].conclusion, &d.premisses[1].conclusion);
            let mut joined = p1.antecedent.clone();
            joined.extend(p2.antecedent.iter().cloned());
            if p1.succedent != **a || p2.succedent != **b || !same_multiset(&joined, &rest) {
                return err("premiss mismatch");
            }
        }
        Rule::LLimp => {
            let Some(Formula::Limp(a, b)) = principal else { return err("principal is not an implication") };
            let (p1, p2) = (&d.premisses[0].conclusion, &d.premisses[1].conclusion);
            let mut right = p2.antecedent.clone();
            if p1.succedent != *a || p2.succedent != concl.succedent || !remove_one(&mut right, &b) {
                return err("premiss mismatch");
            }
            let mut joined = p1.antecedent.clone();
            joined.extend(right);
            if !same_multiset(&joined, &rest) {
                return err("context mismatch");
            }
        }
        Rule::RLimp => {
            let Formula::Limp(a, b) = &concl.succedent else { return err("succedent is not an implication") };
            let prem = &d.premisses[0].conclusion;
            let mut expect = rest.clone();
            expect.push((**a).clone());
            if !same_multiset(&prem.antecedent, &expect) || prem.succedent != **b {
                return err("premiss mismatch");
            }
        }
        Rule::LForall | Rule::LExists => {
            let (x, body) = match (&principal, d.rule) {
                (Some(Formula::Forall(x, b)), Rule::LForall) | (Some(Formula::Exists(x, b)), Rule::LExists) => {
                    (x.clone(), (**b).clone())
                }
                _ => return err("principal has the wrong quantifier"),
            };
            let Some(t) = &d.term else { return err("no term") };
            let prem = &d.premisses[0].conclusion;
            let mut expect = rest.clone();
            expect.push(body.instantiate(&x, t));
            if !same_multiset(&prem.antecedent, &expect) || prem.succedent != concl.succedent {
                return err("premiss mismatch");
            }
            if d.rule == Rule::LExists {
                let Term::Eigen { name, .. } = t else { return err("witness is not an eigenvariable") };
                if concl.formulas().any(|f| free_eigenvariables(f).contains(name)) {
                    return err("eigenvariable occurs in the conclusion");
                }
            }
        }
        Rule::RForall | Rule::RExists => {
            let (x, body) = match (&concl.succedent, d.rule) {
                (Formula::Forall(x, b), Rule::RForall) | (Formula::Exists(x, b), Rule::RExists) => {
                    (x.clone(), (**b).clone())
                }
                _ => return err("succedent has the wrong quantifier"),
            };
            let Some(t) = &d.term else { return err("no term") };
            let prem = &d.premisses[0].conclusion;
            if !same_multiset(&prem.antecedent, &rest) || prem.succedent != body.instantiate(&x, t) {
                return err("premiss mismatch");
            }
            if d.rule == Rule::RForall {
                let Term::Eigen { name, .. } = t else { return err("witness is not an eigenvariable") };
                if concl.formulas().any(|f| free_eigenvariables(f).contains(name)) {
                    return err("eigenvariable occurs in the conclusion");
                }
            }
        }
    }
    Ok(())
}

/// Convenience wrapper returning one derivation.
pub fn prove(seq: &Sequent, store: &OrderStore) -> Option<Derivation> {
    Prover::new().prove(seq, store)
}

/// A named sequent of a residuation test suite.
#[derive(Clone, Debug)]
pub struct SuiteItem {
    pub name: &'static str,
    pub sequent: Sequent,
    pub store: OrderStore,
    pub expected: bool,
}

/// Application, co-application and monotonicity sequents for the connective
/// family of `p`, translated over atoms `a`, `b`, `c`. Schema positions are
/// mapped to the position constants of the same number, and the store holds
/// every fact produced by translation.
pub fn residuation_suite(p: &Pattern) -> Vec<SuiteItem> {
    let s = schema(p);
    let span = |idx: &[usize]| -> Vec<Term> { idx.iter().map(|&i| Term::Pos(i as u32)).collect() };
    let (ta, tb, tc) = (span(&s.tuple_a), span(&s.tuple_b), span(&s.tuple_c));
    let (a, b, c) = (CatFormula::atom("a"), CatFormula::atom("b"), CatFormula::atom("c"));
    let prod = |x: CatFormula, y: CatFormula| CatFormula::prod(p.clone(), x, y);
    let under = |x: CatFormula, y: CatFormula| CatFormula::under(p.clone(), x, y);
    let over = |x: CatFormula, y: CatFormula| CatFormula::over(p.clone(), x, y);
    let cases: Vec<(&'static str, CatFormula, CatFormula, &Vec<Term>)> = vec![
        ("application_over", prod(over(c.clone(), b.clone()), b.clone()), c.clone(), &tc),
        ("application_under", prod(a.clone(), under(a.clone(), c.clone())), c.clone(), &tc),
        ("coapplication_over", a.clone(), over(prod(a.clone(), b.clone()), b.clone()), &ta),
        ("coapplication_under", b.clone(), under(a.clone(), prod(a.clone(), b.clone())), &tb),
        ("monotonicity_product", prod(a.clone(), b.clone()), prod(a.clone(), b.clone()), &tc),
        ("monotonicity_under", under(a.clone(), c.clone()), under(a.clone(), c.clone()), &tb),
        ("monotonicity_over", over(c.clone(), b.clone()), over(c, b), &ta),
    ];
    cases
        .into_iter()
        .map(|(name, lhs, rhs, at)| {
            let mut tr = Translator::new();
            let l = tr.translate(&lhs, at).expect("schema spans fit the pattern");
            let r = tr.translate(&rhs, at).expect("schema spans fit the pattern");
            let store = OrderStore::from_facts(l.facts.iter().chain(&r.facts)).expect("translation facts are consistent");
            SuiteItem { name, sequent: Sequent::new(vec![l.mill], r.mill), store, expected: true }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_sequent;

    fn derivable(s: &str) -> Option<Derivation> {
        let seq = parse_sequent(s).unwrap();
        let d = prove(&seq, &OrderStore::new());
        if let Some(d) = &d {
            validate(d).unwrap();
        }
        d
    }

    #[test]
    fn eigenvariable_condition_blocks_proof() {
        assert!(derivable("forall y. (a * b(y)) |- a * forall x. b(x)").is_none());
    }

    #[test]
    fn component_sequents_are_derivable() {
        assert!(derivable("a, forall x. b(x) |- a * forall x. b(x)").is_some());
        assert!(derivable("forall y. (a * b(y)) |- a * b(c_x)").is_some());
        assert!(derivable("b(c_x) |- b(c_x)").is_some());
    }

    #[test]
    fn cancellation() {
        let d = derivable("forall z. (b(1,z) -o c(0,z)), b(1,2) |- c(0,2)").unwrap();
        assert_eq!(d.axioms(), 2);
    }

    #[test]
    fn polarity_mismatch_fails_fast() {
        assert!(derivable("a, a |- a").is_none());
        assert!(derivable("a -o b |- b -o a").is_none());
    }

    #[test]
    fn order_store_prunes_bindings() {
        let seq = parse_sequent("forall X. (p(X) -o q), p(0) |- q").unwrap();
        assert!(prove(&seq, &OrderStore::new()).is_some());
        let store = OrderStore::from_facts(&crate::order::parse_facts("1<=X").unwrap()).unwrap();
        assert!(prove(&seq, &store).is_none());
    }

    #[test]
    fn all_mode_enumerates_alternatives() {
        let seq = parse_sequent("a, a |- a * a").unwrap();
        let all = Prover::new().prove_all(&seq, &OrderStore::new(), 10);
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn residuation_suites() {
        for p in (1..=4).flat_map(|k| crate::patterns::enumerate_patterns(k, false)) {
            let suite = residuation_suite(&p);
            assert_eq!(suite.len(), 7);
            for item in suite {
                let d = prove(&item.sequent, &item.store);
                assert!(d.is_some(), "{p} {} {}", item.name, item.sequent);
                validate(&d.unwrap()).unwrap();
            }
        }
    }
}
