//! Terms, MILL1 formulas, sequents, substitutions and unification.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// A flat first-order term.
///
/// `Var` is a bound variable occurrence inside a quantifier body. The other
/// kinds appear once quantifiers have been instantiated or in free positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Meta { name: String, level: u32 },
    Eigen { name: String, level: u32 },
    Pos(u32),
    Const(String),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn meta(name: &str, level: u32) -> Term {
        Term::Meta { name: name.to_string(), level }
    }

    pub fn eigen(name: &str, level: u32) -> Term {
        Term::Eigen { name: name.to_string(), level }
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    /// The identifier of the term, or `None` for position constants.
    pub fn name(&self) -> Option<&str> {
        match self {
            Term::Var(n) | Term::Const(n) => Some(n),
            Term::Meta { name, .. } | Term::Eigen { name, .. } => Some(name),
            Term::Pos(_) => None,
        }
    }

    pub fn is_meta(&self) -> bool {
        matches!(self, Term::Meta { .. })
    }

    /// Eigenvariables, positions and constants never bind.
    pub fn is_rigid(&self) -> bool {
        matches!(self, Term::Eigen { .. } | Term::Pos(_) | Term::Const(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Pos(n) => write!(f, "{n}"),
            other => write!(f, "{}", other.name().unwrap_or_default()),
        }
    }
}

/// An atomic formula `p(t1,...,tn)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Atom {
        Atom { pred: pred.to_string(), args }
    }

    pub fn substitute(&self, s: &Substitution) -> Atom {
        Atom { pred: self.pred.clone(), args: self.args.iter().map(|t| s.resolve(t)).collect() }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A MILL1 formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    Tensor(Box<Formula>, Box<Formula>),
    Limp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(Atom::new(pred, args))
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn limp(a: Formula, b: Formula) -> Formula {
        Formula::Limp(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, body: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(body))
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(body))
    }

    /// Wraps `body` in universal quantifiers, the first name outermost.
    pub fn forall_many(vars: &[String], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, v| Formula::forall(v, acc))
    }

    /// Wraps `body` in existential quantifiers, the first name outermost.
    pub fn exists_many(vars: &[String], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, v| Formula::exists(v, acc))
    }

    /// Replaces the bound variable `x` by `t` throughout the formula.
    pub fn instantiate(&self, x: &str, t: &Term) -> Formula {
        self.map_terms(&|u: &Term| match u {
            Term::Var(n) if n == x => t.clone(),
            other => other.clone(),
        })
    }

    /// Applies `f` to every term occurrence.
    pub fn map_terms(&self, f: &dyn Fn(&Term) -> Term) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                pred: a.pred.clone(),
                args: a.args.iter().map(f).collect(),
            }),
            Formula::Tensor(a, b) => Formula::tensor(a.map_terms(f), b.map_terms(f)),
            Formula::Limp(a, b) => Formula::limp(a.map_terms(f), b.map_terms(f)),
            Formula::Forall(x, b) => Formula::Forall(x.clone(), Box::new(b.map_terms(f))),
            Formula::Exists(x, b) => Formula::Exists(x.clone(), Box::new(b.map_terms(f))),
        }
    }

    /// Visits every atom, left to right.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::Tensor(a, b) | Formula::Limp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.collect_atoms(out),
        }
    }

    /// Names bound by quantifiers in this formula, outermost first.
    pub fn binders(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(_) => {}
            Formula::Tensor(a, b) | Formula::Limp(a, b) => {
                a.collect_binders(out);
                b.collect_binders(out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                out.push(x.clone());
                b.collect_binders(out);
            }
        }
    }

    /// Free variable-like names: `Var` occurrences not bound inside the formula.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    if let Term::Var(n) = t {
                        if !bound.contains(n) {
                            out.insert(n.clone());
                        }
                    }
                }
            }
            Formula::Tensor(a, b) | Formula::Limp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Renames every binder to a name not yet in `supply`.
    pub fn rename_apart(&self, supply: &mut NameSupply) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::Tensor(a, b) => Formula::tensor(a.rename_apart(supply), b.rename_apart(supply)),
            Formula::Limp(a, b) => Formula::limp(a.rename_apart(supply), b.rename_apart(supply)),
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let y = supply.fresh(x);
                let body = b.instantiate(x, &Term::Var(y.clone())).rename_apart(supply);
                if matches!(self, Formula::Forall(..)) {
                    Formula::Forall(y, Box::new(body))
                } else {
                    Formula::Exists(y, Box::new(body))
                }
            }
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Formula::Tensor(..) | Formula::Limp(..))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(g: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match g {
                Formula::Atom(_) => write!(f, "{g}"),
                _ => write!(f, "({g})"),
            }
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Tensor(a, b) => {
                operand(a, f)?;
                write!(f, " * ")?;
                operand(b, f)
            }
            Formula::Limp(a, b) => {
                operand(a, f)?;
                write!(f, " -o ")?;
                operand(b, f)
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let q = if matches!(self, Formula::Forall(..)) { "forall" } else { "exists" };
                write!(f, "{q} {x}. ")?;
                if b.is_binary() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

/// A sequent `A1, ..., An |- C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Sequent {
        Sequent { antecedent, succedent }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(std::iter::once(&self.succedent))
    }

    /// True when all binders across the sequent are pairwise distinct.
    pub fn binders_distinct(&self) -> bool {
        let mut seen = HashSet::new();
        self.formulas().flat_map(|f| f.binders()).all(|b| seen.insert(b))
    }

    /// Renames binders so that they are pairwise distinct, keeping names
    /// that are already unique.
    pub fn rename_apart(&self) -> Sequent {
        if self.binders_distinct() {
            return self.clone();
        }
        let mut supply = NameSupply::default();
        for f in self.formulas() {
            for t in f.atoms().iter().flat_map(|a| a.args.iter()) {
                if let Some(n) = t.name() {
                    if !matches!(t, Term::Var(_)) {
                        supply.reserve(n);
                    }
                }
            }
        }
        Sequent {
            antecedent: self.antecedent.iter().map(|f| f.rename_apart(&mut supply)).collect(),
            succedent: self.succedent.rename_apart(&mut supply),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.antecedent.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "|- {}", self.succedent)
    }
}

/// Monotone supply of identifiers that never repeats a name.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    used: HashSet<String>,
}

impl NameSupply {
    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    pub fn is_used(&self, name: &str) -> bool {
        self.used.contains(name)
    }

    /// Returns `base` if unused, otherwise `base_1`, `base_2`, ...
    pub fn fresh(&mut self, base: &str) -> String {
        if self.used.insert(base.to_string()) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}_{i}"))
            .find(|c| self.used.insert(c.clone()))
            .expect("infinite supply")
    }
}

/// An idempotent substitution from metavariable names to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, Term)>) -> Substitution {
        let mut s = Substitution::new();
        for (k, v) in pairs {
            s.bind(&k, v);
        }
        s
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.map.get(name)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.map.iter()
    }

    /// The current value of a term under the substitution.
    pub fn resolve(&self, t: &Term) -> Term {
        match t {
            Term::Meta { name, .. } => self.map.get(name).cloned().unwrap_or_else(|| t.clone()),
            _ => t.clone(),
        }
    }

    /// Binds `name` to an already resolved term, keeping the map idempotent.
    fn bind(&mut self, name: &str, value: Term) {
        let value = self.resolve(&value);
        for v in self.map.values_mut() {
            if matches!(v, Term::Meta { name: n, .. } if n == name) {
                *v = value.clone();
            }
        }
        self.map.insert(name.to_string(), value);
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        f.map_terms(&|t| self.resolve(t))
    }

    pub fn apply_sequent(&self, s: &Sequent) -> Sequent {
        Sequent {
            antecedent: s.antecedent.iter().map(|f| self.apply(f)).collect(),
            succedent: self.apply(&s.succedent),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:={v}")?;
        }
        write!(f, "}}")
    }
}

/// Applies a substitution to a formula.
pub fn substitute(f: &Formula, s: &Substitution) -> Formula {
    s.apply(f)
}

/// Most general unifier extending `s`, treating eigenvariables, positions and
/// constants as rigid. A metavariable on the left binds first.
pub fn unify(t1: &Term, t2: &Term, s: &Substitution) -> Option<Substitution> {
    unify_with(t1, t2, s, false)
}

/// Like [`unify`], but a metavariable may only be bound to an eigenvariable of
/// strictly lower creation level; between two metavariables the younger one
/// is bound to the older one.
pub fn unify_scoped(t1: &Term, t2: &Term, s: &Substitution) -> Option<Substitution> {
    unify_with(t1, t2, s, true)
}

fn unify_with(t1: &Term, t2: &Term, s: &Substitution, scoped: bool) -> Option<Substitution> {
    let a = s.resolve(t1);
    let b = s.resolve(t2);
    if a == b {
        return Some(s.clone());
    }
    let mut out = s.clone();
    match (&a, &b) {
        (Term::Meta { name: m, level: lm }, Term::Meta { name: n, level: ln }) => {
            if scoped && ln > lm {
                out.bind(n, a.clone());
            } else {
                out.bind(m, b.clone());
            }
        }
        (Term::Meta { name, level }, other) | (other, Term::Meta { name, level }) => {
            if scoped {
                if let Term::Eigen { level: le, .. } = other {
                    if le >= level {
                        return None;
                    }
                }
            }
            out.bind(name, other.clone());
        }
        _ => return None,
    }
    Some(out)
}

/// Unifies two atoms argument by argument, left to right.
pub fn unify_atoms(a1: &Atom, a2: &Atom, s: &Substitution) -> Option<Substitution> {
    unify_atoms_with(a1, a2, s, false)
}

pub fn unify_atoms_scoped(a1: &Atom, a2: &Atom, s: &Substitution) -> Option<Substitution> {
    unify_atoms_with(a1, a2, s, true)
}

fn unify_atoms_with(a1: &Atom, a2: &Atom, s: &Substitution, scoped: bool) -> Option<Substitution> {
    if a1.pred != a2.pred || a1.args.len() != a2.args.len() {
        return None;
    }
    a1.args
        .iter()
        .zip(&a2.args)
        .try_fold(s.clone(), |acc, (x, y)| unify_with(x, y, &acc, scoped))
}

/// Names of eigenvariables occurring free in `f`.
pub fn free_eigenvariables(f: &Formula) -> BTreeSet<String> {
    f.atoms()
        .iter()
        .flat_map(|a| a.args.iter())
        .filter_map(|t| match t {
            Term::Eigen { name, .. } => Some(name.clone()),
            _ => None,
        })
        .collect()
}

/// Equality up to renaming of bound variables. Adjacent quantifiers of the
/// same kind commute, so a block such as `forall x forall y` matches
/// `forall y forall x` with the bodies aligned.
pub fn alpha_equal(f1: &Formula, f2: &Formula) -> bool {
    alpha_rec(f1, f2, &mut Vec::new())
}

fn quantifier_block(f: &Formula) -> (bool, Vec<String>, &Formula) {
    let universal = matches!(f, Formula::Forall(..));
    let mut vars = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Forall(x, b) if universal => {
                vars.push(x.clone());
                cur = b;
            }
            Formula::Exists(x, b) if !universal => {
                vars.push(x.clone());
                cur = b;
            }
            _ => break,
        }
    }
    (universal, vars, cur)
}

fn alpha_rec(f1: &Formula, f2: &Formula, env: &mut Vec<(String, String)>) -> bool {
    match (f1, f2) {
        (Formula::Atom(a), Formula::Atom(b)) => {
            a.pred == b.pred
                && a.args.len() == b.args.len()
                && a.args.iter().zip(&b.args).all(|(x, y)| alpha_term(x, y, env))
        }
        (Formula::Tensor(a1, b1), Formula::Tensor(a2, b2))
        | (Formula::Limp(a1, b1), Formula::Limp(a2, b2)) => {
            alpha_rec(a1, a2, env) && alpha_rec(b1, b2, env)
        }
        (Formula::Forall(..), Formula::Forall(..)) | (Formula::Exists(..), Formula::Exists(..)) => {
            let (_, xs, b1) = quantifier_block(f1);
            let (_, ys, b2) = quantifier_block(f2);
            if xs.len() != ys.len() {
                return false;
            }
            permutations(ys.len()).into_iter().any(|perm| {
                let base = env.len();
                for (i, x) in xs.iter().enumerate() {
                    env.push((x.clone(), ys[perm[i]].clone()));
                }
                let ok = alpha_rec(b1, b2, env);
                env.truncate(base);
                ok
            })
        }
        _ => false,
    }
}

fn alpha_term(x: &Term, y: &Term, env: &[(String, String)]) -> bool {
    let lx = env.iter().rposition(|(a, _)| Some(a.as_str()) == x.name() && matches!(x, Term::Var(_)));
    let ly = env.iter().rposition(|(_, b)| Some(b.as_str()) == y.name() && matches!(y, Term::Var(_)));
    match (lx, ly) {
        (Some(i), Some(j)) => i == j,
        (None, None) => x == y,
        _ => false,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::eigen("x", 0)
    }

    #[test]
    fn substitute_meta_by_eigen() {
        let f = Formula::atom("b", vec![Term::meta("Y", 1)]);
        let s = unify(&Term::meta("Y", 1), &x(), &Substitution::new()).unwrap();
        assert_eq!(s.get("Y"), Some(&x()));
        assert_eq!(substitute(&f, &s), Formula::atom("b", vec![x()]));
    }

    #[test]
    fn substitute_leaves_bound_variables() {
        let f = Formula::forall("z", Formula::atom("p", vec![Term::var("z"), Term::meta("Y", 0)]));
        let s = Substitution::from_pairs([("Y".to_string(), Term::Pos(0))]);
        assert_eq!(
            substitute(&f, &s),
            Formula::forall("z", Formula::atom("p", vec![Term::var("z"), Term::Pos(0)]))
        );
        let a = Formula::atom("a", vec![]);
        assert_eq!(substitute(&a, &Substitution::new()), a);
    }

    #[test]
    fn rigid_terms_clash() {
        assert!(unify(&Term::eigen("x1", 0), &Term::Pos(2), &Substitution::new()).is_none());
        let a = Term::meta("A", 0);
        assert_eq!(unify(&a, &a, &Substitution::new()), Some(Substitution::new()));
    }

    #[test]
    fn atom_unification() {
        let m = |n: &str| Term::meta(n, 0);
        let s = unify_atoms(
            &Atom::new("np", vec![m("Y"), m("Z")]),
            &Atom::new("np", vec![Term::Pos(0), Term::Pos(1)]),
            &Substitution::new(),
        )
        .unwrap();
        assert_eq!(s.get("Y"), Some(&Term::Pos(0)));
        assert_eq!(s.get("Z"), Some(&Term::Pos(1)));
        let s_x2x1 = Atom::new("s", vec![Term::eigen("x2", 0), Term::eigen("x1", 0)]);
        assert!(unify_atoms(&s_x2x1, &Atom::new("s", vec![m("A"), Term::Pos(2)]), &Substitution::new()).is_none());
        assert!(unify_atoms(
            &Atom::new("np", vec![m("C"), m("D")]),
            &Atom::new("s", vec![m("C"), m("D")]),
            &Substitution::new()
        )
        .is_none());
    }

    #[test]
    fn scoped_unification_respects_levels() {
        let old_meta = Term::meta("Y", 1);
        let young_eigen = Term::eigen("x", 2);
        assert!(unify_scoped(&old_meta, &young_eigen, &Substitution::new()).is_none());
        assert!(unify_scoped(&Term::meta("Y", 3), &young_eigen, &Substitution::new()).is_some());
        let s = unify_scoped(&Term::meta("Y", 3), &Term::meta("Z", 1), &Substitution::new()).unwrap();
        assert_eq!(s.get("Y"), Some(&Term::meta("Z", 1)));
        assert!(unify_scoped(&Term::meta("Y", 3), &young_eigen, &s).is_none());
    }

    #[test]
    fn substitution_stays_idempotent() {
        let s = unify(&Term::meta("A", 0), &Term::meta("B", 0), &Substitution::new()).unwrap();
        let s = unify(&Term::meta("B", 0), &Term::Pos(4), &s).unwrap();
        assert_eq!(s.get("A"), Some(&Term::Pos(4)));
        let f = Formula::atom("p", vec![Term::meta("A", 0)]);
        assert_eq!(s.apply(&s.apply(&f)), s.apply(&f));
    }

    #[test]
    fn eigenvariable_sets() {
        let a = Formula::atom("a", vec![]);
        let bx = Formula::atom("b", vec![x()]);
        assert_eq!(free_eigenvariables(&Formula::tensor(a.clone(), bx)).len(), 1);
        let closed = Formula::forall("x", Formula::atom("b", vec![Term::var("x")]));
        assert!(free_eigenvariables(&closed).is_empty());
        assert!(free_eigenvariables(&a).is_empty());
    }

    #[test]
    fn alpha_equality_cases() {
        let v = Term::var;
        let lhs = Formula::forall(
            "x1",
            Formula::forall(
                "x0",
                Formula::limp(
                    Formula::atom("np", vec![v("x0"), v("x1")]),
                    Formula::atom("s", vec![v("x0"), v("x1")]),
                ),
            ),
        );
        let rhs = Formula::forall(
            "y1",
            Formula::forall(
                "y2",
                Formula::limp(
                    Formula::atom("np", vec![v("y1"), v("y2")]),
                    Formula::atom("s", vec![v("y1"), v("y2")]),
                ),
            ),
        );
        assert!(alpha_equal(&lhs, &rhs));
        let y = Term::constant("y");
        let z = Term::constant("z");
        let scoped = Formula::exists(
            "x",
            Formula::limp(
                Formula::atom("np", vec![v("x"), v("x")]),
                Formula::atom("s", vec![y.clone(), z.clone()]),
            ),
        );
        let naive = Formula::limp(
            Formula::forall("x", Formula::atom("np", vec![v("x"), v("x")])),
            Formula::atom("s", vec![y, z]),
        );
        assert!(!alpha_equal(&scoped, &naive));
        let a = Formula::atom("a", vec![]);
        assert!(alpha_equal(&a, &a));
    }

    #[test]
    fn alpha_distinguishes_binding_structure() {
        let v = Term::var;
        let f = Formula::forall("x", Formula::forall("y", Formula::atom("p", vec![v("x"), v("x")])));
        let g = Formula::forall("x", Formula::forall("y", Formula::atom("p", vec![v("x"), v("y")])));
        assert!(!alpha_equal(&f, &g));
    }

    #[test]
    fn rename_apart_makes_binders_unique() {
        let body = |n: &str| Formula::atom("p", vec![Term::var(n)]);
        let seq = Sequent::new(vec![Formula::forall("x", body("x"))], Formula::forall("x", body("x")));
        assert!(!seq.binders_distinct());
        let r = seq.rename_apart();
        assert!(r.binders_distinct());
        assert!(alpha_equal(&r.antecedent[0], &seq.antecedent[0]));
        assert!(alpha_equal(&r.succedent, &seq.succedent));
    }
}
