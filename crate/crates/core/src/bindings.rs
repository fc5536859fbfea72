//! Substitutions kept consistent with an order store.

use std::collections::HashMap;

use crate::order::OrderStore;
use crate::term::{unify_atoms_scoped, unify_atoms, unify_scoped, unify, Atom, Substitution, Term};

/// A substitution together with the order constraints on its terms.
///
/// Metavariables and eigenvariables are named after the binders they
/// instantiate, so the facts of the store, which mention binder names, apply
/// to them directly.
#[derive(Clone, Debug)]
pub struct Bindings {
    pub subst: Substitution,
    pub store: OrderStore,
    introduced: HashMap<String, Term>,
    scoped: bool,
}

impl Bindings {
    /// With `scoped`, a metavariable only binds eigenvariables of a lower level.
    pub fn new(store: OrderStore, scoped: bool) -> Bindings {
        Bindings { subst: Substitution::new(), store, introduced: HashMap::new(), scoped }
    }

    /// Records the term instantiating a binder. Fails when the term is rigid
    /// and the store already identifies its node with another rigid term.
    pub fn introduce(&mut self, binder: &str, t: Term) -> bool {
        if t.is_rigid() && self.store.register(&t).is_err() {
            return false;
        }
        self.introduced.insert(binder.to_string(), t);
        true
    }

    /// Registers the rigid arguments of an atom with the store.
    pub fn register_rigid(&mut self, a: &Atom) -> bool {
        a.args.iter().filter(|t| t.is_rigid()).all(|t| self.store.register(t).is_ok())
    }

    fn known(&self, t: &Term) -> Option<Term> {
        match t {
            Term::Var(n) => self.introduced.get(n).map(|t| self.subst.resolve(t)),
            other => Some(self.subst.resolve(other)),
        }
    }

    fn meta_term(&self, name: &str) -> Term {
        match self.introduced.get(name) {
            Some(t @ Term::Meta { .. }) => t.clone(),
            _ => Term::meta(name, 0),
        }
    }

    fn unify_terms(&self, a: &Term, b: &Term) -> Option<Substitution> {
        if self.scoped {
            unify_scoped(a, b, &self.subst)
        } else {
            unify(a, b, &self.subst)
        }
    }

    /// Unifies two atoms, then propagates every new binding through the
    /// store, unifying the identifications it reports, until nothing changes.
    pub fn unify_atoms(&mut self, a: &Atom, b: &Atom) -> bool {
        let s = if self.scoped { unify_atoms_scoped(a, b, &self.subst) } else { unify_atoms(a, b, &self.subst) };
        match s {
            Some(s) => self.commit(s),
            None => false,
        }
    }

    fn commit(&mut self, s: Substitution) -> bool {
        let mut pending: Vec<(Term, Term)> = s
            .iter()
            .filter(|(n, _)| self.subst.get(n).is_none())
            .map(|(n, t)| (self.meta_term(n), t.clone()))
            .collect();
        self.subst = s;
        while let Some((m, t)) = pending.pop() {
            let eqs = match self.store.merge(&m, &t) {
                Ok(eqs) => eqs,
                Err(_) => return false,
            };
            for (l, r) in eqs {
                let (Some(l), Some(r)) = (self.known(&l), self.known(&r)) else {
                    continue;
                };
                let Some(s2) = self.unify_terms(&l, &r) else {
                    return false;
                };
                for (n, t) in s2.iter() {
                    if self.subst.get(n).is_none() {
                        pending.push((self.meta_term(n), t.clone()));
                    }
                }
                self.subst = s2;
            }
        }
        true
    }
}
