//! Proof structures, axiom matching and the contraction criterion.

mod contract;
mod dot;
mod search;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::term::{free_eigenvariables, Atom, Formula, Sequent, Substitution, Term};

pub use contract::{abstract_structure, contract, contract_with, AbstractEdge, AbstractStructure, Contraction, Outcome, Step};
pub use dot::{abstract_to_dot, structure_to_dot};
pub use search::{
    candidate_table, candidate_table_with, enumerate_matchings, for_each_matching, is_strict, prove_net, prove_net_with, Matching, NetConfig,
    NetReport, ProofNet, SearchStats,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LinkKind {
    Tensor,
    Par,
    Universal,
    Existential,
}

/// A logical link between formula occurrences.
#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub kind: LinkKind,
    pub premisses: Vec<usize>,
    pub conclusions: Vec<usize>,
    /// The occurrence whose main connective the link decomposes.
    pub main: usize,
    /// The immediate subformula occurrences.
    pub active: Vec<usize>,
    /// The eigenvariable of a universal link or the metavariable of an
    /// existential one.
    pub var: Option<Term>,
}

/// A formula occurrence of an unfolded sequent.
#[derive(Clone, Debug, PartialEq)]
pub struct Occurrence {
    pub id: usize,
    pub formula: Formula,
    pub polarity: Polarity,
    /// Index of the sequent formula this occurrence belongs to.
    pub tree: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// The unfolding of a sequent into occurrences and links, before any atoms
/// are identified.
#[derive(Clone, Debug)]
pub struct ProofStructure {
    pub sequent: Sequent,
    pub occurrences: Vec<Occurrence>,
    pub links: Vec<Link>,
    /// Root occurrence of each sequent formula, succedent last.
    pub roots: Vec<usize>,
}

impl ProofStructure {
    pub fn atoms(&self, polarity: Polarity) -> Vec<usize> {
        self.occurrences
            .iter()
            .filter(|o| o.polarity == polarity && matches!(o.formula, Formula::Atom(_)))
            .map(|o| o.id)
            .collect()
    }

    pub fn atom(&self, id: usize) -> &Atom {
        match &self.occurrences[id].formula {
            Formula::Atom(a) => a,
            other => panic!("occurrence {id} is not atomic: {other}"),
        }
    }

    pub fn links_of(&self, kind: LinkKind) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(move |l| l.kind == kind)
    }

    /// The occurrences of the subformula tree rooted at `id`.
    pub fn subtree(&self, id: usize) -> Vec<usize> {
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.occurrences[out[i]].children.iter().copied());
            i += 1;
        }
        out
    }

    /// Eigenvariable names introduced by universal links.
    pub fn eigenvariables(&self) -> Vec<String> {
        self.links_of(LinkKind::Universal)
            .filter_map(|l| l.var.as_ref().and_then(|t| t.name()).map(str::to_string))
            .collect()
    }

    /// Metavariables introduced by existential links, in unfolding order.
    pub fn metavariables(&self) -> Vec<Term> {
        self.links_of(LinkKind::Existential).filter_map(|l| l.var.clone()).collect()
    }

    /// Number of positive atoms per predicate and arity; negatives count
    /// negatively, so a structure admits a matching only if all are zero.
    pub fn atom_balance(&self) -> BTreeMap<(String, usize), i64> {
        let mut acc = BTreeMap::new();
        for o in &self.occurrences {
            if let Formula::Atom(a) = &o.formula {
                let d = if o.polarity == Polarity::Positive { 1 } else { -1 };
                *acc.entry((a.pred.clone(), a.args.len())).or_default() += d;
            }
        }
        acc
    }
}

/// Unfolds the antecedent negatively and the succedent positively.
/// Quantified variables become metavariables at existential links and
/// eigenvariables at universal links, named after their binders.
pub fn unfold(seq: &Sequent) -> ProofStructure {
    let seq = if seq.binders_distinct() { seq.clone() } else { seq.rename_apart() };
    let mut ps = ProofStructure { sequent: seq.clone(), occurrences: Vec::new(), links: Vec::new(), roots: Vec::new() };
    let mut level = 0;
    let tops: Vec<(Formula, Polarity)> = seq
        .antecedent
        .iter()
        .map(|f| (f.clone(), Polarity::Negative))
        .chain(std::iter::once((seq.succedent.clone(), Polarity::Positive)))
        .collect();
    for (tree, (f, pol)) in tops.into_iter().enumerate() {
        let root = unfold_rec(&mut ps, f, pol, tree, None, &mut level);
        ps.roots.push(root);
    }
    ps
}

fn unfold_rec(
    ps: &mut ProofStructure,
    f: Formula,
    pol: Polarity,
    tree: usize,
    parent: Option<usize>,
    level: &mut u32,
) -> usize {
    let id = ps.occurrences.len();
    ps.occurrences.push(Occurrence { id, formula: f.clone(), polarity: pol, tree, parent, children: Vec::new() });
    let link = match f {
        Formula::Atom(_) => None,
        Formula::Tensor(a, b) => {
            let ia = unfold_rec(ps, *a, pol, tree, Some(id), level);
            let ib = unfold_rec(ps, *b, pol, tree, Some(id), level);
            Some(match pol {
                Polarity::Positive => Link {
                    kind: LinkKind::Tensor,
                    premisses: vec![ia, ib],
                    conclusions: vec![id],
                    main: id,
                    active: vec![ia, ib],
                    var: None,
                },
                Polarity::Negative => Link {
                    kind: LinkKind::Par,
                    premisses: vec![id],
                    conclusions: vec![ia, ib],
                    main: id,
                    active: vec![ia, ib],
                    var: None,
                },
            })
        }
        Formula::Limp(a, b) => {
            let ia = unfold_rec(ps, *a, pol.flip(), tree, Some(id), level);
            let ib = unfold_rec(ps, *b, pol, tree, Some(id), level);
            Some(match pol {
                Polarity::Positive => Link {
                    kind: LinkKind::Par,
                    premisses: vec![ib],
                    conclusions: vec![ia, id],
                    main: id,
                    active: vec![ia, ib],
                    var: None,
                },
                Polarity::Negative => Link {
                    kind: LinkKind::Tensor,
                    premisses: vec![ia, id],
                    conclusions: vec![ib],
                    main: id,
                    active: vec![ia, ib],
                    var: None,
                },
            })
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let universal_kind = matches!(ps.occurrences[id].formula, Formula::Forall(..)) == (pol == Polarity::Positive);
            *level += 1;
            let t = if universal_kind { Term::eigen(&x, *level) } else { Term::meta(&x, *level) };
            let ib = unfold_rec(ps, body.instantiate(&x, &t), pol, tree, Some(id), level);
            let (premisses, conclusions) =
                if pol == Polarity::Positive { (vec![ib], vec![id]) } else { (vec![id], vec![ib]) };
            Some(Link {
                kind: if universal_kind { LinkKind::Universal } else { LinkKind::Existential },
                premisses,
                conclusions,
                main: id,
                active: vec![ib],
                var: Some(t),
            })
        }
    };
    if let Some(l) = link {
        ps.occurrences[id].children = l.active.clone();
        ps.links.push(l);
    }
    id
}

/// Main formulas of existential links whose active formula contains `x`
/// free while the main formula does not, under `subst`.
pub fn existential_frontier(ps: &ProofStructure, subst: &Substitution, x: &str) -> BTreeSet<usize> {
    ps.links_of(LinkKind::Existential)
        .filter(|l| {
            let active = subst.apply(&ps.occurrences[l.active[0]].formula);
            let main = subst.apply(&ps.occurrences[l.main].formula);
            free_eigenvariables(&active).contains(x) && !free_eigenvariables(&main).contains(x)
        })
        .map(|l| l.main)
        .collect()
}

/// Eigenvariable label of every occurrence: its free eigenvariables plus
/// those whose existential frontier contains it.
pub fn occurrence_labels(ps: &ProofStructure, subst: &Substitution) -> Vec<BTreeSet<String>> {
    let applied: Vec<BTreeSet<String>> =
        ps.occurrences.iter().map(|o| free_eigenvariables(&subst.apply(&o.formula))).collect();
    let mut labels = applied.clone();
    for l in ps.links_of(LinkKind::Existential) {
        let (a, m) = (l.active[0], l.main);
        for x in applied[a].difference(&applied[m]) {
            labels[m].insert(x.clone());
        }
    }
    labels
}

/// A maximal piece connected by tensor links, existential links and axiom
/// identifications.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub hypotheses: Vec<Formula>,
    pub conclusions: Vec<Formula>,
}

impl Component {
    pub fn sequent(&self) -> Option<Sequent> {
        match self.conclusions.as_slice() {
            [c] => Some(Sequent::new(self.hypotheses.clone(), c.clone())),
            _ => None,
        }
    }
}

/// Splits a matched structure into its components. Eigenvariables occurring
/// free in a component are replaced by constants `c_x`.
pub fn components(ps: &ProofStructure, pairs: &BTreeMap<usize, usize>, subst: &Substitution) -> Vec<Component> {
    let n = ps.occurrences.len();
    let mut node: Vec<usize> = (0..n).collect();
    for (&p, &q) in pairs {
        node[q] = p;
    }
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
    for (&p, &q) in pairs {
        uf.union(p, q);
    }
    let kept: Vec<&Link> =
        ps.links.iter().filter(|l| matches!(l.kind, LinkKind::Tensor | LinkKind::Existential)).collect();
    for l in &kept {
        for &o in l.premisses.iter().chain(&l.conclusions) {
            uf.union(l.main, o);
        }
    }
    let mut is_conclusion = vec![false; n];
    let mut is_premiss = vec![false; n];
    for l in &kept {
        for &o in &l.conclusions {
            is_conclusion[node[o]] = true;
        }
        for &o in &l.premisses {
            is_premiss[node[o]] = true;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for o in 0..n {
        if node[o] == o {
            groups.entry(uf.find(o)).or_default().push(o);
        }
    }
    let skolem = |f: &Formula| {
        subst.apply(f).map_terms(&|t| match t {
            Term::Eigen { name, .. } => Term::Const(format!("c_{name}")),
            other => other.clone(),
        })
    };
    groups
        .into_values()
        .map(|members| {
            let hypotheses = members.iter().filter(|&&o| !is_conclusion[o]).map(|&o| skolem(&ps.occurrences[o].formula));
            let conclusions = members.iter().filter(|&&o| !is_premiss[o]).map(|&o| skolem(&ps.occurrences[o].formula));
            Component { hypotheses: hypotheses.collect(), conclusions: conclusions.collect() }
        })
        .collect()
}
