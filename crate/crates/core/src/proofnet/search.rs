//! Axiom matching search and the proof net pipeline.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{abstract_structure, contract, occurrence_labels, unfold, AbstractStructure, Contraction, LinkKind, Polarity, ProofStructure};
use crate::bindings::Bindings;
use crate::order::OrderStore;
use crate::term::{unify_atoms, Sequent, Substitution, Term};

/// A complete identification of positive with negative atoms.
#[derive(Clone, Debug)]
pub struct Matching {
    /// Positive atom occurrence to negative atom occurrence.
    pub pairs: BTreeMap<usize, usize>,
    pub subst: Substitution,
    pub store: OrderStore,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Choice points with more than one candidate.
    pub branches: u64,
    /// Search nodes abandoned because some atom had no candidate left.
    pub backtracks: u64,
    /// Complete matchings produced.
    pub matchings: u64,
    /// Number of matchings without any filtering, per-predicate factorials.
    pub unpruned: u128,
}

/// Search options.
#[derive(Clone, Copy, Debug)]
pub struct NetConfig {
    /// Reject candidates whose induced identifications contradict the store.
    pub order_filter: bool,
    /// Reject candidates putting an eigenvariable on the conclusion side of
    /// its link.
    pub wrong_side_filter: bool,
    /// Keep searching after the first net.
    pub all: bool,
    /// Worker threads for contraction checks.
    pub jobs: usize,
}

impl Default for NetConfig {
    fn default() -> Self {
        NetConfig { order_filter: true, wrong_side_filter: true, all: true, jobs: 1 }
    }
}

/// A matching whose abstract structure contracts to a single vertex.
#[derive(Clone, Debug)]
pub struct ProofNet {
    pub matching: Matching,
    pub abstract_structure: AbstractStructure,
    pub contraction: Contraction,
}

#[derive(Clone, Debug)]
pub struct NetReport {
    pub structure: ProofStructure,
    pub nets: Vec<ProofNet>,
    pub stats: SearchStats,
    /// Complete matchings whose contraction got stuck or that used an
    /// eigenvariable non-strictly.
    pub rejected: u64,
}

struct Context<'a> {
    ps: &'a ProofStructure,
    positives: Vec<usize>,
    negatives: Vec<usize>,
    /// Eigenvariable of each universal link with the occurrences of its
    /// formula tree outside the subtree of its active formula.
    sides: Vec<(String, Vec<usize>)>,
    config: NetConfig,
}

impl<'a> Context<'a> {
    fn new(ps: &'a ProofStructure, config: NetConfig) -> Context<'a> {
        let sides = ps
            .links_of(LinkKind::Universal)
            .map(|l| {
                let inside: BTreeSet<usize> = ps.subtree(l.active[0]).into_iter().collect();
                let tree = ps.occurrences[l.main].tree;
                let outside = ps
                    .occurrences
                    .iter()
                    .filter(|o| o.tree == tree && !inside.contains(&o.id))
                    .map(|o| o.id)
                    .collect();
                (l.var.as_ref().and_then(|t| t.name()).unwrap_or_default().to_string(), outside)
            })
            .collect();
        Context { ps, positives: ps.atoms(Polarity::Positive), negatives: ps.atoms(Polarity::Negative), sides, config }
    }

    fn initial(&self, store: &OrderStore) -> Option<Bindings> {
        let store = if self.config.order_filter { store.clone() } else { OrderStore::new() };
        let mut b = Bindings::new(store, false);
        for l in &self.ps.links {
            if let Some(t) = &l.var {
                if !b.introduce(t.name().unwrap_or_default(), t.clone()) {
                    return None;
                }
            }
        }
        for &a in self.positives.iter().chain(&self.negatives) {
            if !b.register_rigid(self.ps.atom(a)) {
                return None;
            }
        }
        Some(b)
    }

    fn wrong_side_ok(&self, subst: &Substitution) -> bool {
        if !self.config.wrong_side_filter || self.sides.is_empty() {
            return true;
        }
        let labels = occurrence_labels(self.ps, subst);
        self.sides.iter().all(|(x, outside)| outside.iter().all(|&o| !labels[o].contains(x)))
    }

    fn try_pair(&self, b: &Bindings, p: usize, q: usize) -> Option<Bindings> {
        let (ap, aq) = (self.ps.atom(p), self.ps.atom(q));
        if ap.pred != aq.pred || ap.args.len() != aq.args.len() {
            return None;
        }
        let mut b2 = b.clone();
        (b2.unify_atoms(ap, aq) && self.wrong_side_ok(&b2.subst)).then_some(b2)
    }

    fn candidates(&self, b: &Bindings, p: usize, used: &BTreeSet<usize>) -> Vec<(usize, Bindings)> {
        self.negatives
            .iter()
            .filter(|q| !used.contains(q))
            .filter_map(|&q| self.try_pair(b, p, q).map(|b2| (q, b2)))
            .collect()
    }

    fn dfs(
        &self,
        b: Bindings,
        pairs: &mut BTreeMap<usize, usize>,
        used: &mut BTreeSet<usize>,
        stats: &mut SearchStats,
        yield_: &mut dyn FnMut(Matching) -> bool,
    ) -> bool {
        let remaining: Vec<usize> = self.positives.iter().copied().filter(|p| !pairs.contains_key(p)).collect();
        if remaining.is_empty() {
            stats.matchings += 1;
            return yield_(Matching { pairs: pairs.clone(), subst: b.subst, store: b.store });
        }
        let mut best: Option<(usize, Vec<(usize, Bindings)>)> = None;
        for p in remaining {
            let c = self.candidates(&b, p, used);
            if c.is_empty() {
                stats.backtracks += 1;
                return false;
            }
            if best.as_ref().is_none_or(|(_, bc)| c.len() < bc.len()) {
                best = Some((p, c));
            }
        }
        let (p, cands) = best.expect("at least one positive atom remains");
        if cands.len() > 1 {
            stats.branches += 1;
        }
        for (q, b2) in cands {
            pairs.insert(p, q);
            used.insert(q);
            let stop = self.dfs(b2, pairs, used, stats, yield_);
            pairs.remove(&p);
            used.remove(&q);
            if stop {
                return true;
            }
        }
        false
    }
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn unpruned(ps: &ProofStructure) -> u128 {
    let balance = ps.atom_balance();
    if balance.values().any(|&v| v != 0) {
        return 0;
    }
    let mut counts: BTreeMap<(String, usize), u128> = BTreeMap::new();
    for p in ps.atoms(Polarity::Positive) {
        let a = ps.atom(p);
        *counts.entry((a.pred.clone(), a.args.len())).or_default() += 1;
    }
    counts.values().map(|&c| factorial(c)).product()
}

/// Streams complete matchings in depth-first order until `yield_` returns
/// true. The positive atom with the fewest candidates is matched first,
/// ties going to the earliest in unfolding order.
pub fn for_each_matching(
    ps: &ProofStructure,
    store: &OrderStore,
    config: NetConfig,
    yield_: &mut dyn FnMut(Matching) -> bool,
) -> SearchStats {
    let mut stats = SearchStats { unpruned: unpruned(ps), ..SearchStats::default() };
    if stats.unpruned == 0 {
        return stats;
    }
    let ctx = Context::new(ps, config);
    if let Some(b) = ctx.initial(store) {
        ctx.dfs(b, &mut BTreeMap::new(), &mut BTreeSet::new(), &mut stats, yield_);
    }
    stats
}

/// All complete filter-consistent matchings.
pub fn enumerate_matchings(ps: &ProofStructure, store: &OrderStore) -> (Vec<Matching>, SearchStats) {
    let mut out = Vec::new();
    let stats = for_each_matching(ps, store, NetConfig::default(), &mut |m| {
        out.push(m);
        false
    });
    (out, stats)
}

/// Candidate negative atoms of every positive atom before any pairing.
pub fn candidate_table(ps: &ProofStructure, store: &OrderStore) -> BTreeMap<usize, Vec<usize>> {
    candidate_table_with(ps, store, NetConfig::default())
}

/// Candidate table under the filters selected in `config`.
pub fn candidate_table_with(ps: &ProofStructure, store: &OrderStore, config: NetConfig) -> BTreeMap<usize, Vec<usize>> {
    let ctx = Context::new(ps, config);
    let Some(b) = ctx.initial(store) else {
        return ctx.positives.iter().map(|&p| (p, Vec::new())).collect();
    };
    ctx.positives
        .iter()
        .map(|&p| (p, ctx.candidates(&b, p, &BTreeSet::new()).into_iter().map(|(q, _)| q).collect()))
        .collect()
}

/// Whether every eigenvariable is used strictly: no metavariable bound to an
/// eigenvariable `x` could be bound to a fresh constant `c_x` instead while
/// all axiom pairs still unify.
pub fn is_strict(ps: &ProofStructure, m: &Matching) -> bool {
    for meta in ps.metavariables() {
        let Term::Eigen { name, .. } = m.subst.resolve(&meta) else {
            continue;
        };
        let start = Substitution::from_pairs([(meta.name().unwrap_or_default().to_string(), Term::Const(format!("c_{name}")))]);
        let relinked = m
            .pairs
            .iter()
            .try_fold(start, |s, (&p, &q)| unify_atoms(ps.atom(p), ps.atom(q), &s));
        if relinked.is_some() {
            return false;
        }
    }
    true
}

fn check(ps: &ProofStructure, m: Matching) -> Result<ProofNet, ()> {
    let aps = abstract_structure(ps, &m.pairs, &m.subst);
    let c = contract(&aps);
    if c.success() && is_strict(ps, &m) {
        Ok(ProofNet { matching: m, abstract_structure: aps, contraction: c })
    } else {
        Err(())
    }
}

/// Unfolds, enumerates matchings and keeps those that contract.
pub fn prove_net_with(seq: &Sequent, store: &OrderStore, config: NetConfig) -> NetReport {
    let ps = unfold(seq);
    let mut nets = Vec::new();
    let mut rejected = 0;
    let stats = if config.jobs <= 1 {
        for_each_matching(&ps, store, config, &mut |m| {
            match check(&ps, m) {
                Ok(net) => nets.push(net),
                Err(()) => rejected += 1,
            }
            !config.all && !nets.is_empty()
        })
    } else {
        let mut found = Vec::new();
        let stats = for_each_matching(&ps, store, config, &mut |m| {
            found.push(m);
            false
        });
        let chunk = found.len().div_ceil(config.jobs).max(1);
        let results: Vec<Result<ProofNet, ()>> = std::thread::scope(|scope| {
            let handles: Vec<_> = found
                .chunks(chunk)
                .map(|part| {
                    let ps = &ps;
                    scope.spawn(move || part.iter().cloned().map(|m| check(ps, m)).collect::<Vec<_>>())
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("contraction worker panicked")).collect()
        });
        for r in results {
            match r {
                Ok(net) if config.all || nets.is_empty() => nets.push(net),
                Ok(_) => {}
                Err(()) => rejected += 1,
            }
        }
        stats
    };
    NetReport { structure: ps, nets, stats, rejected }
}

pub fn prove_net(seq: &Sequent, store: &OrderStore) -> Vec<ProofNet> {
    prove_net_with(seq, store, NetConfig::default()).nets
}
