//! Abstract proof structures and their contraction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{occurrence_labels, LinkKind, ProofStructure};
use crate::term::Substitution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AbstractEdge {
    Solid(usize, usize),
    /// Two edges from `main` joined at the main vertex.
    Par { main: usize, left: usize, right: usize },
    /// An edge from the vertex holding the eigenvariable to the vertex the
    /// arrow points at.
    Universal { premiss: usize, conclusion: usize, eigen: String },
}

/// Vertices labelled with eigenvariable sets, joined by solid, par and
/// universal edges.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbstractStructure {
    pub labels: Vec<BTreeSet<String>>,
    pub edges: Vec<AbstractEdge>,
    /// The vertex of every formula occurrence.
    pub vertex_of: Vec<usize>,
}

/// Builds the abstract structure of a matched proof structure. Each matched
/// pair of atoms becomes one vertex, every other occurrence its own vertex.
pub fn abstract_structure(ps: &ProofStructure, pairs: &BTreeMap<usize, usize>, subst: &Substitution) -> AbstractStructure {
    let occ_labels = occurrence_labels(ps, subst);
    let n = ps.occurrences.len();
    let mut rep: Vec<usize> = (0..n).collect();
    for (&p, &q) in pairs {
        rep[q] = p;
    }
    let mut vertex_of = vec![usize::MAX; n];
    let mut labels: Vec<BTreeSet<String>> = Vec::new();
    for o in 0..n {
        if rep[o] == o {
            vertex_of[o] = labels.len();
            labels.push(BTreeSet::new());
        }
    }
    for o in 0..n {
        vertex_of[o] = vertex_of[rep[o]];
        labels[vertex_of[o]].extend(occ_labels[o].iter().cloned());
    }
    let v = |o: usize| vertex_of[o];
    let mut edges = Vec::new();
    for l in &ps.links {
        match l.kind {
            LinkKind::Tensor | LinkKind::Existential => {
                for &a in &l.active {
                    edges.push(AbstractEdge::Solid(v(l.main), v(a)));
                }
            }
            LinkKind::Par => {
                edges.push(AbstractEdge::Par { main: v(l.main), left: v(l.active[0]), right: v(l.active[1]) })
            }
            LinkKind::Universal => edges.push(AbstractEdge::Universal {
                premiss: v(l.active[0]),
                conclusion: v(l.main),
                eigen: l.var.as_ref().and_then(|t| t.name()).unwrap_or_default().to_string(),
            }),
        }
    }
    AbstractStructure { labels, edges, vertex_of }
}

/// One contraction step: `absorbed` is merged into `kept`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: char,
    pub edge: usize,
    pub kept: usize,
    pub absorbed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Success,
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Contraction {
    pub outcome: Outcome,
    pub trace: Vec<Step>,
    /// Labels of the remaining vertices.
    pub residual_vertices: Vec<BTreeSet<String>>,
    /// Indices of the edges left uncontracted.
    pub residual_edges: Vec<usize>,
}

impl Contraction {
    pub fn success(&self) -> bool {
        self.outcome == Outcome::Success
    }
}

struct Engine<'a> {
    aps: &'a AbstractStructure,
    parent: Vec<usize>,
    labels: Vec<BTreeSet<String>>,
    alive: Vec<bool>,
    vertices: usize,
}

impl<'a> Engine<'a> {
    fn new(aps: &'a AbstractStructure) -> Engine<'a> {
        Engine {
            aps,
            parent: (0..aps.labels.len()).collect(),
            labels: aps.labels.clone(),
            alive: vec![true; aps.edges.len()],
            vertices: aps.labels.len(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// The vertices a contraction of edge `e` would merge, if it is a redex.
    fn redex(&mut self, e: usize) -> Option<(char, usize, usize)> {
        if !self.alive[e] {
            return None;
        }
        match &self.aps.edges[e] {
            AbstractEdge::Solid(a, b) => {
                let (a, b) = (self.find(*a), self.find(*b));
                (a != b).then_some(('c', a, b))
            }
            AbstractEdge::Par { main, left, right } => {
                let (m, l, r) = (self.find(*main), self.find(*left), self.find(*right));
                (l == r && l != m).then_some(('p', m, l))
            }
            AbstractEdge::Universal { premiss, conclusion, eigen } => {
                let (p, c) = (self.find(*premiss), self.find(*conclusion));
                if p == c {
                    return None;
                }
                let elsewhere = (0..self.parent.len()).any(|v| self.parent[v] == v && v != p && self.labels[v].contains(eigen));
                (!elsewhere).then_some(('u', c, p))
            }
        }
    }

    fn apply(&mut self, e: usize, kind: char, kept: usize, absorbed: usize) -> Step {
        let moved = std::mem::take(&mut self.labels[absorbed]);
        self.labels[kept].extend(moved);
        if let AbstractEdge::Universal { eigen, .. } = &self.aps.edges[e] {
            self.labels[kept].remove(eigen);
        }
        self.parent[absorbed] = kept;
        self.alive[e] = false;
        self.vertices -= 1;
        Step { kind, edge: e, kept, absorbed }
    }

    fn finish(mut self, trace: Vec<Step>) -> Contraction {
        let residual_edges: Vec<usize> = (0..self.alive.len()).filter(|&e| self.alive[e]).collect();
        let roots: Vec<usize> = (0..self.parent.len()).filter(|&v| self.find(v) == v).collect();
        let outcome = if roots.len() == 1 && residual_edges.is_empty() { Outcome::Success } else { Outcome::Stuck };
        Contraction {
            outcome,
            trace,
            residual_vertices: roots.iter().map(|&v| self.labels[v].clone()).collect(),
            residual_edges,
        }
    }
}

/// Contracts exhaustively with a work list seeded with every edge. After
/// each step the par and universal edges are queued again, since merging may
/// have created redexes among them.
pub fn contract(aps: &AbstractStructure) -> Contraction {
    let mut eng = Engine::new(aps);
    let mut queue: VecDeque<usize> = (0..aps.edges.len()).collect();
    let mut queued = vec![true; aps.edges.len()];
    let mut trace = Vec::new();
    while let Some(e) = queue.pop_front() {
        queued[e] = false;
        if let Some((kind, kept, absorbed)) = eng.redex(e) {
            trace.push(eng.apply(e, kind, kept, absorbed));
            for (f, edge) in aps.edges.iter().enumerate() {
                if eng.alive[f] && !queued[f] && !matches!(edge, AbstractEdge::Solid(..)) {
                    queued[f] = true;
                    queue.push_back(f);
                }
            }
        }
    }
    eng.finish(trace)
}

/// Contracts exhaustively, letting `choose` pick among the current redexes
/// (given their count) at every step.
pub fn contract_with(aps: &AbstractStructure, choose: &mut dyn FnMut(usize) -> usize) -> Contraction {
    let mut eng = Engine::new(aps);
    let mut trace = Vec::new();
    loop {
        let redexes: Vec<(usize, char, usize, usize)> =
            (0..aps.edges.len()).filter_map(|e| eng.redex(e).map(|(k, a, b)| (e, k, a, b))).collect();
        if redexes.is_empty() {
            break;
        }
        let (e, kind, kept, absorbed) = redexes[choose(redexes.len()) % redexes.len()];
        trace.push(eng.apply(e, kind, kept, absorbed));
    }
    eng.finish(trace)
}
