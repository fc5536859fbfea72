//! Partial-order constraint store over string positions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::term::Term;

/// Store key of a term: position constants by value, everything else by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Key {
    Pos(u32),
    Name(String),
}

impl Key {
    pub fn of(t: &Term) -> Key {
        match t {
            Term::Pos(n) => Key::Pos(*n),
            other => Key::Name(other.name().unwrap_or_default().to_string()),
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Pos(n) => write!(f, "{n}"),
            Key::Name(s) => write!(f, "{s}"),
        }
    }
}

/// An order fact `lo <= hi` or `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fact {
    pub lo: Term,
    pub hi: Term,
    pub strict: bool,
}

impl Fact {
    pub fn leq(lo: Term, hi: Term) -> Fact {
        Fact { lo, hi, strict: false }
    }

    pub fn lt(lo: Term, hi: Term) -> Fact {
        Fact { lo, hi, strict: true }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.lo, if self.strict { "<" } else { "<=" }, self.hi)
    }
}

/// Result of comparing two terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Leq,
    Lt,
    Eq,
    Geq,
    Gt,
    Incomparable,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("inconsistent order: cycle through a strict edge involving {0}")]
    StrictCycle(String),
    #[error("inconsistent order: distinct rigid terms {0} and {1} identified")]
    RigidClash(String, String),
    #[error("cannot parse order fact {0:?}")]
    Syntax(String),
}

/// Union-find over position terms with a set of order edges.
///
/// Values are cheap to clone; each search branch owns its own copy.
#[derive(Clone, Debug, Default)]
pub struct OrderStore {
    keys: HashMap<Key, usize>,
    names: Vec<Key>,
    terms: Vec<Term>,
    parent: Vec<usize>,
    rigid: Vec<Option<Term>>,
    edges: BTreeSet<(usize, usize, bool)>,
}

/// Equalities forced by antisymmetry, reported as pairs of registered terms.
pub type Equalities = Vec<(Term, Term)>;

impl OrderStore {
    pub fn new() -> OrderStore {
        OrderStore::default()
    }

    /// The strict chain `0 < 1 < ... < n` of sentence positions.
    pub fn sentence_chain(n: u32) -> OrderStore {
        let mut s = OrderStore::new();
        s.node(&Term::Pos(0));
        for i in 0..n {
            s.assert_order(&Term::Pos(i), &Term::Pos(i + 1), true).expect("chain is consistent");
        }
        s
    }

    /// Builds a store from a list of facts.
    pub fn from_facts<'a>(facts: impl IntoIterator<Item = &'a Fact>) -> Result<OrderStore, OrderError> {
        let mut s = OrderStore::new();
        for f in facts {
            s.assert_fact(f)?;
        }
        Ok(s)
    }

    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    /// Registers a term and returns its node index.
    pub fn node(&mut self, t: &Term) -> usize {
        let key = Key::of(t);
        let id = match self.keys.get(&key) {
            Some(&id) => id,
            None => {
                let id = self.parent.len();
                self.keys.insert(key.clone(), id);
                self.names.push(key);
                self.terms.push(t.clone());
                self.parent.push(id);
                self.rigid.push(None);
                id
            }
        };
        if t.is_rigid() {
            self.terms[id] = t.clone();
            let root = self.find(id);
            if self.rigid[root].is_none() {
                self.rigid[root] = Some(t.clone());
            }
        } else if matches!(t, Term::Meta { .. }) && matches!(self.terms[id], Term::Var(_)) {
            self.terms[id] = t.clone();
        }
        id
    }

    fn node_checked(&mut self, t: &Term) -> Result<usize, OrderError> {
        let id = self.node(t);
        if t.is_rigid() {
            if let Some(r) = &self.rigid[self.find(id)] {
                if r != t {
                    return Err(OrderError::RigidClash(r.to_string(), t.to_string()));
                }
            }
        }
        Ok(id)
    }

    /// Registers a term, failing if it is rigid and its node already holds a
    /// different rigid term.
    pub fn register(&mut self, t: &Term) -> Result<(), OrderError> {
        self.node_checked(t).map(|_| ())
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.keys.contains_key(&Key::of(t))
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn assert_fact(&mut self, f: &Fact) -> Result<Equalities, OrderError> {
        self.assert_order(&f.lo, &f.hi, f.strict)
    }

    /// Adds `a <= b` (or `a < b` when strict).
    pub fn assert_order(&mut self, a: &Term, b: &Term, strict: bool) -> Result<Equalities, OrderError> {
        let ia = self.node_checked(a)?;
        let ib = self.node_checked(b)?;
        let (ra, rb) = (self.find(ia), self.find(ib));
        if ra == rb {
            if strict {
                return Err(OrderError::StrictCycle(self.names[ia].to_string()));
            }
            return Ok(Vec::new());
        }
        self.edges.insert((ia, ib, strict));
        self.normalize()
    }

    /// Identifies two terms.
    pub fn merge(&mut self, a: &Term, b: &Term) -> Result<Equalities, OrderError> {
        let ia = self.node_checked(a)?;
        let ib = self.node_checked(b)?;
        let mut eqs = Vec::new();
        self.union(ia, ib, &mut eqs)?;
        let more = self.normalize()?;
        eqs.extend(more);
        Ok(eqs)
    }

    fn union(&mut self, a: usize, b: usize, eqs: &mut Equalities) -> Result<(), OrderError> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return Ok(());
        }
        match (&self.rigid[ra], &self.rigid[rb]) {
            (Some(x), Some(y)) if x != y => {
                return Err(OrderError::RigidClash(x.to_string(), y.to_string()));
            }
            _ => {}
        }
        let rigid = self.rigid[ra].clone().or_else(|| self.rigid[rb].clone());
        eqs.push((self.terms[ra].clone(), self.terms[rb].clone()));
        self.parent[rb] = ra;
        self.rigid[ra] = rigid;
        Ok(())
    }

    fn pos_edges(&self) -> Vec<(usize, usize, bool)> {
        let mut pos: Vec<(u32, usize)> = self
            .names
            .iter()
            .enumerate()
            .filter_map(|(i, k)| match k {
                Key::Pos(n) => Some((*n, i)),
                _ => None,
            })
            .collect();
        pos.sort();
        pos.windows(2).map(|w| (w[0].1, w[1].1, true)).collect()
    }

    fn root_edges(&self) -> Vec<(usize, usize, bool)> {
        self.edges
            .iter()
            .copied()
            .chain(self.pos_edges())
            .map(|(a, b, s)| (self.find(a), self.find(b), s))
            .collect()
    }

    /// Collapses non-strict cycles and rejects strict ones.
    fn normalize(&mut self) -> Result<Equalities, OrderError> {
        let mut eqs = Vec::new();
        loop {
            let edges = self.root_edges();
            if let Some(&(a, _, _)) = edges.iter().find(|(a, b, s)| a == b && *s) {
                return Err(OrderError::StrictCycle(self.names[a].to_string()));
            }
            let mut g: DiGraph<usize, bool> = DiGraph::new();
            let mut idx = HashMap::new();
            for i in 0..self.len() {
                if self.find(i) == i {
                    idx.insert(i, g.add_node(i));
                }
            }
            for &(a, b, s) in &edges {
                if a != b {
                    g.add_edge(idx[&a], idx[&b], s);
                }
            }
            let mut changed = false;
            for comp in tarjan_scc(&g) {
                if comp.len() < 2 {
                    continue;
                }
                let members: BTreeSet<usize> = comp.iter().map(|&n| g[n]).collect();
                if edges.iter().any(|(a, b, s)| *s && members.contains(a) && members.contains(b)) {
                    let first = *members.iter().next().unwrap();
                    return Err(OrderError::StrictCycle(self.names[first].to_string()));
                }
                let mut it = members.iter();
                let first = *it.next().unwrap();
                for &m in it {
                    self.union(first, m, &mut eqs)?;
                }
                changed = true;
            }
            if !changed {
                return Ok(eqs);
            }
        }
    }

    /// Reachability from root `a`: `None` if unreachable, else whether some
    /// path uses a strict edge.
    fn reach(&self, a: usize, b: usize) -> Option<bool> {
        let edges = self.root_edges();
        let mut best: HashMap<usize, bool> = HashMap::new();
        let mut stack = vec![(a, false)];
        while let Some((n, s)) = stack.pop() {
            match best.get(&n) {
                Some(&old) if old || !s => continue,
                _ => {}
            }
            best.insert(n, s);
            for &(x, y, st) in &edges {
                if x == n && x != y {
                    stack.push((y, s || st));
                }
            }
        }
        best.get(&b).copied()
    }

    /// Relation between two terms entailed by the store.
    pub fn entails(&self, a: &Term, b: &Term) -> Relation {
        let (Some(&ia), Some(&ib)) = (self.keys.get(&Key::of(a)), self.keys.get(&Key::of(b))) else {
            if a == b {
                return Relation::Eq;
            }
            return match (a, b) {
                (Term::Pos(x), Term::Pos(y)) if x < y => Relation::Lt,
                (Term::Pos(x), Term::Pos(y)) if x > y => Relation::Gt,
                _ => Relation::Incomparable,
            };
        };
        let (ra, rb) = (self.find(ia), self.find(ib));
        if ra == rb {
            return Relation::Eq;
        }
        match (self.reach(ra, rb), self.reach(rb, ra)) {
            (Some(true), _) => Relation::Lt,
            (Some(false), _) => Relation::Leq,
            (_, Some(true)) => Relation::Gt,
            (_, Some(false)) => Relation::Geq,
            _ => Relation::Incomparable,
        }
    }

    /// True when both terms are registered and share a node.
    pub fn same_node(&self, a: &Term, b: &Term) -> bool {
        match (self.keys.get(&Key::of(a)), self.keys.get(&Key::of(b))) {
            (Some(&x), Some(&y)) => self.find(x) == self.find(y),
            _ => false,
        }
    }

    /// The covering relation between distinct nodes, one representative key
    /// per node (the smallest).
    pub fn hasse(&self) -> BTreeSet<(Key, Key, bool)> {
        let roots: Vec<usize> = (0..self.len()).filter(|&i| self.find(i) == i).collect();
        let mut rep: BTreeMap<usize, Key> = BTreeMap::new();
        for (i, k) in self.names.iter().enumerate() {
            let r = self.find(i);
            let e = rep.entry(r).or_insert_with(|| k.clone());
            if k < e {
                *e = k.clone();
            }
        }
        let reach: HashMap<(usize, usize), bool> = roots
            .iter()
            .flat_map(|&a| roots.iter().map(move |&b| (a, b)))
            .filter(|(a, b)| a != b)
            .filter_map(|(a, b)| self.reach(a, b).map(|s| ((a, b), s)))
            .collect();
        let mut out = BTreeSet::new();
        for (&(a, b), &s) in &reach {
            let covered = roots
                .iter()
                .any(|&c| c != a && c != b && reach.contains_key(&(a, c)) && reach.contains_key(&(c, b)));
            if !covered {
                out.insert((rep[&a].clone(), rep[&b].clone(), s));
            }
        }
        out
    }

    /// All registered terms, in registration order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }
}

/// Parses `a<=b, c<d` into facts. Digits are positions; other names are kept
/// as variables, which the store identifies by name.
pub fn parse_facts(s: &str) -> Result<Vec<Fact>, OrderError> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::parse).collect()
}

impl FromStr for Fact {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Fact, OrderError> {
        let term = |x: &str| -> Result<Term, OrderError> {
            let x = x.trim();
            if x.is_empty() || !x.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(OrderError::Syntax(s.to_string()));
            }
            Ok(match x.parse::<u32>() {
                Ok(n) => Term::Pos(n),
                Err(_) => Term::Var(x.to_string()),
            })
        };
        if let Some((a, b)) = s.split_once("<=") {
            Ok(Fact::leq(term(a)?, term(b)?))
        } else if let Some((a, b)) = s.split_once('<') {
            Ok(Fact::lt(term(a)?, term(b)?))
        } else {
            Err(OrderError::Syntax(s.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    fn p(n: u32) -> Term {
        Term::Pos(n)
    }

    #[test]
    fn gave_store_rejects_y_zero() {
        let mut s = OrderStore::sentence_chain(4);
        s.assert_order(&v("X"), &p(1), false).unwrap();
        s.assert_order(&p(2), &v("Y"), false).unwrap();
        s.assert_order(&v("Y"), &v("Z"), false).unwrap();
        assert!(s.clone().merge(&v("Y"), &p(0)).is_err());
        assert_eq!(s.entails(&v("X"), &v("Z")), Relation::Lt);
    }

    #[test]
    fn strict_cycle_after_merge() {
        let mut s = OrderStore::new();
        s.assert_order(&v("J"), &p(4), false).unwrap();
        s.assert_order(&p(4), &Term::eigen("x1", 0), true).unwrap();
        assert!(s.merge(&v("J"), &Term::eigen("x1", 0)).is_err());
    }

    #[test]
    fn reflexive_fact_is_noop() {
        let mut s = OrderStore::new();
        assert_eq!(s.assert_order(&v("X"), &v("X"), false), Ok(vec![]));
        assert!(s.assert_order(&v("X"), &v("X"), true).is_err());
    }

    #[test]
    fn distinct_positions_never_merge() {
        let mut s = OrderStore::new();
        assert!(s.merge(&p(2), &p(3)).is_err());
        let mut s = OrderStore::new();
        assert!(s.merge(&Term::eigen("x", 0), &p(3)).is_err());
    }

    #[test]
    fn leq_cycle_reports_equality() {
        let mut s = OrderStore::new();
        s.assert_order(&v("X"), &v("Y"), false).unwrap();
        let eqs = s.assert_order(&v("Y"), &v("X"), false).unwrap();
        assert_eq!(eqs.len(), 1);
        assert_eq!(s.entails(&v("X"), &v("Y")), Relation::Eq);
    }

    #[test]
    fn positions_follow_integer_order() {
        let mut s = OrderStore::new();
        s.node(&p(5));
        s.node(&p(0));
        assert_eq!(s.entails(&p(0), &p(5)), Relation::Lt);
        assert_eq!(s.entails(&p(5), &p(0)), Relation::Gt);
    }

    #[test]
    fn fact_syntax() {
        let fs = parse_facts("0<1,1<2, X<=1").unwrap();
        assert_eq!(fs, [Fact::lt(p(0), p(1)), Fact::lt(p(1), p(2)), Fact::leq(v("X"), p(1))]);
        assert!(parse_facts("0=1").is_err());
    }
}
