//! Concatenation-like connective patterns over the alphabet {a, b, 1}.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// One symbol of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sym {
    A,
    B,
    One,
}

impl Sym {
    pub fn to_char(self) -> char {
        match self {
            Sym::A => 'a',
            Sym::B => 'b',
            Sym::One => '1',
        }
    }

    pub fn from_char(c: char) -> Option<Sym> {
        match c {
            'a' => Some(Sym::A),
            'b' => Some(Sym::B),
            '1' => Some(Sym::One),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("invalid pattern symbol {0:?}")]
    BadSymbol(char),
    #[error("pattern {0} violates the well-formedness conditions")]
    Invalid(String),
}

/// A validated pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    symbols: Vec<Sym>,
}

impl Pattern {
    pub fn new(symbols: Vec<Sym>) -> Result<Pattern, PatternError> {
        if validate_pattern(&symbols) {
            Ok(Pattern { symbols })
        } else {
            Err(PatternError::Invalid(symbols.iter().map(|s| s.to_char()).collect()))
        }
    }

    /// The pattern of the plain Lambek connectives.
    pub fn lambek() -> Pattern {
        Pattern { symbols: vec![Sym::A, Sym::B] }
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn count(&self, s: Sym) -> usize {
        self.symbols.iter().filter(|&&x| x == s).count()
    }

    /// Number of maximal runs of non-1 symbols, the arity of the product.
    pub fn runs(&self) -> usize {
        self.symbols.split(|&s| s == Sym::One).filter(|r| !r.is_empty()).count()
    }

    /// The left-right mirror image, which starts with `b`.
    pub fn mirror(&self) -> Vec<Sym> {
        self.symbols.iter().rev().copied().collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Pattern, PatternError> {
        let symbols = s
            .chars()
            .map(|c| Sym::from_char(c).ok_or(PatternError::BadSymbol(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Pattern::new(symbols)
    }
}

/// The six well-formedness conditions.
pub fn validate_pattern(s: &[Sym]) -> bool {
    s.first() == Some(&Sym::A)
        && s.windows(2).all(|w| w[0] != w[1])
        && s.contains(&Sym::B)
        && s.last() != Some(&Sym::One)
}

/// A deterministic automaton over {a, b, 1}.
pub struct Automaton {
    transitions: &'static [(u8, Sym, u8)],
    accepting: &'static [u8],
}

/// The automaton generating all valid patterns.
pub const PATTERNS_FSA: Automaton = Automaton {
    transitions: &[
        (0, Sym::A, 1),
        (1, Sym::B, 3),
        (1, Sym::One, 2),
        (2, Sym::A, 1),
        (2, Sym::B, 3),
        (3, Sym::A, 4),
        (3, Sym::One, 5),
        (4, Sym::B, 3),
        (4, Sym::One, 5),
        (5, Sym::A, 4),
        (5, Sym::B, 3),
    ],
    accepting: &[3, 4],
};

/// The automaton generating the well-nested patterns.
pub const WELL_NESTED_FSA: Automaton = Automaton {
    transitions: &[
        (0, Sym::A, 1),
        (1, Sym::B, 3),
        (1, Sym::One, 2),
        (2, Sym::A, 1),
        (2, Sym::B, 3),
        (3, Sym::A, 4),
        (3, Sym::One, 5),
        (4, Sym::One, 6),
        (5, Sym::A, 4),
        (5, Sym::B, 3),
        (6, Sym::A, 4),
    ],
    accepting: &[3, 4],
};

impl Automaton {
    fn states(&self) -> usize {
        1 + self.transitions.iter().map(|&(p, _, q)| p.max(q) as usize).max().unwrap_or(0)
    }

    /// Accepted strings of length `k` in a < b < 1 order.
    pub fn strings(&self, k: usize) -> Vec<Vec<Sym>> {
        let mut out = Vec::new();
        self.walk(0, k, &mut Vec::new(), &mut out);
        out
    }

    fn walk(&self, state: u8, k: usize, prefix: &mut Vec<Sym>, out: &mut Vec<Vec<Sym>>) {
        if prefix.len() == k {
            if self.accepting.contains(&state) {
                out.push(prefix.clone());
            }
            return;
        }
        let mut next: Vec<(Sym, u8)> =
            self.transitions.iter().filter(|t| t.0 == state).map(|&(_, s, q)| (s, q)).collect();
        next.sort();
        for (s, q) in next {
            prefix.push(s);
            self.walk(q, k, prefix, out);
            prefix.pop();
        }
    }

    /// Number of accepting paths of length `k`, by dynamic programming.
    pub fn count(&self, k: usize) -> u128 {
        let mut paths = vec![0u128; self.states()];
        paths[0] = 1;
        for _ in 0..k {
            let mut next = vec![0u128; paths.len()];
            for &(p, _, q) in self.transitions {
                next[q as usize] += paths[p as usize];
            }
            paths = next;
        }
        self.accepting.iter().map(|&q| paths[q as usize]).sum()
    }
}

/// All valid (or well-nested) patterns with `k` symbols, in canonical order.
pub fn enumerate_patterns(k: usize, well_nested_only: bool) -> Vec<Pattern> {
    let fsa = if well_nested_only { &WELL_NESTED_FSA } else { &PATTERNS_FSA };
    fsa.strings(k).into_iter().map(|symbols| Pattern { symbols }).collect()
}

/// Catalog label such as `4a`, from the segment count and list position.
pub fn label(k: usize, index: usize) -> String {
    let mut suffix = String::new();
    let mut i = index;
    loop {
        suffix.insert(0, (b'a' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    format!("{k}{suffix}")
}

/// Pattern count computed from the automaton.
pub fn count_patterns(k: usize) -> u128 {
    PATTERNS_FSA.count(k)
}

/// Pattern count from the recurrence p(k) = 2p(k-1) (odd k), 2p(k-1)+1 (even k).
pub fn count_patterns_recurrence(k: usize) -> u128 {
    (2..=k).fold(0u128, |p, i| if i % 2 == 0 { 2 * p + 1 } else { 2 * p })
}

/// Pattern count from the closed form ceil(2(2^(k-1) - 1) / 3).
pub fn count_patterns_closed(k: usize) -> u128 {
    assert!(k >= 1);
    let num = 2 * ((1u128 << (k - 1)) - 1);
    num.div_ceil(3)
}

/// Well-nested count computed from the automaton.
pub fn count_wellnested(k: usize) -> u128 {
    WELL_NESTED_FSA.count(k)
}

/// Well-nested count from the closed form floor(k/2) * ceil(k/2).
pub fn count_wellnested_closed(k: usize) -> u128 {
    let k = k as u128;
    (k / 2) * k.div_ceil(2)
}

/// No `b` after an `a` that itself follows a `b`.
pub fn is_well_nested(p: &Pattern) -> bool {
    let mut seen_b = false;
    let mut seen_ba = false;
    for &s in p.symbols() {
        match s {
            Sym::B if seen_ba => return false,
            Sym::B => seen_b = true,
            Sym::A if seen_b => seen_ba = true,
            _ => {}
        }
    }
    true
}

/// The three connectives of a residuated family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    Product,
    Under,
    Over,
}

/// An order fact `lo <= hi` between schema position indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexFact {
    pub lo: usize,
    pub hi: usize,
}

impl fmt::Display for IndexFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} <= x{}", self.lo, self.hi)
    }
}

/// Position tuples, quantifier sets and order requirements of a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectiveSchema {
    #[serde(serialize_with = "serialize_display")]
    pub pattern: Pattern,
    pub n_positions: usize,
    pub tuple_a: Vec<usize>,
    pub tuple_b: Vec<usize>,
    pub tuple_c: Vec<usize>,
    pub exist_vars: BTreeSet<usize>,
    pub under_vars: BTreeSet<usize>,
    pub over_vars: BTreeSet<usize>,
    pub product_facts: Vec<IndexFact>,
    pub under_facts: Vec<IndexFact>,
    pub over_facts: Vec<IndexFact>,
}

fn serialize_display<S: serde::Serializer>(p: &Pattern, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl ConnectiveSchema {
    pub fn required_facts(&self, role: Role) -> &[IndexFact] {
        match role {
            Role::Product => &self.product_facts,
            Role::Under => &self.under_facts,
            Role::Over => &self.over_facts,
        }
    }

    /// The pair of operand tuples visible to a connective of the given role.
    pub fn role_tuples(&self, role: Role) -> (&[usize], &[usize]) {
        match role {
            Role::Product => (&self.tuple_a, &self.tuple_b),
            Role::Under => (&self.tuple_a, &self.tuple_c),
            Role::Over => (&self.tuple_b, &self.tuple_c),
        }
    }
}

fn symbol_tuple(p: &Pattern, s: Sym) -> Vec<usize> {
    p.symbols()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == s)
        .flat_map(|(j, _)| [j, j + 1])
        .collect()
}

fn product_tuple(p: &Pattern) -> Vec<usize> {
    let mut out = Vec::new();
    let mut start = None;
    for (j, &s) in p.symbols().iter().enumerate() {
        match (s, start) {
            (Sym::One, Some(st)) => {
                out.extend([st, j]);
                start = None;
            }
            (Sym::One, None) => {}
            (_, None) => start = Some(j),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.extend([st, p.len()]);
    }
    out
}

/// Builds the schema of a valid pattern.
pub fn schema(p: &Pattern) -> ConnectiveSchema {
    let tuple_a = symbol_tuple(p, Sym::A);
    let tuple_b = symbol_tuple(p, Sym::B);
    let tuple_c = product_tuple(p);
    let set = |t: &[usize]| t.iter().copied().collect::<BTreeSet<_>>();
    let (sa, sb, sc) = (set(&tuple_a), set(&tuple_b), set(&tuple_c));
    let exist_vars = sa.intersection(&sb).copied().collect();
    let under_vars = sa.intersection(&sc).copied().collect();
    let over_vars = sb.intersection(&sc).copied().collect();
    ConnectiveSchema {
        pattern: p.clone(),
        n_positions: p.len() + 1,
        product_facts: required_facts_for(p.len(), &tuple_a, &tuple_b),
        under_facts: required_facts_for(p.len(), &tuple_a, &tuple_c),
        over_facts: required_facts_for(p.len(), &tuple_b, &tuple_c),
        tuple_a,
        tuple_b,
        tuple_c,
        exist_vars,
        under_vars,
        over_vars,
    }
}

/// Minimal adjacent-pair facts fixing the linear order of all indices.
pub fn required_facts(p: &Pattern, role: Role) -> Vec<IndexFact> {
    schema(p).required_facts(role).to_vec()
}

/// The order known from two tuples: each tuple is a chain, index 0 is the
/// leftmost position and the last index the rightmost.
pub fn base_relation(len: usize, t1: &[usize], t2: &[usize]) -> Vec<IndexFact> {
    let mut facts: Vec<IndexFact> = [t1, t2]
        .iter()
        .flat_map(|t| t.windows(2).map(|w| IndexFact { lo: w[0], hi: w[1] }))
        .collect();
    for i in 1..=len {
        facts.push(IndexFact { lo: 0, hi: i });
    }
    for i in 0..len {
        facts.push(IndexFact { lo: i, hi: len });
    }
    facts.retain(|f| f.lo != f.hi);
    facts.sort();
    facts.dedup();
    facts
}

fn closure(n: usize, facts: &[IndexFact]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for f in facts {
        r[f.lo][f.hi] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

fn required_facts_for(len: usize, t1: &[usize], t2: &[usize]) -> Vec<IndexFact> {
    let r = closure(len + 1, &base_relation(len, t1, t2));
    (0..len).filter(|&i| !r[i][i + 1]).map(|i| IndexFact { lo: i, hi: i + 1 }).collect()
}

/// Counts the linear extensions of a relation over `n` indices by brute force.
pub fn count_linear_extensions(n: usize, facts: &[IndexFact]) -> usize {
    fn go(n: usize, facts: &[IndexFact], placed: &mut Vec<usize>) -> usize {
        if placed.len() == n {
            return 1;
        }
        let ready: Vec<usize> = (0..n)
            .filter(|i| !placed.contains(i))
            .filter(|&i| facts.iter().all(|f| f.hi != i || f.lo == i || placed.contains(&f.lo)))
            .collect();
        let mut total = 0;
        for i in ready {
            placed.push(i);
            total += go(n, facts, placed);
            placed.pop();
        }
        total
    }
    go(n, facts, &mut Vec::new())
}
