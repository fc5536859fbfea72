//! Acceptance suite: one pass/fail line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::{Duration, Instant};

use follres::cat::{CatFormula, GapVariant};
use follres::order::OrderStore;
use follres::parse::{parse_cat, parse_sequent};
use follres::patterns::*;
use follres::proofnet::*;
use follres::prover::{prove, residuation_suite, validate};
use follres::term::{alpha_equal, Atom, Formula, Sequent, Term};
use follres::translate::{sentence_instances, translate_gap, Instance, Lexicon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(n: u32, title: &str, limit: Duration, body: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let result = result.and_then(|()| ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}")));
    match &result {
        Ok(()) => println!("PASS criterion {n}: {title} ({elapsed:.2?})"),
        Err(e) => println!("FAIL criterion {n}: {title} ({elapsed:.2?}): {e}"),
    }
    result.is_ok()
}

fn pattern(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn demo_lexicon() -> Lexicon {
    Lexicon::load(Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/demo.lex"))).unwrap()
}

fn instances(sentence: &str) -> Vec<Instance> {
    let words: Vec<&str> = sentence.split_whitespace().collect();
    sentence_instances(&demo_lexicon(), &words, &CatFormula::atom("s")).unwrap()
}

fn parse_count(sentence: &str) -> usize {
    instances(sentence)
        .iter()
        .map(|i| prove_net_with(&i.sequent, &i.store, NetConfig { all: true, ..NetConfig::default() }).nets.len())
        .sum()
}

/// Walks two formulas of the same shape in parallel and records the binder
/// renaming that turns the first into the second.
fn binder_map(ours: &Formula, theirs: &Formula, map: &mut BTreeMap<String, String>) -> bool {
    match (ours, theirs) {
        (Formula::Atom(a), Formula::Atom(b)) => {
            a.pred == b.pred
                && a.args.len() == b.args.len()
                && a.args.iter().zip(&b.args).all(|(s, t)| match (s, t) {
                    (Term::Var(x), Term::Var(y)) => map.get(x) == Some(y),
                    _ => s == t,
                })
        }
        (Formula::Tensor(a1, b1), Formula::Tensor(a2, b2)) | (Formula::Limp(a1, b1), Formula::Limp(a2, b2)) => {
            binder_map(a1, a2, map) && binder_map(b1, b2, map)
        }
        (Formula::Forall(x, f), Formula::Forall(y, g)) | (Formula::Exists(x, f), Formula::Exists(y, g)) => {
            map.insert(x.clone(), y.clone());
            binder_map(f, g, map)
        }
        _ => false,
    }
}

fn rename_atom(a: &Atom, map: &BTreeMap<String, String>) -> String {
    let args: Vec<String> = a
        .args
        .iter()
        .map(|t| match t.name() {
            Some(n) if !matches!(t, Term::Pos(_)) => map.get(n).cloned().unwrap_or_else(|| n.to_string()),
            _ => t.to_string(),
        })
        .collect();
    format!("{}({})", a.pred, args.join(","))
}

fn unordered(a: String, b: String) -> (String, String) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn shuffled_contractions(aps: &AbstractStructure, rng: &mut ChaCha8Rng, runs: usize) -> Vec<bool> {
    (0..runs).map(|_| contract_with(aps, &mut |n| rng.gen_range(0..n)).success()).collect()
}

const FIXTURES_ACCEPTED: [&str; 4] = [
    "a, forall x. b(x) |- a * forall x. b(x)",
    "forall y. (a * b(y)) |- a * b(c_x)",
    "b(c_x) |- b(c_x)",
    "forall z. (b(1,z) -o c(0,z)), b(1,2) |- c(0,2)",
];
const FIXTURE_REJECTED: &str = "forall y. (a * b(y)) |- a * forall x. b(x)";

fn counting() -> Check {
    let patterns: Vec<u128> = (1..=11).map(count_patterns).collect();
    ensure(patterns == [0, 1, 2, 5, 10, 21, 42, 85, 170, 341, 682], || format!("count_patterns {patterns:?}"))?;
    let nested: Vec<u128> = (1..=12).map(count_wellnested).collect();
    ensure(nested == [0, 1, 2, 4, 6, 9, 12, 16, 20, 25, 30, 36], || format!("count_wellnested {nested:?}"))?;
    for k in 1..=16 {
        let all = enumerate_patterns(k, false);
        let brute = all.len() as u128;
        let brute_nested = all.iter().filter(|p| is_well_nested(p)).count() as u128;
        let forms = [count_patterns(k), count_patterns_recurrence(k), count_patterns_closed(k)];
        ensure(forms.iter().all(|&c| c == brute), || format!("k={k}: brute {brute}, forms {forms:?}"))?;
        let nforms = [count_wellnested(k), count_wellnested_closed(k), enumerate_patterns(k, true).len() as u128];
        ensure(nforms.iter().all(|&c| c == brute_nested), || format!("k={k}: well-nested brute {brute_nested}, forms {nforms:?}"))?;
    }
    Ok(())
}

fn catalogs() -> Check {
    let expected: [(usize, &[&str], &[&str]); 2] = [
        (4, &["abab", "ab1a", "ab1b", "a1ab", "a1ba"], &["4a"]),
        (5, &["ababa", "aba1a", "aba1b", "ab1ab", "ab1ba", "a1aba", "a1a1b", "a1bab", "a1b1a", "a1b1b"], &["5a", "5c", "5d", "5h"]),
    ];
    for (k, names, exceptions) in expected {
        let got = enumerate_patterns(k, false);
        let strings: Vec<String> = got.iter().map(|p| p.to_string()).collect();
        ensure(strings == names, || format!("{k} segments: {strings:?}"))?;
        let not_nested: Vec<String> =
            got.iter().enumerate().filter(|(_, p)| !is_well_nested(p)).map(|(i, _)| label(k, i)).collect();
        ensure(not_nested == exceptions, || format!("{k} segments: exceptions {not_nested:?}"))?;
    }
    Ok(())
}

fn schemas() -> Check {
    type Row = (&'static str, &'static [usize], &'static [usize], &'static [usize], &'static [usize], &'static [usize], &'static [usize]);
    let rows: [Row; 6] = [
        ("ab", &[0, 1], &[1, 2], &[0, 2], &[1], &[0], &[2]),
        ("aba", &[0, 1, 2, 3], &[1, 2], &[0, 3], &[1, 2], &[0, 3], &[]),
        ("a1b", &[0, 1], &[2, 3], &[0, 1, 2, 3], &[], &[0, 1], &[2, 3]),
        ("abab", &[0, 1, 2, 3], &[1, 2, 3, 4], &[0, 4], &[1, 2, 3], &[0], &[4]),
        ("a1ab", &[0, 1, 2, 3], &[3, 4], &[0, 1, 2, 4], &[3], &[0, 1, 2], &[4]),
        ("aba1a", &[0, 1, 2, 3, 4, 5], &[1, 2], &[0, 3, 4, 5], &[1, 2], &[0, 3, 4, 5], &[]),
    ];
    for (p, a, b, c, ex, under, over) in rows {
        let s = schema(&pattern(p));
        ensure(s.tuple_a == a && s.tuple_b == b && s.tuple_c == c, || format!("{p}: tuples {:?} {:?} {:?}", s.tuple_a, s.tuple_b, s.tuple_c))?;
        ensure(s.exist_vars == set(ex) && s.under_vars == set(under) && s.over_vars == set(over), || {
            format!("{p}: quantifiers {:?} {:?} {:?}", s.exist_vars, s.under_vars, s.over_vars)
        })?;
    }
    let facts = |p: &str, r: Role| required_facts(&pattern(p), r);
    ensure(facts("a1b", Role::Product) == [IndexFact { lo: 1, hi: 2 }], || format!("a1b product {:?}", facts("a1b", Role::Product)))?;
    ensure(facts("aba1a", Role::Over) == [IndexFact { lo: 2, hi: 3 }], || format!("aba1a over {:?}", facts("aba1a", Role::Over)))?;
    for p in ["ab", "aba", "a1ab", "abab"] {
        for r in [Role::Product, Role::Under, Role::Over] {
            let expected = if (p, r) == ("a1ab", Role::Over) { vec![IndexFact { lo: 2, hi: 3 }] } else { vec![] };
            ensure(facts(p, r) == expected, || format!("{p} {r:?}: {:?}", facts(p, r)))?;
        }
    }
    Ok(())
}

fn fixtures() -> Check {
    let store = OrderStore::new();
    for s in FIXTURES_ACCEPTED {
        let seq = parse_sequent(s).unwrap();
        let d = prove(&seq, &store).ok_or_else(|| format!("prover rejects {s}"))?;
        validate(&d).map_err(|e| format!("invalid derivation for {s}: {e}"))?;
        ensure(!prove_net(&seq, &store).is_empty(), || format!("no proof net for {s}"))?;
    }
    let seq = parse_sequent(FIXTURE_REJECTED).unwrap();
    ensure(prove(&seq, &store).is_none(), || "prover accepts the underivable sequent".into())?;
    ensure(prove_net(&seq, &store).is_empty(), || "net engine accepts the underivable sequent".into())
}

fn residuation() -> Check {
    for k in 1..=4 {
        for p in enumerate_patterns(k, false) {
            for item in residuation_suite(&p) {
                let d = prove(&item.sequent, &item.store);
                ensure(d.is_some() == item.expected, || format!("{p} {}: {}", item.name, item.sequent))?;
            }
        }
    }
    Ok(())
}

fn gave() -> Check {
    let sentence = "John gave Mary flowers";
    ensure(parse_count(sentence) == 1, || format!("{} parses", parse_count(sentence)))?;
    let inst = &instances(sentence)[0];
    let ps = unfold(&inst.sequent);
    let reference = follres::parse::parse_formula("forall Z. (np(2,Z) -o forall Y. (np(Z,Y) -o forall X. (np(X,1) -o s(X,Y))))").unwrap();
    let mut map = BTreeMap::new();
    ensure(binder_map(&inst.sequent.antecedent[1], &reference, &mut map), || format!("gave translates to {}", inst.sequent.antecedent[1]))?;
    let zy = ps
        .atoms(Polarity::Positive)
        .into_iter()
        .find(|&p| rename_atom(ps.atom(p), &map) == "np(Z,Y)")
        .ok_or("no positive np(Z,Y)")?;
    let john = ps
        .atoms(Polarity::Negative)
        .into_iter()
        .find(|&q| ps.atom(q).to_string() == "np(0,1)")
        .ok_or("no negative np(0,1)")?;
    let filtered = &candidate_table(&ps, &inst.store)[&zy];
    let unfiltered = &candidate_table_with(&ps, &inst.store, NetConfig { order_filter: false, ..NetConfig::default() })[&zy];
    ensure(!filtered.contains(&john), || "order filter keeps np(0,1) for np(Z,Y)".into())?;
    ensure(unfiltered.contains(&john), || "np(0,1) is no candidate even without the order filter".into())
}

fn did() -> Check {
    let sentence = "John left before Mary did";
    ensure(parse_count(sentence) == 1, || format!("{} parses", parse_count(sentence)))?;
    let inst = &instances(sentence)[0];
    let reference = [
        "np(0,1)",
        "forall A. (np(A,1) -o s(A,2))",
        "forall B. (s(3,B) -o forall D. ((forall x0. (np(x0,D) -o s(x0,2))) -o forall C. (np(C,D) -o s(C,B))))",
        "np(3,4)",
        "forall F. forall I. forall J. ((forall x1. ((forall G. (np(G,4) -o s(G,x1))) -o ((forall H. (np(H,I) -o s(H,J))) -o (forall x2. (np(x2,F) -o s(x2,x1)))))) -o ((forall x3. (np(x3,I) -o s(x3,J))) -o (forall E. (np(E,F) -o s(E,5)))))",
    ];
    let mut map = BTreeMap::new();
    for (ours, theirs) in inst.sequent.antecedent.iter().zip(reference) {
        let theirs = follres::parse::parse_formula(theirs).unwrap();
        ensure(binder_map(ours, &theirs, &mut map), || format!("{ours} does not have the shape of {theirs}"))?;
    }
    let report = prove_net_with(&inst.sequent, &inst.store, NetConfig::default());
    let net = report.nets.first().ok_or("no net")?;
    let ps = &report.structure;
    let got: BTreeSet<(String, String)> = net
        .matching
        .pairs
        .iter()
        .map(|(&p, &q)| unordered(rename_atom(ps.atom(p), &map), rename_atom(ps.atom(q), &map)))
        .collect();
    let cells: BTreeSet<(String, String)> = [
        ("s(x2,x1)", "s(C,B)"),
        ("np(x2,F)", "np(C,D)"),
        ("s(0,5)", "s(E,5)"),
        ("np(0,1)", "np(E,F)"),
        ("s(x3,J)", "s(A,2)"),
        ("s(x0,2)", "s(H,J)"),
        ("s(3,B)", "s(G,x1)"),
        ("np(3,4)", "np(G,4)"),
        ("np(x3,I)", "np(A,1)"),
        ("np(x0,D)", "np(H,I)"),
    ]
    .iter()
    .map(|(p, q)| unordered(p.to_string(), q.to_string()))
    .collect();
    ensure(got == cells, || format!("matching {got:?}"))?;
    ensure(report.stats.unpruned == 14400, || format!("unpruned {}", report.stats.unpruned))?;
    ensure(report.stats.backtracks == 0, || format!("backtracks {}", report.stats.backtracks))
}

struct Generator {
    rng: ChaCha8Rng,
    quantifiers: usize,
    leaves: Vec<(bool, Vec<String>)>,
}

enum Skeleton {
    Leaf(usize),
    Tensor(Box<Skeleton>, Box<Skeleton>),
    Limp(Box<Skeleton>, Box<Skeleton>),
    Forall(String, Box<Skeleton>),
    Exists(String, Box<Skeleton>),
}

impl Generator {
    fn skeleton(&mut self, size: usize, positive: bool, scope: &[String]) -> Skeleton {
        if self.quantifiers < 2 && self.rng.gen_bool(0.3) {
            let name = ["x", "y"][self.quantifiers].to_string();
            self.quantifiers += 1;
            let mut inner = scope.to_vec();
            inner.push(name.clone());
            let body = Box::new(self.skeleton(size, positive, &inner));
            return if self.rng.gen_bool(0.5) { Skeleton::Forall(name, body) } else { Skeleton::Exists(name, body) };
        }
        if size == 1 {
            self.leaves.push((positive, scope.to_vec()));
            return Skeleton::Leaf(self.leaves.len() - 1);
        }
        let left = self.rng.gen_range(1..size);
        if self.rng.gen_bool(0.5) {
            Skeleton::Tensor(Box::new(self.skeleton(left, positive, scope)), Box::new(self.skeleton(size - left, positive, scope)))
        } else {
            Skeleton::Limp(Box::new(self.skeleton(left, !positive, scope)), Box::new(self.skeleton(size - left, positive, scope)))
        }
    }

    fn argument(&mut self, scope: &[String]) -> Term {
        if !scope.is_empty() && self.rng.gen_bool(0.6) {
            Term::var(&scope[self.rng.gen_range(0..scope.len())])
        } else {
            Term::constant(["0", "1"][self.rng.gen_range(0..2)])
        }
    }

    /// A closed sequent with as many positive as negative atoms of each
    /// predicate, or none if the shape has unequal polarity counts.
    fn sequent(&mut self) -> Option<Sequent> {
        self.quantifiers = 0;
        self.leaves.clear();
        let total = 2 * self.rng.gen_range(1..=3);
        let parts = self.rng.gen_range(1..=total.min(3));
        let mut sizes = vec![1; parts];
        for _ in parts..total {
            let i = self.rng.gen_range(0..parts);
            sizes[i] += 1;
        }
        let skeletons: Vec<Skeleton> = sizes.iter().enumerate().map(|(i, &n)| self.skeleton(n, i + 1 == parts, &[])).collect();
        let (pos, neg): (Vec<usize>, Vec<usize>) = (0..self.leaves.len()).partition(|&i| self.leaves[i].0);
        if pos.len() != neg.len() {
            return None;
        }
        let mut atoms: Vec<Option<Atom>> = vec![None; self.leaves.len()];
        let mut neg = neg;
        for p in pos {
            let q = neg.remove(self.rng.gen_range(0..neg.len()));
            let pred = ["p", "q"][self.rng.gen_range(0..2)];
            let unary = self.rng.gen_bool(0.7);
            for i in [p, q] {
                let scope = self.leaves[i].1.clone();
                let args = if unary { vec![self.argument(&scope)] } else { vec![] };
                atoms[i] = Some(Atom::new(pred, args));
            }
        }
        let build = |s: &Skeleton| build(s, &atoms);
        let mut formulas: Vec<Formula> = skeletons.iter().map(build).collect();
        let succedent = formulas.pop().unwrap();
        Some(Sequent::new(formulas, succedent))
    }
}

fn build(s: &Skeleton, atoms: &[Option<Atom>]) -> Formula {
    match s {
        Skeleton::Leaf(i) => Formula::Atom(atoms[*i].clone().unwrap()),
        Skeleton::Tensor(a, b) => Formula::tensor(build(a, atoms), build(b, atoms)),
        Skeleton::Limp(a, b) => Formula::limp(build(a, atoms), build(b, atoms)),
        Skeleton::Forall(x, b) => Formula::forall(x, build(b, atoms)),
        Skeleton::Exists(x, b) => Formula::exists(x, build(b, atoms)),
    }
}

fn oracle_equivalence() -> Check {
    let mut g = Generator { rng: ChaCha8Rng::seed_from_u64(20261016), quantifiers: 0, leaves: Vec::new() };
    let store = OrderStore::new();
    let (mut tested, mut derivable) = (0, 0);
    while tested < 300 {
        let Some(seq) = g.sequent() else { continue };
        tested += 1;
        let by_prover = prove(&seq, &store).is_some();
        let by_nets = !prove_net(&seq, &store).is_empty();
        ensure(by_prover == by_nets, || format!("{seq}: prover {by_prover}, nets {by_nets}"))?;
        derivable += usize::from(by_prover);
    }
    println!("  {tested} random sequents, {derivable} derivable");
    ensure(derivable > 0 && derivable < tested, || "the sample does not mix outcomes".into())
}

fn confluence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let store = OrderStore::new();
    let mut sequents: Vec<Sequent> = FIXTURES_ACCEPTED.iter().map(|s| parse_sequent(s).unwrap()).collect();
    sequents.extend(instances("John left before Mary did").into_iter().map(|i| i.sequent));
    let mut nets = 0;
    for seq in &sequents {
        for net in prove_net_with(seq, &store, NetConfig { all: true, ..NetConfig::default() }).nets {
            nets += 1;
            let runs = shuffled_contractions(&net.abstract_structure, &mut rng, 100);
            ensure(runs.iter().all(|&ok| ok), || format!("{seq}: some order gets stuck"))?;
        }
    }
    let mut non_nets = 0;
    for s in [FIXTURE_REJECTED, "forall y. (a * b(y)) |- a * exists x. forall z. b(z)"] {
        let seq = parse_sequent(s).unwrap();
        let ps = unfold(&seq);
        let config = NetConfig { wrong_side_filter: false, ..NetConfig::default() };
        for_each_matching(&ps, &store, config, &mut |m| {
            let aps = abstract_structure(&ps, &m.pairs, &m.subst);
            if !contract(&aps).success() {
                non_nets += 1;
                let runs = shuffled_contractions(&aps, &mut rng, 100);
                assert!(runs.iter().all(|&ok| !ok), "{s}: some order succeeds");
            }
            false
        });
    }
    ensure(nets >= 5 && non_nets >= 1, || format!("{nets} nets, {non_nets} non-nets"))
}

fn empty_string() -> Check {
    let s = CatFormula::atom("s");
    let (y, z) = (Term::constant("y"), Term::constant("z"));
    let gap = |c: &str, v: GapVariant| translate_gap(&parse_cat(c).unwrap(), &s, v, y.clone(), z.clone()).unwrap().mill;
    ensure(alpha_equal(&gap("np\\s", GapVariant::Naive), &gap("s/np", GapVariant::Naive)), || "naive gaps differ".into())?;
    ensure(!alpha_equal(&gap("np\\s", GapVariant::Scoped), &gap("s/np", GapVariant::Scoped)), || "scoped gaps coincide".into())
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "pattern counts", secs(1), counting),
        criterion(2, "pattern catalogs", secs(1), catalogs),
        criterion(3, "schema fidelity", secs(1), schemas),
        criterion(4, "derivability fixtures", secs(1), fixtures),
        criterion(5, "residuation suite", secs(30), residuation),
        criterion(6, "worked parse: John gave Mary flowers", secs(1), gave),
        criterion(7, "worked parse: John left before Mary did", secs(5), did),
        criterion(8, "prover and proof nets agree", secs(60), oracle_equivalence),
        criterion(9, "contraction confluence", secs(10), confluence),
        criterion(10, "empty string gaps", secs(1), empty_string),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
