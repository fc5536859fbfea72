//! Translation of categorial formulas into MILL1 formulas over string positions.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::cat::{CatFormula, GapVariant};
use crate::order::{Fact, OrderError, OrderStore};
use crate::parse::{parse_cat, ParseError};
use crate::patterns::{schema, ConnectiveSchema, Pattern, Role, Sym};
use crate::term::{Atom, Formula, NameSupply, Sequent, Term};

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error("arity mismatch: {connective} expects a span of length {expected}, got {got}")]
    Arity { connective: String, expected: usize, got: usize },
    #[error("unknown word {0:?}")]
    UnknownWord(String),
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Position tuples of every subformula occurrence, mirroring the formula tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleTree {
    pub tuple: Vec<Term>,
    pub children: Vec<TupleTree>,
}

impl TupleTree {
    fn leaf(tuple: Vec<Term>) -> TupleTree {
        TupleTree { tuple, children: Vec::new() }
    }

    /// Tuples in preorder of the formula's subformula occurrences.
    pub fn preorder(&self) -> Vec<&[Term]> {
        let mut out = vec![self.tuple.as_slice()];
        for c in &self.children {
            out.extend(c.preorder());
        }
        out
    }
}

/// A translated formula with its node tuples and order facts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedFormula {
    pub mill: Formula,
    pub node_tuples: TupleTree,
    pub facts: Vec<Fact>,
}

/// Supplies fresh bound position names `x0`, `x1`, ...
#[derive(Clone, Debug, Default)]
pub struct Translator {
    supply: NameSupply,
    counter: usize,
}

impl Translator {
    pub fn new() -> Translator {
        Translator::default()
    }

    fn fresh(&mut self) -> String {
        loop {
            let name = format!("x{}", self.counter);
            self.counter += 1;
            if !self.supply.is_used(&name) {
                self.supply.reserve(&name);
                return name;
            }
        }
    }

    /// Translates `cat` at the given span.
    pub fn translate(&mut self, cat: &CatFormula, span: &[Term]) -> Result<DecoratedFormula, TranslateError> {
        let mut facts = Vec::new();
        let (mill, node_tuples) = self.trans(cat, span, &mut facts)?;
        facts.sort();
        facts.dedup();
        Ok(DecoratedFormula { mill, node_tuples, facts })
    }

    fn trans(
        &mut self,
        cat: &CatFormula,
        span: &[Term],
        facts: &mut Vec<Fact>,
    ) -> Result<(Formula, TupleTree), TranslateError> {
        chain_facts(span, facts);
        match cat {
            CatFormula::Atom(name) => {
                if span.is_empty() {
                    return Err(TranslateError::Arity { connective: name.clone(), expected: 2, got: 0 });
                }
                Ok((Formula::Atom(Atom::new(name, span.to_vec())), TupleTree::leaf(span.to_vec())))
            }
            CatFormula::Prod(p, a, b) => {
                let p = widen(p, Role::Product, span.len(), cat)?;
                let s = schema(&p);
                let env = self.environment(&s, &s.tuple_c, span, &s.exist_vars.iter().copied().collect::<Vec<_>>(), cat)?;
                let ta = tuple(&env, &s.tuple_a);
                let tb = tuple(&env, &s.tuple_b);
                let (fa, ra) = self.trans(a, &ta, facts)?;
                let (fb, rb) = self.trans(b, &tb, facts)?;
                self.role_facts(&s, Role::Product, &env, facts);
                let vars = bound_names(&env, &s.exist_vars);
                let body = Formula::tensor(fa, fb);
                let body_tree = TupleTree { tuple: span.to_vec(), children: vec![ra, rb] };
                Ok(quantify(false, &vars, body, body_tree, span))
            }
            CatFormula::Under(p, a, c) => {
                let p = widen(p, Role::Under, span.len(), cat)?;
                let s = schema(&p);
                let env = self.environment(&s, &s.tuple_b, span, &s.under_vars.iter().copied().collect::<Vec<_>>(), cat)?;
                let ta = tuple(&env, &s.tuple_a);
                let tc = tuple(&env, &s.tuple_c);
                let (fa, ra) = self.trans(a, &ta, facts)?;
                let (fc, rc) = self.trans(c, &tc, facts)?;
                self.role_facts(&s, Role::Under, &env, facts);
                let vars = bound_names(&env, &s.under_vars);
                let body_tree = TupleTree { tuple: span.to_vec(), children: vec![ra, rc] };
                Ok(quantify(true, &vars, Formula::limp(fa, fc), body_tree, span))
            }
            CatFormula::Over(p, c, b) => {
                let p = widen(p, Role::Over, span.len(), cat)?;
                let s = schema(&p);
                let env = self.environment(&s, &s.tuple_a, span, &s.over_vars.iter().copied().collect::<Vec<_>>(), cat)?;
                let tb = tuple(&env, &s.tuple_b);
                let tc = tuple(&env, &s.tuple_c);
                let (fb, rb) = self.trans(b, &tb, facts)?;
                let (fc, rc) = self.trans(c, &tc, facts)?;
                self.role_facts(&s, Role::Over, &env, facts);
                let vars = bound_names(&env, &s.over_vars);
                let body_tree = TupleTree { tuple: span.to_vec(), children: vec![rb, rc] };
                Ok(quantify(true, &vars, Formula::limp(fb, fc), body_tree, span))
            }
            CatFormula::Gap { gap, result, variant } => {
                if span.len() != 2 {
                    return Err(TranslateError::Arity { connective: cat.to_string(), expected: 2, got: span.len() });
                }
                let x = self.fresh();
                let empty = vec![Term::Var(x.clone()), Term::Var(x.clone())];
                let (fa, ra) = self.trans(gap, &empty, facts)?;
                let (fc, rc) = self.trans(result, span, facts)?;
                let one = [x];
                Ok(match variant {
                    GapVariant::Scoped => {
                        let tree = TupleTree { tuple: span.to_vec(), children: vec![ra, rc] };
                        quantify(false, &one, Formula::limp(fa, fc), tree, span)
                    }
                    GapVariant::Naive => {
                        let (qa, qra) = quantify(true, &one, fa, ra, &empty);
                        let tree = TupleTree { tuple: span.to_vec(), children: vec![qra, rc] };
                        (Formula::limp(qa, fc), tree)
                    }
                })
            }
        }
    }

    /// Maps every schema index to a term: indices of the outer tuple take the
    /// span's values, the quantified ones get fresh bound names.
    fn environment(
        &mut self,
        s: &ConnectiveSchema,
        outer: &[usize],
        span: &[Term],
        quantified: &[usize],
        cat: &CatFormula,
    ) -> Result<BTreeMap<usize, Term>, TranslateError> {
        if outer.len() != span.len() {
            return Err(TranslateError::Arity { connective: cat.to_string(), expected: outer.len(), got: span.len() });
        }
        let mut env: BTreeMap<usize, Term> = outer.iter().copied().zip(span.iter().cloned()).collect();
        for &i in quantified {
            env.insert(i, Term::Var(self.fresh()));
        }
        debug_assert_eq!(env.len(), s.n_positions);
        Ok(env)
    }

    fn role_facts(&self, s: &ConnectiveSchema, role: Role, env: &BTreeMap<usize, Term>, facts: &mut Vec<Fact>) {
        for f in s.required_facts(role) {
            facts.push(Fact::leq(env[&f.lo].clone(), env[&f.hi].clone()));
        }
    }
}

/// Plain connectives over multi-segment operands: `C/B` appends `B` to the
/// last segment of `C`, and `A\C` prepends `A` to the first segment of `C`.
fn widen(p: &Pattern, role: Role, span_len: usize, cat: &CatFormula) -> Result<Pattern, TranslateError> {
    if *p != Pattern::lambek() || span_len == 2 || !span_len.is_multiple_of(2) || span_len == 0 {
        return Ok(p.clone());
    }
    let k = span_len / 2;
    let mut symbols = Vec::new();
    match role {
        Role::Over => {
            for _ in 1..k {
                symbols.extend([Sym::A, Sym::One]);
            }
            symbols.extend([Sym::A, Sym::B]);
        }
        Role::Under => {
            symbols.extend([Sym::A, Sym::B]);
            for _ in 1..k {
                symbols.extend([Sym::One, Sym::B]);
            }
        }
        Role::Product => {
            return Err(TranslateError::Arity { connective: cat.to_string(), expected: 2, got: span_len });
        }
    }
    Ok(Pattern::new(symbols).expect("widened pattern is valid"))
}

fn tuple(env: &BTreeMap<usize, Term>, indices: &[usize]) -> Vec<Term> {
    indices.iter().map(|i| env[i].clone()).collect()
}

fn bound_names(env: &BTreeMap<usize, Term>, vars: &std::collections::BTreeSet<usize>) -> Vec<String> {
    vars.iter().map(|i| env[i].name().expect("bound position").to_string()).collect()
}

fn quantify(
    universal: bool,
    vars: &[String],
    body: Formula,
    body_tree: TupleTree,
    span: &[Term],
) -> (Formula, TupleTree) {
    let mut f = body;
    let mut tree = body_tree;
    for v in vars.iter().rev() {
        f = if universal { Formula::forall(v, f) } else { Formula::exists(v, f) };
        tree = TupleTree { tuple: span.to_vec(), children: vec![tree] };
    }
    (f, tree)
}

fn chain_facts(span: &[Term], facts: &mut Vec<Fact>) {
    for w in span.windows(2) {
        if w[0] != w[1] {
            facts.push(Fact::leq(w[0].clone(), w[1].clone()));
        }
    }
}

/// Translates a categorial formula with a fresh translator.
pub fn translate(cat: &CatFormula, span: &[Term]) -> Result<DecoratedFormula, TranslateError> {
    Translator::new().translate(cat, span)
}

/// Translates a gap category `result |> gap` at the span `(y, z)`.
pub fn translate_gap(gap: &CatFormula, result: &CatFormula, variant: GapVariant, y: Term, z: Term) -> Result<DecoratedFormula, TranslateError> {
    translate(&CatFormula::gap(gap.clone(), result.clone(), variant), &[y, z])
}

/// A lexicon entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexEntry {
    pub word: String,
    pub cat: CatFormula,
}

/// Word-to-category assignments plus category abbreviations.
#[derive(Clone, Debug)]
pub struct Lexicon {
    pub entries: Vec<LexEntry>,
    pub abbreviations: Vec<(String, CatFormula)>,
}

impl Default for Lexicon {
    fn default() -> Lexicon {
        Lexicon {
            entries: Vec::new(),
            abbreviations: vec![("vp".to_string(), parse_cat("np\\s").expect("valid"))],
        }
    }
}

impl Lexicon {
    /// Parses lexicon text: `word := category` per line, `@name := category`
    /// for abbreviations, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Lexicon, TranslateError> {
        let mut lex = Lexicon::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((lhs, rhs)) = line.split_once(":=") else {
                return Err(TranslateError::Lexicon { line: n + 1, message: "expected 'word := category'".into() });
            };
            let cat = parse_cat(rhs.trim()).map_err(|e| TranslateError::Lexicon { line: n + 1, message: e.to_string() })?;
            let lhs = lhs.trim();
            if let Some(name) = lhs.strip_prefix('@') {
                lex.abbreviations.retain(|(k, _)| k != name.trim());
                lex.abbreviations.push((name.trim().to_string(), cat));
            } else if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(TranslateError::Lexicon { line: n + 1, message: "a word is a single token".into() });
            } else {
                lex.entries.push(LexEntry { word: lhs.to_string(), cat });
            }
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Lexicon, TranslateError> {
        Lexicon::parse(&fs::read_to_string(path)?)
    }

    pub fn add(&mut self, word: &str, cat: CatFormula) {
        self.entries.push(LexEntry { word: word.to_string(), cat });
    }

    /// All categories of a word, abbreviations expanded.
    pub fn lookup(&self, word: &str) -> Vec<CatFormula> {
        self.entries.iter().filter(|e| e.word == word).map(|e| e.cat.expand(&self.abbreviations)).collect()
    }

    pub fn expand(&self, cat: &CatFormula) -> CatFormula {
        cat.expand(&self.abbreviations)
    }

    /// Every combination of lexical choices for the words, in lexicon order.
    pub fn readings(&self, words: &[&str]) -> Result<Vec<Vec<CatFormula>>, TranslateError> {
        let mut out: Vec<Vec<CatFormula>> = vec![Vec::new()];
        for w in words {
            let cats = self.lookup(w);
            if cats.is_empty() {
                return Err(TranslateError::UnknownWord(w.to_string()));
            }
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    cats.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c.clone());
                        v
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

/// A sentence ready for proof search.
#[derive(Clone, Debug)]
pub struct Instance {
    pub sequent: Sequent,
    pub store: OrderStore,
    pub decorations: Vec<DecoratedFormula>,
}

/// Builds the sequent for one lexical reading of a sentence: word `i` sits at
/// span `(i-1, i)` and the goal at `(0, n)`.
pub fn instantiate_sentence(cats: &[CatFormula], goal: &CatFormula) -> Result<Instance, TranslateError> {
    let mut tr = Translator::new();
    let n = cats.len() as u32;
    let mut decorations = Vec::new();
    for (i, c) in cats.iter().enumerate() {
        decorations.push(tr.translate(c, &[Term::Pos(i as u32), Term::Pos(i as u32 + 1)])?);
    }
    let goal_dec = tr.translate(goal, &[Term::Pos(0), Term::Pos(n)])?;
    let mut store = OrderStore::sentence_chain(n);
    for d in decorations.iter().chain(std::iter::once(&goal_dec)) {
        for f in &d.facts {
            store.assert_fact(f)?;
        }
    }
    let sequent = Sequent::new(decorations.iter().map(|d| d.mill.clone()).collect(), goal_dec.mill.clone());
    decorations.push(goal_dec);
    Ok(Instance { sequent, store, decorations })
}

/// Looks up the words and instantiates every lexical reading.
pub fn sentence_instances(lex: &Lexicon, words: &[&str], goal: &CatFormula) -> Result<Vec<Instance>, TranslateError> {
    let goal = lex.expand(goal);
    lex.readings(words)?.iter().map(|cats| instantiate_sentence(cats, &goal)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Relation;
    use crate::parse::parse_formula;
    use crate::term::alpha_equal;

    fn cat(s: &str) -> CatFormula {
        Lexicon::default().expand(&parse_cat(s).unwrap())
    }

    fn pos(a: u32, b: u32) -> Vec<Term> {
        vec![Term::Pos(a), Term::Pos(b)]
    }

    #[test]
    fn intransitive_verb() {
        let d = translate(&cat("np\\s"), &pos(1, 2)).unwrap();
        assert!(alpha_equal(&d.mill, &parse_formula("forall A. (np(A,1) -o s(A,2))").unwrap()));
        let d = translate(&cat("np"), &pos(0, 1)).unwrap();
        assert_eq!(d.mill, parse_formula("np(0,1)").unwrap());
    }

    #[test]
    fn did_translation() {
        let d = translate(&cat("((vp/[aba]vp)/vp)\\[a1ab](vp/[aba]vp)"), &pos(4, 5)).unwrap();
        let expected = parse_formula(
            "forall F. forall I. forall J. ((forall x1. ((forall G. (np(G,4) -o s(G,x1))) -o \
             ((forall H. (np(H,I) -o s(H,J))) -o (forall x2. (np(x2,F) -o s(x2,x1)))))) -o \
             ((forall x3. (np(x3,I) -o s(x3,J))) -o (forall E. (np(E,F) -o s(E,5)))))",
        )
        .unwrap();
        assert!(alpha_equal(&d.mill, &expected), "{}", d.mill);
        let explicit = translate(&cat("((vp/[aba]vp)/[a1ab]vp)\\[a1ab](vp/[aba]vp)"), &pos(4, 5)).unwrap();
        assert!(alpha_equal(&d.mill, &explicit.mill));
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            translate(&cat("np\\[abab]s"), &pos(0, 1)),
            Err(TranslateError::Arity { .. })
        ));
    }

    #[test]
    fn gave_store() {
        let lex = Lexicon::parse("John := np\nMary := np\nflowers := np\ngave := ((np\\s)/np)/np\n").unwrap();
        let inst = &sentence_instances(&lex, &["John", "gave", "Mary", "flowers"], &cat("s")).unwrap()[0];
        let gave = &inst.sequent.antecedent[1];
        let expected = parse_formula("forall Z. (np(2,Z) -o forall Y. (np(Z,Y) -o forall X. (np(X,1) -o s(X,Y))))").unwrap();
        assert!(alpha_equal(gave, &expected), "{gave}");
        let names = gave.binders();
        let (z, y, x) = (Term::var(&names[0]), Term::var(&names[1]), Term::var(&names[2]));
        assert_eq!(inst.store.entails(&x, &Term::Pos(1)), Relation::Leq);
        assert_eq!(inst.store.entails(&Term::Pos(2), &z), Relation::Leq);
        assert_eq!(inst.store.entails(&z, &y), Relation::Leq);
        assert_eq!(inst.store.entails(&x, &y), Relation::Lt);
    }

    #[test]
    fn empty_sentence() {
        let inst = instantiate_sentence(&[], &cat("s")).unwrap();
        assert!(inst.sequent.antecedent.is_empty());
        assert_eq!(inst.sequent.succedent, parse_formula("s(0,0)").unwrap());
        assert_eq!(inst.store.len(), 1);
    }

    #[test]
    fn gap_variants() {
        let s = cat("s");
        let (y, z) = (Term::constant("y"), Term::constant("z"));
        let naive_vp = translate_gap(&cat("np\\s"), &s, GapVariant::Naive, y.clone(), z.clone()).unwrap();
        let naive_snp = translate_gap(&cat("s/np"), &s, GapVariant::Naive, y.clone(), z.clone()).unwrap();
        assert!(alpha_equal(&naive_vp.mill, &naive_snp.mill));
        let Formula::Limp(gap_part, _) = &naive_vp.mill else { panic!() };
        let printed = parse_formula("forall x1. forall x0. (np(x0,x1) -o s(x0,x1))").unwrap();
        assert!(alpha_equal(gap_part, &printed));
        let scoped_vp = translate_gap(&cat("np\\s"), &s, GapVariant::Scoped, y.clone(), z.clone()).unwrap();
        let scoped_snp = translate_gap(&cat("s/np"), &s, GapVariant::Scoped, y, z).unwrap();
        assert!(!alpha_equal(&scoped_vp.mill, &scoped_snp.mill));
    }

    #[test]
    fn lexicon_syntax() {
        let lex = Lexicon::parse("# comment\nbank := n\nbank := np # twice\n@tv := (np\\s)/np\nsaw := tv\n").unwrap();
        assert_eq!(lex.lookup("bank").len(), 2);
        assert_eq!(lex.lookup("saw"), vec![cat("(np\\s)/np")]);
        assert!(Lexicon::parse("oops np").is_err());
        assert!(Lexicon::parse("w := np \\[ba] s").is_err());
    }
}
