//! Text syntax for formulas, categorial formulas and sequents.
//!
//! Binary operators need explicit parentheses except for a single top-level
//! operator. Quantifier bodies extend as far to the right as possible.

use thiserror::Error;

use crate::cat::{CatFormula, GapVariant};
use crate::patterns::Pattern;
use crate::term::{Atom, Formula, Sequent, Term};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Star,
    Limp,
    Backslash,
    Slash,
    Turnstile,
    GapScoped,
    GapNaive,
    Forall,
    Exists,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |offset: usize, m: &str| ParseError { offset, message: m.to_string() };
    while i < chars.len() {
        let (off, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '*' | '⊗' | '•' => Some(Tok::Star),
            '\\' => Some(Tok::Backslash),
            '/' => Some(Tok::Slash),
            '⊸' => Some(Tok::Limp),
            '⊢' => Some(Tok::Turnstile),
            '∀' => Some(Tok::Forall),
            '∃' => Some(Tok::Exists),
            _ => None,
        };
        if let Some(t) = single {
            out.push((off, t));
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && next == Some('o') {
            out.push((off, Tok::Limp));
            i += 2;
            continue;
        }
        if c == '|' {
            match next {
                Some('-') => {
                    out.push((off, Tok::Turnstile));
                    i += 2;
                }
                Some('>') if chars.get(i + 2).map(|&(_, c)| c) == Some('!') => {
                    out.push((off, Tok::GapNaive));
                    i += 3;
                }
                Some('>') => {
                    out.push((off, Tok::GapScoped));
                    i += 2;
                }
                _ => return Err(err(off, "unexpected '|'")),
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let n = text.parse().map_err(|_| err(off, "number too large"))?;
            out.push((off, Tok::Num(n)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((
                off,
                match text.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ => Tok::Ident(text),
                },
            ));
            continue;
        }
        return Err(err(off, &format!("unexpected character {c:?}")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(s: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: tokenize(s)?, pos: 0, end: s.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: message.to_string() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(&format!("expected {what}"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.bump() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => {
                self.pos -= 1;
                self.error("expected identifier")
            }
        }
    }

    // MILL1 formulas.

    fn formula(&mut self, bound: &mut Vec<String>) -> Result<Formula, ParseError> {
        let left = self.formula_unary(bound)?;
        let op = match self.peek() {
            Some(Tok::Star) => Tok::Star,
            Some(Tok::Limp) => Tok::Limp,
            _ => return Ok(left),
        };
        self.pos += 1;
        let right = self.formula_unary(bound)?;
        if matches!(self.peek(), Some(Tok::Star) | Some(Tok::Limp)) {
            return self.error("ambiguous operator sequence; add parentheses");
        }
        Ok(if op == Tok::Star { Formula::tensor(left, right) } else { Formula::limp(left, right) })
    }

    fn formula_unary(&mut self, bound: &mut Vec<String>) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let universal = self.bump() == Some(Tok::Forall);
                let x = self.ident()?;
                self.expect(Tok::Dot, "'.' after quantified variable")?;
                bound.push(x.clone());
                let body = self.formula(bound)?;
                bound.pop();
                Ok(if universal { Formula::forall(&x, body) } else { Formula::exists(&x, body) })
            }
            Some(Tok::LParen) | Some(Tok::LBrack) => {
                let close = if self.bump() == Some(Tok::LParen) { Tok::RParen } else { Tok::RBrack };
                let f = self.formula(bound)?;
                self.expect(close, "closing bracket")?;
                Ok(f)
            }
            Some(Tok::Ident(_)) => {
                let pred = self.ident()?;
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    loop {
                        args.push(self.term(bound)?);
                        match self.bump() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RParen) => break,
                            _ => {
                                self.pos -= 1;
                                return self.error("expected ',' or ')' in argument list");
                            }
                        }
                    }
                }
                Ok(Formula::Atom(Atom { pred, args }))
            }
            _ => self.error("expected a formula"),
        }
    }

    fn term(&mut self, bound: &[String]) -> Result<Term, ParseError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Term::Pos(n)),
            Some(Tok::Ident(s)) => Ok(if bound.contains(&s) {
                Term::Var(s)
            } else if s.starts_with(|c: char| c.is_uppercase()) {
                Term::Meta { name: s, level: 0 }
            } else {
                Term::Const(s)
            }),
            _ => {
                self.pos -= 1;
                self.error("expected a term")
            }
        }
    }

    // Categorial formulas.

    fn cat(&mut self) -> Result<CatFormula, ParseError> {
        let left = self.cat_unary()?;
        let Some(op) = self.cat_operator()? else {
            return Ok(left);
        };
        let right = self.cat_unary()?;
        if self.cat_operator_ahead() {
            return self.error("ambiguous operator sequence; add parentheses");
        }
        Ok(match op {
            CatOp::Prod(p) => CatFormula::prod(p, left, right),
            CatOp::Under(p) => CatFormula::under(p, left, right),
            CatOp::Over(p) => CatFormula::over(p, left, right),
            CatOp::Gap(v) => CatFormula::gap(right, left, v),
        })
    }

    fn cat_operator_ahead(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Star) | Some(Tok::Backslash) | Some(Tok::Slash) | Some(Tok::GapScoped) | Some(Tok::GapNaive)
        )
    }

    fn cat_operator(&mut self) -> Result<Option<CatOp>, ParseError> {
        let kind = match self.peek() {
            Some(Tok::GapScoped) => {
                self.pos += 1;
                return Ok(Some(CatOp::Gap(GapVariant::Scoped)));
            }
            Some(Tok::GapNaive) => {
                self.pos += 1;
                return Ok(Some(CatOp::Gap(GapVariant::Naive)));
            }
            Some(t @ (Tok::Star | Tok::Backslash | Tok::Slash)) => t.clone(),
            _ => return Ok(None),
        };
        self.pos += 1;
        let pattern = if self.peek() == Some(&Tok::LBrack) {
            self.pos += 1;
            let mut text = String::new();
            let start = self.offset();
            loop {
                match self.bump() {
                    Some(Tok::RBrack) => break,
                    Some(Tok::Ident(s)) => text.push_str(&s),
                    Some(Tok::Num(n)) => text.push_str(&n.to_string()),
                    _ => {
                        self.pos -= 1;
                        return self.error("expected pattern and ']'");
                    }
                }
            }
            text.parse::<Pattern>().map_err(|e| ParseError { offset: start, message: e.to_string() })?
        } else {
            Pattern::lambek()
        };
        Ok(Some(match kind {
            Tok::Star => CatOp::Prod(pattern),
            Tok::Backslash => CatOp::Under(pattern),
            _ => CatOp::Over(pattern),
        }))
    }

    fn cat_unary(&mut self) -> Result<CatFormula, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.cat()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::Ident(_)) => Ok(CatFormula::Atom(self.ident()?)),
            _ => self.error("expected a category"),
        }
    }
}

enum CatOp {
    Prod(Pattern),
    Under(Pattern),
    Over(Pattern),
    Gap(GapVariant),
}

/// Parses a MILL1 formula. Free uppercase names become metavariables, free
/// lowercase names constants.
pub fn parse_formula(s: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(s)?;
    let f = p.formula(&mut Vec::new())?;
    if !p.at_end() {
        return p.error("trailing input");
    }
    Ok(f)
}

/// Parses a sequent `F1, ..., Fn |- G` and renames binders apart.
pub fn parse_sequent(s: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(s)?;
    let mut antecedent = Vec::new();
    if p.peek() != Some(&Tok::Turnstile) {
        loop {
            antecedent.push(p.formula(&mut Vec::new())?);
            match p.peek() {
                Some(Tok::Comma) => p.pos += 1,
                Some(Tok::Turnstile) => break,
                _ => return p.error("expected ',' or '|-'"),
            }
        }
    }
    p.expect(Tok::Turnstile, "'|-'")?;
    let succedent = p.formula(&mut Vec::new())?;
    if !p.at_end() {
        return p.error("trailing input");
    }
    Ok(Sequent::new(antecedent, succedent).rename_apart())
}

/// Parses a categorial formula.
pub fn parse_cat(s: &str) -> Result<CatFormula, ParseError> {
    let mut p = Parser::new(s)?;
    let f = p.cat()?;
    if !p.at_end() {
        return p.error("trailing input");
    }
    Ok(f)
}
