//! Categorial formulas with pattern-indexed connectives.

use std::fmt;

use crate::patterns::Pattern;

/// Translation variant of the empty-string gap connective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapVariant {
    /// The quantifier over the empty position scopes over the whole implication.
    Scoped,
    /// The quantifier only scopes over the gap formula.
    Naive,
}

/// A categorial formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatFormula {
    Atom(String),
    /// `A *[p] B`
    Prod(Pattern, Box<CatFormula>, Box<CatFormula>),
    /// `A \[p] C`
    Under(Pattern, Box<CatFormula>, Box<CatFormula>),
    /// `C /[p] B`
    Over(Pattern, Box<CatFormula>, Box<CatFormula>),
    /// `C |> A`: a result `C` missing an empty-string `A`.
    Gap { gap: Box<CatFormula>, result: Box<CatFormula>, variant: GapVariant },
}

impl CatFormula {
    pub fn atom(name: &str) -> CatFormula {
        CatFormula::Atom(name.to_string())
    }

    pub fn prod(p: Pattern, a: CatFormula, b: CatFormula) -> CatFormula {
        CatFormula::Prod(p, Box::new(a), Box::new(b))
    }

    pub fn under(p: Pattern, a: CatFormula, c: CatFormula) -> CatFormula {
        CatFormula::Under(p, Box::new(a), Box::new(c))
    }

    pub fn over(p: Pattern, c: CatFormula, b: CatFormula) -> CatFormula {
        CatFormula::Over(p, Box::new(c), Box::new(b))
    }

    pub fn gap(gap: CatFormula, result: CatFormula, variant: GapVariant) -> CatFormula {
        CatFormula::Gap { gap: Box::new(gap), result: Box::new(result), variant }
    }

    /// Replaces atoms by their definitions.
    pub fn expand(&self, defs: &[(String, CatFormula)]) -> CatFormula {
        match self {
            CatFormula::Atom(n) => match defs.iter().find(|(k, _)| k == n) {
                Some((_, d)) => d.expand(defs),
                None => self.clone(),
            },
            CatFormula::Prod(p, a, b) => CatFormula::prod(p.clone(), a.expand(defs), b.expand(defs)),
            CatFormula::Under(p, a, c) => CatFormula::under(p.clone(), a.expand(defs), c.expand(defs)),
            CatFormula::Over(p, c, b) => CatFormula::over(p.clone(), c.expand(defs), b.expand(defs)),
            CatFormula::Gap { gap, result, variant } => {
                CatFormula::gap(gap.expand(defs), result.expand(defs), *variant)
            }
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, CatFormula::Atom(_))
    }
}

impl fmt::Display for CatFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(g: &CatFormula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if g.is_atom() {
                write!(f, "{g}")
            } else {
                write!(f, "({g})")
            }
        }
        fn index(p: &Pattern) -> String {
            if *p == Pattern::lambek() {
                String::new()
            } else {
                format!("[{p}]")
            }
        }
        match self {
            CatFormula::Atom(n) => write!(f, "{n}"),
            CatFormula::Prod(p, a, b) => {
                operand(a, f)?;
                write!(f, "*{}", index(p))?;
                operand(b, f)
            }
            CatFormula::Under(p, a, c) => {
                operand(a, f)?;
                write!(f, "\\{}", index(p))?;
                operand(c, f)
            }
            CatFormula::Over(p, c, b) => {
                operand(c, f)?;
                write!(f, "/{}", index(p))?;
                operand(b, f)
            }
            CatFormula::Gap { gap, result, variant } => {
                operand(result, f)?;
                write!(f, " {} ", if *variant == GapVariant::Scoped { "|>" } else { "|>!" })?;
                operand(gap, f)
            }
        }
    }
}
