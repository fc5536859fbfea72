//! First-order multiplicative intuitionistic linear logic with proof nets,
//! order constraints on string positions, and pattern-indexed residuated
//! connective families for categorial grammar.

pub mod bindings;
pub mod cat;
pub mod cli;
pub mod order;
pub mod parse;
pub mod patterns;
pub mod proofnet;
pub mod prover;
pub mod term;
pub mod translate;
