//! First-order formulas over graph-order vocabularies.

pub mod arith;
pub mod ast;
pub mod env;
pub mod eval;
pub mod parser;
mod printer;

pub use ast::{Domain, Formula, NumExpr, Quantifier, RelOp, Term};
pub use env::{builtin_corpus, load_corpus, Definition, Environment};
pub use eval::{Evaluator, Truth};
pub use parser::parse;
