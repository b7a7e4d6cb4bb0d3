//! Formulas of first-order arithmetic over `0, 1, +, ·, <`, with a layer of
//! defined symbols that can be expanded away.

pub mod ast;
pub mod eval;
pub mod expand;
pub mod parse;
pub mod ph;
pub mod print;

pub use ast::{var, BigOp, Bound, Formula, Func, NameGen, Pred, Quant, Rel, Term};
pub use expand::{at_level, check_pure, expand_defined, expand_mu, to_pure};
pub use eval::{eval_bounded, eval_term, Env, EvalConfig, EvalError, Evaluator};
pub use ph::{ph_clauses, ph_sentence, PARAMETERS};
pub use parse::{parse, parse_term, ParseError};
pub use print::{print, print_term, Format};
