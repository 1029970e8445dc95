//! Expression language and command-line front end for `hahnfield`.
//!
//! An expression is built from rational literals, the infinitesimal `t`,
//! the iterated logarithms `l1`..`l9`, the operators `+ - * / ^`, and the
//! functions `v`, `st`, `inv`, `root`, `sub`, `expand` and `O`.

pub mod batch;
pub mod eval;
pub mod parse;
pub mod render;

pub use eval::{eval_str, evaluate, Config, Env, Error, EvalError, Value};
pub use parse::{parse, parse_rational, parse_statement, Expr, ParseError, Statement};
pub use render::{render, render_text, Format};
