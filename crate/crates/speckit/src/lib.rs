//! A small expression language over truncated series, labelled classes and
//! differential operators, with the `speckit` command-line front-end.
//!
//! ```text
//! let C = egf(SET(x^2*t));
//! check EXP_HALF_SQ[x->y] @ C == powfrac(-2*y^2*t, -1/2) * exp(x^2*t * seqinv(2*y^2*t)) upto x:8,y:8,t:4;
//! emit C upto x:4,t:2 as json;
//! verify glaisher;
//! ```

pub mod ast;
pub mod error;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod specs;

pub use ast::{Expr, Script, Stmt};
pub use error::{DslError, EvalError, RunError};
pub use eval::{run, Interpreter, Output, RunOutcome};
pub use parser::{parse, parse_expr};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
