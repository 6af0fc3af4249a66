//! Symbolic combinatorics over exact truncated power series.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: multivariate formal power series with rational
//!   coefficients and per-variable degree caps.
//! * [`class`]: labelled combinatorial class expressions and their
//!   compilation to exponential generating functions.
//! * [`operators`]: derivative operators, their exponentials and the
//!   first-order flow operator `exp(λ(q(x)∂ₓ + v(x)))`.
//! * [`oracle`]: brute-force enumeration of partial matchings on sets of
//!   labelled doubletons, independent of all series algebra.
//! * [`identities`]: end-to-end verifications producing per-coefficient
//!   reports.

pub mod class;
pub mod identities;
pub mod operators;
pub mod oracle;
pub mod rational;
pub mod series;

pub use class::{ClassExpr, CompileContext};
pub use rational::Rational;
pub use series::{MultiIndex, TruncatedSeries, TruncationSpec, Var};
