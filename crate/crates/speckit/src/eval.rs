//! Statement execution.

use std::collections::HashMap;

use num::traits::One;
use speckit_core::class::{compile, validate, ClassError, CompileContext};
use speckit_core::identities::{compare_report, VerificationReport};
use speckit_core::operators::{
    apply_doubleton, apply_doubleton_k, apply_exp_half_square, apply_exp_shift, apply_k_subset, apply_singleton,
    flow_exp,
};
use speckit_core::oracle::Oracle;
use speckit_core::{ClassExpr, MultiIndex, Rational, TruncatedSeries, TruncationSpec, Var};

use crate::ast::{Construct, Expr, Format, Func, Operator, Script, Stmt};
use crate::error::{EvalError, RunError};

/// What a statement produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    /// Rendered series from `emit`.
    Emitted(String),
    /// Report from `check` or `verify`.
    Report(VerificationReport),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOutcome {
    pub outputs: Vec<Output>,
}

impl RunOutcome {
    pub fn reports(&self) -> impl Iterator<Item = &VerificationReport> {
        self.outputs.iter().filter_map(|o| match o {
            Output::Report(r) => Some(r),
            Output::Emitted(_) => None,
        })
    }

    pub fn passed(&self) -> bool {
        self.reports().all(VerificationReport::passed)
    }
}

/// Holds `let` bindings; each binding is re-evaluated under the caps of the
/// statement that uses it.
#[derive(Clone, Debug)]
pub struct Interpreter {
    env: HashMap<String, Expr>,
    oracle: Oracle,
}

impl Interpreter {
    pub fn new(oracle: Oracle) -> Self {
        Interpreter {
            env: HashMap::new(),
            oracle,
        }
    }

    /// Runs statement number `index` (from 1).
    pub fn execute(&mut self, index: usize, stmt: &Stmt) -> Result<Option<Output>, EvalError> {
        match stmt {
            Stmt::Let { name, value } => {
                if self.is_class_only(value) {
                    let violations = validate(&self.class(value)?);
                    if !violations.is_empty() {
                        return Err(ClassError::Admissibility(violations).into());
                    }
                }
                self.env.insert(name.clone(), value.clone());
                Ok(None)
            }
            Stmt::Check { label, lhs, rhs, caps } => {
                let identity = label.clone().unwrap_or_else(|| format!("check-{index}"));
                let (l, r) = (self.series(lhs, caps)?, self.series(rhs, caps)?);
                let report = compare_report(&identity, &format!("{lhs} == {rhs}"), &l, &r, caps);
                Ok(Some(Output::Report(report)))
            }
            Stmt::Emit { expr, caps, format } => {
                let s = self.series(expr, &caps.clone().unwrap_or_default())?;
                Ok(Some(Output::Emitted(match format {
                    Format::Text => s.to_text(),
                    Format::Json => s.to_json(),
                })))
            }
            Stmt::Verify { identity, caps } => {
                let caps = identity.caps_with(&caps.clone().unwrap_or_default());
                Ok(Some(Output::Report(identity.run(&caps, &self.oracle)?)))
            }
        }
    }

    fn binding(&self, name: &str) -> &Expr {
        self.env.get(name).expect("the parser resolves every reference")
    }

    fn is_class_only(&self, e: &Expr) -> bool {
        match e {
            Expr::Class(..) => true,
            Expr::Ref(name) => self.is_class_only(self.binding(name)),
            Expr::Add(a, b) | Expr::Mul(a, b) => self.is_class_only(a) || self.is_class_only(b),
            Expr::Pow(b, _) => self.is_class_only(b),
            _ => false,
        }
    }

    fn monomial(&self, e: &Expr) -> Option<MultiIndex> {
        match e {
            Expr::Var(v) => Some(MultiIndex::var(v.clone(), 1)),
            Expr::Ref(name) => self.monomial(self.binding(name)),
            Expr::Pow(b, k) => {
                let m = self.monomial(b)?;
                Some(MultiIndex::from_pairs(m.iter().map(|(v, e)| (v.clone(), e * k))))
            }
            Expr::Mul(a, b) => Some(self.monomial(a)?.mul(&self.monomial(b)?)),
            _ => None,
        }
    }

    /// Class denoted by `e`: products of variables are atoms, numbers are
    /// weights, `+` is union and `*` labelled product.
    pub fn class(&self, e: &Expr) -> Result<ClassExpr, EvalError> {
        if let Some(m) = self.monomial(e) {
            return Ok(ClassExpr::Atom { monomial: m });
        }
        Ok(match e {
            Expr::Num(r) if r.is_one() => ClassExpr::Neutral,
            Expr::Num(r) => ClassExpr::weighted(r.clone(), ClassExpr::Neutral),
            Expr::Ref(name) => self.class(self.binding(name))?,
            Expr::Add(a, b) => ClassExpr::union(vec![self.class(a)?, self.class(b)?]),
            Expr::Mul(a, b) => match (a.as_ref(), b.as_ref()) {
                (Expr::Num(r), other) | (other, Expr::Num(r)) => ClassExpr::weighted(r.clone(), self.class(other)?),
                _ => ClassExpr::product(vec![self.class(a)?, self.class(b)?]),
            },
            Expr::Pow(b, k) => ClassExpr::power(self.class(b)?, *k),
            Expr::Class(c, args) => match c {
                Construct::Set => ClassExpr::set(self.class(&args[0])?),
                Construct::Seq => ClassExpr::seq(self.class(&args[0])?),
                Construct::Cyc => ClassExpr::cyc(self.class(&args[0])?),
                Construct::Subst => ClassExpr::subst(self.class(&args[0])?, variable(&args[1]), self.class(&args[2])?),
            },
            other => {
                return Err(EvalError::WrongKind {
                    expected: "class",
                    expr: other.to_string(),
                })
            }
        })
    }

    /// Series denoted by `e` under `caps`.
    pub fn series(&self, e: &Expr, caps: &TruncationSpec) -> Result<TruncatedSeries, EvalError> {
        let s = |e: &Expr| self.series(e, caps);
        Ok(match e {
            Expr::Num(r) => TruncatedSeries::constant(r.clone(), caps.clone()),
            Expr::Var(v) => TruncatedSeries::variable(v.clone(), caps.clone()),
            Expr::Ref(name) => s(self.binding(name))?,
            Expr::Neg(a) => s(a)?.neg(),
            Expr::Add(a, b) => s(a)?.add(&s(b)?),
            Expr::Sub(a, b) => s(a)?.sub(&s(b)?),
            Expr::Mul(a, b) => s(a)?.mul(&s(b)?),
            Expr::Pow(a, k) => s(a)?.pow(*k),
            Expr::Call(func, args) => match func {
                Func::Exp => s(&args[0])?.exp_series()?,
                Func::LogInv => s(&args[0])?.log_geometric()?,
                Func::SeqInv => s(&args[0])?.geometric()?,
                Func::PowFrac => s(&args[0])?.pow_frac(&rational(&args[1]))?,
                Func::Subst => s(&args[0])?.substitute(&variable(&args[1]), &s(&args[2])?)?,
                Func::SqSubst => s(&args[0])?.substitute_square(&variable(&args[1]), &rational(&args[2]))?,
                Func::Deriv => s(&args[0])?.differentiate(&variable(&args[1])),
                Func::Egf => compile(&self.class(&args[0])?, &CompileContext::new(caps.clone())?)?,
                Func::Oracle => {
                    let n = integer(&args[0])?;
                    let markers = match args.get(1..3) {
                        Some([u, v]) => Some((variable(u), variable(v))),
                        _ => None,
                    };
                    self.oracle
                        .oracle_egf(n, markers.as_ref().map(|(u, v)| (u, v)))?
                        .truncate(caps)
                }
            },
            Expr::Apply(op, operand) => {
                let f = s(operand)?;
                match op.as_ref() {
                    Operator::Singleton { src, dst } => apply_singleton(&f, src, dst),
                    Operator::Subset { src, dst, k } => apply_k_subset(&f, src, dst, *k),
                    Operator::ExpShift { src, dst } => apply_exp_shift(&f, src, dst),
                    Operator::Doubleton { src, dst } => apply_doubleton(&f, src, dst),
                    Operator::DoubletonK { src, dst, k } => apply_doubleton_k(&f, src, dst, *k),
                    Operator::ExpHalfSquare { src, dst } => apply_exp_half_square(&f, src, dst),
                    Operator::Flow { q, v, x, lambda } => flow_exp(&s(q)?, &s(v)?, &f, x, lambda, caps)?.result,
                }
            }
            Expr::Class(..) => {
                return Err(EvalError::WrongKind {
                    expected: "series",
                    expr: e.to_string(),
                })
            }
        })
    }
}

fn variable(e: &Expr) -> Var {
    match e {
        Expr::Var(v) => v.clone(),
        other => panic!("the parser only places variables here, got {other:?}"),
    }
}

fn rational(e: &Expr) -> Rational {
    match e {
        Expr::Num(r) => r.clone(),
        Expr::Neg(inner) => -rational(inner),
        other => panic!("the parser only places rational literals here, got {other:?}"),
    }
}

fn integer(e: &Expr) -> Result<usize, EvalError> {
    let r = rational(e);
    num::ToPrimitive::to_usize(&r.to_integer())
        .filter(|_| r.is_integer())
        .ok_or_else(|| EvalError::NotAnInteger(e.to_string()))
}

/// Runs every statement in order, stopping at the first evaluation error.
pub fn run(script: &Script, oracle: &Oracle) -> Result<RunOutcome, RunError> {
    let mut interpreter = Interpreter::new(*oracle);
    let mut outcome = RunOutcome::default();
    for (i, stmt) in script.statements.iter().enumerate() {
        let out = interpreter.execute(i + 1, stmt).map_err(|source| RunError {
            statement: i + 1,
            source,
        })?;
        outcome.outputs.extend(out);
    }
    Ok(outcome)
}
