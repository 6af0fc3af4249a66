//! Labelled combinatorial classes and their exponential generating functions.
//!
//! A [`ClassExpr`] is compiled by the standard transfer rules:
//!
//! | construction      | EGF                 |
//! |-------------------|---------------------|
//! | `A + B`           | `A(t) + B(t)`       |
//! | `A ⋆ B`           | `A(t) · B(t)`       |
//! | `A ∘ B`           | `A(B(t))`           |
//! | `Set(A)`          | `exp A(t)`          |
//! | `Cyc(A)`          | `log 1/(1 − A(t))`  |
//! | `Seq(A)`          | `1/(1 − A(t))`      |
//!
//! `Set`, `Seq`, `Cyc` and the inner part of a substitution must be
//! admissible: their EGF has zero constant term. Atoms are monomials; the
//! label variable (`t` by default) marks labelled atoms and every other
//! variable is an unlabelled weight.

use std::fmt;

use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, rat, Rational};
use crate::series::{MultiIndex, SeriesError, TruncatedSeries, TruncationSpec, Var};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ClassExpr {
    /// Single object of size zero.
    Neutral,
    Atom {
        monomial: MultiIndex,
    },
    Union {
        parts: Vec<ClassExpr>,
    },
    Product {
        factors: Vec<ClassExpr>,
    },
    /// `k`-fold labelled product, without a `1/k!` symmetry factor.
    Power {
        base: Box<ClassExpr>,
        exponent: u32,
    },
    Set {
        arg: Box<ClassExpr>,
    },
    Seq {
        arg: Box<ClassExpr>,
    },
    Cyc {
        arg: Box<ClassExpr>,
    },
    /// Objects of `inner` substituted for the atoms counted by `var` in `outer`.
    Subst {
        outer: Box<ClassExpr>,
        var: Var,
        inner: Box<ClassExpr>,
    },
    Weighted {
        #[serde(with = "rational::serde_string")]
        coefficient: Rational,
        expr: Box<ClassExpr>,
    },
}

impl ClassExpr {
    pub fn atom<V: Into<Var>>(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        ClassExpr::Atom {
            monomial: MultiIndex::from_pairs(pairs),
        }
    }

    pub fn union(parts: Vec<ClassExpr>) -> Self {
        ClassExpr::Union { parts }
    }

    pub fn product(factors: Vec<ClassExpr>) -> Self {
        ClassExpr::Product { factors }
    }

    pub fn power(base: ClassExpr, exponent: u32) -> Self {
        ClassExpr::Power {
            base: Box::new(base),
            exponent,
        }
    }

    pub fn set(arg: ClassExpr) -> Self {
        ClassExpr::Set { arg: Box::new(arg) }
    }

    pub fn seq(arg: ClassExpr) -> Self {
        ClassExpr::Seq { arg: Box::new(arg) }
    }

    pub fn cyc(arg: ClassExpr) -> Self {
        ClassExpr::Cyc { arg: Box::new(arg) }
    }

    pub fn subst(outer: ClassExpr, var: impl Into<Var>, inner: ClassExpr) -> Self {
        ClassExpr::Subst {
            outer: Box::new(outer),
            var: var.into(),
            inner: Box::new(inner),
        }
    }

    pub fn weighted(coefficient: Rational, expr: ClassExpr) -> Self {
        ClassExpr::Weighted {
            coefficient,
            expr: Box::new(expr),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("class AST is always serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Constant term of the EGF, i.e. the number of objects of size zero.
    ///
    /// An inadmissible `Set` argument is treated as if it were admissible, so
    /// the value is only meaningful for subtrees that passed [`validate`].
    fn constant_term(&self) -> Rational {
        match self {
            ClassExpr::Neutral | ClassExpr::Set { .. } | ClassExpr::Seq { .. } => Rational::one(),
            ClassExpr::Cyc { .. } => Rational::zero(),
            ClassExpr::Atom { monomial } => {
                if monomial.is_one() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            ClassExpr::Union { parts } => parts.iter().map(|p| p.constant_term()).sum(),
            ClassExpr::Product { factors } => factors.iter().map(|f| f.constant_term()).product(),
            ClassExpr::Power { base, exponent } => num::pow(base.constant_term(), *exponent as usize),
            ClassExpr::Subst { outer, .. } => outer.constant_term(),
            ClassExpr::Weighted { coefficient, expr } => coefficient * expr.constant_term(),
        }
    }
}

/// Compact human-readable form, e.g. `Set(2·y^2 t^1)`.
impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, items: &[ClassExpr], sep: &str| -> fmt::Result {
            f.write_str("(")?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{item}")?;
            }
            f.write_str(")")
        };
        match self {
            ClassExpr::Neutral => f.write_str("E"),
            ClassExpr::Atom { monomial } => write!(f, "[{monomial}]"),
            ClassExpr::Union { parts } => list(f, parts, " + "),
            ClassExpr::Product { factors } => list(f, factors, " * "),
            ClassExpr::Power { base, exponent } => write!(f, "{base}^{exponent}"),
            ClassExpr::Set { arg } => write!(f, "Set({arg})"),
            ClassExpr::Seq { arg } => write!(f, "Seq({arg})"),
            ClassExpr::Cyc { arg } => write!(f, "Cyc({arg})"),
            ClassExpr::Subst { outer, var, inner } => write!(f, "Subst({outer}, {var}, {inner})"),
            ClassExpr::Weighted { coefficient, expr } => {
                write!(f, "{}·{expr}", rational::to_compact_string(coefficient))
            }
        }
    }
}

/// A construction whose argument has a nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Location in the AST, e.g. `/set/union[1]`.
    pub path: String,
    pub construction: &'static str,
    #[serde(with = "rational::serde_string")]
    pub constant_term: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} argument at {} has constant term {}",
            self.construction,
            self.path,
            rational::to_compact_string(&self.constant_term)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("inadmissible class: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Admissibility(Vec<Violation>),
    #[error("label variable {0} has no cap in the compile context")]
    UncappedLabel(Var),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Lists every `Set`/`Seq`/`Cyc`/`Subst` argument with a nonzero constant term.
pub fn validate(e: &ClassExpr) -> Vec<Violation> {
    let mut out = Vec::new();
    collect_violations(e, String::new(), &mut out);
    out
}

fn collect_violations(e: &ClassExpr, path: String, out: &mut Vec<Violation>) {
    let mut check = |construction: &'static str, arg: &ClassExpr, path: &str| {
        let c = arg.constant_term();
        if !c.is_zero() {
            out.push(Violation {
                path: if path.is_empty() { "/".into() } else { path.to_string() },
                construction,
                constant_term: c,
            });
        }
    };
    match e {
        ClassExpr::Neutral | ClassExpr::Atom { .. } => {}
        ClassExpr::Set { arg } => {
            check("Set", arg, &path);
            collect_violations(arg, format!("{path}/set"), out);
        }
        ClassExpr::Seq { arg } => {
            check("Seq", arg, &path);
            collect_violations(arg, format!("{path}/seq"), out);
        }
        ClassExpr::Cyc { arg } => {
            check("Cyc", arg, &path);
            collect_violations(arg, format!("{path}/cyc"), out);
        }
        ClassExpr::Subst { outer, inner, .. } => {
            check("Subst", inner, &path);
            collect_violations(outer, format!("{path}/outer"), out);
            collect_violations(inner, format!("{path}/inner"), out);
        }
        ClassExpr::Union { parts } => {
            for (i, p) in parts.iter().enumerate() {
                collect_violations(p, format!("{path}/union[{i}]"), out);
            }
        }
        ClassExpr::Product { factors } => {
            for (i, p) in factors.iter().enumerate() {
                collect_violations(p, format!("{path}/product[{i}]"), out);
            }
        }
        ClassExpr::Power { base, .. } => collect_violations(base, format!("{path}/power"), out),
        ClassExpr::Weighted { expr, .. } => collect_violations(expr, format!("{path}/weighted"), out),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileContext {
    truncation: TruncationSpec,
    label: Var,
}

impl CompileContext {
    /// Context with label variable `t`.
    pub fn new(truncation: TruncationSpec) -> Result<Self, ClassError> {
        Self::with_label(truncation, Var::new("t"))
    }

    pub fn with_label(truncation: TruncationSpec, label: Var) -> Result<Self, ClassError> {
        if truncation.cap(&label).is_none() {
            return Err(ClassError::UncappedLabel(label));
        }
        Ok(CompileContext { truncation, label })
    }

    pub fn truncation(&self) -> &TruncationSpec {
        &self.truncation
    }

    pub fn label(&self) -> &Var {
        &self.label
    }
}

/// EGF of `e` under the context's caps.
pub fn compile(e: &ClassExpr, ctx: &CompileContext) -> Result<TruncatedSeries, ClassError> {
    let violations = validate(e);
    if !violations.is_empty() {
        return Err(ClassError::Admissibility(violations));
    }
    Ok(compile_unchecked(e, &ctx.truncation)?)
}

fn compile_unchecked(e: &ClassExpr, caps: &TruncationSpec) -> Result<TruncatedSeries, SeriesError> {
    Ok(match e {
        ClassExpr::Neutral => TruncatedSeries::one(caps.clone()),
        ClassExpr::Atom { monomial } => {
            TruncatedSeries::monomial(Rational::one(), monomial.clone(), caps.clone())
        }
        ClassExpr::Union { parts } => {
            let mut acc = TruncatedSeries::zero(caps.clone());
            for p in parts {
                acc = acc.add(&compile_unchecked(p, caps)?);
            }
            acc
        }
        ClassExpr::Product { factors } => {
            let mut acc = TruncatedSeries::one(caps.clone());
            for p in factors {
                acc = acc.mul(&compile_unchecked(p, caps)?);
            }
            acc
        }
        ClassExpr::Power { base, exponent } => compile_unchecked(base, caps)?.pow(*exponent),
        ClassExpr::Set { arg } => compile_unchecked(arg, caps)?.exp_series()?,
        ClassExpr::Seq { arg } => compile_unchecked(arg, caps)?.geometric()?,
        ClassExpr::Cyc { arg } => compile_unchecked(arg, caps)?.log_geometric()?,
        ClassExpr::Subst { outer, var, inner } => {
            compile_unchecked(outer, caps)?.substitute(var, &compile_unchecked(inner, caps)?)?
        }
        ClassExpr::Weighted { coefficient, expr } => compile_unchecked(expr, caps)?.scale(coefficient),
    })
}

/// Open chains of doubletons:
/// `XTX + ½ · (2·XYT) ⋆ Seq(2·Y²T) ⋆ (2·XYT)`.
pub fn open_chain_class() -> ClassExpr {
    let end = || ClassExpr::weighted(rational::int(2), ClassExpr::atom([("x", 1), ("y", 1), ("t", 1)]));
    ClassExpr::union(vec![
        ClassExpr::atom([("x", 2), ("t", 1)]),
        ClassExpr::weighted(
            rat(1, 2),
            ClassExpr::product(vec![
                end(),
                ClassExpr::seq(ClassExpr::weighted(rational::int(2), ClassExpr::atom([("y", 2), ("t", 1)]))),
                end(),
            ]),
        ),
    ])
}

/// Closed chains of doubletons counted as undirected cycles:
/// `½ · Cyc(2·Y²T)`.
pub fn closed_chain_class() -> ClassExpr {
    ClassExpr::weighted(rat(1, 2), directed_closed_chain_class())
}

/// `Cyc(2·Y²T)`: closed chains counted with a direction, i.e. every chain of
/// two or more doubletons twice.
pub fn directed_closed_chain_class() -> ClassExpr {
    ClassExpr::cyc(ClassExpr::weighted(rational::int(2), ClassExpr::atom([("y", 2), ("t", 1)])))
}

/// EGF of [`open_chain_class`], equal to `x²t / (1 − 2y²t)`.
pub fn compile_open_chains(ctx: &CompileContext) -> Result<TruncatedSeries, ClassError> {
    compile(&open_chain_class(), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ctx(spec: &str) -> CompileContext {
        CompileContext::new(spec.parse().unwrap()).unwrap()
    }

    fn m(pairs: &[(&str, u32)]) -> MultiIndex {
        MultiIndex::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn seq_of_neutral_is_inadmissible() {
        let v = validate(&ClassExpr::seq(ClassExpr::Neutral));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].construction, "Seq");
        assert_eq!(v[0].constant_term, int(1));
        assert!(matches!(
            compile(&ClassExpr::set(ClassExpr::Neutral), &ctx("t:3")),
            Err(ClassError::Admissibility(_))
        ));
    }

    #[test]
    fn chain_and_hermite_classes_are_admissible() {
        assert!(validate(&directed_closed_chain_class()).is_empty());
        let fig = ClassExpr::set(ClassExpr::union(vec![
            ClassExpr::atom([("x", 1), ("t", 1)]),
            ClassExpr::weighted(rat(1, 2), ClassExpr::power(ClassExpr::atom([("y", 1), ("t", 1)]), 2)),
        ]));
        assert!(validate(&fig).is_empty());
    }

    #[test]
    fn nested_violation_path() {
        let e = ClassExpr::union(vec![
            ClassExpr::atom([("t", 1)]),
            ClassExpr::cyc(ClassExpr::union(vec![ClassExpr::Neutral, ClassExpr::atom([("t", 1)])])),
        ]);
        let v = validate(&e);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].path, "/union[1]");
        assert_eq!(v[0].construction, "Cyc");
    }

    #[test]
    fn weights_cancelling_constant_are_admissible() {
        let inner = ClassExpr::union(vec![
            ClassExpr::Neutral,
            ClassExpr::weighted(int(-1), ClassExpr::Neutral),
            ClassExpr::atom([("t", 1)]),
        ]);
        assert!(validate(&ClassExpr::set(inner)).is_empty());
    }

    #[test]
    fn set_of_xt() {
        let s = compile(&ClassExpr::set(ClassExpr::atom([("x", 1), ("t", 1)])), &ctx("x:5,t:5")).unwrap();
        assert_eq!(s.coeff(&m(&[("x", 5), ("t", 5)])).unwrap(), rat(1, 120));
    }

    #[test]
    fn set_of_x2t() {
        let s = compile(&ClassExpr::set(ClassExpr::atom([("x", 2), ("t", 1)])), &ctx("x:8,t:4")).unwrap();
        let x2t = TruncatedSeries::monomial(int(1), m(&[("x", 2), ("t", 1)]), "x:8,t:4".parse().unwrap());
        assert_eq!(s, x2t.exp_series().unwrap());
    }

    #[test]
    fn directed_cycles() {
        let s = compile(&directed_closed_chain_class(), &ctx("y:8,t:4")).unwrap();
        assert_eq!(s.coeff(&m(&[("y", 6), ("t", 3)])).unwrap(), rat(8, 3));
    }

    #[test]
    fn open_chain_coefficients() {
        let b = compile_open_chains(&ctx("x:8,y:8,t:4")).unwrap();
        assert_eq!(b.coeff(&m(&[("x", 2), ("t", 1)])).unwrap(), int(1));
        assert_eq!(b.coeff(&m(&[("x", 2), ("y", 2), ("t", 2)])).unwrap(), int(2));
        assert_eq!(b.coeff(&m(&[("x", 2), ("y", 4), ("t", 3)])).unwrap(), int(4));
        // closed form x²t/(1-2y²t)
        let caps: TruncationSpec = "x:8,y:8,t:4".parse().unwrap();
        let closed = TruncatedSeries::monomial(int(2), m(&[("y", 2), ("t", 1)]), caps.clone())
            .geometric()
            .unwrap()
            .mul(&TruncatedSeries::monomial(int(1), m(&[("x", 2), ("t", 1)]), caps));
        assert_eq!(b, closed);
    }

    #[test]
    fn label_must_be_capped() {
        assert!(matches!(
            CompileContext::new("x:3".parse().unwrap()),
            Err(ClassError::UncappedLabel(_))
        ));
    }

    #[test]
    fn json_export_is_stable() {
        let e = ClassExpr::weighted(rat(1, 2), ClassExpr::power(ClassExpr::atom([("y", 1), ("t", 1)]), 2));
        let json = e.to_json();
        assert_eq!(
            json,
            r#"{"kind":"weighted","coefficient":"1/2","expr":{"kind":"power","base":{"kind":"atom","monomial":{"t":1,"y":1}},"exponent":2}}"#
        );
        assert_eq!(ClassExpr::from_json(&json).unwrap(), e);
    }
}
