//! Syntax tree and pretty-printer. Printing inserts exactly the parentheses
//! the grammar needs, so a printed script reparses to an equal tree.

use std::fmt;

use speckit_core::identities::Identity;
use speckit_core::rational::to_compact_string;
use speckit_core::{Rational, TruncationSpec, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    /// `exp(f)`
    Exp,
    /// `loginv(f) = log 1/(1 − f)`
    LogInv,
    /// `seqinv(f) = 1/(1 − f)`
    SeqInv,
    /// `powfrac(f, p) = (1 + f)^p`
    PowFrac,
    /// `subst(f, x, g) = f(x := g)`
    Subst,
    /// `sqsubst(f, y, c)` rewrites `y^(2k)` as `c^k`
    SqSubst,
    /// `deriv(f, x)`
    Deriv,
    /// `egf(class)`
    Egf,
    /// `oracle(n)` or `oracle(n, u, v)`
    Oracle,
}

/// Shape of one function argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Series,
    Class,
    Variable,
    Rational,
    Integer,
}

impl Func {
    pub const ALL: [Func; 9] = [
        Func::Exp,
        Func::LogInv,
        Func::SeqInv,
        Func::PowFrac,
        Func::Subst,
        Func::SqSubst,
        Func::Deriv,
        Func::Egf,
        Func::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::LogInv => "loginv",
            Func::SeqInv => "seqinv",
            Func::PowFrac => "powfrac",
            Func::Subst => "subst",
            Func::SqSubst => "sqsubst",
            Func::Deriv => "deriv",
            Func::Egf => "egf",
            Func::Oracle => "oracle",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Accepted argument lists.
    pub fn signatures(self) -> &'static [&'static [Param]] {
        use Param::*;
        match self {
            Func::Exp | Func::LogInv | Func::SeqInv => &[&[Series]],
            Func::PowFrac => &[&[Series, Rational]],
            Func::Subst => &[&[Series, Variable, Series]],
            Func::SqSubst => &[&[Series, Variable, Rational]],
            Func::Deriv => &[&[Series, Variable]],
            Func::Egf => &[&[Class]],
            Func::Oracle => &[&[Integer], &[Integer, Variable, Variable]],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construct {
    Set,
    Seq,
    Cyc,
    /// `SUBST(outer, x, inner)`
    Subst,
}

impl Construct {
    pub fn name(self) -> &'static str {
        match self {
            Construct::Set => "SET",
            Construct::Seq => "SEQ",
            Construct::Cyc => "CYC",
            Construct::Subst => "SUBST",
        }
    }

    pub fn from_name(name: &str) -> Option<Construct> {
        [Construct::Set, Construct::Seq, Construct::Cyc, Construct::Subst]
            .into_iter()
            .find(|c| c.name() == name)
    }
}

/// Operator applied with `NAME[args] @ operand`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    /// `D[x->y]`: `y·∂ₓ`
    Singleton { src: Var, dst: Var },
    /// `SUBSET[x->y, k]`: `(y∂ₓ)^k / k!`
    Subset { src: Var, dst: Var, k: u32 },
    /// `EXP_SHIFT[x->y]`: `exp(y∂ₓ)`
    ExpShift { src: Var, dst: Var },
    /// `DOUBLETON[x->y]`: `½(y∂ₓ)²`
    Doubleton { src: Var, dst: Var },
    /// `DOUBLETON_K[x->y, k]`: `(½(y∂ₓ)²)^k / k!`
    DoubletonK { src: Var, dst: Var, k: u32 },
    /// `EXP_HALF_SQ[x->y]`: `exp(½(y∂ₓ)²)`
    ExpHalfSquare { src: Var, dst: Var },
    /// `FLOW[q, v, x, lambda]`: `exp(λ(q∂ₓ + v))`
    Flow {
        q: Box<Expr>,
        v: Box<Expr>,
        x: Var,
        lambda: Var,
    },
}

impl Operator {
    pub const NAMES: [&'static str; 7] = ["D", "SUBSET", "EXP_SHIFT", "DOUBLETON", "DOUBLETON_K", "EXP_HALF_SQ", "FLOW"];

    pub fn name(&self) -> &'static str {
        match self {
            Operator::Singleton { .. } => "D",
            Operator::Subset { .. } => "SUBSET",
            Operator::ExpShift { .. } => "EXP_SHIFT",
            Operator::Doubleton { .. } => "DOUBLETON",
            Operator::DoubletonK { .. } => "DOUBLETON_K",
            Operator::ExpHalfSquare { .. } => "EXP_HALF_SQ",
            Operator::Flow { .. } => "FLOW",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative literal `n` or `n/d`.
    Num(Rational),
    /// Formal variable.
    Var(Var),
    /// Name bound by an earlier `let`.
    Ref(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Vec<Expr>),
    Class(Construct, Vec<Expr>),
    Apply(Box<Operator>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Let {
        name: String,
        value: Expr,
    },
    Check {
        label: Option<String>,
        lhs: Expr,
        rhs: Expr,
        caps: TruncationSpec,
    },
    Emit {
        expr: Expr,
        caps: Option<TruncationSpec>,
        format: Format,
    },
    Verify {
        identity: Identity,
        caps: Option<TruncationSpec>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

// Binding strength, loosest first: sums, products, prefix minus and
// operator application, powers, atoms.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const PREFIX: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => SUM,
            Expr::Mul(..) => PRODUCT,
            Expr::Neg(_) | Expr::Apply(..) => PREFIX,
            Expr::Pow(..) => POWER,
            Expr::Num(r) if !r.is_integer() => POWER,
            _ => ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(r) => f.write_str(&to_compact_string(r)),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Ref(name) => f.write_str(name),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, PREFIX)
            }
            Expr::Add(a, b) => {
                a.write_at(f, SUM)?;
                write!(f, " + ")?;
                b.write_at(f, PRODUCT)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, SUM)?;
                write!(f, " - ")?;
                b.write_at(f, PRODUCT)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, PRODUCT)?;
                write!(f, "*")?;
                b.write_at(f, PREFIX)
            }
            Expr::Pow(base, k) => {
                base.write_at(f, ATOM)?;
                write!(f, "^{k}")
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                write_list(f, args)?;
                write!(f, ")")
            }
            Expr::Class(c, args) => {
                write!(f, "{}(", c.name())?;
                write_list(f, args)?;
                write!(f, ")")
            }
            Expr::Apply(op, operand) => {
                write!(f, "{op} @ ")?;
                operand.write_at(f, PREFIX)
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, args: &[Expr]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        a.write_at(f, 0)?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.name())?;
        match self {
            Operator::Singleton { src, dst }
            | Operator::ExpShift { src, dst }
            | Operator::Doubleton { src, dst }
            | Operator::ExpHalfSquare { src, dst } => write!(f, "{src}->{dst}")?,
            Operator::Subset { src, dst, k } | Operator::DoubletonK { src, dst, k } => {
                write!(f, "{src}->{dst}, {k}")?
            }
            Operator::Flow { q, v, x, lambda } => write!(f, "{q}, {v}, {x}, {lambda}")?,
        }
        write!(f, "]")
    }
}

fn write_caps(f: &mut fmt::Formatter<'_>, caps: &TruncationSpec) -> fmt::Result {
    write!(f, " upto {caps}")
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Let { name, value } => write!(f, "let {name} = {value};"),
            Stmt::Check { label, lhs, rhs, caps } => {
                write!(f, "check ")?;
                if let Some(label) = label {
                    write!(f, "{} ", quote(label))?;
                }
                write!(f, "{lhs} == {rhs}")?;
                write_caps(f, caps)?;
                write!(f, ";")
            }
            Stmt::Emit { expr, caps, format } => {
                write!(f, "emit {expr}")?;
                if let Some(caps) = caps {
                    write_caps(f, caps)?;
                }
                if *format == Format::Json {
                    write!(f, " as json")?;
                }
                write!(f, ";")
            }
            Stmt::Verify { identity, caps } => {
                write!(f, "verify {identity}")?;
                if let Some(caps) = caps {
                    write_caps(f, caps)?;
                }
                write!(f, ";")
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
