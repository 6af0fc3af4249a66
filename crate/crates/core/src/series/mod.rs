//! Truncated multivariate formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] stores the nonzero coefficients of a series in a set
//! of named variables together with a [`TruncationSpec`]: a per-variable cap on
//! the retained degree. Every operation truncates eagerly, so the result of a
//! ring operation is exactly the image of the true result in the quotient by
//! the ideal `(v^(cap+1))`.
//!
//! A variable without a cap is treated as exact: series never hold an infinite
//! expansion in it, and the degree of any stored term in that variable is
//! simply whatever the computation produced. Expansions such as `exp` require
//! every term of their argument to involve at least one capped variable.

mod format;
mod substitution;
mod transcendental;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num::traits::{One, Zero};
use thiserror::Error;

use crate::rational::{factorial_rational, Rational};

pub use format::FormatError;

/// A series variable, compared and ordered by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(name: &str) -> Self {
        Var::new(name)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Exponent vector of a monomial. Absent variables have exponent 0; entries
/// are kept sorted by variable name and never hold a zero exponent.
///
/// `Ord` is graded lexicographic: lower total degree first, then the
/// monomial with the larger exponent in the alphabetically first differing
/// variable.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<(Var, u32)>);

impl MultiIndex {
    /// The empty monomial `1`.
    pub fn one() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn var(var: impl Into<Var>, exponent: u32) -> Self {
        MultiIndex::from_pairs([(var.into(), exponent)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables
    /// have their exponents added.
    pub fn from_pairs<V: Into<Var>>(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v.into()).or_default() += e;
        }
        MultiIndex(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn exponent(&self, var: &Var) -> u32 {
        self.0
            .binary_search_by(|(v, _)| v.cmp(var))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn variables(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|(v, _)| v)
    }

    /// Product of monomials (exponents added).
    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        MultiIndex(out)
    }

    /// Same monomial with the exponent of `var` replaced.
    pub fn with_exponent(&self, var: &Var, exponent: u32) -> MultiIndex {
        let mut out = self.0.clone();
        match out.binary_search_by(|(v, _)| v.cmp(var)) {
            Ok(i) if exponent == 0 => {
                out.remove(i);
            }
            Ok(i) => out[i].1 = exponent,
            Err(_) if exponent == 0 => {}
            Err(i) => out.insert(i, (var.clone(), exponent)),
        }
        MultiIndex(out)
    }

    pub fn without(&self, var: &Var) -> MultiIndex {
        self.with_exponent(var, 0)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.total_degree().cmp(&other.total_degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                // the side that still has a variable has a positive exponent
                // where the other has zero
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(ea);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `1` for the empty monomial, otherwise `t^1 x^2` (variables by name).
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}^{e}")?;
        }
        Ok(())
    }
}

/// Per-variable maximum retained degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TruncationSpec {
    caps: BTreeMap<Var, u32>,
}

impl TruncationSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<Var>, cap: u32) -> Self {
        self.caps.insert(var.into(), cap);
        self
    }

    pub fn cap(&self, var: &Var) -> Option<u32> {
        self.caps.get(var).copied()
    }

    pub fn set_cap(&mut self, var: impl Into<Var>, cap: u32) {
        self.caps.insert(var.into(), cap);
    }

    pub fn without(&self, var: &Var) -> TruncationSpec {
        let mut caps = self.caps.clone();
        caps.remove(var);
        TruncationSpec { caps }
    }

    pub fn is_empty(&self) -> bool {
        self.caps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.caps.iter().map(|(v, c)| (v, *c))
    }

    /// Common truncation of two series: the union of capped variables, with
    /// the smaller cap where both constrain the same variable.
    pub fn merge(&self, other: &TruncationSpec) -> TruncationSpec {
        let mut caps = self.caps.clone();
        for (v, &c) in &other.caps {
            caps.entry(v.clone())
                .and_modify(|old| *old = (*old).min(c))
                .or_insert(c);
        }
        TruncationSpec { caps }
    }

    pub fn allows(&self, m: &MultiIndex) -> bool {
        m.iter()
            .all(|(v, e)| self.caps.get(v).map_or(true, |&cap| e <= cap))
    }

    /// True if the monomial raises at least one capped variable.
    fn bounds(&self, m: &MultiIndex) -> bool {
        m.iter().any(|(v, e)| e > 0 && self.caps.contains_key(v))
    }
}

/// `t:4,x:8,y:8`
impl fmt::Display for TruncationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, c)) in self.caps.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}:{c}")?;
        }
        Ok(())
    }
}

/// Accepts `x:8,y:8,t:4` or `x=8,y=8,t=4`; the empty string is the empty spec.
impl FromStr for TruncationSpec {
    type Err = FormatError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut spec = TruncationSpec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, cap) = item
                .split_once([':', '='])
                .ok_or_else(|| FormatError::BadCaps(item.to_string()))?;
            let name = name.trim();
            if !is_identifier(name) {
                return Err(FormatError::BadCaps(item.to_string()));
            }
            let cap: u32 = cap
                .trim()
                .parse()
                .map_err(|_| FormatError::BadCaps(item.to_string()))?;
            spec.set_cap(name, cap);
        }
        Ok(spec)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("argument has nonzero constant term {0}")]
    NonzeroConstantTerm(Rational),
    #[error("expansion does not terminate: term {0} involves no capped variable")]
    UnboundedExpansion(MultiIndex),
    #[error("substituting a series with nonzero constant term for {var}, which is truncated at degree {cap}")]
    DivergentSubstitution { var: Var, cap: u32 },
    #[error("odd exponent of {var} in monomial {monomial}")]
    OddExponent { var: Var, monomial: MultiIndex },
    #[error("monomial {monomial} lies outside truncation {truncation}")]
    OutOfTruncation {
        monomial: MultiIndex,
        truncation: TruncationSpec,
    },
}

/// A multivariate power series known exactly up to its truncation caps.
///
/// Derived equality is structural (caps and terms). Use
/// [`TruncatedSeries::eq_truncated`] to compare under a common truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    truncation: TruncationSpec,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl TruncatedSeries {
    pub fn zero(truncation: TruncationSpec) -> Self {
        TruncatedSeries {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(truncation: TruncationSpec) -> Self {
        Self::constant(Rational::one(), truncation)
    }

    pub fn constant(c: Rational, truncation: TruncationSpec) -> Self {
        Self::monomial(c, MultiIndex::one(), truncation)
    }

    pub fn monomial(c: Rational, m: MultiIndex, truncation: TruncationSpec) -> Self {
        let mut s = Self::zero(truncation);
        s.accumulate(m, c);
        s
    }

    /// The series `var`.
    pub fn variable(var: impl Into<Var>, truncation: TruncationSpec) -> Self {
        Self::monomial(Rational::one(), MultiIndex::var(var, 1), truncation)
    }

    /// Sums the given terms, dropping zeros and monomials outside the caps.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (MultiIndex, Rational)>,
        truncation: TruncationSpec,
    ) -> Self {
        let mut s = Self::zero(truncation);
        for (m, c) in terms {
            s.accumulate(m, c);
        }
        s
    }

    fn accumulate(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() || !self.truncation.allows(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn truncation(&self) -> &TruncationSpec {
        &self.truncation
    }

    /// Nonzero terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&MultiIndex::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Highest exponent of `var` among stored terms (0 for the zero series).
    pub fn degree_in(&self, var: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Re-truncates to the merge of the current caps and `caps`.
    pub fn truncate(&self, caps: &TruncationSpec) -> TruncatedSeries {
        let truncation = self.truncation.merge(caps);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| truncation.allows(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries { truncation, terms }
    }

    /// Exact equality of both series after truncating to their common caps.
    pub fn eq_truncated(&self, other: &TruncatedSeries) -> bool {
        let caps = self.truncation.merge(&other.truncation);
        self.truncate(&caps).terms == other.truncate(&caps).terms
    }

    /// Stored coefficient of `m`; zero if absent.
    pub fn coeff(&self, m: &MultiIndex) -> Result<Rational, SeriesError> {
        if !self.truncation.allows(m) {
            return Err(SeriesError::OutOfTruncation {
                monomial: m.clone(),
                truncation: self.truncation.clone(),
            });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(Rational::zero))
    }

    /// Number of labelled structures with weight `m`: `n! · coeff(m)` where
    /// `n` is the exponent of the label variable.
    pub fn egf_count(&self, m: &MultiIndex, label: &Var) -> Result<Rational, SeriesError> {
        Ok(self.coeff(m)? * factorial_rational(m.exponent(label)))
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.truncation.merge(&other.truncation));
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            truncation: self.truncation.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Cauchy product; monomials above any cap are discarded.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let truncation = self.truncation.merge(&other.truncation);
        let mut out = TruncatedSeries::zero(truncation);
        let left: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| out.truncation.allows(m))
            .collect();
        let right: Vec<_> = other
            .terms
            .iter()
            .filter(|(m, _)| out.truncation.allows(m))
            .collect();
        for (ma, ca) in &left {
            for (mb, cb) in &right {
                let m = ma.mul(mb);
                if out.truncation.allows(&m) {
                    out.accumulate(m, *ca * *cb);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        if c.is_zero() {
            return TruncatedSeries::zero(self.truncation.clone());
        }
        TruncatedSeries {
            truncation: self.truncation.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `c · m`.
    pub fn mul_monomial(&self, c: &Rational, m: &MultiIndex) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.truncation.clone());
        for (mm, v) in &self.terms {
            out.accumulate(mm.mul(m), v * c);
        }
        out
    }

    /// `self^k` by repeated multiplication; `self^0 = 1`.
    pub fn pow(&self, k: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(self.truncation.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `var`.
    ///
    /// The caps are unchanged. If `var` is capped at `c`, the coefficient of
    /// `var^c` in the result would depend on the (discarded) `var^(c+1)`
    /// coefficient of the input, so only degrees below `c` are guaranteed
    /// exact unless the input is known to be polynomial of degree `≤ c`.
    pub fn differentiate(&self, var: &Var) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.truncation.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.accumulate(m.with_exponent(var, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Formal antiderivative in `var` with zero constant of integration.
    pub fn integrate(&self, var: &Var) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.truncation.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(var) + 1;
            out.accumulate(m.with_exponent(var, e), c / Rational::from_integer(e.into()));
        }
        out
    }

    /// Checks that powers of `self` eventually vanish under the caps.
    fn ensure_nilpotent(&self) -> Result<(), SeriesError> {
        let c = self.constant_term();
        if !c.is_zero() {
            return Err(SeriesError::NonzeroConstantTerm(c));
        }
        match self.terms.keys().find(|m| !self.truncation.bounds(m)) {
            Some(m) => Err(SeriesError::UnboundedExpansion(m.clone())),
            None => Ok(()),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn caps(spec: &str) -> TruncationSpec {
        spec.parse().unwrap()
    }

    fn x() -> TruncatedSeries {
        TruncatedSeries::variable("x", caps("x:6"))
    }

    #[test]
    fn grlex_order() {
        let x2 = MultiIndex::var("x", 2);
        let xy = MultiIndex::from_pairs([("x", 1), ("y", 1)]);
        let y2 = MultiIndex::var("y", 2);
        let t = MultiIndex::var("t", 1);
        let mut v = vec![y2.clone(), t.clone(), xy.clone(), MultiIndex::one(), x2.clone()];
        v.sort();
        assert_eq!(v, vec![MultiIndex::one(), t, x2, xy, y2]);
    }

    #[test]
    fn monomial_helpers() {
        let m = MultiIndex::from_pairs([("x", 2), ("t", 1), ("x", 1), ("y", 0)]);
        assert_eq!(m.exponent(&"x".into()), 3);
        assert_eq!(m.exponent(&"y".into()), 0);
        assert_eq!(m.to_string(), "t^1 x^3");
        assert_eq!(m.without(&"x".into()), MultiIndex::var("t", 1));
    }

    #[test]
    fn caps_parse_and_merge() {
        let a = caps("x:6,y=3");
        let b = caps("x:4,t:2");
        assert_eq!(a.merge(&b), caps("t:2,x:4,y:3"));
        assert_eq!(a.merge(&b).to_string(), "t:2,x:4,y:3");
        assert!("x:".parse::<TruncationSpec>().is_err());
        assert!("1x:3".parse::<TruncationSpec>().is_err());
    }

    #[test]
    fn add_cancels() {
        let one = TruncatedSeries::one(caps("x:6"));
        let a = &one + &x();
        let b = &one - &x();
        assert_eq!(&a + &b, TruncatedSeries::constant(int(2), caps("x:6")));
    }

    #[test]
    fn add_zero_identity() {
        let e = TruncatedSeries::variable("x", caps("x:4,t:4"))
            .mul(&TruncatedSeries::variable("t", caps("x:4,t:4")))
            .exp_series()
            .unwrap();
        let zero = TruncatedSeries::zero(caps("x:4,t:4"));
        assert_eq!(&e + &zero, e);
    }

    #[test]
    fn difference_of_squares() {
        let one = TruncatedSeries::one(caps("x:6"));
        let p = (&one + &x()).mul(&(&one - &x()));
        let expected = TruncatedSeries::from_terms(
            [(MultiIndex::one(), int(1)), (MultiIndex::var("x", 2), int(-1))],
            caps("x:6"),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn product_respects_caps() {
        let p = x().pow(7);
        assert!(p.is_zero());
        assert_eq!(x().pow(6).len(), 1);
    }

    #[test]
    fn scale_cases() {
        let a = &TruncatedSeries::one(caps("x:6")) + &x();
        assert!(a.scale(&int(0)).is_zero());
        assert!(a.scale(&int(-1)).add(&a).is_zero());
        let c = caps("x:4,y:4,t:4");
        let xyt = TruncatedSeries::monomial(
            int(2),
            MultiIndex::from_pairs([("x", 1), ("y", 1), ("t", 1)]),
            c.clone(),
        );
        let got = xyt.mul(&xyt).scale(&rat(1, 2));
        let expected = TruncatedSeries::monomial(
            int(2),
            MultiIndex::from_pairs([("x", 2), ("y", 2), ("t", 2)]),
            c,
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn derivative_of_power() {
        let d = x().pow(5).differentiate(&"x".into());
        assert_eq!(d, TruncatedSeries::monomial(int(5), MultiIndex::var("x", 4), caps("x:6")));
    }

    #[test]
    fn derivative_eigenvector() {
        let c = caps("x:6,t:6");
        let xt = TruncatedSeries::monomial(int(1), MultiIndex::from_pairs([("x", 1), ("t", 1)]), c.clone());
        let e = xt.exp_series().unwrap();
        let d = e.differentiate(&"x".into());
        let te = e.mul(&TruncatedSeries::variable("t", c));
        // t·e^{xt} loses only the top x-degree, which d/dx cannot recover
        for (m, v) in te.terms() {
            if m.exponent(&"t".into()) <= 6 && m.exponent(&"x".into()) < 6 {
                assert_eq!(&d.coeff(m).unwrap(), v, "at {m}");
            }
        }
        assert_eq!(d.coeff(&MultiIndex::from_pairs([("x", 2), ("t", 3)])).unwrap(), rat(1, 2));
    }

    #[test]
    fn coeff_out_of_truncation() {
        let err = x().coeff(&MultiIndex::var("x", 7)).unwrap_err();
        assert!(matches!(err, SeriesError::OutOfTruncation { .. }));
        assert_eq!(x().coeff(&MultiIndex::var("y", 9)).unwrap(), int(0));
    }

    #[test]
    fn egf_count_single_set_of_doubletons() {
        let c = caps("x:8,t:4");
        let x2t = TruncatedSeries::monomial(int(1), MultiIndex::from_pairs([("x", 2), ("t", 1)]), c);
        let e = x2t.exp_series().unwrap();
        let m = MultiIndex::from_pairs([("x", 4), ("t", 2)]);
        assert_eq!(e.egf_count(&m, &"t".into()).unwrap(), int(1));
    }

    #[test]
    fn integrate_inverts_derivative_on_zero_constant() {
        let v: Var = "x".into();
        let f = x().pow(3).add(&x());
        assert_eq!(f.differentiate(&v).integrate(&v), f);
    }
}
