//! Canonical text and JSON forms of a series.
//!
//! Text form, one item per line:
//!
//! ```text
//! truncation t:4,x:8
//! 1/1
//! 1/1 t^1 x^2
//! 1/2 t^2 x^4
//! ```
//!
//! Terms appear in graded-lexicographic order with every coefficient written
//! as `num/den` in lowest terms. JSON form:
//! `{"truncation": {"t": 4}, "terms": [{"exponents": {"t": 1}, "num": "1", "den": "1"}]}`.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{is_identifier, MultiIndex, TruncatedSeries, TruncationSpec, Var};
use crate::rational::{to_fraction_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("invalid truncation caps {0:?}")]
    BadCaps(String),
    #[error("line {line}: {message}")]
    BadText { line: usize, message: String },
    #[error("invalid series JSON: {0}")]
    BadJson(String),
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("truncation")?;
        if !self.truncation.is_empty() {
            write!(f, " {}", self.truncation)?;
        }
        for (m, c) in &self.terms {
            write!(f, "\n{}", to_fraction_string(c))?;
            if !m.is_one() {
                write!(f, " {m}")?;
            }
        }
        Ok(())
    }
}

impl TruncatedSeries {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<TruncatedSeries, FormatError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(FormatError::BadText {
            line: 1,
            message: "missing truncation header".into(),
        })?;
        let caps = header
            .trim()
            .strip_prefix("truncation")
            .ok_or(FormatError::BadText {
                line: 1,
                message: "expected `truncation`".into(),
            })?
            .parse::<TruncationSpec>()?;

        let mut series = TruncatedSeries::zero(caps);
        for (index, line) in lines {
            let bad = |message: String| FormatError::BadText {
                line: index + 1,
                message,
            };
            let mut fields = line.split_whitespace();
            let coeff = fields.next().unwrap_or_default();
            let (num, den) = coeff
                .split_once('/')
                .ok_or_else(|| bad(format!("coefficient {coeff:?} is not num/den")))?;
            let num: BigInt = num.parse().map_err(|_| bad(format!("bad numerator {num:?}")))?;
            let den: BigInt = den.parse().map_err(|_| bad(format!("bad denominator {den:?}")))?;
            if den.is_zero() || den.is_negative() {
                return Err(bad("denominator must be positive".into()));
            }
            let mut pairs = Vec::new();
            for field in fields {
                let (v, e) = field
                    .split_once('^')
                    .ok_or_else(|| bad(format!("expected var^exp, got {field:?}")))?;
                if !is_identifier(v) {
                    return Err(bad(format!("bad variable name {v:?}")));
                }
                let e: u32 = e.parse().map_err(|_| bad(format!("bad exponent {e:?}")))?;
                pairs.push((Var::new(v), e));
            }
            let m = MultiIndex::from_pairs(pairs);
            if !series.truncation.allows(&m) {
                return Err(bad(format!("monomial {m} exceeds truncation")));
            }
            series.accumulate(m, Rational::new(num, den));
        }
        Ok(series)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SeriesJson::from(self)).expect("series JSON is always serialisable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("series JSON is always serialisable")
    }

    pub fn from_json(text: &str) -> Result<TruncatedSeries, FormatError> {
        let parsed: SeriesJson =
            serde_json::from_str(text).map_err(|e| FormatError::BadJson(e.to_string()))?;
        parsed.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: BTreeMap<String, u32>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    truncation: BTreeMap<String, u32>,
    terms: Vec<TermJson>,
}

impl From<&TruncatedSeries> for SeriesJson {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesJson {
            truncation: s
                .truncation
                .iter()
                .map(|(v, c)| (v.to_string(), c))
                .collect(),
            terms: s
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exponents: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = FormatError;

    fn try_from(json: SeriesJson) -> Result<Self, FormatError> {
        let mut caps = TruncationSpec::new();
        for (v, c) in json.truncation {
            if !is_identifier(&v) {
                return Err(FormatError::BadJson(format!("bad variable name {v:?}")));
            }
            caps.set_cap(v.as_str(), c);
        }
        let mut series = TruncatedSeries::zero(caps);
        for term in json.terms {
            let num: BigInt = term
                .num
                .parse()
                .map_err(|_| FormatError::BadJson(format!("bad numerator {:?}", term.num)))?;
            let den: BigInt = term
                .den
                .parse()
                .map_err(|_| FormatError::BadJson(format!("bad denominator {:?}", term.den)))?;
            if den.is_zero() || den.is_negative() {
                return Err(FormatError::BadJson("denominator must be positive".into()));
            }
            let m = MultiIndex::from_pairs(term.exponents.iter().map(|(v, e)| (v.as_str(), *e)));
            if !series.truncation.allows(&m) {
                return Err(FormatError::BadJson(format!("monomial {m} exceeds truncation")));
            }
            series.accumulate(m, Rational::new(num, den));
        }
        Ok(series)
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        if !is_identifier(&name) {
            return Err(serde::de::Error::custom(format!("bad variable name {name:?}")));
        }
        Ok(Var::new(&name))
    }
}

/// Serialised as an object `{var: exponent}`.
impl Serialize for MultiIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.iter().map(|(v, e)| (v.as_str(), e)))
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<Var, u32>::deserialize(d)?;
        Ok(MultiIndex::from_pairs(map))
    }
}

/// Serialised as an object `{var: cap}`.
impl Serialize for TruncationSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.iter().map(|(v, c)| (v.as_str(), c)))
    }
}

impl<'de> Deserialize<'de> for TruncationSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<Var, u32>::deserialize(d)?;
        Ok(TruncationSpec { caps: map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sample() -> TruncatedSeries {
        let caps: TruncationSpec = "t:4,x:8".parse().unwrap();
        TruncatedSeries::monomial(rat(1, 1), MultiIndex::from_pairs([("x", 2), ("t", 1)]), caps)
            .exp_series()
            .unwrap()
            .scale(&rat(-3, 7))
    }

    #[test]
    fn text_layout() {
        let text = sample().to_text();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("truncation t:4,x:8"));
        assert_eq!(lines.next(), Some("-3/7"));
        assert_eq!(lines.next(), Some("-3/7 t^1 x^2"));
        assert_eq!(lines.next(), Some("-3/14 t^2 x^4"));
    }

    #[test]
    fn text_and_json_round_trip() {
        let s = sample();
        assert_eq!(TruncatedSeries::from_text(&s.to_text()).unwrap(), s);
        let json = s.to_json();
        assert_eq!(TruncatedSeries::from_json(&json).unwrap(), s);
        assert_eq!(TruncatedSeries::from_json(&json).unwrap().to_json(), json);
    }

    #[test]
    fn zero_series_text() {
        let z = TruncatedSeries::zero(TruncationSpec::new());
        assert_eq!(z.to_text(), "truncation");
        assert_eq!(TruncatedSeries::from_text(&z.to_text()).unwrap(), z);
    }

    #[test]
    fn rejects_malformed() {
        assert!(TruncatedSeries::from_text("1/1").is_err());
        assert!(TruncatedSeries::from_text("truncation x:2\n1/0 x^1").is_err());
        assert!(TruncatedSeries::from_text("truncation x:2\n1/1 x^3").is_err());
        assert!(TruncatedSeries::from_json("{\"truncation\":{},\"terms\":[{\"exponents\":{},\"num\":\"1\",\"den\":\"-2\"}]}").is_err());
    }
}
