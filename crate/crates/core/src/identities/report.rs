use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::rational::{self, factorial_rational, Rational};
use crate::series::{MultiIndex, TruncatedSeries, TruncationSpec, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One coefficient where two routes disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Which comparison produced it, e.g. `operator vs enumeration`.
    pub context: String,
    pub monomial: MultiIndex,
    #[serde(with = "rational::serde_string")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_string")]
    pub rhs: Rational,
}

/// A known misprint reproduced and measured against ground truth.
///
/// `mismatches` hold structure counts (`n!·coefficient` for the label
/// exponent `n`): `lhs` is the enumerated count, `rhs` the misprinted form's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Erratum {
    pub label: String,
    pub detail: String,
    /// Lowest label degree first, then graded-lex.
    pub first_mismatch: Option<Mismatch>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub identity: String,
    pub caps: TruncationSpec,
    pub status: Status,
    pub mismatches: Vec<Mismatch>,
    pub errata: Vec<Erratum>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports are always serialisable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are always serialisable")
    }

    /// JSON with `wallTimeMs` removed, for reproducibility comparisons.
    pub fn to_json_untimed(&self) -> String {
        let mut v = self.to_json_value();
        if let Some(obj) = v.as_object_mut() {
            obj.remove("wallTimeMs");
        }
        serde_json::to_string(&v).expect("reports are always serialisable")
    }
}

/// Coefficientwise differences of `lhs` and `rhs` after truncating both to
/// `caps` merged with their own caps, in graded-lex order.
pub fn diff(context: &str, lhs: &TruncatedSeries, rhs: &TruncatedSeries, caps: &TruncationSpec) -> Vec<Mismatch> {
    let common = caps.merge(lhs.truncation()).merge(rhs.truncation());
    let (l, r) = (lhs.truncate(&common), rhs.truncate(&common));
    let mut monomials: Vec<&MultiIndex> = l.terms().map(|(m, _)| m).chain(r.terms().map(|(m, _)| m)).collect();
    monomials.sort();
    monomials.dedup();
    monomials
        .into_iter()
        .filter_map(|m| {
            let (a, b) = (l.coeff(m).ok()?, r.coeff(m).ok()?);
            (a != b).then(|| Mismatch {
                context: context.to_string(),
                monomial: m.clone(),
                lhs: a,
                rhs: b,
            })
        })
        .collect()
}

/// Report for a single comparison of `lhs` against `rhs` under `caps`.
pub fn compare_report(
    identity: &str,
    context: &str,
    lhs: &TruncatedSeries,
    rhs: &TruncatedSeries,
    caps: &TruncationSpec,
) -> VerificationReport {
    let mut report = ReportBuilder::new(identity, caps);
    report.compare(context, lhs, rhs, caps);
    report.finish()
}

/// Accumulates comparisons for one identity.
pub(crate) struct ReportBuilder {
    identity: String,
    caps: TruncationSpec,
    mismatches: Vec<Mismatch>,
    errata: Vec<Erratum>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(identity: &str, caps: &TruncationSpec) -> Self {
        ReportBuilder {
            identity: identity.to_string(),
            caps: caps.clone(),
            mismatches: Vec::new(),
            errata: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn compare(&mut self, context: &str, lhs: &TruncatedSeries, rhs: &TruncatedSeries, caps: &TruncationSpec) {
        self.mismatches.extend(diff(context, lhs, rhs, caps));
    }

    pub fn expect(&mut self, context: &str, monomial: &MultiIndex, got: Rational, expected: Rational) {
        if got != expected {
            self.mismatches.push(Mismatch {
                context: context.to_string(),
                monomial: monomial.clone(),
                lhs: got,
                rhs: expected,
            });
        }
    }

    /// Records an erratum comparing a misprinted series against ground truth
    /// by structure counts in the label variable.
    pub fn erratum(
        &mut self,
        label: &str,
        detail: &str,
        truth: &TruncatedSeries,
        misprint: &TruncatedSeries,
        caps: &TruncationSpec,
        label_var: &Var,
    ) {
        let to_count = |m: Mismatch| {
            let n = factorial_rational(m.monomial.exponent(label_var));
            Mismatch {
                lhs: m.lhs * &n,
                rhs: m.rhs * &n,
                ..m
            }
        };
        let mut mismatches: Vec<Mismatch> = diff(label, truth, misprint, caps).into_iter().map(to_count).collect();
        mismatches.sort_by(|a, b| {
            (a.monomial.exponent(label_var), &a.monomial).cmp(&(b.monomial.exponent(label_var), &b.monomial))
        });
        self.errata.push(Erratum {
            label: label.to_string(),
            detail: detail.to_string(),
            first_mismatch: mismatches.first().cloned(),
            mismatches,
        });
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport {
            identity: self.identity,
            caps: self.caps,
            status: if self.mismatches.is_empty() { Status::Pass } else { Status::Fail },
            mismatches: self.mismatches,
            errata: self.errata,
            wall_time_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

/// Human-readable summary: one row per report, then mismatch and erratum
/// details (at most `limit` mismatch lines per report).
pub fn render_table(reports: &[VerificationReport], limit: usize) -> String {
    let mut out = String::new();
    let width = reports.iter().map(|r| r.identity.len()).max().unwrap_or(0).max(8);
    let _ = writeln!(
        out,
        "{:<width$} {:<6} {:>10} {:>6} {:>9}  caps",
        "identity", "status", "mismatches", "errata", "time(ms)"
    );
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        let _ = writeln!(
            out,
            "{:<width$} {:<6} {:>10} {:>6} {:>9}  {}",
            r.identity,
            status,
            r.mismatches.len(),
            r.errata.len(),
            r.wall_time_ms,
            r.caps
        );
    }
    for r in reports {
        for m in r.mismatches.iter().take(limit) {
            let _ = writeln!(
                out,
                "  {} [{}] at {}: {} != {}",
                r.identity,
                m.context,
                m.monomial,
                rational::to_compact_string(&m.lhs),
                rational::to_compact_string(&m.rhs)
            );
        }
        if r.mismatches.len() > limit {
            let _ = writeln!(out, "  {} ... {} more", r.identity, r.mismatches.len() - limit);
        }
        for e in &r.errata {
            let _ = write!(out, "  {} erratum {}: {}", r.identity, e.label, e.detail);
            match &e.first_mismatch {
                Some(m) => {
                    let _ = writeln!(
                        out,
                        " (first mismatch at {}: count {} vs {}, {} mismatches)",
                        m.monomial,
                        rational::to_compact_string(&m.lhs),
                        rational::to_compact_string(&m.rhs),
                        e.mismatches.len()
                    );
                }
                None => {
                    let _ = writeln!(out, " (no mismatch within caps)");
                }
            }
        }
    }
    out
}
