//! The doubleton operator on `exp(x²t)`: operator route, closed form and
//! enumeration, plus the split into closed and open chains.

use num::traits::One;

use super::report::{ReportBuilder, VerificationReport};
use super::IdentityError;
use crate::class::{compile, compile_open_chains, directed_closed_chain_class, ClassExpr, CompileContext};
use crate::operators::apply_exp_half_square;
use crate::oracle::Oracle;
use crate::rational::{factorial, int, rat, Rational};
use crate::series::{MultiIndex, SeriesError, TruncatedSeries, TruncationSpec, Var};

/// Largest chain size covered by the census.
pub const CHAIN_CENSUS_MAX: usize = 6;

fn series(terms: &[(Rational, &[(&str, u32)])], caps: &TruncationSpec) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        terms
            .iter()
            .map(|(c, m)| (MultiIndex::from_pairs(m.iter().copied()), c.clone())),
        caps.clone(),
    )
}

/// `2y²t`
fn two_y2_t(caps: &TruncationSpec) -> TruncatedSeries {
    series(&[(int(2), &[("y", 2), ("t", 1)])], caps)
}

/// `exp(x²t / (1 − 2y²t))`
fn open_chain_sets(caps: &TruncationSpec) -> Result<TruncatedSeries, SeriesError> {
    let x2t = series(&[(int(1), &[("x", 2), ("t", 1)])], caps);
    x2t.mul(&two_y2_t(caps).geometric()?).exp_series()
}

/// `(1 − 2y²t)^{−1/2} · exp(x²t / (1 − 2y²t))`
pub fn closed_form(caps: &TruncationSpec) -> Result<TruncatedSeries, SeriesError> {
    let prefactor = two_y2_t(caps).neg().pow_frac(&rat(-1, 2))?;
    Ok(prefactor.mul(&open_chain_sets(caps)?))
}

/// The same product with the prefactor `1/(1 − 2y²t)`, i.e. closed chains
/// counted by `Cyc(2Y²T)` without the halving.
pub fn printed_prefactor_form(caps: &TruncationSpec) -> Result<TruncatedSeries, SeriesError> {
    Ok(two_y2_t(caps).geometric()?.mul(&open_chain_sets(caps)?))
}

/// `Σ_k (1/k!)(y∂ₓ)^{2k} exp(x²t)`: the operator expansion with the `(½)^k`
/// dropped.
pub fn unhalved_doubleton_sum(caps: &TruncationSpec) -> Result<TruncatedSeries, SeriesError> {
    let (x, y) = (Var::new("x"), Var::new("y"));
    let source = series(&[(int(1), &[("x", 2), ("t", 1)])], caps).exp_series()?;
    let y2 = MultiIndex::var(y, 2);
    let mut sum = source.clone();
    let mut term = source;
    let mut k = 1i64;
    loop {
        term = term
            .differentiate(&x)
            .differentiate(&x)
            .mul_monomial(&Rational::new(1.into(), k.into()), &y2);
        if term.is_zero() {
            return Ok(sum);
        }
        sum = sum.add(&term);
        k += 1;
    }
}

fn double_factorial_odd(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(2 * i as i64 - 1))
}

/// Three routes to `exp(½(y∂ₓ)²) exp(x²t)`: the operator, the closed form
/// and enumeration of partial matchings on doubletons. Both known misprints
/// are measured against the enumeration and recorded as errata.
///
/// The operator sees `x^{2n}tⁿ` only for `2n` up to the `x` cap, and the
/// enumeration stops at the oracle's size, so comparisons run with the `t`
/// cap lowered to half the `x` cap.
pub fn verify_glaisher(caps: &TruncationSpec, oracle: &Oracle) -> Result<VerificationReport, IdentityError> {
    let mut report = ReportBuilder::new("glaisher", caps);
    let (x, y, t) = (Var::new("x"), Var::new("y"), Var::new("t"));
    let ctx = CompileContext::new(caps.clone())?;

    let mut effective = caps.clone();
    let t_cap = match (caps.cap(&t), caps.cap(&x)) {
        (Some(tc), Some(xc)) => tc.min(xc / 2),
        (Some(tc), None) => tc,
        (None, Some(xc)) => xc / 2,
        (None, None) => oracle.max_n() as u32,
    };
    effective.set_cap(t.clone(), t_cap);

    let source = compile(&ClassExpr::set(ClassExpr::atom([("x", 2), ("t", 1)])), &ctx)?;
    let operator = apply_exp_half_square(&source, &x, &y);
    let closed = closed_form(&effective)?;
    let enumerated = oracle.oracle_egf(t_cap as usize, None)?;

    report.compare("operator vs closed form", &operator, &closed, &effective);
    report.compare("operator vs enumeration", &operator, &enumerated, &effective);
    report.compare("closed form vs enumeration", &closed, &enumerated, &effective);

    let anchors: [(&[(&str, u32)], i64); 3] = [
        (&[("x", 4), ("t", 2)], 1),
        (&[("x", 2), ("y", 2), ("t", 2)], 6),
        (&[("y", 4), ("t", 2)], 3),
    ];
    for (pairs, count) in anchors {
        let m = MultiIndex::from_pairs(pairs.iter().copied());
        if !effective.allows(&m) {
            continue;
        }
        for (route, s) in [("operator", &operator), ("closed form", &closed), ("enumeration", &enumerated)] {
            report.expect(&format!("{route} count at {m}"), &m, s.egf_count(&m, &t)?, int(count));
        }
    }

    // perfect matchings: the x-free slice counts (2n−1)!!
    let slice_max = t_cap.min(caps.cap(&y).map_or(t_cap, |c| c / 2));
    for n in 0..=slice_max {
        let m = MultiIndex::from_pairs([(y.clone(), 2 * n), (t.clone(), n)]);
        let expected = double_factorial_odd(n);
        for (route, s) in [("operator", &operator), ("closed form", &closed), ("enumeration", &enumerated)] {
            report.expect(&format!("{route}: perfect matchings of {n} doubletons"), &m, s.egf_count(&m, &t)?, expected.clone());
        }
    }

    report.erratum(
        "printed-prefactor",
        "prefactor 1/(1-2y^2 t) in place of (1-2y^2 t)^(-1/2); counts are enumeration vs printed form",
        &enumerated,
        &printed_prefactor_form(&effective)?,
        &effective,
        &t,
    );
    report.erratum(
        "unhalved-doubleton-sum",
        "sum of (y d/dx)^(2k)/k! without the (1/2)^k; counts are enumeration vs unhalved sum",
        &enumerated,
        &unhalved_doubleton_sum(&effective)?,
        &effective,
        &t,
    );
    Ok(report.finish())
}

/// Closed-chain EGF `½·log 1/(1 − 2y²t)`.
fn closed_chains(caps: &TruncationSpec) -> Result<TruncatedSeries, SeriesError> {
    Ok(two_y2_t(caps).log_geometric()?.scale(&rat(1, 2)))
}

/// Enumeration with closed/open chain markers `u`, `v` against
/// `exp(u·A + v·B)` for `A = ½·log 1/(1−2y²t)` and `B = x²t/(1−2y²t)`, up to
/// the `t` cap; single-chain counts for every size up to `j_max` against
/// `(j−1)!·2^{j−1}`, `j!·2^{j−1}` and the coefficients of `A` and `B`.
pub fn verify_chain_decomposition(
    caps: &TruncationSpec,
    j_max: usize,
    oracle: &Oracle,
) -> Result<VerificationReport, IdentityError> {
    let mut report = ReportBuilder::new("chain-decomposition", caps);
    let (u, v, t) = (Var::new("u"), Var::new("v"), Var::new("t"));
    let n = caps.cap(&t).unwrap_or(5);
    let marker_caps = TruncationSpec::new().with(t.clone(), n);

    let marked = oracle.oracle_egf(n as usize, Some((&u, &v)))?;
    let ctx = CompileContext::new(marker_caps.clone())?;
    let a = closed_chains(&marker_caps)?;
    let b = compile_open_chains(&ctx)?;
    let u_series = TruncatedSeries::variable(u.clone(), marker_caps.clone());
    let v_series = TruncatedSeries::variable(v.clone(), marker_caps.clone());
    let product_of_sets = u_series.mul(&a).add(&v_series.mul(&b)).exp_series()?;
    report.compare("marked enumeration vs exp(uA + vB)", &marked, &product_of_sets, &marker_caps);

    let one = TruncatedSeries::one(TruncationSpec::new());
    let erased = marked.substitute(&u, &one)?.substitute(&v, &one)?;
    report.compare("markers erased vs unmarked enumeration", &erased, &oracle.oracle_egf(n as usize, None)?, &marker_caps);

    let census_caps = TruncationSpec::new().with(t.clone(), j_max as u32);
    let census_ctx = CompileContext::new(census_caps.clone())?;
    let a_census = closed_chains(&census_caps)?;
    let b_census = compile_open_chains(&census_ctx)?;
    for j in 1..=j_max as u32 {
        let (closed, open) = oracle.chain_counts(j as usize)?;
        let power = Rational::from_integer(num::BigInt::one() << (j - 1));
        let closed_formula = Rational::from_integer(factorial(j - 1)) * &power;
        let open_formula = Rational::from_integer(factorial(j)) * &power;
        let closed_m = MultiIndex::from_pairs([("y", 2 * j), ("t", j)]);
        let open_m = MultiIndex::from_pairs([("x", 2), ("y", 2 * j - 2), ("t", j)]);
        let closed = Rational::from_integer(closed.into());
        let open = Rational::from_integer(open.into());
        report.expect(&format!("closed chains of size {j} vs (j-1)! 2^(j-1)"), &closed_m, closed.clone(), closed_formula);
        report.expect(&format!("open chains of size {j} vs j! 2^(j-1)"), &open_m, open.clone(), open_formula);
        report.expect(&format!("closed chains of size {j} vs A"), &closed_m, closed, a_census.egf_count(&closed_m, &t)?);
        report.expect(&format!("open chains of size {j} vs B"), &open_m, open, b_census.egf_count(&open_m, &t)?);
    }

    report.erratum(
        "directed-closed-chains",
        "closed chains as Cyc(2Y^2 T) = log 1/(1-2y^2 t) without the 1/2; counts are A vs the directed form",
        &a_census,
        &compile(&directed_closed_chain_class(), &census_ctx)?,
        &census_caps,
        &t,
    );
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps(spec: &str) -> TruncationSpec {
        spec.parse().unwrap()
    }

    #[test]
    fn closed_form_anchor_counts() {
        let s = closed_form(&caps("x:8,y:8,t:4")).unwrap();
        let t = Var::new("t");
        let count = |pairs: &[(&str, u32)]| s.egf_count(&MultiIndex::from_pairs(pairs.iter().copied()), &t).unwrap();
        assert_eq!(count(&[("x", 4), ("t", 2)]), int(1));
        assert_eq!(count(&[("x", 2), ("y", 2), ("t", 2)]), int(6));
        assert_eq!(count(&[("y", 4), ("t", 2)]), int(3));
    }

    #[test]
    fn printed_prefactor_gives_eight_at_y4_t2() {
        let s = printed_prefactor_form(&caps("x:8,y:8,t:4")).unwrap();
        let m = MultiIndex::from_pairs([("y", 4), ("t", 2)]);
        assert_eq!(s.egf_count(&m, &Var::new("t")).unwrap(), int(8));
    }

    #[test]
    fn glaisher_passes_with_errata_recorded() {
        let r = verify_glaisher(&caps("x:8,y:8,t:4"), &Oracle::default()).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.errata.len(), 2);
        assert!(r.errata.iter().all(|e| e.first_mismatch.is_some()));
    }

    #[test]
    fn chain_decomposition_passes() {
        let r = verify_chain_decomposition(&caps("t:5"), CHAIN_CENSUS_MAX, &Oracle::default()).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.errata.len(), 1);
    }
}
