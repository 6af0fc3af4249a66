//! Hermite polynomials as the doubleton operator acting on monomials and on
//! the exponential `exp(xt)`.

use num::traits::One;

use super::report::{ReportBuilder, VerificationReport};
use super::IdentityError;
use crate::class::{compile, ClassExpr, CompileContext};
use crate::operators::apply_exp_half_square;
use crate::oracle::Oracle;
use crate::rational::{factorial, int, rat, Rational};
use crate::series::{MultiIndex, TruncatedSeries, TruncationSpec, Var};

/// Probabilists' Hermite polynomials `He_0 … He_{n_max}` from
/// `He_{n+1} = x·He_n − n·He_{n−1}`.
pub fn hermite_recurrence(n_max: u32) -> Vec<TruncatedSeries> {
    let exact = TruncationSpec::new();
    let x = TruncatedSeries::variable("x", exact.clone());
    let mut out = vec![TruncatedSeries::one(exact)];
    if n_max >= 1 {
        out.push(x.clone());
    }
    for n in 1..n_max {
        let next = x.mul(&out[n as usize]).sub(&out[n as usize - 1].scale(&int(n as i64)));
        out.push(next);
    }
    out
}

fn var_cap(caps: &TruncationSpec, name: &str, fallback: u32) -> u32 {
    caps.cap(&Var::new(name)).unwrap_or(fallback)
}

/// `exp(½(y∂ₓ)²) xⁿ` against `Σ_k n!/(2^k k!(n−2k)!) x^{n−2k} y^{2k}` and
/// against involution counts, for every `n` up to the `x` cap; then
/// `y² → −1` against the Hermite recurrence.
pub fn verify_hermite_monomial(caps: &TruncationSpec, oracle: &Oracle) -> Result<VerificationReport, IdentityError> {
    let mut report = ReportBuilder::new("hermite-monomial", caps);
    let (x, y) = (Var::new("x"), Var::new("y"));
    let n_max = var_cap(caps, "x", 12);
    let hermite = hermite_recurrence(n_max);
    let exact = TruncationSpec::new();
    for n in 0..=n_max {
        let monomial = TruncatedSeries::monomial(Rational::one(), MultiIndex::var(x.clone(), n), exact.clone());
        let image = apply_exp_half_square(&monomial, &x, &y);

        let closed = TruncatedSeries::from_terms(
            (0..=n / 2).map(|k| {
                let c = Rational::new(
                    factorial(n),
                    (num::BigInt::one() << k) * factorial(k) * factorial(n - 2 * k),
                );
                (MultiIndex::from_pairs([(x.clone(), n - 2 * k), (y.clone(), 2 * k)]), c)
            }),
            exact.clone(),
        );
        report.compare(&format!("n = {n}: operator vs closed form"), &image, &closed, caps);

        let involutions = oracle.involution_counts(n as usize)?;
        for (k, count) in involutions.iter().enumerate() {
            let m = MultiIndex::from_pairs([(x.clone(), n - 2 * k as u32), (y.clone(), 2 * k as u32)]);
            if caps.allows(&m) {
                report.expect(
                    &format!("n = {n}: operator vs involutions"),
                    &m,
                    image.coeff(&m)?,
                    Rational::from_integer((*count).into()),
                );
            }
        }

        let he = image.substitute_square(&y, &int(-1))?;
        report.compare(&format!("He_{n}: y^2 -> -1 vs recurrence"), &he, &hermite[n as usize], caps);
    }

    let spot = |pairs: &[(i64, u32)]| {
        TruncatedSeries::from_terms(
            pairs.iter().map(|&(c, e)| (MultiIndex::var("x", e), int(c))),
            TruncationSpec::new(),
        )
    };
    if n_max >= 4 {
        report.compare("He_3 = x^3 - 3x", &hermite[3], &spot(&[(1, 3), (-3, 1)]), caps);
        report.compare("He_4 = x^4 - 6x^2 + 3", &hermite[4], &spot(&[(1, 4), (-6, 2), (3, 0)]), caps);
    }
    Ok(report.finish())
}

/// `exp(½(y∂ₓ)²)` applied to the EGF of `Set(XT)` against the compiled
/// `Set(XT + ½(YT)²)` and the closed form `exp(xt + ½y²t²)`; with `y² → −1`
/// against `exp(xt − ½t²)`.
///
/// The operator only sees `xⁿtⁿ` for `n` up to the `x` cap, so the
/// comparison runs with the `t` cap lowered to the `x` cap, and the
/// specialisation, which sums over every power of `y`, with it lowered to the
/// `y` cap as well.
pub fn verify_hermite_egf(caps: &TruncationSpec) -> Result<VerificationReport, IdentityError> {
    let mut report = ReportBuilder::new("hermite-egf", caps);
    let (x, y, t) = (Var::new("x"), Var::new("y"), Var::new("t"));
    let ctx = CompileContext::new(caps.clone())?;

    let xt = ClassExpr::atom([("x", 1), ("t", 1)]);
    let source = compile(&ClassExpr::set(xt.clone()), &ctx)?;
    let image = apply_exp_half_square(&source, &x, &y);
    let class_route = compile(
        &ClassExpr::set(ClassExpr::union(vec![
            xt,
            ClassExpr::weighted(rat(1, 2), ClassExpr::power(ClassExpr::atom([("y", 1), ("t", 1)]), 2)),
        ])),
        &ctx,
    )?;
    let exponent = TruncatedSeries::from_terms(
        [
            (MultiIndex::from_pairs([("x", 1), ("t", 1)]), int(1)),
            (MultiIndex::from_pairs([("y", 2), ("t", 2)]), rat(1, 2)),
        ],
        caps.clone(),
    );
    let closed = exponent.exp_series()?;

    let x_cap = caps.cap(&x);
    let effective = match (caps.cap(&t), x_cap) {
        (Some(tc), Some(xc)) => caps.clone().with(t.clone(), tc.min(xc)),
        (None, Some(xc)) => caps.clone().with(t.clone(), xc),
        _ => caps.clone(),
    };
    report.compare("operator vs Set(XT + (YT)^2/2)", &image, &class_route, &effective);
    report.compare("operator vs exp(xt + y^2 t^2/2)", &image, &closed, &effective);

    let m = MultiIndex::from_pairs([("x", 1), ("y", 2), ("t", 3)]);
    if effective.allows(&m) {
        report.expect("operator at x y^2 t^3", &m, image.coeff(&m)?, rat(1, 2));
        report.expect("closed form at x y^2 t^3", &m, closed.coeff(&m)?, rat(1, 2));
    }

    let mut specialised_caps = effective.without(&y);
    if let (Some(tc), Some(yc)) = (effective.cap(&t), caps.cap(&y)) {
        specialised_caps.set_cap(t.clone(), tc.min(yc));
    }
    let specialised = image.substitute_square(&y, &int(-1))?;
    let target = TruncatedSeries::from_terms(
        [
            (MultiIndex::from_pairs([("x", 1), ("t", 1)]), int(1)),
            (MultiIndex::var("t", 2), rat(-1, 2)),
        ],
        specialised_caps.clone(),
    )
    .exp_series()?;
    report.compare("y^2 -> -1 vs exp(xt - t^2/2)", &specialised, &target, &specialised_caps);

    let t2 = MultiIndex::var("t", 2);
    if specialised_caps.allows(&t2) {
        let got = specialised.coeff(&t2)?;
        report.expect("y^2 -> -1 at t^2", &t2, got, rat(-1, 2));
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_gives_he4() {
        let he = hermite_recurrence(4);
        assert_eq!(he[4].to_text(), "truncation\n3/1\n-6/1 x^2\n1/1 x^4");
    }

    #[test]
    fn monomial_identity_passes_at_defaults() {
        let r = verify_hermite_monomial(&"x:12,y:12".parse().unwrap(), &Oracle::default()).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn egf_identity_passes_at_defaults() {
        let r = verify_hermite_egf(&"x:8,y:8,t:8".parse().unwrap()).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn zero_y_cap_degenerates_to_pass() {
        let r = verify_hermite_egf(&"x:8,y:0,t:8".parse().unwrap()).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
    }
}
