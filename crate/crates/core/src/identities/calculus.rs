//! Taylor's formula and the shift/dilation flows.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random;
use super::report::{ReportBuilder, VerificationReport};
use super::IdentityError;
use crate::operators::{apply_exp_shift, flow_direct, flow_exp};
use crate::rational::{int, rat};
use crate::series::{MultiIndex, TruncatedSeries, TruncationSpec, Var};

pub const TAYLOR_BATTERY: usize = 20;
pub const FLOW_RANDOM_CASES: usize = 50;
const TAYLOR_SEED: u64 = 0x7a7105;
const FLOW_SEED: u64 = 0xf10e;
const FLOW_TRIPLE_SEED: u64 = 0x0de5;

/// Named inputs for the Taylor check: fixed cases padded with random
/// polynomials in `x`, `y`, `t` to [`TAYLOR_BATTERY`] entries.
pub fn taylor_battery(caps: &TruncationSpec) -> Result<Vec<(String, TruncatedSeries)>, IdentityError> {
    let mono = |c, pairs: &[(&str, u32)]| {
        TruncatedSeries::monomial(int(c), MultiIndex::from_pairs(pairs.iter().copied()), caps.clone())
    };
    let mut battery = vec![
        ("x^3".to_string(), mono(1, &[("x", 3)])),
        ("0".to_string(), TruncatedSeries::zero(caps.clone())),
        ("1".to_string(), TruncatedSeries::one(caps.clone())),
        ("exp(x t)".to_string(), mono(1, &[("x", 1), ("t", 1)]).exp_series()?),
        ("exp(x^2 t)".to_string(), mono(1, &[("x", 2), ("t", 1)]).exp_series()?),
        ("x^2 y + 3 t".to_string(), mono(1, &[("x", 2), ("y", 1)]).add(&mono(3, &[("t", 1)]))),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(TAYLOR_SEED);
    let mut k = 0;
    while battery.len() < TAYLOR_BATTERY {
        let f = random::polynomial(&mut rng, &["x", "y", "t"], 4, 6, caps);
        battery.push((format!("random[{k}]"), f));
        k += 1;
    }
    Ok(battery)
}

/// `exp(y∂ₓ) F = F(x + y)` on every entry of the battery.
pub fn verify_taylor(caps: &TruncationSpec) -> Result<VerificationReport, IdentityError> {
    let mut report = ReportBuilder::new("taylor", caps);
    let (x, y) = (Var::new("x"), Var::new("y"));
    let shifted = TruncatedSeries::variable(x.clone(), caps.clone()).add(&TruncatedSeries::variable(y.clone(), caps.clone()));
    for (name, f) in taylor_battery(caps)? {
        let operator = apply_exp_shift(&f, &x, &y);
        let substituted = f.substitute(&x, &shifted)?;
        report.compare(&format!("F = {name}: operator vs substitution"), &operator, &substituted, caps);
    }
    Ok(report.finish())
}

/// Exact polynomials in `x` used for the flow checks.
pub fn flow_battery() -> Vec<(String, TruncatedSeries)> {
    let poly = TruncationSpec::new();
    let mono = |c, e| TruncatedSeries::monomial(int(c), MultiIndex::var("x", e), poly.clone());
    let mut battery = vec![
        ("1".to_string(), mono(1, 0)),
        ("x^2".to_string(), mono(1, 2)),
        ("x^3".to_string(), mono(1, 3)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(FLOW_SEED);
    for k in 0..5 {
        battery.push((format!("random[{k}]"), random::polynomial(&mut rng, &["x"], 5, 4, &poly)));
    }
    battery
}

/// Seeded `(q, v, F)` triples of exact polynomials in `x` of degree at most 3.
pub fn random_flow_triples(cases: usize) -> Vec<[TruncatedSeries; 3]> {
    let exact = TruncationSpec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(FLOW_TRIPLE_SEED);
    (0..cases)
        .map(|_| std::array::from_fn(|_| random::polynomial(&mut rng, &["x"], 3, 3, &exact)))
        .collect()
}

/// `exp(λ∂ₓ)F = F(x+λ)` and `exp(λx∂ₓ)F = F(e^λ x)` via the flow solver,
/// each also checked against the direct operator sum; then the flow solver
/// against the direct sum on [`FLOW_RANDOM_CASES`] random triples.
pub fn verify_shift_dilation(caps: &TruncationSpec) -> Result<VerificationReport, IdentityError> {
    let mut report = ReportBuilder::new("shift-dilation", caps);
    let (x, lambda) = (Var::new("x"), Var::new("lambda"));
    let exact = TruncationSpec::new();
    let zero = TruncatedSeries::zero(exact.clone());
    let one = TruncatedSeries::one(exact.clone());
    let x_series = TruncatedSeries::variable(x.clone(), exact);

    let shift_target = x_series.add(&TruncatedSeries::variable(lambda.clone(), caps.clone()));
    let dilation_target = TruncatedSeries::variable(lambda.clone(), caps.clone())
        .exp_series()?
        .mul(&x_series);

    for (name, f) in flow_battery() {
        let shift = flow_exp(&one, &zero, &f, &x, &lambda, caps)?;
        report.compare(&format!("shift T, F = {name}"), &shift.transport, &shift_target, caps);
        report.compare(
            &format!("shift, F = {name}: flow vs F(x+lambda)"),
            &shift.result,
            &f.substitute(&x, &shift_target)?,
            caps,
        );
        report.compare(
            &format!("shift, F = {name}: flow vs direct sum"),
            &shift.result,
            &flow_direct(&one, &zero, &f, &x, &lambda, caps)?,
            caps,
        );

        let dilation = flow_exp(&x_series, &zero, &f, &x, &lambda, caps)?;
        report.compare(&format!("dilation T, F = {name}"), &dilation.transport, &dilation_target, caps);
        report.compare(
            &format!("dilation, F = {name}: flow vs F(e^lambda x)"),
            &dilation.result,
            &f.substitute(&x, &dilation_target)?,
            caps,
        );
        report.compare(
            &format!("dilation, F = {name}: flow vs direct sum"),
            &dilation.result,
            &flow_direct(&x_series, &zero, &f, &x, &lambda, caps)?,
            caps,
        );
    }

    for (k, [q, v, f]) in random_flow_triples(FLOW_RANDOM_CASES).iter().enumerate() {
        let flow = flow_exp(q, v, f, &x, &lambda, caps)?;
        let direct = flow_direct(q, v, f, &x, &lambda, caps)?;
        report.compare(&format!("random triple {k}: flow vs direct sum"), &flow.result, &direct, caps);
    }

    // (e^λ)³ = Σ 3^k λ^k / k!, so λ²x³ carries 9/2
    if caps.cap(&lambda).is_some_and(|c| c >= 2) {
        let cube = TruncatedSeries::monomial(int(1), MultiIndex::var("x", 3), TruncationSpec::new());
        let dilation = flow_exp(&x_series, &zero, &cube, &x, &lambda, caps)?;
        let m = MultiIndex::from_pairs([("x", 3), ("lambda", 2)]);
        report.expect("dilation x^3 at lambda^2 x^3", &m, dilation.result.coeff(&m)?, rat(9, 2));
    }
    Ok(report.finish())
}
