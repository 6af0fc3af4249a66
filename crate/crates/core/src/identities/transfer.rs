//! The transfer rules from class constructions to series operations, checked
//! on random admissible classes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::{admissible_class, any_class};
use super::report::{ReportBuilder, VerificationReport};
use super::IdentityError;
use crate::class::{compile, ClassExpr, CompileContext};
use crate::rational::{is_nonnegative_integer, int};
use crate::series::{MultiIndex, TruncatedSeries, TruncationSpec, Var};

pub const TRANSFER_CASES: usize = 200;
pub const TRANSFER_SEED: u64 = 0x5e75;
const DEPTH: u32 = 2;

/// For each of `cases` seeded random pairs of admissible classes `A`, `B`
/// and a class `C` that may have constant term 1:
///
/// * `A + B` ↦ sum, `A ⋆ C` ↦ product
/// * `Set A` ↦ `exp`, and `Set(A + B) = Set A ⋆ Set B`
/// * `Seq A` ↦ `1/(1 − ·)`, and `Seq A · (1 − A) = 1`
/// * `Cyc A` ↦ `log 1/(1 − ·)`, and `Set(Cyc A) = Seq A`
/// * `A ∘_t B` ↦ substitution for `t`
/// * every compiled count `n!·[tⁿ…]` is a nonnegative integer
///
/// followed by three fixed examples.
pub fn verify_transfer_rules(caps: &TruncationSpec, cases: usize, seed: u64) -> Result<VerificationReport, IdentityError> {
    let mut report = ReportBuilder::new("transfer-rules", caps);
    let ctx = CompileContext::new(caps.clone())?;
    let c = |e: &ClassExpr| compile(e, &ctx);
    let label = ctx.label().clone();
    let one = TruncatedSeries::one(caps.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for k in 0..cases {
        let a = admissible_class(&mut rng, DEPTH);
        let b = admissible_class(&mut rng, DEPTH);
        let other = any_class(&mut rng, DEPTH);
        let (sa, sb, so) = (c(&a)?, c(&b)?, c(&other)?);
        let case = |rule: &str| format!("case {k}: {rule}");

        let union = c(&ClassExpr::union(vec![a.clone(), b.clone()]))?;
        report.compare(&case("union"), &union, &sa.add(&sb), caps);

        let product = c(&ClassExpr::product(vec![a.clone(), other.clone()]))?;
        report.compare(&case("product"), &product, &sa.mul(&so), caps);

        let set = c(&ClassExpr::set(a.clone()))?;
        report.compare(&case("set"), &set, &sa.exp_series()?, caps);
        let set_sum = c(&ClassExpr::set(ClassExpr::union(vec![a.clone(), b.clone()])))?;
        report.compare(&case("set of union"), &set_sum, &set.mul(&c(&ClassExpr::set(b.clone()))?), caps);

        let seq = c(&ClassExpr::seq(a.clone()))?;
        report.compare(&case("seq"), &seq, &sa.geometric()?, caps);
        report.compare(&case("seq inverse"), &seq.mul(&one.sub(&sa)), &one, caps);

        let cyc = c(&ClassExpr::cyc(a.clone()))?;
        report.compare(&case("cyc"), &cyc, &sa.log_geometric()?, caps);
        report.compare(&case("set of cycles"), &c(&ClassExpr::set(ClassExpr::cyc(a.clone())))?, &seq, caps);

        let subst = c(&ClassExpr::subst(a.clone(), label.clone(), b.clone()))?;
        report.compare(&case("subst"), &subst, &sa.substitute(&label, &sb)?, caps);

        for s in [&union, &product, &set, &seq, &cyc, &subst] {
            for (m, _) in s.terms() {
                let count = s.egf_count(m, &label)?;
                if !is_nonnegative_integer(&count) {
                    report.expect(&case("integral counts"), m, count.clone(), count.round());
                }
            }
        }
    }

    let xt = ClassExpr::atom([("x", 1), ("t", 1)]);
    let xt_series = TruncatedSeries::monomial(int(1), MultiIndex::from_pairs([("x", 1), ("t", 1)]), caps.clone());
    report.compare("Seq(XT) = 1/(1 - xt)", &c(&ClassExpr::seq(xt.clone()))?, &xt_series.geometric()?, caps);
    report.compare(
        "Set(Cyc(XT)) = 1/(1 - xt)",
        &c(&ClassExpr::set(ClassExpr::cyc(xt)))?,
        &xt_series.geometric()?,
        caps,
    );
    // substitution mixes x and y degrees, so expand with both caps widened to their sum and
    // compare within the original ones
    let (x, y) = (Var::new("x"), Var::new("y"));
    if let (Some(xc), Some(yc)) = (caps.cap(&x), caps.cap(&y)) {
        let wide = caps.clone().with(x.clone(), xc + yc).with(y.clone(), xc + yc);
        let shifted = compile(
            &ClassExpr::subst(
                ClassExpr::set(ClassExpr::atom([("x", 1)])),
                x.clone(),
                ClassExpr::union(vec![ClassExpr::atom([("x", 1)]), ClassExpr::atom([("y", 1)])]),
            ),
            &CompileContext::new(wide.clone())?,
        )?;
        let sum = TruncatedSeries::variable(x, wide.clone()).add(&TruncatedSeries::variable(y, wide));
        report.compare("Subst(Set(X), X -> X + Y) = exp(x + y)", &shifted, &sum.exp_series()?, caps);
    }
    Ok(report.finish())
}
