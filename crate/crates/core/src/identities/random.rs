//! Seeded generators for the randomized batteries.

use rand::Rng;

use crate::class::ClassExpr;
use crate::rational::{rat, Rational};
use crate::series::{MultiIndex, TruncatedSeries, TruncationSpec, Var};

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    rat(if num == 0 { 1 } else { num }, den)
}

/// Random polynomial with up to `terms` terms, each exponent of each
/// variable at most `max_degree`.
pub fn polynomial<R: Rng>(
    rng: &mut R,
    vars: &[&str],
    max_degree: u32,
    terms: usize,
    caps: &TruncationSpec,
) -> TruncatedSeries {
    let count = rng.gen_range(1..=terms);
    let items = (0..count).map(|_| {
        let m = MultiIndex::from_pairs(vars.iter().map(|v| (Var::new(v), rng.gen_range(0..=max_degree))));
        (m, small_rational(rng))
    });
    let items: Vec<_> = items.collect();
    TruncatedSeries::from_terms(items, caps.clone())
}

/// Random atom: label degree 1 with small `x`/`y` weights.
fn atom<R: Rng>(rng: &mut R) -> ClassExpr {
    ClassExpr::atom([("x", rng.gen_range(0..=2)), ("y", rng.gen_range(0..=1)), ("t", 1)])
}

fn leaf<R: Rng>(rng: &mut R) -> ClassExpr {
    match rng.gen_range(0..4) {
        0 | 1 => atom(rng),
        2 => ClassExpr::weighted(rat(rng.gen_range(1..=3), 1), atom(rng)),
        // a symmetrised doubleton, still integral: ½·(m t)²
        _ => ClassExpr::weighted(rat(1, 2), ClassExpr::power(atom(rng), 2)),
    }
}

/// Random class expression with zero constant term.
///
/// Every atom carries the label `t`, so every nonconstant monomial of the
/// compiled EGF does too and substitution into `t` stays labelled. All
/// weights are positive and integrality-preserving.
pub fn admissible_class<R: Rng>(rng: &mut R, depth: u32) -> ClassExpr {
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..8) {
        0 => leaf(rng),
        1 => ClassExpr::union(vec![admissible_class(rng, depth - 1), admissible_class(rng, depth - 1)]),
        2 => ClassExpr::product(vec![admissible_class(rng, depth - 1), any_class(rng, depth - 1)]),
        3 => ClassExpr::power(admissible_class(rng, depth - 1), rng.gen_range(1..=2)),
        4 => ClassExpr::cyc(admissible_class(rng, depth - 1)),
        5 => ClassExpr::subst(admissible_class(rng, depth - 1), "t", admissible_class(rng, depth - 1)),
        6 => ClassExpr::weighted(rat(rng.gen_range(1..=2), 1), admissible_class(rng, depth - 1)),
        _ => ClassExpr::product(vec![atom(rng), ClassExpr::set(admissible_class(rng, depth - 1))]),
    }
}

/// Random class expression, possibly with constant term 1.
pub fn any_class<R: Rng>(rng: &mut R, depth: u32) -> ClassExpr {
    match rng.gen_range(0..5) {
        0 => ClassExpr::set(admissible_class(rng, depth)),
        1 => ClassExpr::seq(admissible_class(rng, depth)),
        2 => ClassExpr::Neutral,
        _ => admissible_class(rng, depth),
    }
}
