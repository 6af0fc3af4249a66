//! Differential operators acting on truncated series.
//!
//! Combinatorially, `dst·∂/∂src` selects one `src` atom and repaints it as
//! `dst`; `(1/k!)(dst·∂)^k` selects an unordered `k`-subset; `½(dst·∂)²`
//! selects a doubleton. The exponentials of these operators are infinite
//! sums, but every application strictly lowers the `src` degree, so on a
//! stored series the sum stops after finitely many nonzero terms and the
//! result is exact.

use num::traits::One;
use thiserror::Error;

use crate::rational::{rat, Rational};
use crate::series::{MultiIndex, SeriesError, TruncatedSeries, TruncationSpec, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("flow parameter {0} needs a positive degree cap")]
    CapTooSmall(Var),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn reciprocal(k: u32) -> Rational {
    Rational::new(1.into(), k.into())
}

/// `dst · ∂f/∂src`
pub fn apply_singleton(f: &TruncatedSeries, src: &Var, dst: &Var) -> TruncatedSeries {
    f.differentiate(src)
        .mul_monomial(&Rational::one(), &MultiIndex::var(dst.clone(), 1))
}

/// `(1/k!) · dst^k · ∂^k f/∂src^k`
pub fn apply_k_subset(f: &TruncatedSeries, src: &Var, dst: &Var, k: u32) -> TruncatedSeries {
    (1..=k).fold(f.clone(), |h, j| apply_singleton(&h, src, dst).scale(&reciprocal(j)))
}

/// `exp(dst·∂/∂src) f`, which equals `f(src + dst)`.
pub fn apply_exp_shift(f: &TruncatedSeries, src: &Var, dst: &Var) -> TruncatedSeries {
    let mut sum = f.clone();
    let mut term = f.clone();
    let mut k = 1;
    loop {
        term = apply_singleton(&term, src, dst).scale(&reciprocal(k));
        if term.is_zero() {
            return sum;
        }
        sum = sum.add(&term);
        k += 1;
    }
}

/// `½ · dst² · ∂²f/∂src²`
pub fn apply_doubleton(f: &TruncatedSeries, src: &Var, dst: &Var) -> TruncatedSeries {
    f.differentiate(src)
        .differentiate(src)
        .mul_monomial(&rat(1, 2), &MultiIndex::var(dst.clone(), 2))
}

/// `(1/k!) · (½ · dst² · ∂²/∂src²)^k f`
pub fn apply_doubleton_k(f: &TruncatedSeries, src: &Var, dst: &Var, k: u32) -> TruncatedSeries {
    (1..=k).fold(f.clone(), |h, j| apply_doubleton(&h, src, dst).scale(&reciprocal(j)))
}

/// `exp(½ · (dst·∂/∂src)²) f`
pub fn apply_exp_half_square(f: &TruncatedSeries, src: &Var, dst: &Var) -> TruncatedSeries {
    let mut sum = f.clone();
    let mut term = f.clone();
    let mut k = 1;
    loop {
        term = apply_doubleton(&term, src, dst).scale(&reciprocal(k));
        if term.is_zero() {
            return sum;
        }
        sum = sum.add(&term);
        k += 1;
    }
}

/// `T(λ, x)`, `g(λ, x)` and `g · F(T)` for `exp(λ(q(x)·∂ₓ + v(x))) F(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSolution {
    /// Solves `∂T/∂λ = q(T)`, `T(0, x) = x`.
    pub transport: TruncatedSeries,
    /// Solves `∂g/∂λ = v(T)·g`, `g(0, x) = 1`.
    pub multiplier: TruncatedSeries,
    pub result: TruncatedSeries,
}

fn lambda_cap(caps: &TruncationSpec, lambda: &Var) -> Result<u32, OperatorError> {
    match caps.cap(lambda) {
        Some(c) if c > 0 => Ok(c),
        _ => Err(OperatorError::CapTooSmall(lambda.clone())),
    }
}

/// Solves the characteristic equations order by order in `λ`.
///
/// `T` is obtained by Picard iteration `T ← x + ∫₀^λ q(T)`, each pass fixing
/// one more power of `λ`; then `g = exp ∫₀^λ v(T)` and the result is
/// `g · F(T)`. All inputs are truncated to `caps`, which must cap `lambda`
/// at a positive degree. If `x` is left uncapped, `q`, `v` and `F` are
/// treated as exact polynomials.
pub fn flow_exp(
    q: &TruncatedSeries,
    v: &TruncatedSeries,
    f: &TruncatedSeries,
    x: &Var,
    lambda: &Var,
    caps: &TruncationSpec,
) -> Result<FlowSolution, OperatorError> {
    let order = lambda_cap(caps, lambda)?;
    let (q, v, f) = (q.truncate(caps), v.truncate(caps), f.truncate(caps));
    let identity = TruncatedSeries::variable(x.clone(), caps.clone());

    let mut transport = identity.clone();
    for _ in 0..order {
        transport = identity.add(&q.substitute(x, &transport)?.integrate(lambda));
    }
    let multiplier = v.substitute(x, &transport)?.integrate(lambda).exp_series()?;
    let result = multiplier.mul(&f.substitute(x, &transport)?);
    Ok(FlowSolution {
        transport,
        multiplier,
        result,
    })
}

/// `Σ_k λ^k/k! · (q·∂ₓ + v)^k F`, summed directly up to the `λ` cap.
///
/// Differentiation cannot see terms beyond the `x` cap, so this route is
/// exact only when `x` is uncapped or capped above every degree reached.
pub fn flow_direct(
    q: &TruncatedSeries,
    v: &TruncatedSeries,
    f: &TruncatedSeries,
    x: &Var,
    lambda: &Var,
    caps: &TruncationSpec,
) -> Result<TruncatedSeries, OperatorError> {
    let order = lambda_cap(caps, lambda)?;
    let (q, v, f) = (q.truncate(caps), v.truncate(caps), f.truncate(caps));
    let step = MultiIndex::var(lambda.clone(), 1);
    let mut sum = f.clone();
    let mut term = f;
    for k in 1..=order {
        let generator = q.mul(&term.differentiate(x)).add(&v.mul(&term));
        term = generator.mul_monomial(&reciprocal(k), &step);
        sum = sum.add(&term);
    }
    Ok(sum)
}
