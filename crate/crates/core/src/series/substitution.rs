//! Composition `f(var := g)` and the even rewrite `var² := value`.

use std::collections::BTreeMap;

use num::traits::Zero;

use super::{MultiIndex, SeriesError, TruncatedSeries, Var};
use crate::rational::Rational;

impl TruncatedSeries {
    /// Replaces `var` by `g`.
    ///
    /// The result is truncated to the caps of `f` without `var`, merged with
    /// the caps of `g`. When `g(0) ≠ 0` the input must be exact in `var`
    /// (`var` uncapped in `f`), otherwise every discarded tail term would feed
    /// into the low-order coefficients and the call fails with
    /// [`SeriesError::DivergentSubstitution`].
    pub fn substitute(&self, var: &Var, g: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        let truncation = self.truncation.without(var).merge(&g.truncation);
        let max_degree = self.degree_in(var);
        if !g.constant_term().is_zero() && max_degree > 0 {
            if let Some(cap) = self.truncation.cap(var) {
                return Err(SeriesError::DivergentSubstitution {
                    var: var.clone(),
                    cap,
                });
            }
        }

        // f = Σ_k var^k · f_k
        let mut slices: BTreeMap<u32, Vec<(MultiIndex, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            slices
                .entry(m.exponent(var))
                .or_default()
                .push((m.without(var), c.clone()));
        }

        let g = g.truncate(&truncation);
        let mut out = TruncatedSeries::zero(truncation.clone());
        let mut power = TruncatedSeries::one(truncation.clone());
        let mut current = 0u32;
        for (k, slice) in slices {
            while current < k {
                power = power.mul(&g);
                current += 1;
            }
            if power.is_zero() {
                break;
            }
            let slice = TruncatedSeries::from_terms(slice, truncation.clone());
            out = out.add(&slice.mul(&power));
        }
        Ok(out)
    }

    /// Rewrites every `var^(2k)` as `value^k`, removing `var`.
    pub fn substitute_square(&self, var: &Var, value: &Rational) -> Result<TruncatedSeries, SeriesError> {
        let mut out = TruncatedSeries::zero(self.truncation.without(var));
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e % 2 == 1 {
                return Err(SeriesError::OddExponent {
                    var: var.clone(),
                    monomial: m.clone(),
                });
            }
            out.accumulate(m.without(var), c * num::pow(value.clone(), (e / 2) as usize));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::series::TruncationSpec;

    fn caps(spec: &str) -> TruncationSpec {
        spec.parse().unwrap()
    }

    fn poly(terms: &[(i64, &[(&str, u32)])], spec: &str) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            terms
                .iter()
                .map(|(c, m)| (MultiIndex::from_pairs(m.iter().copied()), int(*c))),
            caps(spec),
        )
    }

    #[test]
    fn cube_of_sum() {
        let f = poly(&[(1, &[("x", 3)])], "x:6,y:6");
        let g = poly(&[(1, &[("x", 1)]), (1, &[("y", 1)])], "x:6,y:6");
        let got = f.substitute(&"x".into(), &g).unwrap();
        assert_eq!(got, g.pow(3));
    }

    #[test]
    fn identity_substitution() {
        let f = poly(&[(2, &[("x", 3)]), (-1, &[("x", 1), ("y", 2)]), (5, &[])], "x:6,y:6");
        let x = TruncatedSeries::variable("x", caps("x:6,y:6"));
        assert_eq!(f.substitute(&"x".into(), &x).unwrap(), f);
    }

    #[test]
    fn sign_flip_on_label() {
        let c = "x:8,t:4";
        let e = poly(&[(1, &[("x", 2), ("t", 1)])], c).exp_series().unwrap();
        let minus_t = poly(&[(-1, &[("t", 1)])], c);
        let flipped = e.substitute(&"t".into(), &minus_t).unwrap();
        for (m, v) in e.terms() {
            let sign = if m.exponent(&"t".into()) % 2 == 1 { int(-1) } else { int(1) };
            assert_eq!(flipped.coeff(m).unwrap(), v * sign);
        }
    }

    #[test]
    fn divergent_when_truncated_and_constant_offset() {
        let f = poly(&[(1, &[("x", 2)])], "x:4");
        let g = poly(&[(1, &[]), (1, &[("x", 1)])], "x:4");
        assert!(matches!(
            f.substitute(&"x".into(), &g),
            Err(SeriesError::DivergentSubstitution { .. })
        ));
        // exact (uncapped) polynomial is fine
        let f = poly(&[(1, &[("x", 2)])], "");
        let got = f.substitute(&"x".into(), &g).unwrap();
        assert_eq!(got, poly(&[(1, &[]), (2, &[("x", 1)]), (1, &[("x", 2)])], "x:4"));
    }

    #[test]
    fn hermite_three() {
        let f = poly(&[(1, &[("x", 3)]), (3, &[("x", 1), ("y", 2)])], "x:12,y:12");
        let he3 = f.substitute_square(&"y".into(), &int(-1)).unwrap();
        assert_eq!(he3, poly(&[(1, &[("x", 3)]), (-3, &[("x", 1)])], "x:12"));
        let y2 = poly(&[(1, &[("y", 2)])], "y:4");
        assert_eq!(y2.substitute_square(&"y".into(), &int(-1)).unwrap(), poly(&[(-1, &[])], ""));
    }

    #[test]
    fn odd_exponent_rejected() {
        let f = poly(&[(1, &[("x", 1), ("y", 1)])], "x:4,y:4");
        assert!(matches!(
            f.substitute_square(&"y".into(), &int(-1)),
            Err(SeriesError::OddExponent { .. })
        ));
    }
}
