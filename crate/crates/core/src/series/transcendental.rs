//! Composite expansions `exp f`, `log 1/(1-f)`, `1/(1-f)` and `(1+f)^p`.
//!
//! All of them require `f(0) = 0`; the sums are then finite under the caps.

use num::traits::Zero;

use super::{SeriesError, TruncatedSeries};
use crate::rational::Rational;

impl TruncatedSeries {
    /// `Σ_{k≥0} f^k / k!`
    pub fn exp_series(&self) -> Result<TruncatedSeries, SeriesError> {
        self.ensure_nilpotent()?;
        let mut sum = TruncatedSeries::one(self.truncation.clone());
        let mut term = sum.clone();
        let mut k = 1i64;
        loop {
            term = term.mul(self).scale(&Rational::new(1.into(), k.into()));
            if term.is_zero() {
                return Ok(sum);
            }
            sum = sum.add(&term);
            k += 1;
        }
    }

    /// `log 1/(1-f) = Σ_{k≥1} f^k / k`
    pub fn log_geometric(&self) -> Result<TruncatedSeries, SeriesError> {
        self.ensure_nilpotent()?;
        let mut sum = TruncatedSeries::zero(self.truncation.clone());
        let mut power = self.clone();
        let mut k = 1i64;
        while !power.is_zero() {
            sum = sum.add(&power.scale(&Rational::new(1.into(), k.into())));
            power = power.mul(self);
            k += 1;
        }
        Ok(sum)
    }

    /// `1/(1-f) = Σ_{k≥0} f^k`
    pub fn geometric(&self) -> Result<TruncatedSeries, SeriesError> {
        self.ensure_nilpotent()?;
        let mut sum = TruncatedSeries::one(self.truncation.clone());
        let mut power = self.clone();
        while !power.is_zero() {
            sum = sum.add(&power);
            power = power.mul(self);
        }
        Ok(sum)
    }

    /// `log(1+f) = -log 1/(1-(-f))`
    pub fn log_one_plus(&self) -> Result<TruncatedSeries, SeriesError> {
        Ok(self.neg().log_geometric()?.neg())
    }

    /// `(1+f)^p = exp(p · log(1+f))`
    pub fn pow_frac(&self, p: &Rational) -> Result<TruncatedSeries, SeriesError> {
        self.ensure_nilpotent()?;
        if p.is_zero() {
            return Ok(TruncatedSeries::one(self.truncation.clone()));
        }
        self.log_one_plus()?.scale(p).exp_series()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial_rational, int, rat};
    use crate::series::{MultiIndex, TruncationSpec};

    fn caps(spec: &str) -> TruncationSpec {
        spec.parse().unwrap()
    }

    fn mono(c: Rational, pairs: &[(&str, u32)], spec: &str) -> TruncatedSeries {
        TruncatedSeries::monomial(c, MultiIndex::from_pairs(pairs.iter().copied()), caps(spec))
    }

    #[test]
    fn exp_of_xt() {
        let e = mono(int(1), &[("x", 1), ("t", 1)], "x:6,t:6").exp_series().unwrap();
        let m = MultiIndex::from_pairs([("x", 3), ("t", 3)]);
        assert_eq!(e.coeff(&m).unwrap(), rat(1, 6));
    }

    #[test]
    fn exp_of_x2t() {
        let e = mono(int(1), &[("x", 2), ("t", 1)], "x:12,t:6").exp_series().unwrap();
        for n in 0..=6u32 {
            let m = MultiIndex::from_pairs([("x", 2 * n), ("t", n)]);
            assert_eq!(e.coeff(&m).unwrap(), int(1) / factorial_rational(n));
        }
        assert_eq!(e.len(), 7);
    }

    #[test]
    fn exp_rejects_constant() {
        let f = TruncatedSeries::one(caps("x:3"));
        assert_eq!(f.exp_series().unwrap_err(), SeriesError::NonzeroConstantTerm(int(1)));
        assert!(matches!(f.geometric(), Err(SeriesError::NonzeroConstantTerm(_))));
        assert!(matches!(f.log_geometric(), Err(SeriesError::NonzeroConstantTerm(_))));
        assert!(matches!(f.pow_frac(&rat(1, 2)), Err(SeriesError::NonzeroConstantTerm(_))));
    }

    #[test]
    fn exp_rejects_uncapped_argument() {
        let f = TruncatedSeries::variable("x", TruncationSpec::new());
        assert!(matches!(f.exp_series(), Err(SeriesError::UnboundedExpansion(_))));
    }

    #[test]
    fn log_geometric_closed_chain_weight() {
        let f = mono(int(2), &[("y", 2), ("t", 1)], "y:8,t:4");
        let l = f.log_geometric().unwrap();
        assert_eq!(l.coeff(&MultiIndex::from_pairs([("y", 4), ("t", 2)])).unwrap(), int(2));
        assert_eq!(l.coeff(&MultiIndex::from_pairs([("y", 6), ("t", 3)])).unwrap(), rat(8, 3));
        assert!(TruncatedSeries::zero(caps("y:8")).log_geometric().unwrap().is_zero());
    }

    #[test]
    fn geometric_powers_of_two() {
        let f = mono(int(2), &[("y", 2), ("t", 1)], "y:10,t:5");
        let g = f.geometric().unwrap();
        for k in 0..=5u32 {
            let m = MultiIndex::from_pairs([("y", 2 * k), ("t", k)]);
            assert_eq!(g.coeff(&m).unwrap(), int(1 << k));
        }
        let one = TruncatedSeries::zero(caps("y:3")).geometric().unwrap();
        assert_eq!(one, TruncatedSeries::one(caps("y:3")));
    }

    #[test]
    fn exp_log_round_trip() {
        let f = mono(int(2), &[("y", 2), ("t", 1)], "y:10,t:5");
        assert_eq!(f.log_geometric().unwrap().exp_series().unwrap(), f.geometric().unwrap());
    }

    #[test]
    fn geometric_times_open_chain_end() {
        let c = "x:8,y:8,t:4";
        let g = mono(int(2), &[("y", 2), ("t", 1)], c).geometric().unwrap();
        let b = g.mul(&mono(int(1), &[("x", 2), ("t", 1)], c));
        let m = MultiIndex::from_pairs([("x", 2), ("y", 4), ("t", 3)]);
        assert_eq!(b.coeff(&m).unwrap(), int(4));
    }

    #[test]
    fn pow_frac_inverse_square_root() {
        let z = mono(int(-2), &[("z", 1)], "z:6");
        let p = z.pow_frac(&rat(-1, 2)).unwrap();
        // (1-4w)^{-1/2} = Σ C(2k,k) w^k with w = z/2
        assert_eq!(p.coeff(&MultiIndex::var("z", 1)).unwrap(), int(1));
        assert_eq!(p.coeff(&MultiIndex::var("z", 2)).unwrap(), rat(3, 2));
        assert_eq!(p.coeff(&MultiIndex::var("z", 3)).unwrap(), rat(5, 2));
    }

    #[test]
    fn pow_frac_integer_and_zero() {
        let f = mono(int(3), &[("x", 1)], "x:5").add(&mono(int(1), &[("x", 2)], "x:5"));
        let one = TruncatedSeries::one(caps("x:5"));
        let base = one.add(&f);
        assert_eq!(f.pow_frac(&int(2)).unwrap(), base.mul(&base));
        assert_eq!(f.pow_frac(&int(0)).unwrap(), one);
    }
}
