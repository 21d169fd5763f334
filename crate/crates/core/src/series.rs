//! Truncated power series with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `c(0) + c(1) z + ... + c(N) z^N + O(z^(N+1))`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c(0)");
        TruncatedSeries { coeffs }
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    /// `z^degree` (zero if `degree > order`).
    pub fn monomial(degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `c(i)`, or zero beyond the stored order.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new((0..=order).map(|i| self.coeff(i)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `1 / self`, defined when `c(0) != 0`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Domain("series inverse needs c(0) != 0".into()));
        }
        let n = self.order();
        let mut inv: Vec<BigRational> = Vec::with_capacity(n + 1);
        inv.push(c0.recip());
        for k in 1..=n {
            let s: BigRational = (1..=k).map(|j| &self.coeffs[j] * &inv[k - j]).sum();
            inv.push(-s / c0);
        }
        Ok(Self::new(inv))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// `c(z^t)`, keeping the same order.
    pub fn compose_power(&self, t: usize) -> Self {
        assert!(t >= 1);
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(t) {
                Some(d) if d <= n => out[d] = c.clone(),
                _ => break,
            }
        }
        Self::new(out)
    }

    /// `self / z^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain(format!("series is not divisible by z^{k}")));
        }
        Ok(Self::new(self.coeffs[k..].to_vec()))
    }

    /// Index and value of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, &BigRational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(z^{})", terms.join(", "), self.order() + 1)
    }
}

/// `sum_{n >= 0} z^(2^n) / (1 + epsilon z^(2^n))` through order `order`,
/// built from exact series division of each term.
///
/// `epsilon = -1` gives the ruler series `G`, `epsilon = +1` the Fermat
/// series `F`.
pub fn golomb_series(epsilon: i8, order: usize) -> Result<TruncatedSeries> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::Domain("epsilon must be +1 or -1".into()));
    }
    if order == 0 {
        return Err(Error::Domain("series order must be >= 1".into()));
    }
    let eps = BigRational::from_integer(BigInt::from(epsilon));
    let one = TruncatedSeries::monomial(0, order);
    let mut total = TruncatedSeries::zero(order);
    let mut power = 1usize;
    while power <= order {
        let z_pow = TruncatedSeries::monomial(power, order);
        let denom = one.add(&z_pow.scale(&eps));
        total = total.add(&z_pow.div(&denom)?);
        power *= 2;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{fermat_coefficient, ruler_value};
    use proptest::prelude::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn golomb_examples() {
        assert_eq!(ints(&golomb_series(-1, 8).unwrap()), [0, 1, 2, 1, 3, 1, 2, 1, 4]);
        assert_eq!(ints(&golomb_series(1, 4).unwrap()), [0, 1, 0, 1, -1]);
        assert!(golomb_series(0, 4).is_err());
    }

    #[test]
    fn golomb_matches_closed_forms() {
        let g = ints(&golomb_series(-1, 300).unwrap());
        let f = ints(&golomb_series(1, 300).unwrap());
        for n in 1..=300 {
            assert_eq!(g[n], i64::from(ruler_value(n as u64).unwrap()));
            assert_eq!(f[n], fermat_coefficient(n as u64).unwrap());
        }
    }

    #[test]
    fn inverse_of_one_minus_z() {
        let s = TruncatedSeries::from_ints([1, -1, 0, 0, 0]);
        assert_eq!(ints(&s.inverse().unwrap()), [1, 1, 1, 1, 1]);
        assert!(TruncatedSeries::from_ints([0, 1]).inverse().is_err());
    }

    #[test]
    fn compose_and_shift() {
        let s = TruncatedSeries::from_ints([1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(ints(&s.compose_power(2)), [1, 0, 2, 0, 3, 0, 4]);
        let t = TruncatedSeries::from_ints([0, 0, 5, 6]);
        assert_eq!(ints(&t.shift_down(2).unwrap()), [5, 6]);
        assert!(t.shift_down(3).is_err());
    }

    proptest! {
        #[test]
        fn division_round_trips(
            a in prop::collection::vec(-9i64..=9, 8),
            b in prop::collection::vec(-9i64..=9, 7),
        ) {
            let a = TruncatedSeries::from_ints(a);
            let b = TruncatedSeries::from_ints(std::iter::once(1).chain(b));
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
        }
    }
}
