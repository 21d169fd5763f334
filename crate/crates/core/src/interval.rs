use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `{x - r : x in self}`.
    pub fn sub_rational(&self, r: &BigRational) -> Self {
        RationalInterval { lo: &self.lo - r, hi: &self.hi - r }
    }

    /// `{|x| : x in self}`.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            RationalInterval { lo: -&self.hi, hi: -&self.lo }
        } else {
            let hi = (-&self.lo).max(self.hi.clone());
            RationalInterval { lo: BigRational::zero(), hi }
        }
    }

    /// Multiply by `s >= 0`.
    pub fn scale(&self, s: &BigRational) -> Self {
        assert!(!s.is_negative(), "scale factor must be non-negative");
        RationalInterval { lo: &self.lo * s, hi: &self.hi * s }
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `[lo, hi]` as two rational strings.
impl Serialize for RationalInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = |x: &BigRational| format!("{}/{}", x.numer(), x.denom());
        s.collect_seq([f(&self.lo), f(&self.hi)])
    }
}

/// `x` truncated toward minus infinity to `digits` decimal places.
pub fn decimal_floor(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::Pow::pow(BigInt::from(10), digits);
    let scaled = (x.numer() * &scale).div_floor(x.denom());
    let neg = scaled.is_negative();
    let (int, frac) = scaled.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

/// Nearest `f64`, for display only.
pub fn approx_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn abs_cases() {
        let i = RationalInterval::new(rat(-1, 2), rat(1, 3)).unwrap();
        assert_eq!(i.abs(), RationalInterval::new(rat(0, 1), rat(1, 2)).unwrap());
        let j = RationalInterval::new(rat(-3, 1), rat(-1, 1)).unwrap();
        assert_eq!(j.abs(), RationalInterval::new(rat(1, 1), rat(3, 1)).unwrap());
        assert!(RationalInterval::new(rat(1, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_floor(&rat(2, 3), 4), "0.6666");
        assert_eq!(decimal_floor(&rat(-2, 3), 4), "-0.6667");
        assert_eq!(decimal_floor(&rat(6, 1), 2), "6.00");
        assert_eq!(decimal_floor(&rat(1, 40), 3), "0.025");
    }
}
