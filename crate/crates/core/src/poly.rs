use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::series::TruncatedSeries;

/// Integer polynomial with the leading coefficient nonzero (empty = zero).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints([1])
    }

    /// `c z^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn exact_div(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c / s).collect())
    }

    /// `p(z^t)`.
    pub fn compose_power(&self, t: usize) -> Self {
        assert!(t >= 1);
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut out = vec![BigInt::zero(); deg * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * t] = c.clone();
        }
        Self::new(out)
    }

    /// `z * p(z)`.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// `b^d p(1/b) = sum_i c_i b^(d - i)`, an integer whenever `deg p <= d`.
    /// Panics if the degree exceeds `d`.
    pub fn eval_reciprocal_scaled(&self, b: &BigInt, d: usize) -> BigInt {
        assert!(self.degree().is_none_or(|deg| deg <= d), "degree exceeds scale exponent");
        // Horner in b over the reversed coefficient list, padded to length d+1.
        let mut acc = BigInt::zero();
        for i in 0..=d {
            acc = acc * b + self.coeff(i);
        }
        acc
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new((0..=order).map(|i| BigRational::from_integer(self.coeff(i))).collect())
    }

    pub fn leading_sign_positive_at_zero(&self) -> bool {
        self.coeff(0).is_positive()
    }

    /// `prod_{j < m} (1 + epsilon z^(2^j))`.
    pub fn fermat_product(epsilon: i8, m: u32) -> Self {
        (0..m).fold(Self::one(), |acc, j| {
            let factor = Self::one().add(&Self::monomial(BigInt::from(epsilon), Pow::pow(2usize, j)));
            acc.mul(&factor)
        })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Divide `p` and `q` by their joint content and flip signs so that
/// `q(0) > 0`. Returns `None` if `q(0) = 0`.
pub fn canonicalize(p: &IntPolynomial, q: &IntPolynomial) -> Option<(IntPolynomial, IntPolynomial)> {
    let q0 = q.coeff(0);
    if q0.is_zero() {
        return None;
    }
    let mut g = p.content().gcd(&q.content());
    if q0.is_negative() {
        g = -g;
    }
    if g.is_one() {
        return Some((p.clone(), q.clone()));
    }
    Some((p.exact_div(&g), q.exact_div(&g)))
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a list of decimal strings, lowest degree first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}
