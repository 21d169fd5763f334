//! `[k-1/k]` Padé approximants and the defect coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::poly::{canonicalize, IntPolynomial};
use crate::series::{golomb_series, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadeApproximant {
    pub k: usize,
    pub p: IntPolynomial,
    pub q: IntPolynomial,
    pub h_k: BigRational,
}

#[derive(Serialize)]
struct PadeJson<'a> {
    k: usize,
    p: &'a IntPolynomial,
    q: &'a IntPolynomial,
    h_k: String,
}

impl Serialize for PadeApproximant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let h_k = format!("{}/{}", self.h_k.numer(), self.h_k.denom());
        PadeJson { k: self.k, p: &self.p, q: &self.q, h_k }.serialize(s)
    }
}

impl PadeApproximant {
    /// `P/Q` as a series through `order`.
    pub fn to_series(&self, order: usize) -> Result<TruncatedSeries> {
        if self.q.coeff(0).is_zero() {
            return Err(Error::MalformedApproximant("Q(0) = 0".into()));
        }
        self.p.to_series(order).div(&self.q.to_series(order))
    }

    pub fn canonicalized(&self) -> Result<Self> {
        let (p, q) =
            canonicalize(&self.p, &self.q).ok_or_else(|| Error::MalformedApproximant("Q(0) = 0".into()))?;
        Ok(PadeApproximant { k: self.k, p, q, h_k: self.h_k.clone() })
    }
}

fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

/// `det H_n^p(c)` for a rational series, via the integer matrix `L c`
/// where `L` clears all denominators in the window.
pub fn series_hankel_det(c: &TruncatedSeries, p: usize, n: usize) -> Result<BigRational> {
    if n == 0 {
        return Ok(BigRational::one());
    }
    if p + 2 * (n - 1) > c.order() {
        return Err(Error::Domain(format!(
            "H_{n}^{p} needs coefficients through {}, series has order {}",
            p + 2 * (n - 1),
            c.order()
        )));
    }
    let window = &c.coeffs()[p..=p + 2 * (n - 1)];
    let l = lcm_of_denominators(window);
    let ints: Vec<BigInt> =
        window.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let det = ExactMatrix::from_fn(n, |i, j| ints[i + j].clone()).det();
    Ok(BigRational::new(det, num_traits::Pow::pow(&l, n)))
}

/// Gaussian elimination over the rationals; `None` if singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
            let t = &f * &rhs[col];
            rhs[r] -= t;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for r in (0..n).rev() {
        let s: BigRational = (r + 1..n).map(|c| &a[r][c] * &x[c]).sum();
        x[r] = (&rhs[r] - s) / &a[r][r];
    }
    Some(x)
}

/// The `[k-1/k]` approximant of `c` with `Q(0) = 1` before clearing
/// denominators; `h_k` is filled in by [`defect`].
pub fn pade_k(c: &TruncatedSeries, k: usize) -> Result<PadeApproximant> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    if c.order() < 2 * k + 1 {
        return Err(Error::Domain(format!(
            "[{}/{k}] needs series order >= {}, got {}",
            k - 1,
            2 * k + 1,
            c.order()
        )));
    }
    for j in 1..=k {
        if series_hankel_det(c, 0, j)?.is_zero() {
            return Err(Error::NotNormal { order: j });
        }
    }
    let coef = |i: isize| if i < 0 { BigRational::zero() } else { c.coeff(i as usize) };
    let ki = k as isize;
    let a: Vec<Vec<BigRational>> = (0..ki).map(|i| (1..=ki).map(|j| coef(ki + i - j)).collect()).collect();
    let rhs: Vec<BigRational> = (0..ki).map(|i| -coef(ki + i)).collect();
    let tail = solve(a, rhs).ok_or(Error::NotNormal { order: k })?;

    let mut q_rat = vec![BigRational::one()];
    q_rat.extend(tail);
    let p_rat: Vec<BigRational> = (0..k).map(|i| (0..=i).map(|j| c.coeff(i - j) * &q_rat[j]).sum()).collect();

    let l = lcm_of_denominators(q_rat.iter().chain(p_rat.iter()));
    let clear = |v: &[BigRational]| {
        IntPolynomial::new(
            v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect(),
        )
    };
    let (p, q) = canonicalize(&clear(&p_rat), &clear(&q_rat)).expect("Q(0) = 1 before scaling");
    let mut approx = PadeApproximant { k, p, q, h_k: BigRational::zero() };
    approx.h_k = defect(c, &approx)?;
    Ok(approx)
}

/// Coefficient of `z^(2k)` in `c - P/Q`.
pub fn defect(c: &TruncatedSeries, a: &PadeApproximant) -> Result<BigRational> {
    if c.order() < 2 * a.k + 1 {
        return Err(Error::Domain(format!("defect at z^{} needs series order >= {}", 2 * a.k, 2 * a.k + 1)));
    }
    let r = a.to_series(c.order())?;
    Ok(c.sub(&r).coeff(2 * a.k))
}

/// First nonzero coefficient of `c - P/Q` (within the order of `c`).
pub fn contact(
    c: &TruncatedSeries,
    p: &IntPolynomial,
    q: &IntPolynomial,
) -> Result<Option<(usize, BigRational)>> {
    if q.coeff(0).is_zero() {
        return Err(Error::MalformedApproximant("Q(0) = 0".into()));
    }
    let n = c.order();
    let diff = c.sub(&p.to_series(n).div(&q.to_series(n))?);
    Ok(diff.first_nonzero().map(|(i, v)| (i, v.clone())))
}

/// Approximant `P_k/Q_k` of `H(z) = sum z^(2^n)/(1 + epsilon z^(2^n))` with
/// `P_k(0) = 0` and `H - P_k/Q_k = h_k z^(2k+1) + O(z^(2k+2))`.
pub fn golomb_pade(epsilon: i8, k: usize) -> Result<PadeApproximant> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    let order = 2 * k + 4;
    let h = golomb_series(epsilon, order)?;
    let shifted = h.shift_down(1)?;
    let inner = pade_k(&shifted, k)?;
    let approx = PadeApproximant { k, p: inner.p.shift_up(), q: inner.q, h_k: inner.h_k };
    match contact(&h, &approx.p, &approx.q)? {
        Some((at, v)) if at == 2 * k + 1 && v == approx.h_k => Ok(approx),
        other => Err(Error::MalformedApproximant(format!(
            "expected contact h_k z^{} with h_k = {}, found {other:?}",
            2 * k + 1,
            approx.h_k
        ))),
    }
}
