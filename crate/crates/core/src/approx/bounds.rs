use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::serde_util;

/// `(1 + rho) * theta / delta`, for `0 < delta <= rho` and `theta >= 1`.
pub fn ar_bound(rho: &BigRational, delta: &BigRational, theta: &BigRational) -> Result<BigRational> {
    if !(delta > &BigRational::zero() && delta <= rho) {
        return Err(Error::Domain(format!("need 0 < delta <= rho, got delta = {delta}, rho = {rho}")));
    }
    if theta < &BigRational::one() {
        return Err(Error::Domain(format!("need theta >= 1, got {theta}")));
    }
    Ok((BigRational::one() + rho) * theta / delta)
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// `(2^(K-1) + 3) / (2^(K-1) + 1)`.
pub fn gap_bound(big_k: u32) -> BigRational {
    let h = pow2(big_k - 1);
    BigRational::new(&h + 3, &h + 1)
}

/// `(rho, theta, delta)` of the dyadic-window family: `rho = 1`,
/// `theta = gap_bound(K)`, `delta = 2^K / (2^K + 1)`.
pub fn family_parameters(big_k: u32) -> Result<(BigRational, BigRational, BigRational)> {
    if big_k == 0 {
        return Err(Error::Domain("K must be >= 1".into()));
    }
    let full = pow2(big_k);
    Ok((BigRational::one(), gap_bound(big_k), BigRational::new(full.clone(), full + 1)))
}

/// [`ar_bound`] at [`family_parameters`]`(K)`.
pub fn family_bound(big_k: u32) -> Result<BigRational> {
    let (rho, theta, delta) = family_parameters(big_k)?;
    ar_bound(&rho, &delta, &theta)
}

/// Smallest even `k` with `k + 1` in `[2^(K-1) + 1, 2^K + 1]`, as `k/(k+1)`.
pub fn window_delta(big_k: u32) -> Result<BigRational> {
    if big_k == 0 {
        return Err(Error::Domain("K must be >= 1".into()));
    }
    let half = pow2(big_k - 1);
    let k_min = if big_k == 1 { BigInt::from(2) } else { half };
    Ok(BigRational::new(k_min.clone(), k_min + 1))
}

/// [`ar_bound`] with `delta` replaced by [`window_delta`]: the exponent the
/// approximations of every admissible order actually support.
pub fn window_family_bound(big_k: u32) -> Result<BigRational> {
    let (rho, theta, _) = family_parameters(big_k)?;
    ar_bound(&rho, &window_delta(big_k)?, &theta)
}

#[derive(Debug, Clone, Serialize)]
pub struct GapSequence {
    #[serde(rename = "K")]
    pub big_k: u32,
    pub n0: u32,
    #[serde(serialize_with = "serde_util::biguints")]
    pub elements: Vec<BigUint>,
    #[serde(serialize_with = "serde_util::rational")]
    pub max_ratio: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub bound: BigRational,
}

/// The `count` smallest numbers `k 2^n` with `n >= n0` and `k` odd in
/// `[2^(K-1) + 1, 2^K + 1]`, with the largest ratio of neighbours.
pub fn gap_sequence(big_k: u32, n0: u32, count: usize) -> Result<GapSequence> {
    if big_k == 0 {
        return Err(Error::Domain("K must be >= 1".into()));
    }
    if count < 2 {
        return Err(Error::Domain("count must be >= 2".into()));
    }
    let k_max = (BigUint::one() << (big_k as usize)) + 1u32;
    let mut next_k = (BigUint::one() << (big_k as usize - 1)) + 1u32;
    if !next_k.bit(0) {
        next_k += 1u32;
    }
    let base = BigUint::one() << n0 as usize;
    // Odd multipliers enter lazily, so huge K only touches what is needed.
    let mut heap: BinaryHeap<Reverse<BigUint>> = BinaryHeap::new();
    let mut elements = Vec::with_capacity(count);
    while elements.len() < count {
        while next_k <= k_max && heap.peek().is_none_or(|Reverse(top)| &next_k * &base < *top) {
            heap.push(Reverse(&next_k * &base));
            next_k += 2u32;
        }
        let Reverse(v) = heap.pop().expect("heap is refilled above");
        heap.push(Reverse(&v << 1));
        elements.push(v);
    }
    let max_ratio = elements
        .windows(2)
        .map(|w| BigRational::new(BigInt::from(w[1].clone()), BigInt::from(w[0].clone())))
        .max()
        .expect("count >= 2");
    Ok(GapSequence { big_k, n0, elements, max_ratio, bound: gap_bound(big_k) })
}
