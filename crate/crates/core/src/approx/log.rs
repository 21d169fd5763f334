//! Natural logarithms with outward rounding, in binary fixed point.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::RationalInterval;

/// Fractional bits of every endpoint returned by [`ln_enclosure`].
pub const LOG_FRACTION_BITS: u64 = 64;

const WORK_BITS: u64 = 96;

fn ceil_shr(x: &BigInt, bits: u64) -> BigInt {
    -((-x) >> bits)
}

/// Lower (`up = false`) or upper bound on `atanh(y)` in units of
/// `2^-WORK_BITS`, where the true argument lies at or below (resp. above)
/// `y * 2^-WORK_BITS`. Requires `0 <= y <= 1/3`.
fn atanh_fixed(y: &BigInt, up: bool) -> BigInt {
    let sq = y * y;
    let y2 = if up { ceil_shr(&sq, WORK_BITS) } else { sq >> WORK_BITS };
    let mut power = y.clone();
    let mut sum = BigInt::zero();
    let mut d = BigInt::one();
    loop {
        sum += if up { Integer::div_ceil(&power, &d) } else { &power / &d };
        if power.is_zero() {
            break;
        }
        let next = &power * &y2;
        power = if up { ceil_shr(&next, WORK_BITS) } else { next >> WORK_BITS };
        if up && power <= BigInt::one() {
            // Remaining terms sum to at most power / (1 - y^2) <= 9/8.
            sum += 2;
            break;
        }
        d += 2;
    }
    sum
}

/// `[lo, hi]` bounds on `ln 2` in work units.
fn ln2_fixed() -> (BigInt, BigInt) {
    let one = BigInt::one() << WORK_BITS;
    let (third, rem) = one.div_rem(&BigInt::from(3));
    let third_hi = if rem.is_zero() { third.clone() } else { &third + 1 };
    (atanh_fixed(&third, false) * 2, atanh_fixed(&third_hi, true) * 2)
}

/// Interval with endpoints in `2^-64 Z` containing `ln x`, for `x > 0`.
pub fn ln_enclosure(x: &BigRational) -> Result<RationalInterval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("logarithm of non-positive {x}")));
    }
    let (num, den) = (x.numer(), x.denom());
    // 2^e <= x < 2^(e+1)
    let mut e = num.bits() as i64 - den.bits() as i64;
    let scaled = |e: i64| -> (BigInt, BigInt) {
        if e >= 0 {
            (num.clone(), den << e as u64)
        } else {
            (num << (-e) as u64, den.clone())
        }
    };
    let (mut sn, mut sd) = scaled(e);
    if sn < sd {
        e -= 1;
        (sn, sd) = scaled(e);
    }
    debug_assert!(sd <= sn && sn < &sd * 2);

    // ln s = 2 atanh((s - 1)/(s + 1)) with s = sn/sd in [1, 2).
    let (y_lo, rem) = ((&sn - &sd) << WORK_BITS).div_rem(&(&sn + &sd));
    let y_hi = if rem.is_zero() { y_lo.clone() } else { &y_lo + 1 };
    let ln_s = (atanh_fixed(&y_lo, false) * 2, atanh_fixed(&y_hi, true) * 2);

    let (l2_lo, l2_hi) = ln2_fixed();
    let eb = BigInt::from(e);
    let ln_pow = if e >= 0 { (&eb * &l2_lo, &eb * &l2_hi) } else { (&eb * &l2_hi, &eb * &l2_lo) };

    let lo = ln_s.0 + ln_pow.0;
    let hi = ln_s.1 + ln_pow.1;
    let shift = WORK_BITS - LOG_FRACTION_BITS;
    let unit = BigInt::one() << LOG_FRACTION_BITS;
    let lo = BigRational::new(lo >> shift, unit.clone());
    let hi = BigRational::new(ceil_shr(&hi, shift), unit);
    RationalInterval::new(lo, hi)
}

/// `floor(x * 2^64) / 2^64`.
pub fn floor_to_fraction_bits(x: &BigRational) -> BigRational {
    let unit = BigInt::one() << LOG_FRACTION_BITS;
    let scaled = (x.numer() * &unit).div_floor(x.denom());
    BigRational::new(scaled, unit)
}

/// Lower bound on `-ln(err_hi) / ln(q)`: any `mu` below it satisfies
/// `|alpha - p/q| < q^(-mu)` whenever `|alpha - p/q| <= err_hi`.
pub fn effective_exponent(err: &RationalInterval, q: &BigInt) -> Result<BigRational> {
    if q < &BigInt::from(2) {
        return Err(Error::Domain(format!("effective exponent needs q >= 2, got {q}")));
    }
    if !err.lo().is_positive() {
        return Err(Error::InsufficientPrecision("error enclosure touches zero".into()));
    }
    let ln_err = ln_enclosure(err.hi())?;
    let ln_q = ln_enclosure(&BigRational::from_integer(q.clone()))?;
    let num = -ln_err.hi();
    let den = if num.numer().sign() == Sign::Minus { ln_q.lo() } else { ln_q.hi() };
    Ok(floor_to_fraction_bits(&(num / den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::approx_f64;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ln_of_small_values() {
        for (x, want) in [(rat(2, 1), 2f64.ln()), (rat(3, 1), 3f64.ln()), (rat(1, 7), (1.0f64 / 7.0).ln())] {
            let i = ln_enclosure(&x).unwrap();
            assert!(approx_f64(i.lo()) <= want + 1e-15 && want - 1e-15 <= approx_f64(i.hi()));
            assert!(i.width() <= rat(1, 1 << 60));
        }
        let one = ln_enclosure(&rat(1, 1)).unwrap();
        assert!(one.contains(&BigRational::zero()));
        assert!(ln_enclosure(&rat(0, 1)).is_err());
    }

    #[test]
    fn ln2_bounds_bracket_known_digits() {
        // ln 2 = 0.693147180559945309417232121458...
        let lo_known = BigRational::new(693147180559945309417232121458u128.into(), 10u128.pow(30).into());
        let hi_known = lo_known.clone() + rat(1, 1) / BigRational::from_integer(10u128.pow(30).into());
        let (lo, hi) = ln2_fixed();
        let unit = BigRational::from_integer(BigInt::one() << WORK_BITS);
        assert!(BigRational::from_integer(lo) / &unit <= hi_known);
        assert!(BigRational::from_integer(hi) / &unit >= lo_known);
    }

    #[test]
    fn exponent_defining_cases() {
        for q in [1024i64, 1000, 3] {
            let qb = BigInt::from(q);
            for mu in [2i64, 3] {
                let e = BigRational::new(BigInt::one(), num_traits::Pow::pow(&qb, mu as u32));
                let got = effective_exponent(&RationalInterval::point(e), &qb).unwrap();
                assert!(got <= rat(mu, 1), "q={q} mu={mu}");
                assert!(got >= rat(mu, 1) - rat(1, 1 << 50), "q={q} mu={mu}: {got}");
            }
        }
        let zero_touch = RationalInterval::new(rat(0, 1), rat(1, 4)).unwrap();
        assert!(effective_exponent(&zero_touch, &BigInt::from(4)).is_err());
        assert!(effective_exponent(&RationalInterval::point(rat(1, 4)), &BigInt::one()).is_err());
    }

    proptest! {
        #[test]
        fn ln_brackets_f64(n in 1u64..1_000_000_000, d in 1u64..1_000_000_000) {
            let x = BigRational::new(n.into(), d.into());
            let i = ln_enclosure(&x).unwrap();
            let want = (n as f64).ln() - (d as f64).ln();
            prop_assert!(approx_f64(i.lo()) <= want + 1e-9);
            prop_assert!(approx_f64(i.hi()) >= want - 1e-9);
            prop_assert!(i.width() <= rat(1, 1 << 58));
        }

        #[test]
        fn ln_is_additive_within_enclosures(a in 1u64..100_000, b in 1u64..100_000) {
            let la = ln_enclosure(&BigRational::from_integer(a.into())).unwrap();
            let lb = ln_enclosure(&BigRational::from_integer(b.into())).unwrap();
            let lab = ln_enclosure(&BigRational::from_integer((a * b).into())).unwrap();
            prop_assert!(la.lo() + lb.lo() <= *lab.hi());
            prop_assert!(la.hi() + lb.hi() >= *lab.lo());
        }
    }
}
