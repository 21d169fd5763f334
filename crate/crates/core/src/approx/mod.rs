//! Rational approximations to `H(1/b)` built from the lifted Padé
//! approximants, and the exponent bookkeeping around them.

mod bounds;
mod log;

pub use bounds::{
    ar_bound, family_bound, family_parameters, gap_bound, gap_sequence, window_delta, window_family_bound,
    GapSequence,
};
pub use log::{effective_exponent, ln_enclosure, LOG_FRACTION_BITS};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::pade::{golomb_pade, PadeApproximant};
use crate::poly::{canonicalize, IntPolynomial};
use crate::serde_util;

fn check_epsilon(epsilon: i8) -> Result<()> {
    if epsilon == 1 || epsilon == -1 {
        Ok(())
    } else {
        Err(Error::Domain(format!("epsilon must be +1 or -1, got {epsilon}")))
    }
}

fn check_base(b: u64) -> Result<()> {
    if b < 2 {
        return Err(Error::Domain(format!("base must be >= 2, got {b}")));
    }
    Ok(())
}

/// `P_{k,m} / Q_{k,m}` approximating `H(z)` to order about `2^m (2k+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedApproximant {
    pub k: usize,
    pub m: u32,
    pub epsilon: i8,
    pub p: IntPolynomial,
    pub q: IntPolynomial,
    #[serde(serialize_with = "serde_util::rational")]
    pub h_k: BigRational,
}

impl LiftedApproximant {
    /// `2^m (k + 1)`, the common degree bound and scaling exponent.
    pub fn degree_bound(&self) -> usize {
        (1usize << self.m) * (self.k + 1)
    }
}

/// Uses `H(z) = sum_{j<m} z^(2^j)/(1 + epsilon z^(2^j)) + H(z^(2^m))` with
/// the approximant substituted for the last term.
pub fn lift(a: &PadeApproximant, m: u32, epsilon: i8) -> Result<LiftedApproximant> {
    check_epsilon(epsilon)?;
    if m >= usize::BITS - 8 {
        return Err(Error::Domain(format!("lift exponent m = {m} is too large")));
    }
    let t = 1usize << m;
    let factor =
        |j: u32| IntPolynomial::one().add(&IntPolynomial::monomial(BigInt::from(epsilon), 1usize << j));
    let denom = IntPolynomial::fermat_product(epsilon, m);
    let mut numer = IntPolynomial::zero();
    for j in 0..m {
        let others = (0..m).filter(|&i| i != j).fold(IntPolynomial::one(), |acc, i| acc.mul(&factor(i)));
        numer = numer.add(&IntPolynomial::monomial(BigInt::one(), 1usize << j).mul(&others));
    }
    let qt = a.q.compose_power(t);
    let pt = a.p.compose_power(t);
    let q = denom.mul(&qt);
    let p = numer.mul(&qt).add(&denom.mul(&pt));
    let (p, q) = canonicalize(&p, &q).ok_or_else(|| Error::MalformedApproximant("lifted Q(0) = 0".into()))?;
    Ok(LiftedApproximant { k: a.k, m, epsilon, p, q, h_k: a.h_k.clone() })
}

/// Exact partial sum `sum_{n <= terms} x^(2^n) / (1 + epsilon x^(2^n))`, `x = 1/b`.
fn partial_sum(epsilon: i8, b: u64, terms: u32) -> BigRational {
    let x = BigRational::new(BigInt::one(), BigInt::from(b));
    let mut power = x;
    let mut total = BigRational::zero();
    for _ in 0..=terms {
        let denom = BigRational::one() + &power * BigRational::from_integer(epsilon.into());
        total += &power / denom;
        power = &power * &power;
    }
    total
}

/// `4 b^(-2^(terms+1))`, bounding the omitted terms.
fn tail_bound(b: u64, terms: u32) -> BigRational {
    BigRational::new(BigInt::from(4), Pow::pow(BigInt::from(b), 1u64 << (terms + 1)))
}

/// Enclosure of `H(1/b)` of width below `target_gap`.
///
/// Every term is positive for `b >= 2` and either sign, so the partial sum
/// is a lower bound and the tail bound gives the upper end. Intervals for
/// smaller gaps are nested inside those for larger ones.
pub fn evaluate_reference(epsilon: i8, b: u64, target_gap: &BigRational) -> Result<RationalInterval> {
    check_epsilon(epsilon)?;
    check_base(b)?;
    if !target_gap.is_positive() {
        return Err(Error::Domain("target gap must be positive".into()));
    }
    let mut terms = 0u32;
    while tail_bound(b, terms) >= *target_gap {
        terms += 1;
        if terms > 40 {
            return Err(Error::Unsupported("target gap below 2^(-2^40)".into()));
        }
    }
    let s = partial_sum(epsilon, b, terms);
    let t = tail_bound(b, terms);
    RationalInterval::new(s.clone(), s + t)
}

/// Rounding direction attached to an inexact reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    Down,
    Up,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergentRecord {
    pub k: usize,
    pub m: u32,
    pub b: u64,
    pub epsilon: i8,
    #[serde(serialize_with = "serde_util::bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "serde_util::bigint")]
    pub q: BigInt,
    /// Encloses `|alpha - p/q|`.
    pub err: RationalInterval,
    /// Lower witness for `-ln|alpha - p/q| / ln q`, on a `2^-64` grid.
    #[serde(serialize_with = "serde_util::rational")]
    pub mu_eff: BigRational,
    pub mu_eff_rounding: Rounding,
}

impl ConvergentRecord {
    /// `err * b^(2^m (2k+1))`.
    pub fn scaled_error(&self) -> RationalInterval {
        let e = (1u64 << self.m) * (2 * self.k as u64 + 1);
        self.err.scale(&BigRational::from_integer(Pow::pow(BigInt::from(self.b), e)))
    }
}

/// `(p, q) = b^(2^m (k+1)) (P_{k,m}(1/b), Q_{k,m}(1/b))` with `q > 0`,
/// not reduced.
pub fn scaled_pair(l: &LiftedApproximant, b: u64) -> Result<(BigInt, BigInt)> {
    check_base(b)?;
    let d = l.degree_bound();
    let bb = BigInt::from(b);
    let p = l.p.eval_reciprocal_scaled(&bb, d);
    let q = l.q.eval_reciprocal_scaled(&bb, d);
    if q.is_zero() {
        return Err(Error::DegenerateEvaluation { k: l.k, m: l.m, b });
    }
    Ok(if q.is_negative() { (-p, -q) } else { (p, q) })
}

pub fn convergent(l: &LiftedApproximant, b: u64, alpha: &RationalInterval) -> Result<ConvergentRecord> {
    let (p, q) = scaled_pair(l, b)?;
    let limit = BigRational::new(BigInt::one(), &q * &q);
    if alpha.width() >= limit {
        return Err(Error::InsufficientPrecision(format!(
            "reference width must be below 1/q^2 for k = {}, m = {}",
            l.k, l.m
        )));
    }
    let err = alpha.sub_rational(&BigRational::new(p.clone(), q.clone())).abs();
    if !err.lo().is_positive() {
        return Err(Error::InsufficientPrecision(format!(
            "error enclosure for k = {}, m = {} touches zero",
            l.k, l.m
        )));
    }
    let mu_eff = effective_exponent(&err, &q)?;
    Ok(ConvergentRecord {
        k: l.k,
        m: l.m,
        b,
        epsilon: l.epsilon,
        p,
        q,
        err,
        mu_eff,
        mu_eff_rounding: Rounding::Down,
    })
}

/// Width small enough for every convergent with denominator up to `q_max`.
pub fn reference_gap(q_max: &BigInt) -> BigRational {
    BigRational::new(BigInt::one(), q_max * q_max * (BigInt::one() << LOG_FRACTION_BITS))
}

/// Even `k` with `k + 1` odd in `[2^(K-1) + 1, 2^K + 1]`.
pub fn admissible_orders(big_k: u32) -> Result<Vec<usize>> {
    if big_k == 0 || big_k > 16 {
        return Err(Error::Domain(format!("K must be in 1..=16, got {big_k}")));
    }
    let lo = 1usize << (big_k - 1);
    let hi = 1usize << big_k;
    Ok((lo..=hi).filter(|k| k % 2 == 0).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedEntry {
    pub k: usize,
    pub m: u32,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderSummary {
    pub k: usize,
    /// First `m` from which `q_{k,m}` exists and increases.
    pub m0: u32,
    /// `(2k+1)/(k+1)`, the limit of `mu_eff` along this `k`.
    #[serde(serialize_with = "serde_util::rational")]
    pub mu_limit: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentSchedule {
    #[serde(rename = "K")]
    pub big_k: u32,
    pub b: u64,
    pub epsilon: i8,
    pub m_max: u32,
    #[serde(serialize_with = "serde_util::rational")]
    pub theta: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub delta: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub rho: BigRational,
    /// Smallest `k/(k+1)` over the admissible orders.
    #[serde(serialize_with = "serde_util::rational")]
    pub delta_window_min: BigRational,
    pub orders: Vec<OrderSummary>,
    pub reference: RationalInterval,
    /// Sorted by `q`.
    pub records: Vec<ConvergentRecord>,
    pub skipped: Vec<SkippedEntry>,
    /// Upper bound on `max ln q_(n+1) / ln q_n` over consecutive records.
    #[serde(serialize_with = "serde_util::rational")]
    pub max_log_ratio: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub mu_eff_min: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub mu_eff_max: BigRational,
    /// Number of trailing records summarised by the `tail_*` fields.
    pub tail_len: usize,
    #[serde(serialize_with = "serde_util::rational")]
    pub tail_mu_eff_min: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub tail_mu_eff_max: BigRational,
}

impl ExponentSchedule {
    pub fn q_strictly_increasing(&self) -> bool {
        self.records.windows(2).all(|w| w[0].q < w[1].q)
    }

    pub fn last(&self) -> &ConvergentRecord {
        self.records.last().expect("schedules are never empty")
    }
}

const MIN_RECORDS_PER_ORDER: usize = 3;

/// All convergents `q_{k,m}` for admissible `k` and `m0(k) <= m <= m_max`,
/// sorted by `q`.
///
/// `m0(k)` is the smallest `m` from which every `m' <= m_max` gives a
/// nonzero `Q_{k,m'}(1/b)` and `q` strictly increases. The tail is the last
/// half of the sorted records (rounded up).
pub fn exponent_schedule(big_k: u32, b: u64, epsilon: i8, m_max: u32) -> Result<ExponentSchedule> {
    check_epsilon(epsilon)?;
    check_base(b)?;
    let orders = admissible_orders(big_k)?;
    let approximants: Vec<PadeApproximant> =
        orders.par_iter().map(|&k| golomb_pade(epsilon, k)).collect::<Result<_>>()?;

    let jobs: Vec<(usize, u32)> = (0..orders.len()).flat_map(|i| (0..=m_max).map(move |m| (i, m))).collect();
    let lifted: Vec<LiftedApproximant> =
        jobs.par_iter().map(|&(i, m)| lift(&approximants[i], m, epsilon)).collect::<Result<_>>()?;
    let pairs: Vec<Result<(BigInt, BigInt)>> = lifted.par_iter().map(|l| scaled_pair(l, b)).collect();

    let mut skipped = Vec::new();
    let mut chosen: Vec<&LiftedApproximant> = Vec::new();
    let mut summaries = Vec::new();
    for (i, &k) in orders.iter().enumerate() {
        let row = |m: u32| &pairs[i * (m_max as usize + 1) + m as usize];
        let mut m0 = m_max + 1;
        for m in (0..=m_max).rev() {
            let ok = match (row(m), (m < m_max).then(|| row(m + 1))) {
                (Ok(_), None) => true,
                (Ok((_, q)), Some(Ok((_, q_next)))) => q < q_next && m0 == m + 1,
                _ => false,
            };
            if !ok {
                break;
            }
            m0 = m;
        }
        for m in 0..m0 {
            let reason = match row(m) {
                Err(e) => e.to_string(),
                Ok(_) => "before the increasing range".to_string(),
            };
            skipped.push(SkippedEntry { k, m, reason });
        }
        let found = (m_max + 1 - m0) as usize;
        if found < MIN_RECORDS_PER_ORDER {
            return Err(Error::InsufficientRecords { k, found, needed: MIN_RECORDS_PER_ORDER });
        }
        summaries.push(OrderSummary {
            k,
            m0,
            mu_limit: BigRational::new((2 * k + 1).into(), (k + 1).into()),
        });
        chosen.extend((m0..=m_max).map(|m| &lifted[i * (m_max as usize + 1) + m as usize]));
    }

    let q_max = chosen
        .iter()
        .map(|l| scaled_pair(l, b).expect("kept entries are non-degenerate").1)
        .max()
        .expect("at least one order");
    let reference = evaluate_reference(epsilon, b, &reference_gap(&q_max))?;
    let mut records: Vec<ConvergentRecord> =
        chosen.par_iter().map(|l| convergent(l, b, &reference)).collect::<Result<_>>()?;
    records.sort_by(|a, b| (&a.q, a.k, a.m).cmp(&(&b.q, b.k, b.m)));

    let mut max_log_ratio = BigRational::zero();
    for w in records.windows(2) {
        let hi = ln_enclosure(&BigRational::from_integer(w[1].q.clone()))?;
        let lo = ln_enclosure(&BigRational::from_integer(w[0].q.clone()))?;
        if lo.lo().is_positive() {
            max_log_ratio = max_log_ratio.max(hi.hi() / lo.lo());
        }
    }
    let min_max = |rs: &[ConvergentRecord]| {
        let min = rs.iter().map(|r| &r.mu_eff).min().expect("non-empty").clone();
        let max = rs.iter().map(|r| &r.mu_eff).max().expect("non-empty").clone();
        (min, max)
    };
    let (mu_eff_min, mu_eff_max) = min_max(&records);
    let tail_len = records.len().div_ceil(2);
    let (tail_mu_eff_min, tail_mu_eff_max) = min_max(&records[records.len() - tail_len..]);
    let (rho, theta, delta) = family_parameters(big_k)?;
    Ok(ExponentSchedule {
        big_k,
        b,
        epsilon,
        m_max,
        theta,
        delta,
        rho,
        delta_window_min: window_delta(big_k)?,
        orders: summaries,
        reference,
        records,
        skipped,
        max_log_ratio,
        mu_eff_min,
        mu_eff_max,
        tail_len,
        tail_mu_eff_min,
        tail_mu_eff_max,
    })
}

/// `golomb_pade`, `lift`, reference and `convergent` in one call.
pub fn approximate(epsilon: i8, b: u64, k: usize, m: u32) -> Result<(LiftedApproximant, ConvergentRecord)> {
    let a = golomb_pade(epsilon, k)?;
    let l = lift(&a, m, epsilon)?;
    let (_, q) = scaled_pair(&l, b)?;
    let alpha = evaluate_reference(epsilon, b, &reference_gap(&q))?;
    let rec = convergent(&l, b, &alpha)?;
    Ok((l, rec))
}

/// `gcd(p, q)`, for reporting how far a convergent is from lowest terms.
pub fn common_factor(rec: &ConvergentRecord) -> BigInt {
    rec.p.gcd(&rec.q)
}
