//! The integer sequences whose Hankel determinants are studied here.
//!
//! `g(n)` is the ruler function, the 2-adic valuation of `2n`, and `f(n)` is
//! the coefficient of `z^n` in `sum_k z^(2^k) / (1 + z^(2^k))`. The two seeded
//! variants `g0`/`g1` differ only at index 0.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `g(n) = v_2(2n)` for `n >= 1`.
pub fn ruler_value(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("ruler_value is defined for n >= 1".into()));
    }
    Ok(n.trailing_zeros() + 1)
}

/// `f(n) = 2 - g(n)` for `n >= 1`.
///
/// Only odd multiples `n = j 2^k` of each term contribute `(-1)^(j+1)`; summing
/// over the `v_2(n) + 1` terms that divide `n` leaves `1 - v_2(n)`.
pub fn fermat_coefficient(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("fermat_coefficient is defined for n >= 1".into()));
    }
    Ok(2 - i64::from(ruler_value(n)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SequenceSpec {
    /// `u(0) = seed`, `u(n) = g(n)` for `n >= 1`.
    RulerSeeded { seed: u8 },
    /// `u(n) = f(n)`, only for `n >= 1`.
    FermatF,
    /// `u(start + i) = values[i]`.
    Explicit { values: Vec<BigInt>, start: usize },
}

impl SequenceSpec {
    pub fn ruler(seed: u8) -> Self {
        SequenceSpec::RulerSeeded { seed }
    }

    pub fn explicit<I, T>(values: I, start: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        SequenceSpec::Explicit { values: values.into_iter().map(Into::into).collect(), start }
    }

    pub fn value(&self, n: usize) -> Result<BigInt> {
        match self {
            SequenceSpec::RulerSeeded { seed } => {
                if n == 0 {
                    Ok(BigInt::from(*seed))
                } else {
                    Ok(BigInt::from(ruler_value(n as u64)?))
                }
            }
            SequenceSpec::FermatF => Ok(BigInt::from(fermat_coefficient(n as u64)?)),
            SequenceSpec::Explicit { values, start } => {
                n.checked_sub(*start).and_then(|i| values.get(i)).cloned().ok_or_else(|| {
                    Error::Domain(format!(
                        "index {n} outside explicit range [{start}, {})",
                        start + values.len()
                    ))
                })
            }
        }
    }

    /// `u(n) mod 2`, without materialising the big integer for the builtin kinds.
    pub fn parity(&self, n: usize) -> Result<bool> {
        match self {
            SequenceSpec::RulerSeeded { seed } if n == 0 => Ok(seed & 1 == 1),
            SequenceSpec::RulerSeeded { .. } | SequenceSpec::FermatF => Ok(ruler_value(n as u64)? & 1 == 1),
            SequenceSpec::Explicit { .. } => Ok(self.value(n)?.is_odd()),
        }
    }

    /// Smallest valid index.
    pub fn first_index(&self) -> usize {
        match self {
            SequenceSpec::RulerSeeded { .. } => 0,
            SequenceSpec::FermatF => 1,
            SequenceSpec::Explicit { start, .. } => *start,
        }
    }

    /// One past the largest valid index, if bounded.
    pub fn end_index(&self) -> Option<usize> {
        match self {
            SequenceSpec::Explicit { values, start } => Some(start + values.len()),
            _ => None,
        }
    }

    pub fn check_range(&self, from: usize, len: usize) -> Result<()> {
        if len == 0 {
            return Ok(());
        }
        let last = from + len - 1;
        if from < self.first_index() || self.end_index().is_some_and(|end| last >= end) {
            return Err(Error::Domain(format!("indices {from}..={last} not all valid for {}", self.name())));
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        match self {
            SequenceSpec::RulerSeeded { seed } => format!("g{seed}"),
            SequenceSpec::FermatF => "f".into(),
            SequenceSpec::Explicit { start, values } => {
                format!("explicit[{start}..{}]", start + values.len())
            }
        }
    }
}

/// `[u(p), ..., u(p + len - 1)]`.
pub fn sequence_window(spec: &SequenceSpec, p: usize, len: usize) -> Result<Vec<BigInt>> {
    if len == 0 {
        return Err(Error::Domain("window length must be at least 1".into()));
    }
    spec.check_range(p, len)?;
    (p..p + len).map(|n| spec.value(n)).collect()
}
