//! Serializers that emit big numbers as decimal strings.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serializer;

pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Always `numer/denom`, so integers read `6/1`.
pub fn rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", x.numer(), x.denom()))
}

pub fn biguints<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}
