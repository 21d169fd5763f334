//! Exact Hankel determinants of the ruler and Fermat coefficient
//! sequences, the Padé approximants they control, and the rational
//! approximations to `sum 1/(2^(2^n) + 1)` and its relatives built from them.

pub mod approx;
pub mod error;
pub mod hankel;
pub mod interval;
pub mod linalg;
pub mod pade;
pub mod poly;
pub mod sequences;
mod serde_util;
pub mod series;

pub use approx::{
    ar_bound, convergent, evaluate_reference, exponent_schedule, gap_sequence, lift, ConvergentRecord,
    ExponentSchedule, GapSequence, LiftedApproximant,
};
pub use error::{Error, Result};
pub use hankel::{HankelQuery, ParityReport, TableEdition, Variant};
pub use interval::RationalInterval;
pub use linalg::{ExactMatrix, Gf2Matrix};
pub use pade::{defect, golomb_pade, pade_k, PadeApproximant};
pub use poly::IntPolynomial;
pub use sequences::SequenceSpec;
pub use series::{golomb_series, TruncatedSeries};
