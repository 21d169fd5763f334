//! Hankel and K-matrices of the ruler-type sequences and their determinant
//! parities.
//!
//! Parities are computed three ways: GF(2) elimination on the reduced matrix
//! ([`parity_direct`]), the mod-6 tables for offsets 0..=2
//! ([`parity_closed_form`]), and the doubling recurrences in [`recurrence`].

pub mod recurrence;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
#[cfg(test)]
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Gf2Matrix};
use crate::sequences::SequenceSpec;

pub use recurrence::{
    is_documented_erratum, recurrence_suite, ClauseSummary, RecurrenceReport, DOCUMENTED_ERRATA,
};

/// `H_n^p(u) = (u(p + i + j))_{0 <= i, j < n}`.
pub fn hankel_matrix(u: &SequenceSpec, p: usize, n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Ok(ExactMatrix::zeros(0));
    }
    let window = crate::sequences::sequence_window(u, p, 2 * n - 1)?;
    Ok(ExactMatrix::from_fn(n, |i, j| window[i + j].clone()))
}

/// `H_n^p(u)` reduced mod 2, built from parities only.
pub fn hankel_gf2(u: &SequenceSpec, p: usize, n: usize) -> Result<Gf2Matrix> {
    if n == 0 {
        return Ok(Gf2Matrix::zeros(0));
    }
    u.check_range(p, 2 * n - 1)?;
    let bits = (p..p + 2 * n - 1).map(|k| u.parity(k)).collect::<Result<Vec<bool>>>()?;
    Ok(Gf2Matrix::from_fn(n, |i, j| bits[i + j]))
}

/// `K_n^p(u) = (u(p + 2(i + j)))_{0 <= i, j < n}`.
pub fn k_matrix(u: &SequenceSpec, p: usize, n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Ok(ExactMatrix::zeros(0));
    }
    u.check_range(p, 4 * (n - 1) + 1)?;
    let values = (0..2 * n - 1).map(|t| u.value(p + 2 * t)).collect::<Result<Vec<_>>>()?;
    Ok(ExactMatrix::from_fn(n, |i, j| values[i + j].clone()))
}

/// The permutation matrix `P_1(size) = (e_1, e_3, ..., e_2, e_4, ...)`, whose
/// columns list the odd-numbered unit vectors before the even-numbered ones.
pub fn interleave_permutation(size: usize) -> ExactMatrix {
    let odd = (0..size).step_by(2);
    let even = (1..size).step_by(2);
    let columns: Vec<usize> = odd.chain(even).collect();
    ExactMatrix::from_fn(size, |i, j| u8::from(columns[j] == i))
}

/// Check that `P_1^t H_(2n)^p P_1` and `P_1^t H_(2n+1)^p P_1` have the
/// K-matrix block structure entrywise.
pub fn interleave_check(u: &SequenceSpec, p: usize, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("interleave_check needs n >= 1".into()));
    }
    let conj = |size: usize| -> Result<ExactMatrix> {
        let perm = interleave_permutation(size);
        Ok(perm.transpose().mul(&hankel_matrix(u, p, size)?).mul(&perm))
    };

    // Even order: [[K_n^p, K_n^(p+1)], [K_n^(p+1), K_n^(p+2)]].
    let even = conj(2 * n)?;
    let (k0, k1, k2) = (k_matrix(u, p, n)?, k_matrix(u, p + 1, n)?, k_matrix(u, p + 2, n)?);
    let expected_even = ExactMatrix::from_fn(2 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let block = match bi + bj {
            0 => &k0,
            1 => &k1,
            _ => &k2,
        };
        block.get(i % n, j % n).clone()
    });
    if even != expected_even {
        return Ok(false);
    }

    // Odd order: [[K_(n+1)^p, K'], [K'^t, K_n^(p+2)]] where K' is K_(n+1)^(p+1)
    // with its last column deleted.
    let odd = conj(2 * n + 1)?;
    let top = k_matrix(u, p, n + 1)?;
    let cross = k_matrix(u, p + 1, n + 1)?.delete_column(n);
    let bottom = k_matrix(u, p + 2, n)?;
    let s = n + 1;
    let expected_odd = ExactMatrix::from_fn(2 * n + 1, |i, j| match (i < s, j < s) {
        (true, true) => top.get(i, j).clone(),
        (true, false) => cross[i][j - s].clone(),
        (false, true) => cross[j][i - s].clone(),
        (false, false) => bottom.get(i - s, j - s).clone(),
    });
    Ok(odd == expected_odd)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    G0,
    G1,
    F,
}

impl Variant {
    pub fn sequence(self) -> SequenceSpec {
        match self {
            Variant::G0 => SequenceSpec::ruler(0),
            Variant::G1 => SequenceSpec::ruler(1),
            Variant::F => SequenceSpec::FermatF,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HankelQuery {
    pub variant: Variant,
    pub p: usize,
    pub n: usize,
    pub barred: bool,
}

impl HankelQuery {
    pub fn new(variant: Variant, p: usize, n: usize, barred: bool) -> Self {
        HankelQuery { variant, p, n, barred }
    }

    pub fn plain(variant: Variant, p: usize, n: usize) -> Self {
        Self::new(variant, p, n, false)
    }

    pub fn bar(variant: Variant, p: usize, n: usize) -> Self {
        Self::new(variant, p, n, true)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("Hankel order must be >= 1".into()));
        }
        if self.variant == Variant::F && self.p == 0 {
            return Err(Error::Domain("f is undefined at index 0; use p >= 1".into()));
        }
        Ok(())
    }

    /// The exact matrix, bordered if requested.
    pub fn matrix(&self) -> Result<ExactMatrix> {
        self.validate()?;
        let h = hankel_matrix(&self.variant.sequence(), self.p, self.n)?;
        Ok(if self.barred { h.bordered() } else { h })
    }

    pub fn det(&self) -> Result<BigInt> {
        Ok(self.matrix()?.det())
    }

    pub fn label(&self) -> String {
        let seq = match self.variant {
            Variant::G0 => "g0",
            Variant::G1 => "g1",
            Variant::F => "f",
        };
        let bar = if self.barred { "bar " } else { "" };
        format!("{bar}H_{}^{}({seq})", self.n, self.p)
    }
}

/// `det mod 2` of the (optionally bordered) Hankel matrix, by GF(2) elimination.
pub fn parity_direct(q: &HankelQuery) -> Result<bool> {
    q.validate()?;
    let m = hankel_gf2(&q.variant.sequence(), q.p, q.n)?;
    Ok(if q.barred { m.bordered().det() } else { m.det() })
}

/// Which version of the mod-6 parity tables to use.
///
/// The published g1 rows at offset 0 (plain and bordered) have their 0 and 1
/// cases exchanged. Changing `u(0)` from 0 to 1 adds the `(0, 0)` cofactor,
/// so `|H_n^0(g1)| = |H_n^0(g0)| + |H_{n-1}^2(g)|`, and likewise for the
/// bordered matrices. Combining the published g0 and offset-2 rows that way
/// gives the complement of the published g1 rows, which is also what direct
/// elimination finds. `Corrected` applies that complement and leaves every
/// other row untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TableEdition {
    #[default]
    Printed,
    Corrected,
}

/// Tabulated parity for offsets 0, 1, 2, periodic in `n` mod 6.
///
/// `f` is congruent to `g` mod 2 entrywise (bordering included), so F queries
/// use the g1 tables.
pub fn parity_closed_form(q: &HankelQuery, edition: TableEdition) -> Result<bool> {
    q.validate()?;
    let seed_one = match q.variant {
        Variant::G0 => false,
        Variant::G1 | Variant::F => true,
    };
    let r = q.n % 6;
    let bit = match (q.p, q.barred, seed_one) {
        (0, false, false) => !matches!(r, 1 | 4),
        (0, true, false) => !matches!(r, 2 | 3),
        (0, false, true) => matches!(r, 0 | 3) != (edition == TableEdition::Corrected),
        (0, true, true) => matches!(r, 4 | 5) != (edition == TableEdition::Corrected),
        (1, false, _) => true,
        (1, true, _) => r % 2 == 1,
        (2, false, _) => !matches!(r, 1 | 4),
        (2, true, _) => !matches!(r, 0 | 5),
        (p, _, _) => {
            return Err(Error::Unsupported(format!(
                "closed-form parity is tabulated only for p in {{0, 1, 2}}, got p = {p}"
            )))
        }
    };
    Ok(bit)
}

/// Parities of one query by every available route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub query: HankelQuery,
    /// Recurrence clause label and its `(n, p)` parameters, when this report
    /// comes from the recurrence suite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<ClauseInstance>,
    pub direct: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<bool>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseInstance {
    pub clause: &'static str,
    pub n: usize,
    pub p: usize,
}

impl ParityReport {
    pub fn new(
        query: HankelQuery,
        clause: Option<ClauseInstance>,
        direct: bool,
        closed_form: Option<bool>,
        recurrence: Option<bool>,
    ) -> Self {
        let agree = closed_form.is_none_or(|c| c == direct) && recurrence.is_none_or(|r| r == direct);
        ParityReport { query, clause, direct, closed_form, recurrence, agree }
    }
}

/// Every tabulated family: offsets 0..=2, plain and bordered, both seeds.
/// For `p >= 1` the seeds give identical matrices, so both are listed to make
/// that visible in reports.
pub fn table_families() -> Vec<(Variant, usize, bool)> {
    let mut out = Vec::new();
    for p in 0..=2 {
        for barred in [false, true] {
            for v in [Variant::G0, Variant::G1] {
                out.push((v, p, barred));
            }
        }
    }
    out
}

/// Compare GF(2) parities against the mod-6 tables for `1 <= n <= n_max`.
/// Reports come back sorted by `(n, family)` whatever the thread count.
pub fn table_check(n_max: usize, edition: TableEdition) -> Vec<ParityReport> {
    let families = table_families();
    let queries: Vec<HankelQuery> = (1..=n_max)
        .flat_map(|n| families.iter().map(move |&(v, p, b)| HankelQuery::new(v, p, n, b)))
        .collect();
    queries
        .par_iter()
        .map(|q| {
            let direct = parity_direct(q).expect("ruler queries are always in range");
            let closed = parity_closed_form(q, edition).expect("offsets 0..=2 are tabulated");
            ParityReport::new(*q, None, direct, Some(closed), None)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MainHRow {
    pub n: usize,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub det_g: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub det_f: BigInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct MainHReport {
    pub n_max_exact: usize,
    pub n_max_parity: usize,
    pub exact: Vec<MainHRow>,
    /// Orders at which an exact determinant was zero or even.
    pub exact_failures: Vec<usize>,
    /// Orders at which the GF(2) parity of `H_n^1(g)` or `H_n^1(f)` was 0.
    pub parity_failures: Vec<usize>,
}

impl MainHReport {
    pub fn passed(&self) -> bool {
        self.exact_failures.is_empty() && self.parity_failures.is_empty()
    }
}

/// `det H_n^1(g)` and `det H_n^1(f)` exactly up to `n_max_exact` (each must be
/// odd, hence nonzero) and their GF(2) parities up to `n_max_parity`.
pub fn verify_main_h(n_max_exact: usize, n_max_parity: usize) -> Result<MainHReport> {
    if n_max_exact == 0 || n_max_parity < n_max_exact {
        return Err(Error::Domain("need 1 <= n_max_exact <= n_max_parity".into()));
    }
    let exact: Vec<MainHRow> = (1..=n_max_exact)
        .into_par_iter()
        .map(|n| MainHRow {
            n,
            det_g: HankelQuery::plain(Variant::G1, 1, n).det().expect("in range"),
            det_f: HankelQuery::plain(Variant::F, 1, n).det().expect("in range"),
        })
        .collect();
    let exact_failures = exact
        .iter()
        .filter(|r| [&r.det_g, &r.det_f].iter().any(|d| d.is_zero() || d.is_even()))
        .map(|r| r.n)
        .collect();
    let parity_failures = (1..=n_max_parity)
        .into_par_iter()
        .filter(|&n| {
            [Variant::G1, Variant::F]
                .iter()
                .any(|&v| !parity_direct(&HankelQuery::plain(v, 1, n)).expect("in range"))
        })
        .collect();
    Ok(MainHReport { n_max_exact, n_max_parity, exact, exact_failures, parity_failures })
}
