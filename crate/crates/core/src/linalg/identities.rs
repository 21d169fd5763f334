//! Residual oracles for the block-determinant identities built on bordered
//! matrices, and for the Desnanot-Jacobi recurrence on Hankel minors.
//!
//! Each residual is `lhs - rhs` with the two sides computed by different
//! routes: the assembled block matrix goes through cofactor expansion while
//! the right-hand side uses Bareiss determinants of the pieces. A nonzero
//! residual on any instance means one of the routes is wrong.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ExactMatrix;
use crate::error::{Error, Result};
use crate::hankel::hankel_matrix;
use crate::sequences::SequenceSpec;

/// Which exponent on `b` to use in the cross term of the 2x2 block identity.
///
/// As usually printed the cross term reads `x y a^(m-1) b^(m-1) |A'| |B'|`.
/// Homogeneity in `B` suggests `b^(n-1)`. Both are checked; they coincide
/// when `m = n` or `b` is `0` or `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossExponent {
    /// `b^(m-1)`, as printed.
    AsPrinted,
    /// `b^(n-1)`.
    OrderOfB,
}

fn ones_block(rows: usize, cols: usize, value: &BigInt) -> Vec<Vec<BigInt>> {
    vec![vec![value.clone(); cols]; rows]
}

/// Assemble a square matrix from a grid of blocks given as row lists.
fn assemble(blocks: &[Vec<Vec<Vec<BigInt>>>]) -> ExactMatrix {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for block_row in blocks {
        let height = block_row[0].len();
        for r in 0..height {
            rows.push(block_row.iter().flat_map(|b| b[r].iter().cloned()).collect());
        }
    }
    ExactMatrix::from_rows(rows)
}

fn bar_det(m: &ExactMatrix) -> BigInt {
    m.bordered().det()
}

/// `|[[aA, y 1], [x 1, bB]]| - (a^m b^n |A||B| - x y a^(m-1) b^e |A'||B'|)`,
/// where `A'` is the bordered matrix and `e` is chosen by `exponent`.
#[allow(clippy::too_many_arguments)]
pub fn block_identity_2x2_residual(
    a_mat: &ExactMatrix,
    b_mat: &ExactMatrix,
    a: &BigInt,
    b: &BigInt,
    x: &BigInt,
    y: &BigInt,
    exponent: CrossExponent,
) -> Result<BigInt> {
    let (m, n) = (a_mat.order(), b_mat.order());
    if m == 0 || n == 0 {
        return Err(Error::Domain("block identity needs blocks of order >= 1".into()));
    }
    let lhs = assemble(&[
        vec![a_mat.scale(a).rows(), ones_block(m, n, y)],
        vec![ones_block(n, m, x), b_mat.scale(b).rows()],
    ])
    .det_cofactor();

    let b_exp = match exponent {
        CrossExponent::AsPrinted => m - 1,
        CrossExponent::OrderOfB => n - 1,
    };
    let rhs = Pow::pow(a, m) * Pow::pow(b, n) * a_mat.det() * b_mat.det()
        - x * y * Pow::pow(a, m - 1) * Pow::pow(b, b_exp) * bar_det(a_mat) * bar_det(b_mat);
    Ok(lhs - rhs)
}

/// Residual of the three-block identity
/// `|[[A, c1, b1], [c1, B, a1], [b1, a1, C]]|
///   = |A||B||C| - a^2|A||B'||C'| - b^2|A'||B||C'| - c^2|A'||B'||C| - 2abc|A'||B'||C'|`.
pub fn block_identity_3x3_residual(
    a_mat: &ExactMatrix,
    b_mat: &ExactMatrix,
    c_mat: &ExactMatrix,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
) -> Result<BigInt> {
    let (m, n, p) = (a_mat.order(), b_mat.order(), c_mat.order());
    if m == 0 || n == 0 || p == 0 {
        return Err(Error::Domain("block identity needs blocks of order >= 1".into()));
    }
    let lhs = assemble(&[
        vec![a_mat.rows(), ones_block(m, n, c), ones_block(m, p, b)],
        vec![ones_block(n, m, c), b_mat.rows(), ones_block(n, p, a)],
        vec![ones_block(p, m, b), ones_block(p, n, a), c_mat.rows()],
    ])
    .det_cofactor();

    let (da, db, dc) = (a_mat.det(), b_mat.det(), c_mat.det());
    let (ba, bb, bc) = (bar_det(a_mat), bar_det(b_mat), bar_det(c_mat));
    let rhs = &da * &db * &dc
        - a * a * &da * &bb * &bc
        - b * b * &ba * &db * &bc
        - c * c * &ba * &bb * &dc
        - BigInt::from(2) * a * b * c * &ba * &bb * &bc;
    Ok(lhs - rhs)
}

/// Residuals of
/// (i) `|x1 + A| = |A| - x|A'|`,
/// (ii) `|(x1 + A)'| = |A'|`,
/// (iii) `|(-A)'| = (-1)^(m+1) |A'|`.
pub fn shift_identity_residuals(a_mat: &ExactMatrix, x: &BigInt) -> (BigInt, BigInt, BigInt) {
    let m = a_mat.order();
    let shifted = a_mat.add_constant(x);
    let bar = bar_det(a_mat);
    let r1 = shifted.det_cofactor() - (a_mat.det() - x * &bar);
    let r2 = shifted.bordered().det_cofactor() - &bar;
    let sign = if (m + 1).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let r3 = a_mat.scale(&-BigInt::one()).bordered().det_cofactor() - sign * bar;
    (r1, r2, r3)
}

/// `|H_n^p||H_n^(p+2)| - |H_n^(p+1)|^2 - |H_(n-1)^(p+2)||H_(n+1)^p|`.
pub fn desnanot_residual(u: &SequenceSpec, n: usize, p: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("desnanot_residual needs n >= 1".into()));
    }
    u.check_range(p, 2 * n + 1)?;
    let d = |order: usize, offset: usize| -> Result<BigInt> { Ok(hankel_matrix(u, offset, order)?.det()) };
    let h_p = d(n, p)?;
    let h_p2 = d(n, p + 2)?;
    let h_p1 = d(n, p + 1)?;
    let h_lo = d(n - 1, p + 2)?;
    let h_hi = d(n + 1, p)?;
    Ok(h_p * h_p2 - &h_p1 * &h_p1 - h_lo * h_hi)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> ExactMatrix {
    ExactMatrix::from_fn(n, |_, _| rng.gen_range(-bound..=bound))
}

fn random_int(rng: &mut ChaCha8Rng, bound: i64) -> BigInt {
    BigInt::from(rng.gen_range(-bound..=bound))
}

/// Tally of one randomized identity family.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityTally {
    pub name: String,
    pub instances: usize,
    pub nonzero: usize,
    /// First instance with a nonzero residual, rendered for humans.
    pub first_counterexample: Option<String>,
}

impl IdentityTally {
    fn new(name: &str) -> Self {
        IdentityTally { name: name.into(), instances: 0, nonzero: 0, first_counterexample: None }
    }

    fn record(&mut self, residual: &BigInt, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !residual.is_zero() {
            self.nonzero += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.nonzero == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySuiteReport {
    pub seed: u64,
    pub block_2x2_as_printed: IdentityTally,
    pub block_2x2_order_of_b: IdentityTally,
    pub block_3x3: IdentityTally,
    pub shift_i: IdentityTally,
    pub shift_ii: IdentityTally,
    pub shift_iii: IdentityTally,
    pub desnanot: IdentityTally,
}

impl IdentitySuiteReport {
    /// The identities that must hold exactly. The as-printed 2x2 exponent is
    /// reported separately since it is only valid when the orders agree.
    pub fn required(&self) -> [&IdentityTally; 6] {
        [
            &self.block_2x2_order_of_b,
            &self.block_3x3,
            &self.shift_i,
            &self.shift_ii,
            &self.shift_iii,
            &self.desnanot,
        ]
    }

    pub fn all_required_hold(&self) -> bool {
        self.required().iter().all(|t| t.holds())
    }
}

/// Run `count` seeded random instances of every identity: block orders up
/// to 4 (2x2), 3 (3x3) and 5 (shift), Hankel orders up to 6 for random
/// explicit sequences, entries in `[-5, 5]`.
pub fn random_identity_suite(seed: u64, count: usize) -> IdentitySuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = IdentitySuiteReport {
        seed,
        block_2x2_as_printed: IdentityTally::new("block_2x2 (b^(m-1), as printed)"),
        block_2x2_order_of_b: IdentityTally::new("block_2x2 (b^(n-1))"),
        block_3x3: IdentityTally::new("block_3x3"),
        shift_i: IdentityTally::new("shift (i)"),
        shift_ii: IdentityTally::new("shift (ii)"),
        shift_iii: IdentityTally::new("shift (iii)"),
        desnanot: IdentityTally::new("desnanot_jacobi"),
    };

    for _ in 0..count {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (am, bm) = (random_matrix(&mut rng, m, 5), random_matrix(&mut rng, n, 5));
        let [a, b, x, y] = [0; 4].map(|_| random_int(&mut rng, 5));
        let describe = || format!("A={am:?} B={bm:?} a={a} b={b} x={x} y={y}");
        for (tally, exp) in [
            (&mut r.block_2x2_as_printed, CrossExponent::AsPrinted),
            (&mut r.block_2x2_order_of_b, CrossExponent::OrderOfB),
        ] {
            let res =
                block_identity_2x2_residual(&am, &bm, &a, &b, &x, &y, exp).expect("orders are positive");
            tally.record(&res, describe);
        }
    }

    for _ in 0..count {
        let orders = [0; 3].map(|_| rng.gen_range(1..=3));
        let mats = orders.map(|o| random_matrix(&mut rng, o, 5));
        let [a, b, c] = [0; 3].map(|_| random_int(&mut rng, 5));
        let res = block_identity_3x3_residual(&mats[0], &mats[1], &mats[2], &a, &b, &c)
            .expect("orders are positive");
        r.block_3x3.record(&res, || format!("A,B,C={mats:?} a={a} b={b} c={c}"));
    }

    for _ in 0..count {
        let m = rng.gen_range(1..=5);
        let am = random_matrix(&mut rng, m, 5);
        let x = random_int(&mut rng, 5);
        let (r1, r2, r3) = shift_identity_residuals(&am, &x);
        let describe = || format!("A={am:?} x={x}");
        r.shift_i.record(&r1, describe);
        r.shift_ii.record(&r2, describe);
        r.shift_iii.record(&r3, describe);
    }

    for _ in 0..count {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0..=3);
        let values: Vec<i64> = (0..p + 2 * n + 1).map(|_| rng.gen_range(-5..=5)).collect();
        let u = SequenceSpec::explicit(values.iter().copied(), 0);
        let res = desnanot_residual(&u, n, p).expect("window covers all indices");
        r.desnanot.record(&res, || format!("u={values:?} n={n} p={p}"));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn one_by_one(v: i64) -> ExactMatrix {
        ExactMatrix::from_rows([[v]])
    }

    #[test]
    fn block_2x2_examples() {
        for exp in [CrossExponent::AsPrinted, CrossExponent::OrderOfB] {
            let r = block_identity_2x2_residual(
                &one_by_one(1),
                &one_by_one(1),
                &int(1),
                &int(1),
                &int(0),
                &int(0),
                exp,
            );
            assert_eq!(r.unwrap(), int(0));
            let r = block_identity_2x2_residual(
                &one_by_one(0),
                &one_by_one(0),
                &int(1),
                &int(1),
                &int(1),
                &int(1),
                exp,
            );
            assert_eq!(r.unwrap(), int(0));
        }
    }

    #[test]
    fn printed_exponent_fails_for_unequal_orders() {
        // m = 1, n = 2, b = 2: b^(m-1) = 1 but b^(n-1) = 2.
        let a = one_by_one(1);
        let b = ExactMatrix::from_rows([[1, 0], [0, 1]]);
        let args = (&int(1), &int(2), &int(1), &int(1));
        let printed =
            block_identity_2x2_residual(&a, &b, args.0, args.1, args.2, args.3, CrossExponent::AsPrinted)
                .unwrap();
        let fixed =
            block_identity_2x2_residual(&a, &b, args.0, args.1, args.2, args.3, CrossExponent::OrderOfB)
                .unwrap();
        assert_eq!(fixed, int(0));
        assert_ne!(printed, int(0));
    }

    #[test]
    fn block_3x3_examples() {
        let one = one_by_one(1);
        let r = block_identity_3x3_residual(&one, &one, &one, &int(0), &int(0), &int(0));
        assert_eq!(r.unwrap(), int(0));
        let zero = one_by_one(0);
        let r = block_identity_3x3_residual(&zero, &zero, &zero, &int(1), &int(1), &int(1));
        assert_eq!(r.unwrap(), int(0));
        // Both sides equal 2 here.
        let lhs = ExactMatrix::from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]]).det();
        assert_eq!(lhs, int(2));
    }

    #[test]
    fn shift_examples() {
        let (r1, _, _) = shift_identity_residuals(&one_by_one(0), &int(3));
        assert_eq!(r1, int(0));
        let a = ExactMatrix::from_rows([[2, -1, 4], [0, 3, 1], [5, 5, -2]]);
        let (r1, r2, r3) = shift_identity_residuals(&a, &int(0));
        assert_eq!((r1, r2, r3), (int(0), int(0), int(0)));
    }

    #[test]
    fn desnanot_examples() {
        assert_eq!(desnanot_residual(&SequenceSpec::ruler(1), 2, 1).unwrap(), int(0));
        for p in 0..10 {
            assert_eq!(desnanot_residual(&SequenceSpec::ruler(1), 2, p).unwrap(), int(0));
        }
        let short = SequenceSpec::explicit([1, 2, 3], 0);
        assert!(desnanot_residual(&short, 2, 0).is_err());
    }

    #[test]
    fn seeded_suite_is_clean_and_reproducible() {
        let r = random_identity_suite(7, 200);
        assert!(r.all_required_hold(), "{r:#?}");
        let again = random_identity_suite(7, 200);
        assert_eq!(serde_json_like(&r.block_2x2_as_printed), serde_json_like(&again.block_2x2_as_printed));
    }

    fn serde_json_like(t: &IdentityTally) -> (usize, usize, Option<String>) {
        (t.instances, t.nonzero, t.first_counterexample.clone())
    }
}
