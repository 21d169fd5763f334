//! Square matrices over the integers and over GF(2).

mod gf2;
pub mod identities;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use gf2::Gf2Matrix;

/// A square matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_fn<F, T>(n: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> T,
        T: Into<BigInt>,
    {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j).into());
            }
        }
        ExactMatrix { n, entries }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows<R, T>(rows: impl IntoIterator<Item = R>) -> Self
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let rows: Vec<Vec<BigInt>> =
            rows.into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect();
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        ExactMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| u8::from(i == j))
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0)
    }

    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) * s)
    }

    /// `x * 1_{n x n} + self`.
    pub fn add_constant(&self, x: &BigInt) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) + x)
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Self {
        assert_eq!(self.n, rhs.n, "order mismatch");
        Self::from_fn(self.n, |i, j| (0..self.n).map(|k| self.get(i, k) * rhs.get(k, j)).sum::<BigInt>())
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &ExactMatrix) -> Self {
        let m = self.n;
        Self::from_fn(m + other.n, |i, j| match (i < m, j < m) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - m, j - m).clone(),
            _ => BigInt::zero(),
        })
    }

    /// `[[M, 1], [1, 0]]`: a border of ones with a zero corner.
    pub fn bordered(&self) -> Self {
        let n = self.n;
        Self::from_fn(n + 1, |i, j| match (i < n, j < n) {
            (true, true) => self.get(i, j).clone(),
            (true, false) | (false, true) => BigInt::one(),
            (false, false) => BigInt::zero(),
        })
    }

    /// The `n x (n-1)` matrix with column `col` (0-based) removed.
    pub fn delete_column(&self, col: usize) -> Vec<Vec<BigInt>> {
        assert!(col < self.n);
        (0..self.n)
            .map(|i| {
                self.row(i).iter().enumerate().filter(|&(j, _)| j != col).map(|(_, v)| v.clone()).collect()
            })
            .collect()
    }

    pub fn reduce_mod2(&self) -> Gf2Matrix {
        Gf2Matrix::from_fn(self.n, |i, j| self.get(i, j).is_odd())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division in the update step is exact, so no rational ever appears.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            for row in tail.iter_mut() {
                for j in k + 1..n {
                    let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Determinant by Laplace expansion along rows, memoised over column
    /// subsets (`O(n 2^n)`). Independent of [`ExactMatrix::det`]; used as an
    /// oracle. Panics for orders above 24.
    pub fn det_cofactor(&self) -> BigInt {
        let n = self.n;
        assert!(n <= 24, "cofactor expansion limited to order 24");
        let mut memo: HashMap<u32, BigInt> = HashMap::new();
        self.minor_det(0, (1u32 << n) - 1, &mut memo)
    }

    fn minor_det(&self, row: usize, cols: u32, memo: &mut HashMap<u32, BigInt>) -> BigInt {
        if cols == 0 {
            return BigInt::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut position = 0usize;
        for j in 0..self.n {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = self.get(row, j);
            if !entry.is_zero() {
                let sub = self.minor_det(row + 1, cols & !(1 << j), memo);
                let term = entry * sub;
                if position.is_multiple_of(2) {
                    total += term;
                } else {
                    total -= term;
                }
            }
            position += 1;
        }
        memo.insert(cols, total.clone());
        total
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.n).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.n {
            let cells: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant of `m`.
pub fn det_int(m: &ExactMatrix) -> BigInt {
    m.det()
}

/// Determinant over GF(2).
pub fn det_gf2(m: &Gf2Matrix) -> bool {
    m.det()
}

pub fn bordered(m: &ExactMatrix) -> ExactMatrix {
    m.bordered()
}

/// Sign-aware `x mod 2` as a bit.
pub fn parity_of(x: &BigInt) -> bool {
    x.abs().is_odd()
}
