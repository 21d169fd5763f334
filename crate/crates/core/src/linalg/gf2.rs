use std::fmt;

/// Square matrix over GF(2) with each row packed into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    n: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Gf2Matrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64);
        Gf2Matrix { n, words, rows: vec![vec![0; words]; n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.rows[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    /// `[[M, 1], [1, 0]]` over GF(2).
    pub fn bordered(&self) -> Self {
        let n = self.n;
        Self::from_fn(n + 1, |i, j| match (i < n, j < n) {
            (true, true) => self.get(i, j),
            (false, false) => false,
            _ => true,
        })
    }

    /// Determinant in GF(2): 1 iff the matrix has full rank.
    pub fn det(&self) -> bool {
        let mut rows = self.rows.clone();
        for col in 0..self.n {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (col..self.n).find(|&r| rows[r][w] & bit != 0) else {
                return false;
            };
            rows.swap(col, pivot);
            let (head, tail) = rows.split_at_mut(col + 1);
            let pivot_row = &head[col];
            for row in tail.iter_mut() {
                if row[w] & bit != 0 {
                    // Columns before `col` are already zero in both rows.
                    for (dst, src) in row[w..self.words].iter_mut().zip(&pivot_row[w..]) {
                        *dst ^= src;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let line: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
