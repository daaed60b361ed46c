//! Dense arbitrary-precision integer matrices.
//!
//! Everything here is exact: characteristic polynomials come from the
//! Faddeev–LeVerrier recursion (whose divisions are exact over the
//! integers), ranks from fraction-free Bareiss elimination, and primitivity
//! from boolean reachability up to the Wielandt bound.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::IntPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("negative entry at ({row},{col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Row-major integer matrix with `BigInt` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntegerMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntegerMatrix::new(nrows, ncols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut BigInt {
        &mut self.entries[row * self.cols + col]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }

    /// First column that is identically zero, if any.
    pub fn zero_column(&self) -> Option<usize> {
        (0..self.cols).find(|&j| (0..self.rows).all(|i| self.get(i, j).is_zero()))
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *out.get_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn pow(&self, mut exp: usize) -> IntegerMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntegerMatrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// Characteristic polynomial `det(xI - M)`, monic of degree n.
    ///
    /// Faddeev–LeVerrier; the division by the step index is exact.
    pub fn charpoly(&self) -> IntPoly {
        let (coeffs, _) = self.faddeev_leverrier();
        IntPoly::new(coeffs)
    }

    /// Adjugate of `xI - M` as a matrix of polynomials: entry (i,j) is a
    /// polynomial of degree < n.  Satisfies `(xI - M) * adj = charpoly * I`.
    pub fn adjugate_of_char_matrix(&self) -> Vec<Vec<IntPoly>> {
        let n = self.rows;
        let (_, steps) = self.faddeev_leverrier();
        let mut out = vec![vec![IntPoly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                // adj(xI - M) = sum_k steps[k] * x^(n-1-k)
                let mut coeffs = vec![BigInt::zero(); n];
                for (k, m) in steps.iter().enumerate() {
                    coeffs[n - 1 - k] = m.get(i, j).clone();
                }
                out[i][j] = IntPoly::new(coeffs);
            }
        }
        out
    }

    /// Returns (charpoly coefficients low-to-high, auxiliary matrices M_0..M_{n-1}).
    fn faddeev_leverrier(&self) -> (Vec<BigInt>, Vec<IntegerMatrix>) {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut steps = Vec::with_capacity(n);
        let mut m = IntegerMatrix::identity(n);
        for k in 1..=n {
            steps.push(m.clone());
            let am = self.mul(&m);
            let t = am.trace();
            let kk = BigInt::from(k);
            let (q, r) = num_integer::Integer::div_rem(&(-t), &kk);
            assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            coeffs[n - k] = q.clone();
            m = am;
            for i in 0..n {
                *m.get_mut(i, i) += &q;
            }
        }
        (coeffs, steps)
    }

    /// Determinant, read off the characteristic polynomial.
    pub fn det(&self) -> BigInt {
        let p = self.charpoly();
        let c0 = p.coeff(0);
        if self.rows % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    /// Rank over the rationals, by fraction-free Bareiss elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * cols + j].clone();
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let pivot = (row..rows).find(|&i| !at(&a, i, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..cols {
                    a.swap(row * cols + j, p * cols + j);
                }
            }
            for i in row + 1..rows {
                for j in col + 1..cols {
                    let v =
                        (at(&a, row, col) * at(&a, i, j) - at(&a, i, col) * at(&a, row, j)) / &prev;
                    a[i * cols + j] = v;
                }
                a[i * cols + col] = BigInt::zero();
            }
            prev = at(&a, row, col);
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Least m with `M^m` entrywise positive, bounded by the Wielandt
    /// exponent (n-1)^2 + 1.  `Ok(None)` means the matrix is not primitive.
    pub fn primitivity(&self) -> Result<Option<usize>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j).is_negative() {
                    return Err(MatrixError::NegativeEntry { row: i, col: j });
                }
            }
        }
        let n = self.rows;
        if n == 0 {
            return Ok(None);
        }
        let bound = (n - 1) * (n - 1) + 1;
        let base: Vec<bool> = self.entries.iter().map(|e| e.is_positive()).collect();
        let mut cur = base.clone();
        for m in 1..=bound {
            if cur.iter().all(|&b| b) {
                return Ok(Some(m));
            }
            // boolean product cur * base
            let mut next = vec![false; n * n];
            for i in 0..n {
                for k in 0..n {
                    if cur[i * n + k] {
                        for j in 0..n {
                            if base[k * n + j] {
                                next[i * n + j] = true;
                            }
                        }
                    }
                }
            }
            cur = next;
        }
        Ok(if cur.iter().all(|&b| b) {
            Some(bound)
        } else {
            None
        })
    }
}

impl std::fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
