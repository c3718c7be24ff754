//! Dense exact matrices and fraction-free (Bareiss) elimination.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(ExactMatrix { rows: nrows, cols: ncols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
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

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, col).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut work, scale) = integer_rows(self, None);
        let outcome = bareiss(&mut work, n, n);
        let det = match outcome {
            Elimination::Singular => return Ok(Rational::zero()),
            Elimination::Done { negate } => {
                let d = work[n - 1][n - 1].clone();
                if negate {
                    -d
                } else {
                    d
                }
            }
        };
        Ok(Rational::new(det, scale))
    }

    /// Solves `self * X = rhs` for every column of `rhs` at once.
    pub fn solve_many(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: rhs.rows });
        }
        let n = self.rows;
        let k = rhs.cols;
        let (mut work, _) = integer_rows(self, Some(rhs));
        if let Elimination::Singular = bareiss(&mut work, n, n + k) {
            return Err(Error::SingularMatrix);
        }
        let mut out = Self::zeros(n, k);
        for c in 0..k {
            for i in (0..n).rev() {
                let mut acc = Rational::from_integer(work[i][n + c].clone());
                for (j, w) in work[i].iter().enumerate().take(n).skip(i + 1) {
                    if !w.is_zero() {
                        acc -= Rational::from_integer(w.clone()) * out.get(j, c);
                    }
                }
                out.set(i, c, acc / Rational::from_integer(work[i][i].clone()));
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        self.solve_many(&Self::identity(self.rows))
    }
}

/// Returns the unique `x` with `a * x = b`.
pub fn solve_exact(a: &ExactMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch { expected: a.rows, found: b.len() });
    }
    let rhs = ExactMatrix { rows: b.len(), cols: 1, data: b.to_vec() };
    Ok(a.solve_many(&rhs)?.column(0))
}

enum Elimination {
    Singular,
    Done { negate: bool },
}

/// Clears denominators row by row, scaling the matching `rhs` row by the same
/// factor. Also returns the product of the row scales, which the determinant
/// must divide out (only meaningful when `rhs` is `None`).
fn integer_rows(a: &ExactMatrix, rhs: Option<&ExactMatrix>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let mut out = Vec::with_capacity(a.rows);
    for i in 0..a.rows {
        let extra = rhs.map_or(&[][..], |r| r.row(i));
        let lcm = a.row(i).iter().chain(extra).fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let row: Vec<BigInt> = a.row(i).iter().chain(extra).map(|v| v.numer() * (&lcm / v.denom())).collect();
        total *= &lcm;
        out.push(row);
    }
    (out, total)
}

/// In-place Bareiss elimination on the first `n` columns of an `n x width`
/// integer matrix. Every division is exact.
fn bareiss(m: &mut [Vec<BigInt>], n: usize, width: usize) -> Elimination {
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&p| !m[p][k].is_zero()) else {
                return Elimination::Singular;
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&v % &prev).is_zero());
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if m[n - 1][n - 1].is_zero() {
        return Elimination::Singular;
    }
    Elimination::Done { negate }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", v)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let b = vec![ratio(1, 3), int(-2), int(7)];
        assert_eq!(solve_exact(&ExactMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn two_by_two_by_hand() {
        let a = m(&[&[1, -1], &[1, 1]]);
        let x = solve_exact(&a, &[int(1), int(0)]).unwrap();
        assert_eq!(x, vec![ratio(1, 2), ratio(-1, 2)]);
    }

    #[test]
    fn pivoting_and_determinant_sign() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.determinant().unwrap(), int(-1));
        assert_eq!(solve_exact(&a, &[int(3), int(4)]).unwrap(), vec![int(4), int(3)]);
    }

    #[test]
    fn rational_entries_determinant() {
        let a = ExactMatrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 4), ratio(1, 5)]]).unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(a.determinant().unwrap(), ratio(1, 60));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(2));
    }

    #[test]
    fn singular_is_reported() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_exact(&a, &[int(1), int(1)]), Err(Error::SingularMatrix));
        assert_eq!(a.determinant().unwrap(), int(0));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert!(matches!(solve_exact(&a, &[int(1)]), Err(Error::DimensionMismatch { expected: 2, found: 1 })));
        let rect = m(&[&[1, 2, 3], &[3, 4, 5]]);
        assert!(rect.determinant().is_err());
    }
}
