//! Dense matrices over `Coefficient` with exact Gaussian elimination.

use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coefficient>,
}

impl CMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Coefficient::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Coefficient::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Coefficient>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::SizeMismatch("empty matrix".into()));
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(CMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let data = rows
            .iter()
            .flatten()
            .map(|&v| Coefficient::from_integer(v))
            .collect();
        CMatrix {
            rows: rows.len(),
            cols: rows[0].len(),
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn equals(&self, other: &CMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.equals(b))
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, k: &Coefficient) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_check(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_check(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn zip_check(&self, other: &CMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, other.rows, self.cols, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let cur = std::mem::replace(&mut out[(i, j)], Coefficient::zero());
                    out[(i, j)] = cur + prod;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Coefficient]) -> Result<Vec<Coefficient>> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch(format!("{} vs {}", self.cols, v.len())));
        }
        let mut out = vec![Coefficient::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Coefficient::zero();
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                acc = acc + (a * &v[j]);
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn trace(&self) -> Coefficient {
        let mut acc = Coefficient::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    /// Entries row by row (the `v[A_ij]` vectorization).
    pub fn vec_row_major(&self) -> Vec<Coefficient> {
        self.data.clone()
    }

    pub fn from_vec_row_major(rows: usize, cols: usize, data: Vec<Coefficient>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{} entries for {rows}x{cols}",
                data.len()
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot = a[(col, col)].clone();
            let pinv = pivot.recip();
            for j in 0..n {
                let av = std::mem::replace(&mut a[(col, j)], Coefficient::zero());
                a[(col, j)] = av * pinv.clone();
                let iv = std::mem::replace(&mut inv[(col, j)], Coefficient::zero());
                inv[(col, j)] = iv * pinv.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let delta = factor.clone() * a[(col, j)].clone();
                    let cur = std::mem::replace(&mut a[(r, j)], Coefficient::zero());
                    a[(r, j)] = cur - delta;
                    let delta = factor.clone() * inv[(col, j)].clone();
                    let cur = std::mem::replace(&mut inv[(r, j)], Coefficient::zero());
                    inv[(r, j)] = cur - delta;
                }
            }
        }
        Ok(inv)
    }

    /// `A^{-1}·B` by one Gauss-Jordan pass over the augmented system,
    /// cheaper than forming the inverse and multiplying.
    pub fn solve_right(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("solve with non-square matrix".into()));
        }
        if rhs.rows != self.rows {
            return Err(Error::SizeMismatch(format!(
                "{} equations vs {} right-hand rows",
                self.rows, rhs.rows
            )));
        }
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                b.swap_rows(pivot_row, col);
            }
            let pinv = a[(col, col)].recip();
            for j in 0..n {
                let av = std::mem::replace(&mut a[(col, j)], Coefficient::zero());
                a[(col, j)] = av * pinv.clone();
            }
            for j in 0..m {
                let bv = std::mem::replace(&mut b[(col, j)], Coefficient::zero());
                b[(col, j)] = bv * pinv.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    if a[(col, j)].is_zero() {
                        continue;
                    }
                    let delta = factor.clone() * a[(col, j)].clone();
                    let cur = std::mem::replace(&mut a[(r, j)], Coefficient::zero());
                    a[(r, j)] = cur - delta;
                }
                for j in 0..m {
                    if b[(col, j)].is_zero() {
                        continue;
                    }
                    let delta = factor.clone() * b[(col, j)].clone();
                    let cur = std::mem::replace(&mut b[(r, j)], Coefficient::zero());
                    b[(r, j)] = cur - delta;
                }
            }
        }
        Ok(b)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Coefficient;

    fn index(&self, (i, j): (usize, usize)) -> &Coefficient {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Coefficient {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = CMatrix::from_int_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().equals(&CMatrix::identity(3)));
        assert!(inv.mul(&m).unwrap().equals(&CMatrix::identity(3)));
    }

    #[test]
    fn singular_detected() {
        let m = CMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(m.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn trace_and_vec() {
        let m = CMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.trace(), Coefficient::from_integer(5));
        let v = m.vec_row_major();
        assert_eq!(v[1], Coefficient::from_integer(2));
        assert_eq!(v[2], Coefficient::from_integer(3));
    }
}
