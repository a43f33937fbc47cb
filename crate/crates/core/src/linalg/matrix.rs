//! Dense row-major matrices over a [`Ring`], with elimination routines for
//! [`Scalar`] entries.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::Zero;

use super::scalar::{Ring, Scalar};
use super::LinalgError;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(LinalgError::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::BadShape {
                rows: nrows,
                cols: ncols,
                len: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    /// Column vector.
    pub fn column(entries: Vec<T>) -> Self {
        let n = entries.len();
        Self {
            rows: n,
            cols: 1,
            data: entries,
        }
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Exact product (for exact entry types); fails on a dimension mismatch.
    pub fn mat_mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self[(r, c)];
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols.min(r)).all(|c| self[(r, c)].is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| ((r + 1)..self.cols).all(|c| self[(r, c)].is_zero()))
    }

    /// Upper triangular with ones on the diagonal.
    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && self.is_upper_triangular()
            && (0..self.rows).all(|i| self[(i, i)].is_one())
    }

    /// Copy of `self` with `block` written at offset `(row0, col0)`.
    pub fn with_block(&self, row0: usize, col0: usize, block: &Self) -> Result<Self, LinalgError> {
        if row0 + block.rows > self.rows || col0 + block.cols > self.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (block.rows, block.cols),
            });
        }
        let mut out = self.clone();
        for r in 0..block.rows {
            for c in 0..block.cols {
                out[(row0 + r, col0 + c)] = block[(r, c)].clone();
            }
        }
        Ok(out)
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(row0 + r, col0 + c)].clone())
    }

    /// Nilpotent exponential `Σ_k X^k / k!`, exact whenever `X` is nilpotent.
    ///
    /// Stops at the first vanishing power; `max_terms` bounds the series for
    /// matrices that are not nilpotent.
    pub fn nilpotent_exp(&self, max_terms: usize) -> Result<Self, LinalgError>
    where
        T: Scalar,
    {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut out = Self::identity(n);
        let mut power = Self::identity(n);
        for k in 1..=max_terms {
            power = power
                .mat_mul(self)?
                .scale(&(T::one() / T::from_i64(k as i64)));
            if power.is_zero_matrix() {
                return Ok(out);
            }
            out = out.add(&power)?;
        }
        Err(LinalgError::NotNilpotent(max_terms))
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b))
    }

    /// Largest absolute entry, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> Result<T, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = pivot_row(&a, col, col) else {
                return Ok(T::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det = det * pivot.clone();
            for r in (col + 1)..n {
                let f = a[(r, col)].clone() / pivot.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a[(r, c)].clone() - f.clone() * a[(col, c)].clone();
                    a[(r, c)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = pivot_row(&a, col, col).ok_or(LinalgError::Singular)?;
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            let pivot = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] = a[(col, c)].clone() / pivot.clone();
                inv[(col, c)] = inv[(col, c)].clone() / pivot.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a[(r, c)].clone() - f.clone() * a[(col, c)].clone();
                    a[(r, c)] = v;
                    let w = inv[(r, c)].clone() - f.clone() * inv[(col, c)].clone();
                    inv[(r, c)] = w;
                }
            }
        }
        Ok(inv)
    }

    /// Inverse of an upper triangular matrix by back substitution.
    pub fn upper_triangular_inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for j in (0..n).rev() {
            let d = self[(j, j)].clone();
            if d.is_negligible() {
                return Err(LinalgError::Singular);
            }
            inv[(j, j)] = T::one() / d.clone();
            for i in (0..j).rev() {
                let mut s = T::zero();
                for k in (i + 1)..=j {
                    s = s + self[(i, k)].clone() * inv[(k, j)].clone();
                }
                inv[(i, j)] = -s / self[(i, i)].clone();
            }
        }
        Ok(inv)
    }

    /// Coordinates of `target` in the span of `basis` (all flattened to vectors
    /// of equal length). Returns `None` when `target` is outside the span or
    /// the basis is dependent.
    pub fn solve_in_span(basis: &[Self], target: &Self) -> Option<Vec<T>> {
        let d = basis.len();
        let len = target.data.len();
        if basis.iter().any(|b| b.data.len() != len) {
            return None;
        }
        // Augmented system: len equations, d unknowns.
        let mut aug = Matrix::<T>::from_fn(len, d + 1, |r, c| {
            if c < d {
                basis[c].data[r].clone()
            } else {
                target.data[r].clone()
            }
        });
        let mut pivot_cols = Vec::with_capacity(d);
        let mut row = 0;
        for col in 0..d {
            let p = pivot_row(&aug, row, col)?;
            aug.swap_rows(p, row);
            let pivot = aug[(row, col)].clone();
            for c in 0..=d {
                aug[(row, c)] = aug[(row, c)].clone() / pivot.clone();
            }
            for r in 0..len {
                if r == row {
                    continue;
                }
                let f = aug[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..=d {
                    let v = aug[(r, c)].clone() - f.clone() * aug[(row, c)].clone();
                    aug[(r, c)] = v;
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        // Remaining rows must be consistent.
        for r in row..len {
            if !aug[(r, d)].is_negligible() {
                return None;
            }
        }
        Some((0..d).map(|i| aug[(i, d)].clone()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Row index in `start..` with the largest non-negligible entry in `col`.
fn pivot_row<T: Scalar>(a: &Matrix<T>, start: usize, col: usize) -> Option<usize> {
    if T::EXACT {
        return (start..a.rows).find(|&r| !a[(r, col)].is_negligible());
    }
    let mut best: Option<(usize, T)> = None;
    for r in start..a.rows {
        let v = a[(r, col)].abs_val();
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((r, v));
        }
    }
    best.filter(|(_, v)| !v.is_negligible()).map(|(r, _)| r)
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Panicking product for internal code whose shapes are fixed by construction.
impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.mat_mul(rhs)
            .expect("matrix shapes fixed by construction")
    }
}
