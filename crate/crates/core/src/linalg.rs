//! Dense integer matrices: products, fraction-free determinants and exact
//! linear solves.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::scalar::Scalar;

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// An `rows x cols` matrix with zero columns or rows allowed.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self[(source, j)].clone();
            if !s.is_zero() {
                let v = self[(target, j)].clone() + factor.clone() * s;
                self[(target, j)] = v;
            }
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self[(i, source)].clone();
            if !s.is_zero() {
                let v = self[(i, target)].clone() + factor.clone() * s;
                self[(i, target)] = v;
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = !sign;
                    }
                    None => return T::zero(),
                }
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (pivot.clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone()) / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, k)] = T::zero();
            }
            prev = pivot;
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    /// Solves `self * x = rhs` exactly over the rationals and returns `x`
    /// if the system has a unique solution.
    pub fn solve_rational(&self, rhs: &[T]) -> Option<Vec<Ratio<T>>> {
        assert!(self.is_square(), "solve needs a square matrix");
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut a: Vec<Vec<Ratio<T>>> = (0..n)
            .map(|i| {
                let mut row: Vec<Ratio<T>> = self.row(i).iter().cloned().map(Ratio::from_integer).collect();
                row.push(Ratio::from_integer(rhs[i].clone()));
                row
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            let inv = a[k][k].recip();
            for v in a[k][k..].iter_mut() {
                *v = v.clone() * inv.clone();
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    for j in k..=n {
                        let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                        a[i][j] = v;
                    }
                }
            }
        }
        Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }

    /// Solves `self * x = rhs` and returns `x` only when it is integral.
    pub fn solve_integral(&self, rhs: &[T]) -> Option<Vec<T>> {
        let sol = self.solve_rational(rhs)?;
        sol.into_iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
