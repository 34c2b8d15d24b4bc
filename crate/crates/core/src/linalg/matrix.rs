use std::fmt;
use std::sync::Arc;

use crate::gf::{Elem, FieldTable};

use super::LinalgError;

/// Dense row-major matrix over a [`FieldTable`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
    field: Arc<FieldTable>,
}

impl Matrix {
    pub fn new(field: Arc<FieldTable>, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        Matrix {
            rows,
            cols,
            data,
            field,
        }
    }

    pub fn zeros(field: Arc<FieldTable>, rows: usize, cols: usize) -> Matrix {
        Matrix::new(field, rows, cols, vec![Elem::ZERO; rows * cols])
    }

    pub fn identity(field: Arc<FieldTable>, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(field: Arc<FieldTable>, cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Matrix::new(self.field.clone(), self.rows, cols.len(), data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix::new(self.field.clone(), rows.len(), self.cols, data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Applies `f` entrywise.
    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix::new(
            self.field.clone(),
            self.rows,
            self.cols,
            self.data.iter().map(|&x| f(x)).collect(),
        )
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if *self.field != *other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(LinalgError::LengthMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix::new(
            self.field.clone(),
            self.rows + other.rows,
            self.cols,
            data,
        ))
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// In-place reduced row-echelon form visiting columns in `order`;
    /// returns the pivot column of each nonzero row.
    pub fn rref_in_order(&mut self, order: &[usize]) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for &c in order {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            if inv != Elem::ONE {
                for j in 0..cols {
                    let x = self.data[r * cols + j];
                    self.data[r * cols + j] = f.mul(x, inv);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                for j in 0..cols {
                    let src = self.data[r * cols + j];
                    if !src.is_zero() {
                        let dst = &mut self.data[i * cols + j];
                        *dst = f.add(*dst, f.mul(neg, src));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_in_order(&order)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{v : M v = 0}` as the rows of a matrix.
    pub fn kernel(&self) -> Matrix {
        let mut red = self.clone();
        let pivots = red.rref();
        kernel_from_rref(&red, &pivots)
    }
}

pub(crate) fn kernel_from_rref(red: &Matrix, pivots: &[usize]) -> Matrix {
    let f = red.field();
    let n = red.cols();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut rows = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Elem::ZERO; n];
        v[free] = Elem::ONE;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(red.get(i, free));
        }
        rows.push(v);
    }
    Matrix::from_rows(f.clone(), n, &rows)
}

/// Reduced row-echelon form (same shape, zero rows last), rank, and a
/// kernel basis.
pub fn row_reduce(m: &Matrix) -> (Matrix, usize, Matrix) {
    let mut red = m.clone();
    let pivots = red.rref();
    let kernel = kernel_from_rref(&red, &pivots);
    (red, pivots.len(), kernel)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}
