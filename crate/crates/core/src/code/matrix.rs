use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct Matrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(field: Arc<Field>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        if data.iter().any(|&e| !field.owns(e)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Builds a matrix from rows of element representations.
    pub fn from_reprs(field: Arc<Field>, rows: &[Vec<u32>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            for &r in row {
                data.push(field.elem(r)?);
            }
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Arc<Field>, columns: &[Vec<Elem>]) -> Result<Matrix> {
        let rows = columns.first().map_or(0, Vec::len);
        let cols = columns.len();
        let mut data = vec![field.zero(); rows * cols];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: col.len() });
            }
            for (i, &e) in col.iter().enumerate() {
                data[i * cols + j] = e;
            }
        }
        Matrix::new(field, rows, cols, data)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_reprs(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).repr()).collect())
            .collect()
    }

    /// `M * x^T`.
    pub fn mul_vec(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(f.zero(), |acc, j| f.add(acc, f.mul(self.get(i, j), x[j])))
            })
            .collect())
    }

    /// The matrix with the given columns dropped, keeping the order of the rest.
    pub fn without_columns(&self, drop: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = drop.iter().find(|&&j| j >= self.cols) {
            return Err(Error::domain(format!("column index {bad} out of range 0..{}", self.cols)));
        }
        let keep: Vec<usize> = (0..self.cols).filter(|j| !drop.contains(j)).collect();
        let cols: Vec<Vec<Elem>> = keep.iter().map(|&j| self.column(j)).collect();
        if cols.is_empty() {
            return Err(Error::domain("cannot remove every column"));
        }
        Matrix::from_columns(self.field.clone(), &cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Reduced row echelon form over the field.
    pub(crate) fn rref(&self) -> Rref {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<u16> = self.data.iter().map(|e| e.repr() as u16).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    a.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv_repr(a[r * cols + c]);
            for j in 0..cols {
                a[r * cols + j] = f.mul_repr(a[r * cols + j], inv);
            }
            for i in 0..rows {
                let factor = a[i * cols + c];
                if i == r || factor == 0 {
                    continue;
                }
                let nf = f.neg_repr(factor);
                for j in 0..cols {
                    let t = f.mul_repr(nf, a[r * cols + j]);
                    a[i * cols + j] = f.add_repr(a[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { data: a, cols, pivots }
    }
}

pub(crate) struct Rref {
    pub data: Vec<u16>,
    pub cols: usize,
    pub pivots: Vec<usize>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.repr() == b.repr())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for row in self.row_reprs() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}
