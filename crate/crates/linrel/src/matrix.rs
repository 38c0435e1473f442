//! Dense vectors and matrices over GF(p), with exact reduced row-echelon form.

use crate::field::{Prime, Scalar};
use crate::{Error, Result};
use std::fmt;

/// A coordinate vector over GF(p). All entries share the modulus.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector {
    p: Prime,
    data: Vec<u32>,
}

impl Vector {
    /// Builds a vector, reducing each entry mod p.
    pub fn from_ints(p: Prime, entries: &[u64]) -> Self {
        Self {
            p,
            data: entries.iter().map(|&e| p.scalar(e).value()).collect(),
        }
    }

    pub fn zero(p: Prime, len: usize) -> Self {
        Self {
            p,
            data: vec![0; len],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn standard(p: Prime, len: usize, i: usize) -> Self {
        assert!(i < len, "standard basis index out of range");
        let mut v = Self::zero(p, len);
        v.data[i] = 1;
        v
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.p.scalar(u64::from(self.data[i]))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.p, other.p, "vector addition across different fields");
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        let p = u64::from(self.p.value());
        Vector {
            p: self.p,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ((u64::from(a) + u64::from(b)) % p) as u32)
                .collect(),
        }
    }

    pub fn scale(&self, c: Scalar) -> Vector {
        assert_eq!(self.p, c.modulus(), "scaling across different fields");
        let p = u64::from(self.p.value());
        Vector {
            p: self.p,
            data: self
                .data
                .iter()
                .map(|&a| ((u64::from(a) * u64::from(c.value())) % p) as u32)
                .collect(),
        }
    }

    /// Concatenation `(self, other)`, used to form graph coordinates.
    pub fn concat(&self, other: &Vector) -> Vector {
        assert_eq!(self.p, other.p, "concatenation across different fields");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Vector { p: self.p, data }
    }

    /// Splits into the first `k` coordinates and the rest.
    pub fn split_at(&self, k: usize) -> (Vector, Vector) {
        assert!(k <= self.len());
        (
            Vector {
                p: self.p,
                data: self.data[..k].to_vec(),
            },
            Vector {
                p: self.p,
                data: self.data[k..].to_vec(),
            },
        )
    }

    pub fn to_ints(&self) -> Vec<u64> {
        self.data.iter().map(|&e| u64::from(e)).collect()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (mod {})", self.data, self.p)
    }
}

/// A rectangular matrix over GF(p), rows stored contiguously.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(p: Prime, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Stacks row vectors; `cols` disambiguates the empty case.
    pub fn from_rows(p: Prime, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.modulus(), p, "row over a different field");
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend_from_slice(r.as_slice());
        }
        Self {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from integer rows, validating the shape.
    pub fn from_int_rows(p: Prime, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        let vectors: Vec<Vector> = rows.iter().map(|r| Vector::from_ints(p, r)).collect();
        Ok(Self::from_rows(p, cols, &vectors))
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.p.scalar(u64::from(self.data[r * self.cols + c]))
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        assert_eq!(value.modulus(), self.p, "entry over a different field");
        self.data[r * self.cols + c] = value.value();
    }

    pub fn row(&self, r: usize) -> Vector {
        assert!(r < self.rows, "row index out of bounds");
        Vector {
            p: self.p,
            data: self.data[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn row_slice(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_int_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_ints()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "matrix addition across different fields");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let p = u64::from(self.p.value());
        Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ((u64::from(a) + u64::from(b)) % p) as u32)
                .collect(),
        }
    }

    pub fn scale(&self, c: Scalar) -> Matrix {
        assert_eq!(self.p, c.modulus(), "scaling across different fields");
        let p = u64::from(self.p.value());
        Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|&a| ((u64::from(a) * u64::from(c.value())) % p) as u32)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "matrix product across different fields");
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let p = u64::from(self.p.value());
        let mut out = Matrix::zero(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += u64::from(self.data[r * self.cols + k])
                        * u64::from(other.data[k * other.cols + c]);
                    acc %= p;
                }
                out.data[r * other.cols + c] = acc as u32;
            }
        }
        out
    }

    /// `self * v` with `v` read as a column vector.
    pub fn mat_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.p, v.modulus(), "product across different fields");
        assert_eq!(self.cols, v.len(), "inner dimension mismatch");
        let p = u64::from(self.p.value());
        let data = (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += u64::from(self.data[r * self.cols + k]) * u64::from(v.as_slice()[k]);
                    acc %= p;
                }
                acc as u32
            })
            .collect();
        Vector { p: self.p, data }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "stacking across different fields");
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Keeps the column range `lo..hi` of every row.
    pub fn columns(&self, lo: usize, hi: usize) -> Matrix {
        assert!(lo <= hi && hi <= self.cols, "column range out of bounds");
        let mut data = Vec::with_capacity(self.rows * (hi - lo));
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols + lo..r * self.cols + hi]);
        }
        Matrix {
            p: self.p,
            rows: self.rows,
            cols: hi - lo,
            data,
        }
    }

    /// Reduced row-echelon form together with the pivot columns.
    ///
    /// Pivots are monic, pivot columns are cleared elsewhere and strictly
    /// increasing, and zero rows are dropped, so the output is the
    /// canonical basis of the row space. Deterministic: the topmost
    /// candidate row is chosen for every pivot.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let p = u64::from(self.p.value());
        let mut data = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut piv_row = 0;
        for col in 0..cols {
            if piv_row == rows {
                break;
            }
            let Some(src) = (piv_row..rows).find(|&r| data[r * cols + col] != 0) else {
                continue;
            };
            if src != piv_row {
                for c in 0..cols {
                    data.swap(piv_row * cols + c, src * cols + c);
                }
            }
            let inv = u64::from(
                self.p
                    .scalar(u64::from(data[piv_row * cols + col]))
                    .inv()
                    .expect("pivot is nonzero")
                    .value(),
            );
            for c in col..cols {
                let v = u64::from(data[piv_row * cols + c]);
                data[piv_row * cols + c] = ((v * inv) % p) as u32;
            }
            for r in 0..rows {
                if r == piv_row || data[r * cols + col] == 0 {
                    continue;
                }
                let f = u64::from(data[r * cols + col]);
                for c in col..cols {
                    let sub = (f * u64::from(data[piv_row * cols + c])) % p;
                    let v = u64::from(data[r * cols + c]);
                    data[r * cols + c] = ((v + p - sub) % p) as u32;
                }
            }
            pivots.push(col);
            piv_row += 1;
        }
        data.truncate(piv_row * cols);
        (
            Matrix {
                p: self.p,
                rows: piv_row,
                cols,
                data,
            },
            pivots,
        )
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse via row reduction of `[self | I]`, when it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.data[r * n + c];
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(red.columns(n, 2 * n))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} (mod {}) [", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row_slice(r))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn m(p: u64, cols: usize, rows: &[Vec<u64>]) -> Matrix {
        Matrix::from_int_rows(gf(p), cols, rows).unwrap()
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(3, 3, &[vec![1, 2, 0], vec![2, 1, 1], vec![0, 0, 2]]);
        let r = a.rref();
        assert_eq!(r.rref(), r);
    }

    #[test]
    fn rref_of_zero_matrix_has_no_rows() {
        let z = Matrix::zero(gf(5), 3, 4);
        let r = z.rref();
        assert_eq!(r.nrows(), 0);
        assert_eq!(r.ncols(), 4);
    }

    #[test]
    fn rref_collapses_dependent_rows() {
        // 2*(1,2) = (2,4) = (2,1) mod 3, so the rows span one line.
        let a = m(3, 2, &[vec![2, 1], vec![1, 2]]);
        assert_eq!(a.rref(), m(3, 2, &[vec![1, 2]]));
    }

    #[test]
    fn rref_preserves_row_space() {
        let a = m(5, 3, &[vec![2, 3, 1], vec![4, 1, 0], vec![1, 4, 1]]);
        let r = a.rref();
        // Every original row reduces to zero against the echelon basis.
        for row in a.rows_iter() {
            let mut v = row.clone();
            for (i, basis_row) in r.rows_iter().enumerate() {
                let pivot = r.rref_with_pivots().1[i];
                let c = v.get(pivot);
                v = v.add(&basis_row.scale(-c));
            }
            assert!(v.is_zero(), "row {row:?} not in row space of rref");
        }
        assert_eq!(a.rank(), r.nrows());
    }

    #[test]
    fn matmul_and_inverse() {
        let a = m(7, 2, &[vec![1, 3], vec![2, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(gf(7), 2));
        assert_eq!(inv.mul(&a), Matrix::identity(gf(7), 2));

        let singular = m(7, 2, &[vec![1, 3], vec![2, 6]]);
        assert!(singular.inverse().is_none());
        assert!(!singular.is_invertible());
    }

    #[test]
    fn mat_vec_matches_columns() {
        let a = m(5, 2, &[vec![1, 2], vec![3, 4], vec![0, 1]]);
        let e0 = Vector::standard(gf(5), 2, 0);
        let e1 = Vector::standard(gf(5), 2, 1);
        assert_eq!(a.mat_vec(&e0).to_ints(), vec![1, 3, 0]);
        assert_eq!(a.mat_vec(&e1).to_ints(), vec![2, 4, 1]);
    }

    #[test]
    fn empty_shapes_are_usable() {
        let z = Matrix::zero(gf(3), 0, 0);
        assert_eq!(z.rref().nrows(), 0);
        assert_eq!(Matrix::identity(gf(3), 0).mul(&z).nrows(), 0);
        let v = Vector::zero(gf(3), 0);
        assert!(v.is_zero() && v.is_empty());
    }
}
