//! Dense matrices over a [`Field`] with exact row reduction.
//!
//! Bases of subspaces are column matrices. Row reduction always picks the
//! first nonzero entry in the leftmost remaining column, so kernels, images
//! and complements come out identical on every run.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        Self { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for col in columns {
                data.push(col[r].clone());
            }
        }
        Self { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Rows `rows` of the matrix, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Self {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, rhs.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.add(a, b)).collect();
        Self { data, ..*self }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.sub(a, b)).collect();
        Self { data, ..*self }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Self { data, ..*self }
    }

    /// Block matrix `[[a, 0], [0, b]]`.
    pub fn block_diag<F: Field<Elem = E>>(f: &F, a: &Self, b: &Self) -> Self {
        let top = a.hstack(&Self::zeros(f, a.rows, b.cols));
        let bottom = Self::zeros(f, b.rows, a.cols).hstack(b);
        top.vstack(&bottom)
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("nonzero pivot");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Basis of `{x : self · x = 0}` as columns of a `cols × k` matrix.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, f.one());
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(r.get(pr, fc)));
            }
        }
        basis
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn column_space<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let (_, pivots) = self.rref(f);
        let cols: Vec<Vec<E>> = pivots.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Self::identity(f, n));
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(r.get(i, n + j).clone());
            }
        }
        Some(Self::from_vec(n, n, data))
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, mut k: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(f, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            k >>= 1;
        }
        acc
    }
}

/// A subspace of `k^n` together with deterministic coordinate maps.
///
/// `basis` has full column rank. `coords` is a left inverse of `basis`
/// built from its pivot rows, so `coords · v` gives the coordinates of any
/// vector `v` lying in the subspace.
#[derive(Debug, Clone)]
pub struct Subspace<E> {
    pub basis: Matrix<E>,
    pub coords: Matrix<E>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    /// Span of the columns of `spanning`.
    pub fn span<F: Field<Elem = E>>(f: &F, spanning: &Matrix<E>) -> Self {
        let basis = spanning.column_space(f);
        Self::from_basis(f, basis)
    }

    pub fn from_basis<F: Field<Elem = E>>(f: &F, basis: Matrix<E>) -> Self {
        let n = basis.rows();
        let k = basis.cols();
        // Pivot rows of the basis are the pivot columns of its transpose.
        let (_, pivot_rows) = basis.transpose().rref(f);
        debug_assert_eq!(pivot_rows.len(), k, "basis must have full column rank");
        let square = basis.select_rows(&pivot_rows);
        let inv = square.inverse(f).expect("pivot rows are independent");
        let mut coords = Matrix::zeros(f, k, n);
        for (j, &pr) in pivot_rows.iter().enumerate() {
            for i in 0..k {
                coords.set(i, pr, inv.get(i, j).clone());
            }
        }
        Self { basis, coords }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    /// Standard basis vectors, lowest index first, completing this subspace
    /// to the whole space. Returned as columns.
    pub fn complement<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let n = self.ambient();
        let mut current = self.basis.clone();
        let mut chosen: Vec<Vec<E>> = Vec::new();
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            let candidate = current.hstack(&Matrix::from_columns(n, &[e.clone()]));
            if candidate.rank(f) > current.cols() {
                current = candidate;
                chosen.push(e);
            }
            if current.cols() == n {
                break;
            }
        }
        Matrix::from_columns(n, &chosen)
    }

    pub fn intersect<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.ambient();
        // x = A u = B w  <=>  [A | -B] (u, w) = 0
        let stacked = self.basis.hstack(&other.basis.scale(f, &f.neg(&f.one())));
        let ker = stacked.kernel(f);
        let mut vectors = Vec::new();
        for c in 0..ker.cols() {
            let u: Vec<E> = (0..self.dim()).map(|r| ker.get(r, c).clone()).collect();
            let x = self.basis.mul(f, &Matrix::from_columns(self.dim(), &[u]));
            vectors.push(x.column(0));
        }
        Self::span(f, &Matrix::from_columns(n, &vectors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: usize, cols: usize, v: &[i64]) -> Matrix<num_rational::BigRational> {
        let f = Rationals;
        Matrix::from_vec(rows, cols, v.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Rationals;
        let a = q(2, 4, &[1, 2, 0, -1, 2, 4, 1, 0]);
        let k = a.kernel(&f);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&f, &k).is_zero(&f));
        assert_eq!(a.rank(&f) + k.cols(), 4);
    }

    #[test]
    fn inverse_roundtrip_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let a = Matrix::from_vec(2, 2, vec![1, 2, 0, 1]);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &inv), Matrix::identity(&f, 2));
        let singular = Matrix::from_vec(2, 2, vec![1, 2, 2, 1]);
        assert!(singular.inverse(&f).is_none());
    }

    #[test]
    fn subspace_coordinates() {
        let f = Rationals;
        let span = q(3, 2, &[1, 0, 1, 1, 0, 1]);
        let s = Subspace::span(&f, &span);
        assert_eq!(s.dim(), 2);
        // coords · basis = I
        assert_eq!(s.coords.mul(&f, &s.basis), Matrix::identity(&f, 2));
        let comp = s.complement(&f);
        assert_eq!(comp.cols(), 1);
        assert_eq!(s.basis.hstack(&comp).rank(&f), 3);
    }

    #[test]
    fn intersection_dimension() {
        let f = PrimeField::f2();
        let a = Subspace::span(&f, &Matrix::from_vec(3, 2, vec![1, 0, 0, 1, 0, 0]));
        let b = Subspace::span(&f, &Matrix::from_vec(3, 2, vec![0, 0, 1, 0, 0, 1]));
        assert_eq!(a.intersect(&f, &b).dim(), 1);
    }
}
