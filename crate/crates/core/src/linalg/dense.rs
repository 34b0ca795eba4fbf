use crate::field::Field;
use crate::linalg::sparse::{dense_to_sparse, Echelon, SparseMatrix, SparseVec};

/// Dense row-major matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_i64<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|&v| field.from_i64(v)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "dimension mismatch: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = field.add(&out.data[idx], &field.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !field.is_zero(a) && !field.is_zero(x) {
                        acc = field.add(&acc, &field.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| field.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Matrix<E> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| field.mul(c, a)).collect() }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|a| field.is_zero(a))
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        field.is_one(a)
                    } else {
                        field.is_zero(a)
                    }
                })
            })
    }

    pub fn to_sparse<F: Field<Elem = E>>(&self, field: &F) -> SparseMatrix<E> {
        SparseMatrix { rows: self.rows, cols: self.cols, data: (0..self.rows).map(|r| dense_to_sparse(field, self.row(r))).collect() }
    }

    pub fn from_sparse<F: Field<Elem = E>>(field: &F, m: &SparseMatrix<E>) -> Self {
        let mut out = Matrix::zeros(field, m.rows, m.cols);
        for (r, row) in m.data.iter().enumerate() {
            for (c, v) in row {
                out.set(r, *c, v.clone());
            }
        }
        out
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns<F: Field<Elem = E>>(field: &F, rows: usize, columns: &[SparseVec<E>]) -> Self {
        let mut out = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                out.set(*r, c, v.clone());
            }
        }
        out
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        let mut ech = Echelon::new(field.clone(), self.cols);
        for r in 0..self.rows {
            ech.insert(dense_to_sparse(field, self.row(r)));
        }
        ech.rank()
    }

    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<SparseVec<E>> {
        self.to_sparse(field).kernel(field)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Option<Matrix<E>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // Row-reduce [A | I]; tags carry the identity block.
        let mut ech = Echelon::new(field.clone(), n);
        for r in 0..n {
            let tag = vec![(r, field.one())];
            ech.insert_tagged(dense_to_sparse(field, self.row(r)), tag)?;
        }
        let rref = ech.into_rref();
        let mut out = Matrix::zeros(field, n, n);
        for (i, tag) in rref.tags().iter().enumerate() {
            let pivot = rref.pivots()[i];
            for (c, v) in tag {
                out.set(pivot, *c, v.clone());
            }
        }
        Some(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(field, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if field.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, field.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn render<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|a| field.render(a)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn inverse_over_q() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse(&q).unwrap();
        assert!(a.mul(&q, &inv).is_identity(&q));
        assert!(inv.mul(&q, &a).is_identity(&q));
    }

    #[test]
    fn singular_has_no_inverse() {
        let f = PrimeField::new(3).unwrap();
        let a = Matrix::from_i64(&f, 2, 2, &[1, 2, 2, 4]);
        assert!(a.inverse(&f).is_none());
        assert_eq!(a.rank(&f), 1);
    }

    #[test]
    fn kron_shape() {
        let f = PrimeField::new(5).unwrap();
        let a = Matrix::from_i64(&f, 1, 2, &[1, 2]);
        let b = Matrix::identity(&f, 2);
        let k = a.kron(&f, &b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(*k.get(1, 3), 2);
    }
}
