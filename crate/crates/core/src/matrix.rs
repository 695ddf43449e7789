//! Dense matrices over a field.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|row| row.iter().map(|v| field.from_i64(*v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn echelon(&self) -> Echelon<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Echelon { matrix, pivots } = self.echelon();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Echelon { matrix, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let Echelon { matrix, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgebraError::Degenerate("matrix is singular".into()));
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, matrix.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i == j || self.field.is_zero(self.get(i, j)))
        })
    }
}

/// Incrementally maintained row space in reduced echelon form.
#[derive(Clone, Debug)]
pub struct RowReducer<F: Field> {
    field: F,
    width: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(field: &F, width: usize) -> Self {
        RowReducer {
            field: field.clone(),
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row).skip(*pivot) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.width, "row width");
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pivot]).expect("nonzero pivot");
        for x in v.iter_mut().skip(pivot) {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in row.iter_mut().zip(&v).skip(pivot) {
                *x = f.sub(x, &f.mul(&c, r));
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn nullspace_vectors_are_killed() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]).unwrap();
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).unwrap().iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn det_inverse_and_solve_agree() {
        let q = Rationals;
        let m = Matrix::from_i64_rows(&q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), q.from_i64(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&q, 3));
        let b = [q.from_i64(1), q.from_i64(2), q.from_i64(3)];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b.to_vec());
    }

    #[test]
    fn row_reducer_tracks_rank() {
        let f = PrimeField::new(11).unwrap();
        let mut rr = RowReducer::new(&f, 3);
        assert!(rr.insert(&[0, 2, 4]));
        assert!(rr.insert(&[1, 1, 1]));
        assert!(!rr.insert(&[3, 5, 7]));
        assert!(rr.contains(&[2, 4, 6]));
        assert!(rr.insert(&[0, 0, 1]));
        assert_eq!(rr.rank(), 3);
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[1, 1], &[2, 2]]).unwrap();
        assert_eq!(m.solve(&[1, 3]).unwrap(), None);
        assert!(m.inverse().is_err());
        assert_eq!(m.det().unwrap(), 0);
    }
}
