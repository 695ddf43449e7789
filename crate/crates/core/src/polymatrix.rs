//! Matrices of polynomials with optional degree labels.
//!
//! A labeled matrix describes a graded map `⊕ R(-a_j) -> ⊕ R(-b_i)`: the column
//! labels are the `a_j`, the row labels the `b_i`, and entry `(i, j)` is zero or
//! homogeneous of degree `a_j - b_i`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyRing};
use crate::univariate;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<PolyRing<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
    row_degrees: Option<Vec<i64>>,
    col_degrees: Option<Vec<i64>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(ring: &Arc<PolyRing<F>>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(ring); rows * cols],
            row_degrees: None,
            col_degrees: None,
        }
    }

    /// `p * id_n`.
    pub fn scalar_identity(p: &Poly<F>, n: usize) -> Self {
        let mut m = Self::zeros(p.ring(), n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn identity(ring: &Arc<PolyRing<F>>, n: usize) -> Self {
        Self::scalar_identity(&Poly::one(ring), n)
    }

    pub fn from_rows(ring: &Arc<PolyRing<F>>, rows: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<Poly<F>> = rows.into_iter().flatten().collect();
        Self::from_entries(ring, r, c, entries)
    }

    pub fn from_entries(
        ring: &Arc<PolyRing<F>>,
        rows: usize,
        cols: usize,
        entries: Vec<Poly<F>>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|p| p.ring() != ring) {
            return Err(AlgebraError::RingMismatch("entry from a different ring".into()));
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
            row_degrees: None,
            col_degrees: None,
        })
    }

    pub fn from_fn(
        ring: &Arc<PolyRing<F>>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Poly<F>,
    ) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Lifts a scalar matrix to constant polynomials.
    pub fn from_scalar(ring: &Arc<PolyRing<F>>, m: &Matrix<F>) -> Self {
        Self::from_fn(ring, m.rows(), m.cols(), |i, j| {
            Poly::constant(ring, m.get(i, j).clone())
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[Poly<F>] {
        &self.entries
    }
    pub fn row_degrees(&self) -> Option<&[i64]> {
        self.row_degrees.as_deref()
    }
    pub fn col_degrees(&self) -> Option<&[i64]> {
        self.col_degrees.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<F>) {
        assert!(p.ring() == &self.ring, "entry from a different ring");
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Poly<F>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Attaches degree labels after checking every entry against them.
    pub fn with_degrees(mut self, row_degrees: Vec<i64>, col_degrees: Vec<i64>) -> Result<Self> {
        if row_degrees.len() != self.rows || col_degrees.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} row and {} column labels for a {}x{} matrix",
                row_degrees.len(),
                col_degrees.len(),
                self.rows,
                self.cols
            )));
        }
        self.row_degrees = Some(row_degrees);
        self.col_degrees = Some(col_degrees);
        self.check_degrees()?;
        Ok(self)
    }

    pub fn without_degrees(mut self) -> Self {
        self.row_degrees = None;
        self.col_degrees = None;
        self
    }

    /// Verifies the labeling convention; unlabeled matrices pass trivially.
    pub fn check_degrees(&self) -> Result<()> {
        let (Some(rd), Some(cd)) = (&self.row_degrees, &self.col_degrees) else {
            return Ok(());
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let expected = cd[j] - rd[i];
                match p.homogeneous_degree() {
                    Ok(Some(d)) if d as i64 == expected => {}
                    _ => {
                        return Err(AlgebraError::NotHomogeneous(format!(
                            "entry ({i},{j}) = {p} should be homogeneous of degree {expected}"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    /// Finds labels making the matrix homogeneous, if the entries allow it.
    pub fn infer_degrees(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut rd: Vec<Option<i64>> = vec![None; self.rows];
        let mut cd: Vec<Option<i64>> = vec![None; self.cols];
        let mut degree = vec![None; self.entries.len()];
        for (k, p) in self.entries.iter().enumerate() {
            if !p.is_zero() {
                degree[k] = Some(p.homogeneous_degree().ok()?? as i64);
            }
        }
        // nodes: rows are 0..rows, columns rows..rows+cols
        for start in 0..self.rows + self.cols {
            let assigned = if start < self.rows {
                rd[start].is_some()
            } else {
                cd[start - self.rows].is_some()
            };
            if assigned {
                continue;
            }
            if start < self.rows {
                rd[start] = Some(0);
            } else {
                cd[start - self.rows] = Some(0);
            }
            let mut queue = VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                if node < self.rows {
                    let i = node;
                    let r = rd[i]?;
                    for j in 0..self.cols {
                        if let Some(d) = degree[i * self.cols + j] {
                            match cd[j] {
                                None => {
                                    cd[j] = Some(r + d);
                                    queue.push_back(self.rows + j);
                                }
                                Some(c) if c != r + d => return None,
                                _ => {}
                            }
                        }
                    }
                } else {
                    let j = node - self.rows;
                    let c = cd[j]?;
                    for i in 0..self.rows {
                        if let Some(d) = degree[i * self.cols + j] {
                            match rd[i] {
                                None => {
                                    rd[i] = Some(c - d);
                                    queue.push_back(i);
                                }
                                Some(r) if r != c - d => return None,
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        Some((
            rd.into_iter().map(|d| d.unwrap_or(0)).collect(),
            cd.into_iter().map(|d| d.unwrap_or(0)).collect(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// True when the matrix equals `p * id`.
    pub fn is_scalar_identity(&self, p: &Poly<F>) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j) == p
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    /// First position where `self` differs from `p * id`.
    pub fn scalar_identity_mismatch(&self, p: &Poly<F>) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((self.rows, self.cols));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let ok = if i == j {
                    self.get(i, j) == p
                } else {
                    self.get(i, j).is_zero()
                };
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch("matrix product".into()));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        if let (Some(ar), Some(ac), Some(br), Some(bc)) = (
            &self.row_degrees,
            &self.col_degrees,
            &other.row_degrees,
            &other.col_degrees,
        ) {
            let shifts: Vec<i64> = ac.iter().zip(br).map(|(a, b)| a - b).collect();
            if shifts.windows(2).all(|w| w[0] == w[1]) {
                let c = shifts.first().copied().unwrap_or(0);
                out.row_degrees = Some(ar.clone());
                out.col_degrees = Some(bc.iter().map(|d| d + c).collect());
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Poly<F>, &Poly<F>) -> Poly<F>) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch("matrix sum".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| op(a, b))
            .collect();
        let same_labels =
            self.row_degrees == other.row_degrees && self.col_degrees == other.col_degrees;
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
            row_degrees: if same_labels { self.row_degrees.clone() } else { None },
            col_degrees: if same_labels { self.col_degrees.clone() } else { None },
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    /// Entrywise map; labels are dropped.
    pub fn map(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        let entries: Vec<Poly<F>> = self.entries.iter().map(f).collect();
        let ring = entries.first().map_or(self.ring.clone(), |p| p.ring().clone());
        PolyMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
            row_degrees: None,
            col_degrees: None,
        }
    }

    pub fn scale(&self, p: &Poly<F>) -> Self {
        self.map(|q| q * p)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        if let (Some(r), Some(c)) = (&self.row_degrees, &self.col_degrees) {
            t.row_degrees = Some(c.iter().map(|d| -d).collect());
            t.col_degrees = Some(r.iter().map(|d| -d).collect());
        }
        t
    }

    /// Kronecker product; entry `(i*p + k, j*q + l)` is `a_ij * b_kl`.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch("Kronecker product".into()));
        }
        let (p, q) = (other.rows, other.cols);
        let mut out = Self::zeros(&self.ring, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * p + k, j * q + l, a * b);
                        }
                    }
                }
            }
        }
        if let (Some(ar), Some(ac), Some(br), Some(bc)) = (
            &self.row_degrees,
            &self.col_degrees,
            &other.row_degrees,
            &other.col_degrees,
        ) {
            out.row_degrees = Some(ar.iter().flat_map(|x| br.iter().map(move |y| x + y)).collect());
            out.col_degrees = Some(ac.iter().flat_map(|x| bc.iter().map(move |y| x + y)).collect());
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(AlgebraError::DimensionMismatch("hstack row counts".into()));
        }
        Ok(Self::from_fn(&self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch("vstack column counts".into()));
        }
        Ok(Self::from_fn(&self.ring, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        }))
    }

    /// `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(&self.ring, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Substitutes every variable; the result lives in the ring of the images.
    pub fn substitute(&self, images: &[Poly<F>]) -> Result<Self> {
        let ring = images.first().map_or(self.ring.clone(), |p| p.ring().clone());
        let entries = self
            .entries
            .iter()
            .map(|p| p.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(&ring, self.rows, self.cols, entries)
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<Matrix<F>> {
        let field = self.ring.field();
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).eval(point)?);
            }
            rows.push(row);
        }
        if self.rows == 0 {
            return Ok(Matrix::zeros(field, 0, self.cols));
        }
        Matrix::from_rows(field, rows)
    }

    /// Largest total degree of any entry, `None` for the zero matrix.
    pub fn max_entry_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Determinant. Square matrices of binary forms with consistent labels are
    /// handled by evaluation at `(λ, 1)` and interpolation; everything else by
    /// fraction-free elimination.
    pub fn determinant(&self) -> Result<Poly<F>> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        if self.ring.nvars() == 2 {
            let labels = match (&self.row_degrees, &self.col_degrees) {
                (Some(r), Some(c)) => Some((r.clone(), c.clone())),
                _ => self.infer_degrees(),
            };
            if let Some((r, c)) = labels {
                let degree = c.iter().sum::<i64>() - r.iter().sum::<i64>();
                if let Some(det) = self.determinant_by_interpolation(degree)? {
                    return Ok(det);
                }
            }
        }
        self.determinant_bareiss()
    }

    fn determinant_by_interpolation(&self, degree: i64) -> Result<Option<Poly<F>>> {
        let field = self.ring.field();
        if degree < 0 {
            return Ok(None);
        }
        let points = degree as u64 + 1;
        if field.size().is_some_and(|q| q < points) {
            return Ok(None);
        }
        let xs: Vec<F::Elem> = (0..points).map(|k| field.nth_element(k)).collect();
        let mut ys = Vec::with_capacity(xs.len());
        for x in &xs {
            ys.push(self.eval(&[x.clone(), field.one()])?.det()?);
        }
        let mut coeffs = univariate::interpolate(field, &xs, &ys)?;
        coeffs.resize(points as usize, field.zero());
        Ok(Some(Poly::from_binary_coeffs(&self.ring, &coeffs)))
    }

    /// Bareiss elimination; every division is exact.
    pub fn determinant_bareiss(&self) -> Result<Poly<F>> {
        let n = self.rows;
        if n != self.cols {
            return Err(AlgebraError::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        if n == 0 {
            return Ok(Poly::one(&self.ring));
        }
        let mut m: Vec<Vec<Poly<F>>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one(&self.ring);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -&det } else { det })
    }
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|p| format!("{p}")).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    fn st() -> Arc<PolyRing<Rationals>> {
        PolyRing::binary(Rationals)
    }

    fn m(ring: &Arc<PolyRing<Rationals>>, rows: &[&[&str]]) -> PolyMatrix<Rationals> {
        PolyMatrix::from_rows(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|e| parse_poly(ring, e).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(a: &PolyMatrix<Rationals>) -> Poly<Rationals> {
        let n = a.rows();
        if n == 0 {
            return Poly::one(a.ring());
        }
        let mut acc = Poly::zero(a.ring());
        for j in 0..n {
            let minor = PolyMatrix::from_fn(a.ring(), n - 1, n - 1, |i, k| {
                a.get(i + 1, if k < j { k } else { k + 1 }).clone()
            });
            let term = a.get(0, j) * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn small_determinants() {
        let r = st();
        assert_eq!(
            m(&r, &[&["s", "t"], &["t", "s"]]).determinant().unwrap(),
            parse_poly(&r, "s^2 - t^2").unwrap()
        );
        assert_eq!(
            m(&r, &[&["0", "s + 3*t"], &["s + 3*t", "0"]]).determinant().unwrap(),
            parse_poly(&r, "-s^2 - 6*s*t - 9*t^2").unwrap()
        );
    }

    #[test]
    fn antidiagonal_pair_squares_to_f() {
        let r = st();
        let phi = m(&r, &[&["0", "s^4 - t^4"], &["1", "0"]]);
        let f = parse_poly(&r, "s^4 - t^4").unwrap();
        assert!(phi.mul(&phi).unwrap().is_scalar_identity(&f));
        let id = PolyMatrix::identity(&r, 2);
        assert_eq!(phi.mul(&id).unwrap(), phi);
    }

    #[test]
    fn labels_follow_products_and_transposes() {
        let r = st();
        let a = m(&r, &[&["s", "t^2"]]).with_degrees(vec![0], vec![1, 2]).unwrap();
        let b = m(&r, &[&["t"], &["1"]]).with_degrees(vec![1, 2], vec![2]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.col_degrees(), Some(&[2][..]));
        ab.check_degrees().unwrap();
        a.transpose().check_degrees().unwrap();
        assert!(m(&r, &[&["s", "t"]]).with_degrees(vec![0], vec![1, 2]).is_err());
    }

    #[test]
    fn inferred_labels_are_consistent() {
        let r = st();
        let a = m(&r, &[&["s^2", "t"], &["s^3", "s*t"]]);
        let (rd, cd) = a.infer_degrees().unwrap();
        a.clone().with_degrees(rd, cd).unwrap();
        assert!(m(&r, &[&["s", "1"], &["1", "s"]]).infer_degrees().is_none());
    }

    #[test]
    fn interpolation_falls_back_in_tiny_fields() {
        let f = PrimeField::new(3).unwrap();
        let r = PolyRing::binary(f);
        let a = PolyMatrix::from_rows(
            &r,
            vec![
                vec![parse_poly(&r, "s^3").unwrap(), parse_poly(&r, "t^3").unwrap()],
                vec![parse_poly(&r, "t^3").unwrap(), parse_poly(&r, "s^3 + s*t^2").unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(
            a.determinant().unwrap(),
            a.determinant_bareiss().unwrap()
        );
        assert_eq!(
            a.determinant().unwrap(),
            parse_poly(&r, "s^6 + s^4*t^2 - t^6").unwrap()
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_entry() -> impl Strategy<Value = (i64, i64, i64)> {
            (-3i64..4, -3i64..4, -3i64..4)
        }

        proptest! {
            #[test]
            fn determinant_matches_cofactor_expansion(
                n in 1usize..5,
                raw in prop::collection::vec(arb_entry(), 16),
                homogeneous in any::<bool>(),
            ) {
                let ring = st();
                let s = Poly::var(&ring, 0);
                let t = Poly::var(&ring, 1);
                let a = PolyMatrix::from_fn(&ring, n, n, |i, j| {
                    let (x, y, z) = raw[i * 4 + j];
                    let lin = &s.scale(&Rationals.from_i64(x)) + &t.scale(&Rationals.from_i64(y));
                    if homogeneous {
                        lin
                    } else {
                        &lin + &Poly::from_i64(&ring, z)
                    }
                });
                let expected = cofactor_det(&a);
                prop_assert_eq!(a.determinant().unwrap(), expected.clone());
                prop_assert_eq!(a.determinant_bareiss().unwrap(), expected);
            }
        }
    }
}
