//! Pencils of quadrics `s q1 + t q2`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::binary::{self, BinaryRoots};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyRing};
use crate::polymatrix::PolyMatrix;

/// Symmetric matrix `B` with `x^T B x = q` for a quadratic form `q`.
pub fn bilinear_matrix<F: Field>(q: &Poly<F>) -> Result<Matrix<F>> {
    let field = q.field();
    if !q.is_zero() && q.homogeneous_degree()? != Some(2) {
        return Err(AlgebraError::InvalidInput(format!("{q} is not a quadratic form")));
    }
    if field.characteristic() == 2 {
        return Err(AlgebraError::InvalidInput("characteristic 2".into()));
    }
    let r = q.ring().nvars();
    let half = field.inv(&field.from_i64(2))?;
    let mut b = Matrix::zeros(field, r, r);
    for (exp, c) in q.terms() {
        let idx: Vec<usize> = exp
            .iter()
            .enumerate()
            .flat_map(|(i, e)| core::iter::repeat(i).take(*e as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            b.set(i, i, c.clone());
        } else {
            let h = field.mul(c, &half);
            b.set(i, j, h.clone());
            b.set(j, i, h);
        }
    }
    Ok(b)
}

/// `v^T B w` as a polynomial in the ring of `vars`.
pub fn quadratic_form<F: Field>(ring: &Arc<PolyRing<F>>, b: &Matrix<F>) -> Poly<F> {
    let mut q = Poly::zero(ring);
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let c = b.get(i, j);
            if !ring.field().is_zero(c) {
                let xi = Poly::var(ring, i);
                let xj = Poly::var(ring, j);
                q = &q + &(&xi * &xj).scale(c);
            }
        }
    }
    q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricPencil<F: Field> {
    b1: Matrix<F>,
    b2: Matrix<F>,
}

impl<F: Field> QuadricPencil<F> {
    pub fn new(b1: Matrix<F>, b2: Matrix<F>) -> Result<Self> {
        if b1.rows() != b2.rows() || !b1.is_symmetric() || !b2.is_symmetric() {
            return Err(AlgebraError::InvalidInput(
                "pencil needs two symmetric matrices of the same size".into(),
            ));
        }
        Ok(QuadricPencil { b1, b2 })
    }

    pub fn from_quadrics(q1: &Poly<F>, q2: &Poly<F>) -> Result<Self> {
        if q1.ring() != q2.ring() {
            return Err(AlgebraError::RingMismatch("quadrics in different rings".into()));
        }
        Self::new(bilinear_matrix(q1)?, bilinear_matrix(q2)?)
    }

    pub fn dim(&self) -> usize {
        self.b1.rows()
    }
    pub fn field(&self) -> &F {
        self.b1.field()
    }
    pub fn b1(&self) -> &Matrix<F> {
        &self.b1
    }
    pub fn b2(&self) -> &Matrix<F> {
        &self.b2
    }

    /// `s B1 + t B2` over `k[s, t]`.
    pub fn pencil_matrix(&self, ring: &Arc<PolyRing<F>>) -> PolyMatrix<F> {
        let s = Poly::var(ring, 0);
        let t = Poly::var(ring, 1);
        PolyMatrix::from_fn(ring, self.dim(), self.dim(), |i, j| {
            &s.scale(self.b1.get(i, j)) + &t.scale(self.b2.get(i, j))
        })
    }

    /// `S^T B_l S` for both members.
    pub fn congruence(&self, s: &Matrix<F>) -> Result<Self> {
        let st = s.transpose();
        Self::new(st.mul(&self.b1)?.mul(s)?, st.mul(&self.b2)?.mul(s)?)
    }

    /// `det(s B1 + t B2)` with its first nonzero coefficient scaled to one.
    pub fn discriminant(&self) -> Result<Poly<F>> {
        let ring = PolyRing::binary(self.field().clone());
        let m = self.pencil_matrix(&ring);
        let labels: Vec<i64> = alloc::vec![0; self.dim()];
        let ones: Vec<i64> = alloc::vec![1; self.dim()];
        let det = m.with_degrees(labels, ones)?.determinant()?;
        if det.is_zero() {
            return Err(AlgebraError::Degenerate(
                "every member of the pencil is singular".into(),
            ));
        }
        binary::normalize(&det)
    }

    /// The pencil `(q1 + λ q2, q2)`.
    pub fn moved(&self, lambda: &F::Elem) -> Result<Self> {
        let f = self.field();
        let mut b1 = self.b1.clone();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                b1.set(i, j, f.add(self.b1.get(i, j), &f.mul(lambda, self.b2.get(i, j))));
            }
        }
        Self::new(b1, self.b2.clone())
    }
}

/// Result of simultaneous diagonalization.
#[derive(Clone, Debug)]
pub struct HyperellipticData<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    /// Linear forms `f_i`, pairwise non-proportional.
    pub factors: Vec<Poly<F>>,
    /// Columns form the diagonalizing basis: `M^T (s B1 + t B2) M = diag(f_i)`.
    pub basis: Matrix<F>,
    /// Pencil move `q1 -> q1 + λ q2` used when `B1` was singular.
    pub pencil_move: Option<F::Elem>,
}

impl<F: Field> HyperellipticData<F> {
    /// Curve data for `f_i = s - λ_i t` with the identity basis.
    pub fn from_roots(field: &F, roots: &[F::Elem]) -> Result<Self> {
        let ring = PolyRing::binary(field.clone());
        let factors: Vec<Poly<F>> = roots
            .iter()
            .map(|r| binary::linear_form(&ring, field.one(), field.neg(r)))
            .collect();
        Self::from_factors(&ring, factors)
    }

    pub fn from_factors(ring: &Arc<PolyRing<F>>, factors: Vec<Poly<F>>) -> Result<Self> {
        let r = factors.len();
        if r < 4 || r % 2 == 1 {
            return Err(AlgebraError::InvalidInput(format!(
                "need an even number >= 4 of linear factors, got {r}"
            )));
        }
        for (i, a) in factors.iter().enumerate() {
            if a.homogeneous_degree()? != Some(1) {
                return Err(AlgebraError::InvalidInput(format!("{a} is not a linear form")));
            }
            for b in &factors[..i] {
                if binary::proportional(a, b)? {
                    return Err(AlgebraError::NotSquarefree(format!("{a} and {b} are proportional")));
                }
            }
        }
        Ok(HyperellipticData {
            ring: ring.clone(),
            basis: Matrix::identity(ring.field(), r),
            factors,
            pencil_move: None,
        })
    }

    pub fn genus(&self) -> usize {
        self.factors.len() / 2 - 1
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    /// `f = ∏ f_i`.
    pub fn f(&self) -> Poly<F> {
        self.product(u32::MAX)
    }

    /// `f_I = ∏_{i ∈ I} f_i` for a bitmask `I` (bit `i` is factor `i`).
    pub fn product(&self, mask: u32) -> Poly<F> {
        self.factors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(Poly::one(&self.ring), |acc, (_, f)| &acc * f)
    }
}

/// Simultaneously diagonalizes a pencil whose discriminant splits into distinct factors.
pub fn simultaneous_diagonalize<F: Field>(p: &QuadricPencil<F>) -> Result<HyperellipticData<F>> {
    let field = p.field().clone();
    let disc = p.discriminant()?;
    let roots = binary::binary_form_roots(&disc)?;
    if !binary::squarefree_distinct(&disc)? {
        return Err(AlgebraError::NotSquarefree(format!(
            "discriminant {disc} has repeated roots: {}",
            binary::describe_roots(&roots, &field)
        )));
    }
    if !roots.splits {
        return Err(AlgebraError::NotSplit(format!(
            "{field}; change the prime (discriminant {disc})"
        )));
    }
    let mut working = p.clone();
    let mut pencil_move = None;
    let mut working_roots = roots;
    if working_roots.at_infinity > 0 {
        let mut k = 1u64;
        loop {
            if field.size().is_some_and(|q| k >= q) {
                return Err(AlgebraError::FieldTooSmall(
                    "no pencil move makes the first quadric invertible".into(),
                ));
            }
            let lambda = field.nth_element(k);
            let candidate = p.moved(&lambda)?;
            if !field.is_zero(&candidate.b1.det()?) {
                working_roots = binary::binary_form_roots(&candidate.discriminant()?)?;
                working = candidate;
                pencil_move = Some(lambda);
                break;
            }
            k += 1;
        }
    }
    let ring = PolyRing::binary(field.clone());
    let r = p.dim();
    let mut basis = Matrix::zeros(&field, r, r);
    let mut factors = Vec::with_capacity(r);
    for (col, (lambda, _)) in working_roots.roots.iter().enumerate() {
        // λ B1 + B2 is singular with a one-dimensional kernel
        let mut member = Matrix::zeros(&field, r, r);
        for i in 0..r {
            for j in 0..r {
                member.set(
                    i,
                    j,
                    field.add(&field.mul(lambda, working.b1.get(i, j)), working.b2.get(i, j)),
                );
            }
        }
        let null = member.nullspace();
        if null.len() != 1 {
            return Err(AlgebraError::NotSquarefree(format!(
                "eigenspace of dimension {} at {}",
                null.len(),
                field.elem_to_string(lambda)
            )));
        }
        let v = &null[0];
        for (i, x) in v.iter().enumerate() {
            basis.set(i, col, x.clone());
        }
        let a = dot(&field, v, &p.b1.mul_vec(v)?);
        let b = dot(&field, v, &p.b2.mul_vec(v)?);
        factors.push(binary::linear_form(&ring, a, b));
    }
    let data = HyperellipticData {
        ring,
        factors,
        basis,
        pencil_move,
    };
    verify_diagonalization(p, &data)?;
    Ok(data)
}

fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

/// Checks `M^T (s B1 + t B2) M = diag(f_i)` exactly.
pub fn verify_diagonalization<F: Field>(p: &QuadricPencil<F>, h: &HyperellipticData<F>) -> Result<()> {
    let conj = p.congruence(&h.basis)?;
    let m = conj.pencil_matrix(&h.ring);
    for i in 0..p.dim() {
        for j in 0..p.dim() {
            let expected = if i == j {
                h.factors[i].clone()
            } else {
                Poly::zero(&h.ring)
            };
            if m.get(i, j) != &expected {
                return Err(AlgebraError::VerificationFailed(format!(
                    "conjugated pencil has entry ({i},{j}) = {}, expected {expected}",
                    m.get(i, j)
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub diagnosis: String,
}

/// Smooth means: discriminant squarefree of full degree, with no root at infinity.
pub fn smoothness_check<F: Field>(p: &QuadricPencil<F>) -> SmoothnessReport {
    let disc = match p.discriminant() {
        Ok(d) => d,
        Err(e) => {
            return SmoothnessReport {
                smooth: false,
                diagnosis: e.to_string(),
            }
        }
    };
    let roots: BinaryRoots<F> = match binary::binary_form_roots(&disc) {
        Ok(r) => r,
        Err(e) => {
            return SmoothnessReport {
                smooth: false,
                diagnosis: e.to_string(),
            }
        }
    };
    let field = p.field();
    if roots.at_infinity > 0 {
        return SmoothnessReport {
            smooth: false,
            diagnosis: "root at infinity".into(),
        };
    }
    let repeated: Vec<String> = roots
        .roots
        .iter()
        .filter(|(_, m)| *m > 1)
        .map(|(r, m)| format!("{} (x{m})", field.elem_to_string(r)))
        .collect();
    let squarefree = binary::squarefree_distinct(&disc).unwrap_or(false);
    if squarefree && repeated.is_empty() {
        return SmoothnessReport {
            smooth: true,
            diagnosis: format!(
                "{} distinct roots: {}",
                p.dim(),
                binary::describe_roots(&roots, field)
            ),
        };
    }
    let diagnosis = if !repeated.is_empty() && roots.roots.iter().all(|(_, m)| *m > 1) {
        format!("all roots repeated: {}", repeated.join(", "))
    } else if !repeated.is_empty() {
        format!("repeated roots: {}", repeated.join(", "))
    } else {
        "repeated factor over an extension field".into()
    };
    SmoothnessReport {
        smooth: false,
        diagnosis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    #[test]
    fn polarization_examples() {
        let q = Rationals;
        let r = PolyRing::new(q, &["x0", "y0"]);
        let b = bilinear_matrix(&parse_poly(&r, "x0*y0").unwrap()).unwrap();
        let half = q.parse_elem("1/2").unwrap();
        assert_eq!(b, Matrix::from_rows(&q, alloc::vec![alloc::vec![q.zero(), half.clone()], alloc::vec![half, q.zero()]]).unwrap());
        let r1 = PolyRing::new(q, &["x"]);
        assert_eq!(
            bilinear_matrix(&parse_poly(&r1, "x^2").unwrap()).unwrap(),
            Matrix::identity(&q, 1)
        );
        assert!(bilinear_matrix(&parse_poly(&r1, "x^3").unwrap()).is_err());
    }

    #[test]
    fn polarization_matches_the_half_difference_formula() {
        let f = PrimeField::new(10009).unwrap();
        let r = PolyRing::new(f, &["x0", "x1", "y0", "y1"]);
        let q = parse_poly(&r, "x0*y0 + x1*y1").unwrap();
        let b = bilinear_matrix(&q).unwrap();
        let half = f.inv(&2).unwrap();
        let e = |i: usize| -> Vec<u64> { (0..4).map(|k| u64::from(k == i)).collect() };
        for i in 0..4 {
            for j in 0..4 {
                let sum: Vec<u64> = e(i).iter().zip(e(j)).map(|(a, b)| a + b).collect();
                let val = f.sub(
                    &f.sub(&q.eval(&sum).unwrap(), &q.eval(&e(i)).unwrap()),
                    &q.eval(&e(j)).unwrap(),
                );
                let expected = if i == j { q.eval(&e(i)).unwrap() } else { f.mul(&val, &half) };
                assert_eq!(*b.get(i, j), expected, "entry {i},{j}");
            }
        }
    }

    #[test]
    fn discriminant_of_sum_and_difference_of_squares() {
        let r = PolyRing::new(Rationals, &["x", "y"]);
        let p = QuadricPencil::from_quadrics(
            &parse_poly(&r, "x^2 + y^2").unwrap(),
            &parse_poly(&r, "x^2 - y^2").unwrap(),
        )
        .unwrap();
        let st = PolyRing::binary(Rationals);
        assert_eq!(p.discriminant().unwrap(), parse_poly(&st, "s^2 - t^2").unwrap());
    }

    #[test]
    fn diagonal_pencil_is_left_alone() {
        let f = PrimeField::new(13).unwrap();
        let r = PolyRing::new(f, &["a", "b"]);
        let p = QuadricPencil::from_quadrics(
            &parse_poly(&r, "a^2 + b^2").unwrap(),
            &parse_poly(&r, "a^2 - b^2").unwrap(),
        )
        .unwrap();
        let h = simultaneous_diagonalize(&p).unwrap();
        // each basis vector is a coordinate vector
        for j in 0..2 {
            assert_eq!(h.basis.column(j).iter().filter(|x| **x != 0).count(), 1);
        }
        let mut roots: Vec<u64> = h.factors.iter().map(|l| binary::linear_root(l).unwrap()).collect();
        roots.sort();
        assert_eq!(roots, [1, 12]);
    }

    #[test]
    fn two_xy_and_difference_of_squares_over_f13() {
        let f = PrimeField::new(13).unwrap();
        let r = PolyRing::new(f, &["x", "y"]);
        let p = QuadricPencil::from_quadrics(
            &parse_poly(&r, "2*x*y").unwrap(),
            &parse_poly(&r, "x^2 - y^2").unwrap(),
        )
        .unwrap();
        // det [[t, s], [s, -t]] = -(s^2 + t^2); over F_13 the roots are ±5
        let h = simultaneous_diagonalize(&p).unwrap();
        assert_eq!(h.pencil_move, None);
        assert!(!binary::proportional(&h.factors[0], &h.factors[1]).unwrap());
        verify_diagonalization(&p, &h).unwrap();
        let prod = &h.factors[0] * &h.factors[1];
        assert_eq!(binary::normalize(&prod).unwrap(), p.discriminant().unwrap());
    }

    #[test]
    fn singular_first_quadric_triggers_a_pencil_move() {
        let f = PrimeField::new(13).unwrap();
        let r = PolyRing::new(f, &["x", "y"]);
        let p = QuadricPencil::from_quadrics(
            &parse_poly(&r, "x^2").unwrap(),
            &parse_poly(&r, "x^2 + y^2").unwrap(),
        )
        .unwrap();
        let h = simultaneous_diagonalize(&p).unwrap();
        assert_eq!(h.pencil_move, Some(1));
        verify_diagonalization(&p, &h).unwrap();
    }

    #[test]
    fn repeated_root_is_rejected() {
        let r = PolyRing::new(Rationals, &["x", "y"]);
        let p = QuadricPencil::from_quadrics(
            &parse_poly(&r, "x^2 + y^2").unwrap(),
            &parse_poly(&r, "-x^2 - y^2").unwrap(),
        )
        .unwrap();
        assert!(matches!(
            simultaneous_diagonalize(&p),
            Err(AlgebraError::NotSquarefree(_))
        ));
    }

    #[test]
    fn smoothness_diagnoses() {
        let q = Rationals;
        let r = PolyRing::new(q, &["a", "b", "c", "d"]);
        let p = QuadricPencil::from_quadrics(
            &parse_poly(&r, "a^2 + b^2 + c^2 + d^2").unwrap(),
            &parse_poly(&r, "a^2 - b^2 + 2*c^2 - 2*d^2").unwrap(),
        )
        .unwrap();
        assert!(smoothness_check(&p).smooth);
        let r2 = PolyRing::new(q, &["x", "y"]);
        let at_inf = QuadricPencil::from_quadrics(
            &parse_poly(&r2, "x^2").unwrap(),
            &parse_poly(&r2, "y^2").unwrap(),
        )
        .unwrap();
        let rep = smoothness_check(&at_inf);
        assert!(!rep.smooth);
        assert_eq!(rep.diagnosis, "root at infinity");
    }
}
