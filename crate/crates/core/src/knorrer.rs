//! Knörrer factorizations of `Σ x_i y_i` and the linear presentations built from them.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyRing};
use crate::polymatrix::PolyMatrix;

/// `(phi, psi)` built recursively from the linear forms `x_0..x_n` and `y_0..y_n`.
pub fn knorrer_matrices<F: Field>(x: &[Poly<F>], y: &[Poly<F>]) -> Result<(PolyMatrix<F>, PolyMatrix<F>)> {
    if x.is_empty() || x.len() != y.len() {
        return Err(AlgebraError::DimensionMismatch("need matching nonempty x and y".into()));
    }
    let ring = x[0].ring();
    let mut phi = PolyMatrix::from_rows(ring, alloc::vec![alloc::vec![x[0].clone()]])?;
    let mut psi = PolyMatrix::from_rows(ring, alloc::vec![alloc::vec![y[0].clone()]])?;
    for k in 1..x.len() {
        let size = phi.rows();
        let xi = PolyMatrix::scalar_identity(&x[k], size);
        let yi = PolyMatrix::scalar_identity(&y[k], size);
        let next_phi = PolyMatrix::block(&xi, &phi, &psi, &yi.neg())?;
        let next_psi = PolyMatrix::block(&yi, &phi, &psi, &xi.neg())?;
        phi = next_phi;
        psi = next_psi;
    }
    Ok((phi, psi))
}

/// Ring `k[x_0..x_n, y_0..y_n]`.
pub fn xy_ring<F: Field>(field: &F, n: usize) -> Arc<PolyRing<F>> {
    let names: Vec<String> = (0..=n)
        .map(|i| format!("x{i}"))
        .chain((0..=n).map(|i| format!("y{i}")))
        .collect();
    PolyRing::new(field.clone(), &names)
}

#[derive(Clone, Debug)]
pub struct KnorrerPair<F: Field> {
    pub n: usize,
    pub ring: Arc<PolyRing<F>>,
    pub phi: PolyMatrix<F>,
    pub psi: PolyMatrix<F>,
    pub q: Poly<F>,
}

pub fn knorrer_pair<F: Field>(field: &F, n: usize) -> Result<KnorrerPair<F>> {
    let ring = xy_ring(field, n);
    let x: Vec<Poly<F>> = (0..=n).map(|i| Poly::var(&ring, i)).collect();
    let y: Vec<Poly<F>> = (0..=n).map(|i| Poly::var(&ring, n + 1 + i)).collect();
    let (phi, psi) = knorrer_matrices(&x, &y)?;
    let q = x.iter().zip(&y).fold(Poly::zero(&ring), |acc, (a, b)| &acc + &(a * b));
    for (name, prod) in [("phi*psi", phi.mul(&psi)?), ("psi*phi", psi.mul(&phi)?)] {
        if let Some((i, j)) = prod.scalar_identity_mismatch(&q) {
            return Err(AlgebraError::VerificationFailed(format!("{name} differs from q*id at ({i}, {j})")));
        }
    }
    Ok(KnorrerPair { n, ring, phi, psi, q })
}

/// `[A(x,y) | A(v,w)] [B(v,w); B(x,y)] = Σ (x_i w_i + y_i v_i) id` in `4(n+1)` variables.
pub fn mixed_identity_check<F: Field>(field: &F, n: usize) -> Result<bool> {
    let names: Vec<String> = ["x", "y", "v", "w"]
        .iter()
        .flat_map(|p| (0..=n).map(move |i| format!("{p}{i}")))
        .collect();
    let ring = PolyRing::new(field.clone(), &names);
    let block = |k: usize| -> Vec<Poly<F>> { (0..=n).map(|i| Poly::var(&ring, k * (n + 1) + i)).collect() };
    let (x, y, v, w) = (block(0), block(1), block(2), block(3));
    let (a_xy, b_xy) = knorrer_matrices(&x, &y)?;
    let (a_vw, b_vw) = knorrer_matrices(&v, &w)?;
    let lhs = a_xy.hstack(&a_vw)?.mul(&b_vw.vstack(&b_xy)?)?;
    let mut q = Poly::zero(&ring);
    for i in 0..=n {
        q = &(&q + &(&x[i] * &w[i])) + &(&y[i] * &v[i]);
    }
    Ok(lhs.is_scalar_identity(&q))
}

/// `G_Λ = [[0, I], [I, 0]] Λ` for a skew-symmetric `Λ` of size `2(n+1)`.
#[derive(Clone, Debug)]
pub struct GLambda<F: Field> {
    pub matrix: Matrix<F>,
    /// `(x|y) G_Λ (y|x)^T` vanishes identically.
    pub isotropic: bool,
}

pub fn g_lambda<F: Field>(lambda: &Matrix<F>) -> Result<GLambda<F>> {
    let field = lambda.field();
    let m = lambda.rows();
    if m != lambda.cols() || m % 2 == 1 || m == 0 {
        return Err(AlgebraError::InvalidInput(format!("Λ must be square of even size, got {}x{}", m, lambda.cols())));
    }
    for i in 0..m {
        for j in 0..m {
            if field.add(lambda.get(i, j), lambda.get(j, i)) != field.zero() {
                return Err(AlgebraError::InvalidInput(format!("Λ is not skew-symmetric at ({i}, {j})")));
            }
        }
    }
    let half = m / 2;
    let mut matrix = Matrix::zeros(field, m, m);
    for i in 0..m {
        let src = (i + half) % m;
        for j in 0..m {
            matrix.set(i, j, lambda.get(src, j).clone());
        }
    }
    let ring = xy_ring(field, half - 1);
    let xy: Vec<Poly<F>> = (0..m).map(|i| Poly::var(&ring, i)).collect();
    let yx: Vec<Poly<F>> = (0..m).map(|i| xy[(i + half) % m].clone()).collect();
    let image = substituted_coordinates(&matrix, &xy);
    let form = image.iter().zip(&yx).fold(Poly::zero(&ring), |acc, (a, b)| &acc + &(a * b));
    Ok(GLambda {
        matrix,
        isotropic: form.is_zero(),
    })
}

/// The row vector `coords · G`.
fn substituted_coordinates<F: Field>(g: &Matrix<F>, coords: &[Poly<F>]) -> Vec<Poly<F>> {
    let ring = coords[0].ring();
    (0..g.cols())
        .map(|j| {
            coords
                .iter()
                .enumerate()
                .fold(Poly::zero(ring), |acc, (i, c)| &acc + &c.scale(g.get(i, j)))
        })
        .collect()
}

/// `Λ = [[0, D], [-D, 0]]` for a diagonal `D`.
pub fn diagonal_lambda<F: Field>(field: &F, d: &[F::Elem]) -> Matrix<F> {
    let k = d.len();
    let mut m = Matrix::zeros(field, 2 * k, 2 * k);
    for (i, di) in d.iter().enumerate() {
        m.set(i, k + i, di.clone());
        m.set(k + i, i, field.neg(di));
    }
    m
}

/// A linear presentation `A` (`r x 2r`) with `A B = 0` and `A C_l = q_l id`.
#[derive(Clone, Debug)]
pub struct UlrichCandidate<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub q1: Poly<F>,
    pub q2: Poly<F>,
    pub a: PolyMatrix<F>,
    pub b: PolyMatrix<F>,
    pub c1: PolyMatrix<F>,
    pub c2: PolyMatrix<F>,
}

/// Result of checking the three matrix identities of a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    pub composition_vanishes: bool,
    pub first_certificate: bool,
    pub second_certificate: bool,
    pub linear: bool,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.composition_vanishes && self.first_certificate && self.second_certificate && self.linear
    }
}

impl<F: Field> UlrichCandidate<F> {
    pub fn generators(&self) -> usize {
        self.a.rows()
    }

    /// Rank on the degree-4 variety: `generators / 4`, when that is an integer.
    pub fn module_rank(&self) -> Option<usize> {
        let r = self.generators();
        (r % 4 == 0).then_some(r / 4)
    }

    pub fn check_complex(&self) -> Result<ComplexReport> {
        let linear = self
            .a
            .entries()
            .iter()
            .all(|p| p.is_zero() || p.homogeneous_degree().ok().flatten() == Some(1));
        Ok(ComplexReport {
            composition_vanishes: self.a.mul(&self.b)?.is_zero(),
            first_certificate: self.a.mul(&self.c1)?.is_scalar_identity(&self.q1),
            second_certificate: self.a.mul(&self.c2)?.is_scalar_identity(&self.q2),
            linear,
        })
    }

    /// Applies a substitution of all variables by polynomials in a new ring.
    pub fn substitute(&self, images: &[Poly<F>]) -> Result<Self> {
        let ring = images
            .first()
            .map(|p| p.ring().clone())
            .ok_or_else(|| AlgebraError::InvalidInput("empty substitution".into()))?;
        Ok(UlrichCandidate {
            ring,
            q1: self.q1.substitute(images)?,
            q2: self.q2.substitute(images)?,
            a: self.a.substitute(images)?,
            b: self.b.substitute(images)?,
            c1: self.c1.substitute(images)?,
            c2: self.c2.substitute(images)?,
        })
    }
}

/// `A = [A_1 | A_2]` with `A_1 = phi(x, y)`, `A_2 = phi((x|y) G_Λ)`.
pub fn build_candidate<F: Field>(field: &F, n: usize, lambda: &Matrix<F>) -> Result<UlrichCandidate<F>> {
    if n < 2 {
        return Err(AlgebraError::InvalidInput(format!(
            "n = {n}: the module rank 2^(n-2) is not a positive integer, need n >= 2"
        )));
    }
    if lambda.rows() != 2 * (n + 1) {
        return Err(AlgebraError::DimensionMismatch(format!(
            "Λ has size {} but n = {n} needs {}",
            lambda.rows(),
            2 * (n + 1)
        )));
    }
    let g = g_lambda(lambda)?;
    if !g.isotropic {
        return Err(AlgebraError::VerificationFailed("G_Λ substitution is not isotropic".into()));
    }
    let ring = xy_ring(field, n);
    let xy: Vec<Poly<F>> = (0..2 * (n + 1)).map(|i| Poly::var(&ring, i)).collect();
    let vw = substituted_coordinates(&g.matrix, &xy);
    let (x, y) = xy.split_at(n + 1);
    let (v, w) = vw.split_at(n + 1);
    let (a1, b1) = knorrer_matrices(x, y)?;
    let (a2, b2) = knorrer_matrices(v, w)?;
    let q1 = x.iter().zip(y).fold(Poly::zero(&ring), |acc, (p, q)| &acc + &(p * q));
    let q2 = v.iter().zip(w).fold(Poly::zero(&ring), |acc, (p, q)| &acc + &(p * q));
    if q2.is_zero() {
        return Err(AlgebraError::Degenerate("second quadric vanishes".into()));
    }
    if let Some((m, c)) = q1.leading_term() {
        let ratio = field.div(&q2.coeff(m), c)?;
        if q2 == q1.scale(&ratio) {
            return Err(AlgebraError::Degenerate("second quadric is proportional to the first".into()));
        }
    }
    let size = a1.rows();
    let zero = PolyMatrix::zeros(&ring, size, size);
    let cand = UlrichCandidate {
        a: a1.hstack(&a2)?,
        b: b2.vstack(&b1)?,
        c1: b1.vstack(&zero)?,
        c2: zero.vstack(&b2)?,
        q1,
        q2,
        ring,
    };
    if !cand.check_complex()?.passed() {
        return Err(AlgebraError::VerificationFailed("candidate identities fail".into()));
    }
    Ok(cand)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianReport {
    pub distinct_squares: bool,
    pub samples: usize,
    pub smooth_samples: usize,
}

impl JacobianReport {
    pub fn passed(&self) -> bool {
        self.distinct_squares && self.smooth_samples == self.samples
    }
}

/// For `q1 = Σ x_i y_i`, `q2 = -Σ d_i^2 x_i y_i`: distinctness of the `d_i^2` and the
/// rank of the Jacobian at random points of `V(q1, q2)` off the coordinate points.
pub fn jacobian_check<F: Field>(field: &F, d: &[F::Elem], samples: usize, seed: u64) -> Result<JacobianReport> {
    let n = d.len().checked_sub(1).ok_or_else(|| AlgebraError::InvalidInput("empty d".into()))?;
    let squares: Vec<F::Elem> = d.iter().map(|x| field.mul(x, x)).collect();
    let distinct_squares = (0..squares.len()).all(|i| (0..i).all(|j| squares[i] != squares[j]));
    let report = JacobianReport {
        distinct_squares,
        samples,
        smooth_samples: 0,
    };
    if !distinct_squares || n == 0 {
        return Ok(report);
    }
    let ring = xy_ring(field, n);
    let x: Vec<Poly<F>> = (0..=n).map(|i| Poly::var(&ring, i)).collect();
    let y: Vec<Poly<F>> = (0..=n).map(|i| Poly::var(&ring, n + 1 + i)).collect();
    let mut q1 = Poly::zero(&ring);
    let mut q2 = Poly::zero(&ring);
    for i in 0..=n {
        let xy = &x[i] * &y[i];
        q1 = &q1 + &xy;
        q2 = &q2 - &xy.scale(&squares[i]);
    }
    let grads: Vec<[Poly<F>; 2]> = (0..ring.nvars()).map(|v| [q1.derivative(v), q2.derivative(v)]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut smooth = 0;
    let mut taken = 0;
    let mut attempts = 0;
    while taken < samples {
        attempts += 1;
        if attempts > 50 * samples + 50 {
            return Err(AlgebraError::FieldTooSmall("could not sample points on V(q1, q2)".into()));
        }
        let xs: Vec<F::Elem> = (0..=n).map(|_| field.random_nonzero(&mut rng)).collect();
        let mut ys: Vec<F::Elem> = (0..n - 1).map(|_| field.random_elem(&mut rng)).collect();
        // Solve for y_{n-1}, y_n from the two linear conditions.
        let (mut r1, mut r2) = (field.zero(), field.zero());
        for i in 0..n - 1 {
            let t = field.mul(&xs[i], &ys[i]);
            r1 = field.sub(&r1, &t);
            r2 = field.sub(&r2, &field.mul(&squares[i], &t));
        }
        let sys = Matrix::from_rows(
            field,
            alloc::vec![
                alloc::vec![xs[n - 1].clone(), xs[n].clone()],
                alloc::vec![field.mul(&squares[n - 1], &xs[n - 1]), field.mul(&squares[n], &xs[n])],
            ],
        )?;
        let Some(sol) = sys.solve(&[r1, r2])? else { continue };
        ys.extend(sol);
        let point: Vec<F::Elem> = xs.into_iter().chain(ys).collect();
        let nonzero = point.iter().filter(|c| !field.is_zero(c)).count();
        if nonzero <= 1 {
            continue;
        }
        debug_assert!(field.is_zero(&q1.eval(&point)?) && field.is_zero(&q2.eval(&point)?));
        let rows = grads
            .iter()
            .map(|[a, b]| Ok(alloc::vec![a.eval(&point)?, b.eval(&point)?]))
            .collect::<Result<Vec<_>>>()?;
        if Matrix::from_rows(field, rows)?.rank() == 2 {
            smooth += 1;
        }
        taken += 1;
    }
    Ok(JacobianReport {
        smooth_samples: smooth,
        ..report
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn fp() -> PrimeField {
        PrimeField::new(10009).unwrap()
    }

    #[test]
    fn small_knorrer_pairs() {
        let p = knorrer_pair(&fp(), 0).unwrap();
        assert_eq!(format!("{}", p.phi.get(0, 0)), "x0");
        let p = knorrer_pair(&fp(), 1).unwrap();
        let shown: Vec<String> = p.phi.entries().iter().map(|e| format!("{e}")).collect();
        assert_eq!(shown, ["x1", "x0", "y0", "-y1"]);
        let shown: Vec<String> = p.psi.entries().iter().map(|e| format!("{e}")).collect();
        assert_eq!(shown, ["y1", "x0", "y0", "-x1"]);
    }

    #[test]
    fn mixed_identity_small() {
        for n in 0..=2 {
            assert!(mixed_identity_check(&fp(), n).unwrap());
        }
    }

    #[test]
    fn diagonal_g_lambda() {
        let f = fp();
        let d = [1, 2, 3];
        let g = g_lambda(&diagonal_lambda(&f, &d)).unwrap();
        assert!(g.isotropic);
        for i in 0..3 {
            assert_eq!(g.matrix.get(i, i), &f.neg(&d[i]));
            assert_eq!(g.matrix.get(3 + i, 3 + i), &d[i]);
        }
        assert!(g.matrix.is_diagonal());
    }

    #[test]
    fn non_skew_rejected() {
        let f = fp();
        let mut l = diagonal_lambda(&f, &[1, 2]);
        l.set(0, 0, 1);
        assert!(g_lambda(&l).is_err());
    }

    #[test]
    fn candidate_shape_and_degeneracy() {
        let f = fp();
        let c = build_candidate(&f, 2, &diagonal_lambda(&f, &[1, 2, 3])).unwrap();
        assert_eq!((c.a.rows(), c.a.cols()), (4, 8));
        assert_eq!(c.module_rank(), Some(1));
        let zero = Matrix::zeros(&f, 6, 6);
        assert!(matches!(build_candidate(&f, 2, &zero), Err(AlgebraError::Degenerate(_))));
        assert!(build_candidate(&f, 1, &diagonal_lambda(&f, &[1, 2])).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let f = fp();
        assert!(jacobian_check(&f, &[1, 2, 3], 5, 7).unwrap().passed());
        assert!(!jacobian_check(&f, &[1, f.neg(&1), 2], 5, 7).unwrap().distinct_squares);
    }
}
