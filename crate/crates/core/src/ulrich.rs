//! Ulrich presentations on complete intersections of two quadrics with prescribed
//! discriminant roots, and their Hilbert-function certificate.
//!
//! Root convention: a value `a` corresponds to the factor `s + a t` of the
//! discriminant, so the root is `-a`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::binary::{binary_form_roots, linear_root};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{graded_quotient_dims, ideal_quotient_dims};
use crate::knorrer::{build_candidate, diagonal_lambda, ComplexReport, UlrichCandidate};
use crate::matrix::Matrix;
use crate::pencil::{simultaneous_diagonalize, smoothness_check, QuadricPencil};
use crate::poly::{Poly, PolyRing};
use crate::polymatrix::PolyMatrix;

/// Values `a_0..a_n` and `c_1..c_n` for the restricted discriminant
/// `∏ (s + a_i) ∏ (s + c_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTargets<F: Field> {
    pub a: Vec<F::Elem>,
    pub c: Vec<F::Elem>,
}

fn all_distinct<F: Field>(values: &[F::Elem]) -> bool {
    (0..values.len()).all(|i| (0..i).all(|j| values[i] != values[j]))
}

impl<F: Field> RootTargets<F> {
    pub fn new(field: &F, a: Vec<F::Elem>, c: Vec<F::Elem>) -> Result<Self> {
        if a.len() != c.len() + 1 {
            return Err(AlgebraError::InvalidInput(format!(
                "need n+1 values a and n values c, got {} and {}",
                a.len(),
                c.len()
            )));
        }
        let all: Vec<F::Elem> = a.iter().chain(&c).cloned().collect();
        if all.iter().any(|v| field.is_zero(v)) {
            return Err(AlgebraError::InvalidInput("target values must be nonzero".into()));
        }
        if !all_distinct::<F>(&all) {
            return Err(AlgebraError::InvalidInput("target values must be distinct".into()));
        }
        Ok(RootTargets { a, c })
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// Splits `2n+1` values so that `a_0..a_n` share a square class.
    pub fn split(field: &F, values: &[F::Elem]) -> Result<Self> {
        if values.len() % 2 == 0 {
            return Err(AlgebraError::InvalidInput(format!("need an odd number of values, got {}", values.len())));
        }
        let n = values.len() / 2;
        for rep in values {
            if field.is_zero(rep) {
                break;
            }
            let mut a = Vec::new();
            let mut c = Vec::new();
            for v in values {
                let same = field.div(v, rep).is_ok_and(|r| field.sqrt(&r).is_ok());
                if same && a.len() <= n {
                    a.push(v.clone());
                } else {
                    c.push(v.clone());
                }
            }
            if a.len() == n + 1 {
                return Self::new(field, a, c);
            }
        }
        Err(AlgebraError::NotASquare {
            value: String::from("target ratios"),
            field: format!("{field}: no {} values share a square class", n + 1),
        })
    }
}

/// Row `i` holds the coefficients of `∏_{j != i} (s + a_j)`, highest power first.
pub fn elementary_matrix<F: Field>(field: &F, a: &[F::Elem]) -> Matrix<F> {
    let n = a.len();
    let mut e = Matrix::zeros(field, n, n);
    for i in 0..n {
        let mut coeffs = vec![field.one()];
        for (j, aj) in a.iter().enumerate() {
            if j != i {
                coeffs = times_linear(field, &coeffs, aj);
            }
        }
        for (k, c) in coeffs.into_iter().enumerate() {
            e.set(i, k, c);
        }
    }
    e
}

/// `(coeffs, highest first) * (s + a)`.
fn times_linear<F: Field>(field: &F, coeffs: &[F::Elem], a: &F::Elem) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); coeffs.len() + 1];
    for (k, c) in coeffs.iter().enumerate() {
        out[k] = field.add(&out[k], c);
        out[k + 1] = field.add(&out[k + 1], &field.mul(c, a));
    }
    out
}

/// `b_0..b_{2n}` with `h = ∏ (s + c_j)`, taking `b_{n+1+i} = 1`.
pub fn solve_b_for_roots<F: Field>(field: &F, targets: &RootTargets<F>) -> Result<Vec<F::Elem>> {
    let n = targets.n();
    let all: Vec<F::Elem> = targets.a.iter().chain(&targets.c).cloned().collect();
    if !all_distinct::<F>(&all) || all.iter().any(|v| field.is_zero(v)) {
        return Err(AlgebraError::InvalidInput("targets must be distinct and nonzero".into()));
    }
    let e = elementary_matrix(field, &targets.a);
    let h = targets.c.iter().fold(vec![field.one()], |acc, c| times_linear(field, &acc, c));
    let u = e
        .transpose()
        .solve(&h)?
        .ok_or_else(|| AlgebraError::Degenerate("elementary matrix is singular".into()))?;
    let mut b = vec![field.zero(); 2 * n + 1];
    for i in 0..n {
        b[i] = u[i].clone();
        b[n + 1 + i] = field.one();
    }
    b[n] = field.neg(&u[n]);
    Ok(b)
}

#[derive(Clone, Debug)]
pub struct RestrictedHessian<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub matrix: PolyMatrix<F>,
    pub det: Poly<F>,
    /// `Σ_{i<n} b_i b_{n+1+i} ∏_{j != i} (s + a_j) - b_n ∏_{j != n} (s + a_j)`.
    pub h: Poly<F>,
    /// `det = sign * 2 h ∏ (s + a_i)`.
    pub sign: i8,
}

/// `B^T H B` for `H = [[0, D'], [D', 0]]`, `D' = diag(s + a_i)` and `B` the identity
/// stacked over the row `b`.
pub fn restricted_hessian<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<RestrictedHessian<F>> {
    let n = a.len().checked_sub(1).ok_or_else(|| AlgebraError::InvalidInput("empty a".into()))?;
    if b.len() != 2 * n + 1 {
        return Err(AlgebraError::DimensionMismatch(format!("b has {} entries, expected {}", b.len(), 2 * n + 1)));
    }
    let ring = PolyRing::new(field.clone(), &["s"]);
    let s = Poly::var(&ring, 0);
    let ell: Vec<Poly<F>> = a.iter().map(|ai| &s + &Poly::constant(&ring, ai.clone())).collect();
    let m = 2 * n + 2;
    let mut hess = PolyMatrix::zeros(&ring, m, m);
    for i in 0..=n {
        hess.set(i, n + 1 + i, ell[i].clone());
        hess.set(n + 1 + i, i, ell[i].clone());
    }
    let mut embed = PolyMatrix::zeros(&ring, m, m - 1);
    for i in 0..m - 1 {
        embed.set(i, i, Poly::one(&ring));
        embed.set(m - 1, i, Poly::constant(&ring, b[i].clone()));
    }
    let matrix = embed.transpose().mul(&hess)?.mul(&embed)?;
    let det = matrix.determinant_bareiss()?;
    let others = |skip: usize| -> Poly<F> {
        ell.iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .fold(Poly::one(&ring), |acc, (_, l)| &acc * l)
    };
    let mut h = others(n).scale(&field.neg(&b[n]));
    for i in 0..n {
        h = &h + &others(i).scale(&field.mul(&b[i], &b[n + 1 + i]));
    }
    let base = &ell.iter().fold(Poly::one(&ring), |acc, l| &acc * l) * &h.scale(&field.from_i64(2));
    let sign = if det == base {
        1
    } else if det == -&base {
        -1
    } else {
        return Err(AlgebraError::VerificationFailed(format!(
            "restricted Hessian determinant {det} is not ±2 h ∏(s + a_i)"
        )));
    };
    Ok(RestrictedHessian {
        ring,
        matrix,
        det,
        h,
        sign,
    })
}

/// Candidate on `X ⊂ P^{2n}` with the scalars used to build it.
#[derive(Clone, Debug)]
pub struct OddConstruction<F: Field> {
    pub targets: RootTargets<F>,
    /// `d_i` with `scale * d_i^2 = a_i`.
    pub d: Vec<F::Elem>,
    pub scale: F::Elem,
    pub b: Vec<F::Elem>,
    /// Before restriction, in `x_0..x_n, y_0..y_n`.
    pub unrestricted: UlrichCandidate<F>,
    pub candidate: UlrichCandidate<F>,
}

impl<F: Field> OddConstruction<F> {
    /// Discriminant roots the construction aims at: `-a_i`, `-c_j`.
    pub fn expected_roots(&self, field: &F) -> Vec<F::Elem> {
        self.targets.a.iter().chain(&self.targets.c).map(|v| field.neg(v)).collect()
    }
}

pub fn ulrich_for_roots_odd_ambient<F: Field>(field: &F, targets: &RootTargets<F>) -> Result<OddConstruction<F>> {
    let n = targets.n();
    if n < 2 {
        return Err(AlgebraError::InvalidInput(format!(
            "n = {n}: need at least 5 target values so that the module rank is an integer"
        )));
    }
    let all_square = targets.a.iter().all(|v| field.sqrt(v).is_ok());
    let scale = if all_square { field.one() } else { targets.a[0].clone() };
    let d = targets
        .a
        .iter()
        .map(|v| field.sqrt(&field.div(v, &scale)?))
        .collect::<Result<Vec<_>>>()?;
    let mut cand = build_candidate(field, n, &diagonal_lambda(field, &d))?;
    // The construction gives q2 = -Σ d_i^2 x_i y_i; rescale to Σ a_i x_i y_i.
    let factor = Poly::constant(&cand.ring, field.neg(&scale));
    cand.c2 = cand.c2.scale(&factor);
    cand.q2 = &cand.q2 * &factor;
    if !cand.check_complex()?.passed() {
        return Err(AlgebraError::VerificationFailed("rescaled certificate fails".into()));
    }
    let b = solve_b_for_roots(field, targets)?;
    let names: Vec<String> = (0..=2 * n).map(|i| format!("z{i}")).collect();
    let zring = PolyRing::new(field.clone(), &names);
    let z: Vec<Poly<F>> = (0..=2 * n).map(|i| Poly::var(&zring, i)).collect();
    let mut images: Vec<Poly<F>> = z[..=n].to_vec();
    images.extend(z[n + 1..].iter().cloned());
    let last = z
        .iter()
        .zip(&b)
        .fold(Poly::zero(&zring), |acc, (zi, bi)| &acc + &zi.scale(bi));
    images.push(last);
    let candidate = cand.substitute(&images)?;
    Ok(OddConstruction {
        targets: targets.clone(),
        d,
        scale,
        b,
        unrestricted: cand,
        candidate,
    })
}

/// Candidate on `X ⊂ P^{2g+1}` obtained from the odd case by a hyperplane section.
#[derive(Clone, Debug)]
pub struct EvenConstruction<F: Field> {
    pub roots: Vec<F::Elem>,
    pub fresh_root: F::Elem,
    pub odd: OddConstruction<F>,
    /// Diagonalizing basis of the odd-case pencil (columns).
    pub basis: Matrix<F>,
    /// Index of the dropped diagonal coordinate.
    pub dropped: usize,
    pub candidate: UlrichCandidate<F>,
}

/// Smallest positive integer that is not among `taken`.
pub fn fresh_root<F: Field>(field: &F, taken: &[F::Elem]) -> Result<F::Elem> {
    let mut k = 1i64;
    loop {
        let v = field.from_i64(k);
        if field.is_zero(&v) {
            return Err(AlgebraError::FieldTooSmall("no fresh root available".into()));
        }
        if !taken.contains(&v) {
            return Ok(v);
        }
        k += 1;
    }
}

pub fn ulrich_for_roots_even_ambient<F: Field>(field: &F, roots: &[F::Elem]) -> Result<EvenConstruction<F>> {
    if roots.len() < 4 || roots.len() % 2 == 1 {
        return Err(AlgebraError::InvalidInput(format!(
            "need an even number >= 4 of roots, got {}",
            roots.len()
        )));
    }
    if !all_distinct::<F>(roots) || roots.iter().any(|r| field.is_zero(r)) {
        return Err(AlgebraError::InvalidInput("roots must be distinct and nonzero".into()));
    }
    let fresh = fresh_root(field, roots)?;
    let values: Vec<F::Elem> = roots.iter().chain([&fresh]).map(|r| field.neg(r)).collect();
    let odd = ulrich_for_roots_odd_ambient(field, &RootTargets::split(field, &values)?)?;
    let pencil = QuadricPencil::from_quadrics(&odd.candidate.q1, &odd.candidate.q2)?;
    let diag = simultaneous_diagonalize(&pencil)?;
    if diag.pencil_move.is_some() {
        return Err(AlgebraError::Degenerate("restricted pencil has a root at infinity".into()));
    }
    let dropped = diag
        .factors
        .iter()
        .position(|f| linear_root(f).is_ok_and(|r| r == fresh))
        .ok_or_else(|| AlgebraError::VerificationFailed("fresh root missing from the pencil".into()))?;
    let m = diag.basis.rows();
    let names: Vec<String> = (0..m - 1).map(|i| format!("w{i}")).collect();
    let wring = PolyRing::new(field.clone(), &names);
    let kept: Vec<usize> = (0..m).filter(|i| *i != dropped).collect();
    let images: Vec<Poly<F>> = (0..m)
        .map(|j| {
            kept.iter().enumerate().fold(Poly::zero(&wring), |acc, (w, col)| {
                &acc + &Poly::var(&wring, w).scale(diag.basis.get(j, *col))
            })
        })
        .collect();
    let candidate = odd.candidate.substitute(&images)?;
    Ok(EvenConstruction {
        roots: roots.to_vec(),
        fresh_root: fresh,
        odd,
        basis: diag.basis,
        dropped,
        candidate,
    })
}

/// Hilbert-function evidence for the Ulrich property, over random linear sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertReport {
    pub generators: usize,
    /// `k[u,v]/(Q1, Q2)` in degrees 0..=3 for each trial; expected `1, 2, 1, 0`.
    pub ring_dims: Vec<Vec<usize>>,
    /// Cokernel over that ring; expected `r, 0, 0, 0`.
    pub artinian_dims: Vec<Vec<usize>>,
    /// Cokernel over three variables; expected `r, r, r, r`.
    pub section_dims: Vec<Vec<usize>>,
    pub retries: usize,
}

impl HilbertReport {
    pub fn artinian_passed(&self) -> bool {
        let r = self.generators;
        !self.artinian_dims.is_empty() && self.artinian_dims.iter().all(|d| d == &[r, 0, 0, 0])
    }

    pub fn section_passed(&self) -> bool {
        let r = self.generators;
        !self.section_dims.is_empty() && self.section_dims.iter().all(|d| d == &[r, r, r, r])
    }

    pub fn passed(&self) -> bool {
        self.artinian_passed() && self.section_passed()
    }
}

const MAX_RETRIES: usize = 10;

fn random_section<F: Field>(
    ring: &Arc<PolyRing<F>>,
    nvars: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<F>> {
    let field = ring.field();
    (0..nvars)
        .map(|_| {
            (0..ring.nvars()).fold(Poly::zero(ring), |acc, v| {
                &acc + &Poly::var(ring, v).scale(&field.random_elem(rng))
            })
        })
        .collect()
}

/// Restricts to random planes and lines: over `k[u,v]` the quotient by the two
/// quadrics must have dims `1,2,1` and the cokernel `(r,0,0,0)`; over `k[u,v,w]`
/// the cokernel must have dims `(r,r,r,r)`.
pub fn artinian_hilbert_check<F: Field>(cand: &UlrichCandidate<F>, trials: usize, seed: u64) -> Result<HilbertReport> {
    let field = cand.ring.field();
    let r = cand.generators();
    let m = cand.ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let line = PolyRing::new(field.clone(), &["u", "v"]);
    let plane = PolyRing::new(field.clone(), &["u", "v", "w"]);
    let mut report = HilbertReport {
        generators: r,
        ring_dims: Vec::new(),
        artinian_dims: Vec::new(),
        section_dims: Vec::new(),
        retries: 0,
    };
    for _ in 0..trials {
        let mut attempt = 0;
        loop {
            let images = random_section(&line, m, &mut rng);
            let q1 = cand.q1.substitute(&images)?;
            let q2 = cand.q2.substitute(&images)?;
            let dims = ideal_quotient_dims(&line, &[q1.clone(), q2.clone()], 0..=3)?;
            if dims != [1, 2, 1, 0] {
                attempt += 1;
                report.retries += 1;
                if attempt > MAX_RETRIES {
                    return Err(AlgebraError::FieldTooSmall(format!(
                        "no random line gave an Artinian reduction with dims 1,2,1 (last {dims:?})"
                    )));
                }
                continue;
            }
            let a = cand.a.substitute(&images)?;
            let gens = a
                .hstack(&PolyMatrix::scalar_identity(&q1, r))?
                .hstack(&PolyMatrix::scalar_identity(&q2, r))?;
            report.ring_dims.push(dims);
            report.artinian_dims.push(graded_quotient_dims(&gens, &vec![0; r], 0..=3)?);
            break;
        }
        let images = random_section(&plane, m, &mut rng);
        let a = cand.a.substitute(&images)?;
        report.section_dims.push(graded_quotient_dims(&a, &vec![0; r], 0..=3)?);
    }
    Ok(report)
}

/// Everything checked about a candidate.
#[derive(Clone, Debug)]
pub struct VerificationRecord<F: Field> {
    pub complex: ComplexReport,
    pub shape: (usize, usize),
    pub discriminant_roots: Vec<F::Elem>,
    pub roots_match: Option<bool>,
    pub smooth: bool,
    pub smoothness_diagnosis: String,
    pub hilbert: HilbertReport,
}

impl<F: Field> VerificationRecord<F> {
    pub fn passed(&self) -> bool {
        let (r, c) = self.shape;
        self.complex.passed()
            && c == 2 * r
            && self.smooth
            && self.roots_match != Some(false)
            && self.hilbert.passed()
    }
}

/// True when both lists hold the same elements with the same multiplicities.
pub fn same_multiset<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && a.iter().all(|x| a.iter().filter(|y| *y == x).count() == b.iter().filter(|y| *y == x).count())
}

pub fn verify_candidate<F: Field>(
    cand: &UlrichCandidate<F>,
    expected_roots: Option<&[F::Elem]>,
    trials: usize,
    seed: u64,
) -> Result<VerificationRecord<F>> {
    let complex = cand.check_complex()?;
    let pencil = QuadricPencil::from_quadrics(&cand.q1, &cand.q2)?;
    let smooth = smoothness_check(&pencil);
    let discriminant_roots = match pencil.discriminant() {
        Ok(disc) => binary_form_roots(&disc)?.multiset(),
        Err(_) => Vec::new(),
    };
    let roots_match = expected_roots.map(|e| same_multiset(e, &discriminant_roots));
    let hilbert = artinian_hilbert_check(cand, trials, seed)?;
    Ok(VerificationRecord {
        complex,
        shape: (cand.a.rows(), cand.a.cols()),
        discriminant_roots,
        roots_match,
        smooth: smooth.smooth,
        smoothness_diagnosis: smooth.diagnosis,
        hilbert,
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
    fn solve_b_small_example() {
        let f = fp();
        let t = RootTargets::new(&f, vec![1, 2], vec![3]).unwrap();
        assert_eq!(solve_b_for_roots(&f, &t).unwrap(), vec![2, 1, 1]);
        let e = elementary_matrix(&f, &[1, 2]);
        assert_eq!(e.det().unwrap(), f.neg(&1));
    }

    #[test]
    fn duplicate_targets_rejected() {
        let f = fp();
        assert!(RootTargets::new(&f, vec![1, 1], vec![3]).is_err());
        assert!(RootTargets::new(&f, vec![1, 2], vec![0]).is_err());
    }

    #[test]
    fn hessian_of_small_restriction() {
        let f = fp();
        let h = restricted_hessian(&f, &[1, 2], &[2, 1, 1]).unwrap();
        let s = PolyRing::new(f, &["s"]);
        let expected = crate::poly::parse_poly(&s, "2*s^3 + 12*s^2 + 22*s + 12").unwrap();
        assert_eq!(h.det, expected);
        assert_eq!(h.sign, 1);
    }

    #[test]
    fn split_groups_square_classes() {
        let f = fp();
        let t = RootTargets::split(&f, &[1, 2, 4, 9, 3]).unwrap();
        assert_eq!(t.a.len(), 3);
        assert!(t.a.iter().all(|v| f.sqrt(&f.div(v, &t.a[0]).unwrap()).is_ok()));
    }

    #[test]
    fn fresh_root_skips_taken_values() {
        let f = fp();
        assert_eq!(fresh_root(&f, &[1, 2, 4]).unwrap(), 3);
    }
}
