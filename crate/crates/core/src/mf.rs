//! Vector bundles on `y^2 = f(s, t)` as matrix factorizations of `f`.
//!
//! A bundle is stored as the graded free `k[s,t]`-module `B` of its sections
//! together with the action `phi` of `y`, so `phi * psi = f` with `psi = phi`
//! for modules built here. Column labels of `phi` are the generator degrees `a`
//! and its row labels are `a - (g+1)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::betti::{riemann_roch, CohomologyTable};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{express_in_columns, graded_kernel, GradedFreeModule};
use crate::matrix::Matrix;
use crate::pencil::HyperellipticData;
use crate::poly::{Monomial, Poly};
use crate::polymatrix::PolyMatrix;

/// A subset of the `2g+2` linear factors, bit `i` standing for factor `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineBundleIndex {
    mask: u32,
    points: u32,
}

impl LineBundleIndex {
    pub fn new(mask: u32, points: u32) -> Result<Self> {
        if points == 0 || points > 31 || mask >> points != 0 {
            return Err(AlgebraError::InvalidInput(format!(
                "subset mask {mask:#b} does not fit {points} points"
            )));
        }
        Ok(LineBundleIndex { mask, points })
    }

    /// From 1-based point labels.
    pub fn from_points(points: &[u32], total: u32) -> Result<Self> {
        let mut mask = 0u32;
        for &p in points {
            if p == 0 || p > total {
                return Err(AlgebraError::InvalidInput(format!("point {p} is outside 1..={total}")));
            }
            mask |= 1 << (p - 1);
        }
        Self::new(mask, total)
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn points(&self) -> u32 {
        self.points
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn complement(&self) -> Self {
        LineBundleIndex {
            mask: !self.mask & ((1u32 << self.points) - 1),
            points: self.points,
        }
    }

    pub fn symmetric_difference(&self, other: &Self) -> Result<Self> {
        if self.points != other.points {
            return Err(AlgebraError::InvalidInput("subsets of different point sets".into()));
        }
        Ok(LineBundleIndex {
            mask: self.mask ^ other.mask,
            points: self.points,
        })
    }

    /// 1-based members in increasing order.
    pub fn elements(&self) -> Vec<u32> {
        (0..self.points).filter(|i| self.mask >> i & 1 == 1).map(|i| i + 1).collect()
    }

    /// The lexicographically smaller of `I` and its complement, as sorted lists.
    pub fn canonical(&self) -> Self {
        let c = self.complement();
        if c.elements() < self.elements() {
            c
        } else {
            *self
        }
    }

    /// Every canonical representative, in increasing mask order.
    pub fn all_canonical(points: u32) -> Vec<Self> {
        (0..1u32 << points)
            .map(|m| LineBundleIndex { mask: m, points })
            .filter(|i| i.canonical() == *i)
            .collect()
    }
}

impl fmt::Display for LineBundleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|p| format!("{p}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct MatrixFactorization<F: Field> {
    pub f: Poly<F>,
    pub genus: usize,
    pub module: GradedFreeModule,
    pub phi: PolyMatrix<F>,
    pub psi: PolyMatrix<F>,
}

/// Outcome of [`verify_mf`]; `failure` says where the first problem is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfReport {
    pub ok: bool,
    pub failure: Option<String>,
}

impl MfReport {
    fn fail(msg: String) -> Self {
        MfReport {
            ok: false,
            failure: Some(msg),
        }
    }
}

fn labeled<F: Field>(m: &PolyMatrix<F>, degrees: &[i64], g: usize) -> Result<PolyMatrix<F>> {
    let rows = degrees.iter().map(|a| a - (g as i64 + 1)).collect();
    m.clone().with_degrees(rows, degrees.to_vec())
}

impl<F: Field> MatrixFactorization<F> {
    /// Builds and verifies a factorization with generator degrees in the given order.
    pub fn new(f: Poly<F>, degrees: Vec<i64>, phi: PolyMatrix<F>, psi: PolyMatrix<F>) -> Result<Self> {
        let m = Self::new_unchecked(f, degrees, phi, psi)?;
        let report = verify_mf(&m);
        match report.failure {
            None => Ok(m),
            Some(msg) => Err(AlgebraError::VerificationFailed(msg)),
        }
    }

    /// Stores the data without checking `phi * psi = f`.
    pub fn new_unchecked(f: Poly<F>, degrees: Vec<i64>, phi: PolyMatrix<F>, psi: PolyMatrix<F>) -> Result<Self> {
        let d = f
            .homogeneous_degree()?
            .ok_or_else(|| AlgebraError::InvalidInput("f is zero".into()))?;
        if d < 4 || d % 2 == 1 {
            return Err(AlgebraError::InvalidInput(format!("f has degree {d}, expected 2g+2 >= 4")));
        }
        let genus = d as usize / 2 - 1;
        Ok(MatrixFactorization {
            f,
            genus,
            module: GradedFreeModule { degrees },
            phi: phi.without_degrees(),
            psi: psi.without_degrees(),
        })
    }

    pub fn degrees(&self) -> &[i64] {
        &self.module.degrees
    }

    pub fn size(&self) -> usize {
        self.module.rank()
    }

    /// `phi` with its degree labels attached.
    pub fn labeled_phi(&self) -> Result<PolyMatrix<F>> {
        labeled(&self.phi, self.degrees(), self.genus)
    }

    pub fn labeled_psi(&self) -> Result<PolyMatrix<F>> {
        labeled(&self.psi, self.degrees(), self.genus)
    }
}

/// Checks `phi psi = psi phi = f id` and that both maps are homogeneous for the labels.
pub fn verify_mf<F: Field>(m: &MatrixFactorization<F>) -> MfReport {
    let ring = m.f.ring();
    if ring.nvars() != 2 {
        return MfReport::fail(format!("f lives in {} variables, expected (s, t)", ring.nvars()));
    }
    let n = m.size();
    for (name, x) in [("phi", &m.phi), ("psi", &m.psi)] {
        if x.ring() != ring {
            return MfReport::fail(format!("{name} is over a different ring than f"));
        }
        if x.rows() != n || x.cols() != n {
            return MfReport::fail(format!(
                "{name} is {}x{} but there are {n} generators",
                x.rows(),
                x.cols()
            ));
        }
        if let Err(e) = labeled(x, m.degrees(), m.genus) {
            return MfReport::fail(format!("{name} is not homogeneous for the generator degrees: {e}"));
        }
    }
    for (name, a, b) in [("phi*psi", &m.phi, &m.psi), ("psi*phi", &m.psi, &m.phi)] {
        match a.mul(b) {
            Err(e) => return MfReport::fail(format!("{name}: {e}")),
            Ok(p) => {
                if let Some((i, j)) = p.scalar_identity_mismatch(&m.f) {
                    return MfReport::fail(format!("{name} differs from f*id at entry ({i}, {j})"));
                }
            }
        }
    }
    MfReport { ok: true, failure: None }
}

/// `L_I`: `phi = [[0, f_{I^c}], [f_I, 0]]` with generators in degrees
/// `floor(|I|/2)` and `floor(|I^c|/2)`.
pub fn line_bundle_mf<F: Field>(h: &HyperellipticData<F>, i: &LineBundleIndex) -> Result<MatrixFactorization<F>> {
    let n = h.factors.len() as u32;
    if i.points() != n {
        return Err(AlgebraError::InvalidInput(format!(
            "subset of {} points for a curve with {n} branch points",
            i.points()
        )));
    }
    let ring = &h.ring;
    let zero = Poly::zero(ring);
    let fi = h.product(i.mask());
    let fc = h.product(i.complement().mask());
    let phi = PolyMatrix::from_rows(ring, vec![vec![zero.clone(), fc], vec![fi, zero]])?;
    let k = i.len() as i64;
    let degrees = vec![k / 2, (n as i64 - k) / 2];
    MatrixFactorization::new(h.f(), degrees, phi.clone(), phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankDegree {
    pub rank: i64,
    pub degree: i64,
    pub chi: i64,
    pub direct_image_degree: i64,
}

pub fn rank_degree<F: Field>(m: &MatrixFactorization<F>) -> Result<RankDegree> {
    let n = m.size();
    if n % 2 == 1 {
        return Err(AlgebraError::InvalidInput(format!("{n} generators; a factorization needs an even count")));
    }
    let rank = n as i64 / 2;
    let direct_image_degree = -m.degrees().iter().sum::<i64>();
    let degree = direct_image_degree + rank * (m.genus as i64 + 1);
    Ok(RankDegree {
        rank,
        degree,
        chi: riemann_roch(rank, degree, m.genus as u32),
        direct_image_degree,
    })
}

/// Labeled identity on the given generator degrees.
fn labeled_identity<F: Field>(m: &MatrixFactorization<F>) -> Result<PolyMatrix<F>> {
    PolyMatrix::identity(m.f.ring(), m.size()).with_degrees(m.degrees().to_vec(), m.degrees().to_vec())
}

/// Tensor product over the coordinate ring of the curve, computed as the kernel of
/// `phi1 ⊗ 1 - 1 ⊗ phi2` with the induced action of `phi1 ⊗ 1`.
pub fn tensor_mf<F: Field>(
    m1: &MatrixFactorization<F>,
    m2: &MatrixFactorization<F>,
    cap: Option<i64>,
) -> Result<MatrixFactorization<F>> {
    if m1.f != m2.f {
        return Err(AlgebraError::InvalidInput("tensor factors use different f".into()));
    }
    let g1 = m1.genus as i64 + 1;
    let left = m1.labeled_phi()?.kronecker(&labeled_identity(m2)?)?;
    let right = labeled_identity(m1)?.kronecker(&m2.labeled_phi()?)?;
    let diff = left.sub(&right)?;
    let kernel = graded_kernel(&diff, cap)?;
    let expected = m1.size() * m2.size() / 2;
    if kernel.degrees.len() != expected {
        return Err(AlgebraError::VerificationFailed(format!(
            "kernel has {} generators, expected {expected}",
            kernel.degrees.len()
        )));
    }
    let k = &kernel.generators;
    let left_psi = m1.labeled_psi()?.kronecker(&labeled_identity(m2)?)?;
    let ring = m1.f.ring();
    let n = expected;
    let mut phi = PolyMatrix::zeros(ring, n, n);
    let mut psi = PolyMatrix::zeros(ring, n, n);
    for (target, action) in [(&mut phi, &left), (&mut psi, &left_psi)] {
        let image = action.clone().without_degrees().mul(k)?;
        for c in 0..n {
            let v = image.column(c);
            let coeffs = express_in_columns(k, &v, kernel.degrees[c] + g1)?.ok_or_else(|| {
                AlgebraError::VerificationFailed(format!("image of kernel generator {c} left the kernel"))
            })?;
            for (r, p) in coeffs.into_iter().enumerate() {
                target.set(r, c, p);
            }
        }
    }
    let intertwined = right.clone().without_degrees().mul(k)?;
    let expected_side = k.mul(&phi)?;
    if intertwined.entries() != expected_side.entries() {
        return Err(AlgebraError::VerificationFailed(
            "the two actions of y disagree on the kernel".into(),
        ));
    }
    let degrees = kernel.degrees.iter().map(|e| e - g1).collect();
    MatrixFactorization::new(m1.f.clone(), degrees, phi, psi)
}

/// `M(H)`: every generator degree drops by one.
pub fn twist_by_h<F: Field>(m: &MatrixFactorization<F>, times: i64) -> MatrixFactorization<F> {
    MatrixFactorization {
        module: m.module.twist(times),
        ..m.clone()
    }
}

/// `M(p)` for the ramification point of the first factor, as `M ⊗ L_{1}`.
pub fn twist_by_p<F: Field>(
    h: &HyperellipticData<F>,
    m: &MatrixFactorization<F>,
    cap: Option<i64>,
) -> Result<MatrixFactorization<F>> {
    let point = line_bundle_mf(h, &LineBundleIndex::new(1, h.factors.len() as u32)?)?;
    tensor_mf(m, &point, cap)
}

/// Basis of degree-`n` maps `T: B1 -> B2(n)` with `T phi1 = phi2 T`.
pub fn hom_space<F: Field>(
    m1: &MatrixFactorization<F>,
    m2: &MatrixFactorization<F>,
    n: i64,
) -> Result<Vec<PolyMatrix<F>>> {
    if m1.f != m2.f {
        return Err(AlgebraError::InvalidInput("hom between factorizations of different f".into()));
    }
    let ring = m1.f.ring();
    let field = ring.field();
    let (a1, a2) = (m1.degrees(), m2.degrees());
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for i in 0..a2.len() {
        for (j, a) in a1.iter().enumerate() {
            let d = a - a2[i] + n;
            if d >= 0 {
                for mono in ring.monomials_of_degree(d as u32) {
                    unknowns.push((i, j, mono));
                }
            }
        }
    }
    let mut equations: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(unknowns.len());
    for (i, j, mono) in &unknowns {
        let mut t = PolyMatrix::zeros(ring, a2.len(), a1.len());
        t.set(*i, *j, Poly::monomial(ring, mono.clone(), field.one()));
        let r = t.mul(&m1.phi)?.sub(&m2.phi.mul(&t)?)?;
        let mut col = Vec::new();
        for row in 0..r.rows() {
            for c in 0..r.cols() {
                for (e, x) in r.get(row, c).terms() {
                    let next = equations.len();
                    let idx = *equations.entry((row, c, e.clone())).or_insert(next);
                    col.push((idx, x.clone()));
                }
            }
        }
        columns.push(col);
    }
    let mut system = Matrix::zeros(field, equations.len(), unknowns.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, x) in col {
            system.set(i, j, x);
        }
    }
    let null = system.nullspace();
    Ok(null
        .into_iter()
        .map(|v| {
            let mut t = PolyMatrix::zeros(ring, a2.len(), a1.len());
            for ((i, j, mono), x) in unknowns.iter().zip(v) {
                if !field.is_zero(&x) {
                    let p = t.get(*i, *j) + &Poly::monomial(ring, mono.clone(), x);
                    t.set(*i, *j, p);
                }
            }
            t
        })
        .collect())
}

/// For line bundles of equal degree: a nonzero degree-0 hom, if one exists.
pub fn is_isomorphic_line_bundle<F: Field>(
    m1: &MatrixFactorization<F>,
    m2: &MatrixFactorization<F>,
) -> Result<Option<PolyMatrix<F>>> {
    let r1 = rank_degree(m1)?;
    let r2 = rank_degree(m2)?;
    if r1.rank != 1 || r2.rank != 1 {
        return Err(AlgebraError::InvalidInput(format!(
            "isomorphism test needs line bundles, got ranks {} and {}",
            r1.rank, r2.rank
        )));
    }
    if r1.degree != r2.degree {
        return Ok(None);
    }
    Ok(hom_space(m1, m2, 0)?.into_iter().next())
}

/// `h^0` and `h^1` of `M(jp)` for `j` in `first..=last`.
pub fn cohomology_table<F: Field>(
    h: &HyperellipticData<F>,
    m: &MatrixFactorization<F>,
    first: i64,
    last: i64,
    cap: Option<i64>,
) -> Result<CohomologyTable> {
    let rd = rank_degree(m)?;
    let needs_odd = (first..=last).any(|j| j.rem_euclid(2) == 1);
    let odd = if needs_odd {
        Some(twist_by_p(h, m, cap)?)
    } else {
        None
    };
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    for j in first..=last {
        let module = match &odd {
            Some(o) if j.rem_euclid(2) == 1 => &o.module,
            _ => &m.module,
        };
        let sections = module.hilbert(2, j.div_euclid(2)) as i64;
        let chi = riemann_roch(rd.rank, rd.degree + j * rd.rank, m.genus as u32);
        if sections < chi {
            return Err(AlgebraError::VerificationFailed(format!(
                "h^0 = {sections} is below chi = {chi} at twist {j}"
            )));
        }
        h0.push(sections as u64);
        h1.push((sections - chi) as u64);
    }
    Ok(CohomologyTable {
        first_twist: first,
        h0,
        h1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RaynaudReport {
    pub h0: u64,
    pub h1: u64,
    pub holds: bool,
}

/// Whether `h^0(M) = h^1(M) = 0`.
pub fn raynaud_check<F: Field>(m: &MatrixFactorization<F>) -> Result<RaynaudReport> {
    let rd = rank_degree(m)?;
    let h0 = m.module.hilbert(2, 0) as i64;
    let h1 = h0 - rd.chi;
    if h1 < 0 {
        return Err(AlgebraError::VerificationFailed(format!("negative h^1 = {h1}")));
    }
    Ok(RaynaudReport {
        h0: h0 as u64,
        h1: h1 as u64,
        holds: h0 == 0 && h1 == 0,
    })
}

#[derive(Clone, Debug)]
pub struct GroupLawReport<F: Field> {
    pub left: LineBundleIndex,
    pub right: LineBundleIndex,
    /// Canonical form of `I Δ J`.
    pub expected: LineBundleIndex,
    /// Whether the expected bundle is twisted by `H` (both subsets odd).
    pub twisted: bool,
    pub product_degrees: Vec<i64>,
    pub witness: Option<PolyMatrix<F>>,
}

impl<F: Field> GroupLawReport<F> {
    pub fn passed(&self) -> bool {
        self.witness.is_some()
    }
}

/// Checks `L_I ⊗ L_J ≅ L_{IΔJ}`, twisted by `H` when `|I|` and `|J|` are both odd.
pub fn verify_group_law<F: Field>(
    h: &HyperellipticData<F>,
    i: &LineBundleIndex,
    j: &LineBundleIndex,
    cap: Option<i64>,
) -> Result<GroupLawReport<F>> {
    let product = tensor_mf(&line_bundle_mf(h, i)?, &line_bundle_mf(h, j)?, cap)?;
    let expected = i.symmetric_difference(j)?.canonical();
    let twisted = i.len() % 2 == 1 && j.len() % 2 == 1;
    let mut target = line_bundle_mf(h, &expected)?;
    if twisted {
        target = twist_by_h(&target, 1);
    }
    let witness = is_isomorphic_line_bundle(&product, &target)?;
    Ok(GroupLawReport {
        left: *i,
        right: *j,
        expected,
        twisted,
        product_degrees: product.module.degrees.clone(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn curve(g: usize) -> HyperellipticData<PrimeField> {
        let f = PrimeField::new(10009).unwrap();
        let roots: Vec<u64> = (1..=(2 * g as u64 + 2)).collect();
        HyperellipticData::from_roots(&f, &roots).unwrap()
    }

    fn idx(points: &[u32], g: usize) -> LineBundleIndex {
        LineBundleIndex::from_points(points, 2 * g as u32 + 2).unwrap()
    }

    #[test]
    fn canonical_index() {
        let i = idx(&[2, 3, 4], 1);
        assert_eq!(i.canonical(), idx(&[1], 1));
        assert_eq!(idx(&[1], 1).canonical(), idx(&[1], 1));
        assert_eq!(idx(&[], 1).complement().canonical(), idx(&[], 1));
        assert_eq!(LineBundleIndex::all_canonical(4).len(), 8);
        assert_eq!(format!("{}", idx(&[1, 3], 1)), "{1,3}");
    }

    #[test]
    fn structure_sheaf() {
        let h = curve(2);
        let o = line_bundle_mf(&h, &idx(&[], 2)).unwrap();
        assert_eq!(o.degrees(), &[0, 3]);
        assert_eq!(o.phi.get(1, 0), &Poly::one(&h.ring));
        let rd = rank_degree(&o).unwrap();
        assert_eq!((rd.rank, rd.degree, rd.chi), (1, 0, -1));
        let t = cohomology_table(&h, &o, 0, 2, None).unwrap();
        assert_eq!((t.h0[0], t.h1[0]), (1, 2));
        assert_eq!((t.h0[2], t.h1[2]), (2, 1));
        assert!(!raynaud_check(&o).unwrap().holds);
    }

    #[test]
    fn bad_pair_is_rejected() {
        let h = curve(1);
        let r = &h.ring;
        let f = h.f();
        let z = Poly::zero(r);
        let phi = PolyMatrix::from_rows(r, vec![vec![z.clone(), f.clone()], vec![Poly::one(r), z.clone()]]).unwrap();
        let psi = PolyMatrix::from_rows(r, vec![vec![z.clone(), f.clone()], vec![Poly::from_i64(r, 2), z]]).unwrap();
        let m = MatrixFactorization::new_unchecked(f, vec![0, 2], phi, psi).unwrap();
        let report = verify_mf(&m);
        assert!(!report.ok);
        assert!(report.failure.unwrap().contains("phi*psi"));
    }

    #[test]
    fn tensor_with_structure_sheaf() {
        let h = curve(1);
        let o = line_bundle_mf(&h, &idx(&[], 1)).unwrap();
        let l = line_bundle_mf(&h, &idx(&[1, 2], 1)).unwrap();
        let t = tensor_mf(&o, &l, None).unwrap();
        assert!(is_isomorphic_line_bundle(&t, &l).unwrap().is_some());
        let oo = tensor_mf(&o, &o, None).unwrap();
        assert_eq!(oo.degrees(), &[0, 2]);
    }

    #[test]
    fn complement_is_isomorphic() {
        let h = curve(1);
        let a = line_bundle_mf(&h, &idx(&[1, 2], 1)).unwrap();
        let b = line_bundle_mf(&h, &idx(&[3, 4], 1)).unwrap();
        assert_eq!(hom_space(&a, &b, 0).unwrap().len(), 1);
        let c = line_bundle_mf(&h, &idx(&[1, 3], 1)).unwrap();
        assert!(is_isomorphic_line_bundle(&a, &c).unwrap().is_none());
    }

    #[test]
    fn odd_times_odd_is_twisted() {
        let h = curve(1);
        let r = verify_group_law(&h, &idx(&[1], 1), &idx(&[2], 1), None).unwrap();
        assert!(r.twisted);
        assert_eq!(r.expected, idx(&[1, 2], 1));
        assert!(r.passed());
    }

    #[test]
    fn point_twist_of_structure_sheaf() {
        let h = curve(1);
        let o = line_bundle_mf(&h, &idx(&[], 1)).unwrap();
        let op = twist_by_p(&h, &o, None).unwrap();
        let rd = rank_degree(&op).unwrap();
        assert_eq!((rd.rank, rd.degree), (1, 1));
        assert_eq!(op.module.hilbert(2, 0), 1);
    }
}
