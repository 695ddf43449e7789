//! The graded Clifford algebra of `s q1 + t q2` in diagonal coordinates.
//!
//! Basis words `e_I` are indexed by bitmasks over the `2g+2` linear factors and
//! multiply by `e_I e_J = ε(I,J) f_{I∩J} e_{IΔJ}`. Coefficients are binary forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::mf::{is_isomorphic_line_bundle, line_bundle_mf, LineBundleIndex, MatrixFactorization};
use crate::pencil::HyperellipticData;
use crate::poly::{Poly, PolyRing};
use crate::polymatrix::PolyMatrix;
use alloc::sync::Arc;

/// `ε(I,J) = (-1)^{#{(i, j) : i ∈ I, j ∈ J, j < i}}`, returned as `true` when negative.
pub fn sign_is_negative(i: u32, j: u32) -> bool {
    let mut count = 0u32;
    for k in 0..32 {
        if i >> k & 1 == 1 {
            count += (j & ((1u32 << k) - 1)).count_ones();
        }
    }
    count % 2 == 1
}

/// `e_I e_J = sign · f_{I∩J} · e_{IΔJ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisProduct<F: Field> {
    pub sign: i8,
    pub factor: Poly<F>,
    pub word: u32,
}

pub fn basis_product<F: Field>(h: &HyperellipticData<F>, i: u32, j: u32) -> BasisProduct<F> {
    BasisProduct {
        sign: if sign_is_negative(i, j) { -1 } else { 1 },
        factor: h.product(i & j),
        word: i ^ j,
    }
}

/// A finite sum `Σ c_I e_I` with binary-form coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: BTreeMap<u32, Poly<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl<F: Field> CliffordElement<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        CliffordElement {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn word(ring: &Arc<PolyRing<F>>, word: u32) -> Self {
        Self::term(Poly::one(ring), word)
    }

    pub fn term(coeff: Poly<F>, word: u32) -> Self {
        let mut e = Self::zero(coeff.ring());
        e.add_term(word, coeff);
        e
    }

    pub fn scalar(p: Poly<F>) -> Self {
        Self::term(p, 0)
    }

    pub fn terms(&self) -> &BTreeMap<u32, Poly<F>> {
        &self.terms
    }

    pub fn coeff(&self, word: u32) -> Poly<F> {
        self.terms.get(&word).cloned().unwrap_or_else(|| Poly::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: u32, c: Poly<F>) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&word) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(word, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        CliffordElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, p: &Poly<F>) -> Self {
        let mut out = Self::zero(&self.ring);
        for (w, c) in &self.terms {
            out.add_term(*w, c * p);
        }
        out
    }

    pub fn parity(&self) -> Parity {
        let odd = self.terms.keys().filter(|w| w.count_ones() % 2 == 1).count();
        match odd {
            0 => Parity::Even,
            n if n == self.terms.len() => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    /// Degree with `|e_I| = |I|` and `|s| = |t| = 2`, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (w, c) in &self.terms {
            let d = w.count_ones() + 2 * c.homogeneous_degree().ok()??;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

impl<F: Field> fmt::Display for CliffordElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = (0..32).filter(|k| w >> k & 1 == 1).map(|k| format!("{}", k + 1)).collect();
                format!("({c})*e{{{}}}", word.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn clifford_multiply<F: Field>(
    h: &HyperellipticData<F>,
    a: &CliffordElement<F>,
    b: &CliffordElement<F>,
) -> Result<CliffordElement<F>> {
    if a.ring != h.ring || b.ring != h.ring {
        return Err(AlgebraError::RingMismatch("Clifford elements over different curve data".into()));
    }
    let mut out = CliffordElement::zero(&h.ring);
    for (i, x) in &a.terms {
        for (j, y) in &b.terms {
            let p = basis_product(h, *i, *j);
            let mut c = &(x * y) * &p.factor;
            if p.sign < 0 {
                c = -&c;
            }
            out.add_term(p.word, c);
        }
    }
    Ok(out)
}

/// `y = (√-1)^{g+1} e_{1..2g+2}`, checked to square to `f`.
pub fn central_element_y<F: Field>(h: &HyperellipticData<F>) -> Result<CliffordElement<F>> {
    let field = h.field();
    let g = h.genus();
    let top = (1u32 << h.factors.len()) - 1;
    let sign = if (g + 1) / 2 % 2 == 1 { field.neg(&field.one()) } else { field.one() };
    let c = if g % 2 == 1 {
        sign
    } else {
        let i = field.sqrt(&field.neg(&field.one()))?;
        field.mul(&sign, &i)
    };
    let y = CliffordElement::term(Poly::constant(&h.ring, c), top);
    let square = clifford_multiply(h, &y, &y)?;
    if square != CliffordElement::scalar(h.f()) {
        return Err(AlgebraError::VerificationFailed(format!("y^2 = {square} is not f")));
    }
    Ok(y)
}

#[derive(Clone, Debug)]
pub struct EvenDecomposition<F: Field> {
    pub subset: LineBundleIndex,
    /// Matrix of `y` on the basis `(e_I, e_{I^c})`.
    pub y_matrix: PolyMatrix<F>,
    pub antidiagonal: bool,
    /// Units `c, c'` with `y e_I = c f_I e_{I^c}` and `y e_{I^c} = c' f_{I^c} e_I`.
    pub units: Option<(F::Elem, F::Elem)>,
    pub units_multiply_to_one: bool,
    pub witness: Option<PolyMatrix<F>>,
}

impl<F: Field> EvenDecomposition<F> {
    pub fn passed(&self) -> bool {
        self.antidiagonal && self.units_multiply_to_one && self.witness.is_some()
    }
}

/// Compares the action of `y` on `span(e_I, e_{I^c})` with `L_I`.
pub fn even_decomposition_check<F: Field>(
    h: &HyperellipticData<F>,
    subset: &LineBundleIndex,
) -> Result<EvenDecomposition<F>> {
    if subset.len() % 2 == 1 {
        return Err(AlgebraError::InvalidInput(format!("{subset} has odd size")));
    }
    let field = h.field();
    let ring = &h.ring;
    let y = central_element_y(h)?;
    let i = subset.mask();
    let ic = subset.complement().mask();
    let words = [i, ic];
    let mut y_matrix = PolyMatrix::zeros(ring, 2, 2);
    for (c, w) in words.iter().enumerate() {
        let image = clifford_multiply(h, &y, &CliffordElement::word(ring, *w))?;
        for (r, v) in words.iter().enumerate() {
            y_matrix.set(r, c, image.coeff(*v));
        }
        if image.terms().keys().any(|k| !words.contains(k)) {
            return Err(AlgebraError::VerificationFailed(format!("y e_{subset} leaves span(e_I, e_I^c)")));
        }
    }
    let antidiagonal = y_matrix.get(0, 0).is_zero() && y_matrix.get(1, 1).is_zero();
    let unit = |p: &Poly<F>, q: &Poly<F>| -> Option<F::Elem> {
        let (m, c) = q.leading_term()?;
        let a = field.div(&p.coeff(m), c).ok()?;
        (p == &q.scale(&a)).then_some(a)
    };
    let units = match (unit(y_matrix.get(1, 0), &h.product(i)), unit(y_matrix.get(0, 1), &h.product(ic))) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    };
    let units_multiply_to_one = units.as_ref().is_some_and(|(a, b)| field.mul(a, b) == field.one());
    let degrees = vec![subset.len() as i64 / 2, subset.complement().len() as i64 / 2];
    let witness = if antidiagonal && units_multiply_to_one {
        let built = MatrixFactorization::new(h.f(), degrees, y_matrix.clone(), y_matrix.clone())?;
        is_isomorphic_line_bundle(&built, &line_bundle_mf(h, subset)?)?
    } else {
        None
    };
    Ok(EvenDecomposition {
        subset: *subset,
        y_matrix,
        antidiagonal,
        units,
        units_multiply_to_one,
        witness,
    })
}

/// A graded right module over the Clifford algebra, given on a window of degrees
/// `0..=top` by its piece dimensions and the matrices of right multiplication by
/// `e_i` (degree 1), `s` and `t` (degree 2). Vectors are columns.
#[derive(Clone, Debug)]
pub struct CliffordModule<F: Field> {
    pub field: F,
    pub dims: Vec<usize>,
    /// `generators[i][d]`: `N_d -> N_{d+1}`, `n -> n e_i`.
    pub generators: Vec<Vec<Matrix<F>>>,
    /// `s_action[d]`: `N_d -> N_{d+2}`.
    pub s_action: Vec<Matrix<F>>,
    pub t_action: Vec<Matrix<F>>,
    /// `(α_i, β_i)` with `f_i = α_i s + β_i t`.
    pub factor_coeffs: Vec<(F::Elem, F::Elem)>,
}

impl<F: Field> CliffordModule<F> {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Checks `e_i e_j + e_j e_i = 0` for `i != j` and `e_i^2 = α_i s + β_i t` on the window.
    pub fn check_action_rules(&self) -> Result<()> {
        let field = &self.field;
        let r = self.generators.len();
        for d in 0..self.top().saturating_sub(1) {
            for i in 0..r {
                for j in i..r {
                    let a = self.generators[j][d + 1].mul(&self.generators[i][d])?;
                    let b = self.generators[i][d + 1].mul(&self.generators[j][d])?;
                    let lhs = add(field, &a, &b);
                    let rhs = if i == j {
                        let (al, be) = &self.factor_coeffs[i];
                        let two = field.from_i64(2);
                        add(
                            field,
                            &scale(field, &self.s_action[d], &field.mul(&two, al)),
                            &scale(field, &self.t_action[d], &field.mul(&two, be)),
                        )
                    } else {
                        Matrix::zeros(field, lhs.rows(), lhs.cols())
                    };
                    if lhs != rhs {
                        return Err(AlgebraError::InvalidInput(format!(
                            "action rule fails for e_{} e_{} in degree {d}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn add<F: Field>(field: &F, a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, field.add(a.get(i, j), b.get(i, j)));
        }
    }
    out
}

fn scale<F: Field>(field: &F, a: &Matrix<F>, c: &F::Elem) -> Matrix<F> {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, field.mul(a.get(i, j), c));
        }
    }
    out
}

/// Basis `s^a t^b e_I` of the degree-`d` piece, with `|I| + 2(a+b) = d`.
fn clifford_piece_basis(r: u32, d: usize) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for j in 0..=d / 2 {
        let size = (d - 2 * j) as u32;
        if size > r {
            continue;
        }
        for a in (0..=j as u32).rev() {
            for mask in 0..1u32 << r {
                if mask.count_ones() == size {
                    out.push((mask, a, j as u32 - a));
                }
            }
        }
    }
    out
}

/// The algebra itself as a right module on degrees `0..=top`.
pub fn clifford_module<F: Field>(h: &HyperellipticData<F>, top: usize) -> Result<CliffordModule<F>> {
    let field = h.field().clone();
    let r = h.factors.len() as u32;
    let bases: Vec<Vec<(u32, u32, u32)>> = (0..=top + 2).map(|d| clifford_piece_basis(r, d)).collect();
    let index: Vec<BTreeMap<(u32, u32, u32), usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(k, x)| (*x, k)).collect())
        .collect();
    let factor_coeffs = h
        .factors
        .iter()
        .map(|f| {
            let c = f.binary_coeffs(1)?;
            Ok((c[1].clone(), c[0].clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let one = field.one();
    let mut generators = vec![Vec::new(); r as usize];
    for (i, gen) in generators.iter_mut().enumerate() {
        let bit = 1u32 << i;
        for d in 0..top {
            let mut m = Matrix::zeros(&field, bases[d + 1].len(), bases[d].len());
            for (col, &(mask, a, b)) in bases[d].iter().enumerate() {
                let negative = sign_is_negative(mask, bit);
                let put = |m: &mut Matrix<F>, key: (u32, u32, u32), c: &F::Elem| {
                    let c = if negative { field.neg(c) } else { c.clone() };
                    let row = index[d + 1][&key];
                    let v = field.add(m.get(row, col), &c);
                    m.set(row, col, v);
                };
                if mask & bit == 0 {
                    put(&mut m, (mask | bit, a, b), &one);
                } else {
                    let (al, be) = &factor_coeffs[i];
                    put(&mut m, (mask ^ bit, a + 1, b), al);
                    put(&mut m, (mask ^ bit, a, b + 1), be);
                }
            }
            gen.push(m);
        }
    }
    let shift = |ds: u32, dt: u32| -> Vec<Matrix<F>> {
        (0..=top.saturating_sub(2))
            .filter(|d| d + 2 <= top)
            .map(|d| {
                let mut m = Matrix::zeros(&field, bases[d + 2].len(), bases[d].len());
                for (col, &(mask, a, b)) in bases[d].iter().enumerate() {
                    m.set(index[d + 2][&(mask, a + ds, b + dt)], col, one.clone());
                }
                m
            })
            .collect()
    };
    let s_action = shift(1, 0);
    let t_action = shift(0, 1);
    Ok(CliffordModule {
        dims: bases[..=top].iter().map(Vec::len).collect(),
        field,
        generators,
        s_action,
        t_action,
        factor_coeffs,
    })
}

/// `dim C_i = Σ_j (j+1) C(2g+2, i-2j)`.
pub fn clifford_piece_dim(g: u32, i: u32) -> u64 {
    let r = 2 * g as u64 + 2;
    (0..=i / 2)
        .map(|j| (j as u64 + 1) * crate::poly::binomial(r, (i - 2 * j) as u64))
        .sum()
}

/// The complex `Hom_k(N, P)` over `P = k[x_1..x_r]` on a window.
#[derive(Clone, Debug)]
pub struct BggComplex<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub first: usize,
    /// Ranks of the free `P`-modules `Hom_k(N_d, k) ⊗ P` for each `d` in the window.
    pub ranks: Vec<usize>,
    /// `maps[k]: P^{ranks[k+1]} -> P^{ranks[k]}`, equal to `Σ x_i E_i^T`.
    pub maps: Vec<PolyMatrix<F>>,
    pub q1: Poly<F>,
    pub q2: Poly<F>,
    /// Number of consecutive pairs for which `D_k D_{k+1} = q1 S^T + q2 T^T` was checked.
    pub certified_pairs: usize,
}

pub fn bgg_complex<F: Field>(module: &CliffordModule<F>, window: RangeInclusive<usize>) -> Result<BggComplex<F>> {
    module.check_action_rules()?;
    let (first, last) = (*window.start(), *window.end());
    if last > module.top() || first > last {
        return Err(AlgebraError::InvalidInput(format!(
            "window {first}..={last} is outside the module's degrees 0..={}",
            module.top()
        )));
    }
    let field = &module.field;
    let r = module.generators.len();
    let names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    let ring = PolyRing::new(field.clone(), &names);
    let x: Vec<Poly<F>> = (0..r).map(|i| Poly::var(&ring, i)).collect();
    let lift = |m: &Matrix<F>| PolyMatrix::from_scalar(&ring, &m.transpose());
    let mut maps = Vec::new();
    for d in first..last {
        let mut acc = PolyMatrix::zeros(&ring, module.dims[d], module.dims[d + 1]);
        for (i, xi) in x.iter().enumerate() {
            acc = acc.add(&lift(&module.generators[i][d]).scale(xi))?;
        }
        maps.push(acc);
    }
    let mut q1 = Poly::zero(&ring);
    let mut q2 = Poly::zero(&ring);
    for (xi, (a, b)) in x.iter().zip(&module.factor_coeffs) {
        let sq = xi * xi;
        q1 = &q1 + &sq.scale(a);
        q2 = &q2 + &sq.scale(b);
    }
    let mut certified_pairs = 0;
    for k in 0..maps.len().saturating_sub(1) {
        let d = first + k;
        let lhs = maps[k].mul(&maps[k + 1])?;
        let rhs = lift(&module.s_action[d]).scale(&q1).add(&lift(&module.t_action[d]).scale(&q2))?;
        if lhs.entries() != rhs.entries() {
            return Err(AlgebraError::VerificationFailed(format!(
                "square of the differential differs from q1 S + q2 T in degree {d}"
            )));
        }
        certified_pairs += 1;
    }
    Ok(BggComplex {
        ring,
        first,
        ranks: module.dims[first..=last].to_vec(),
        maps,
        q1,
        q2,
        certified_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn curve(g: usize, p: u64) -> HyperellipticData<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        let roots: Vec<u64> = (1..=(2 * g as u64 + 2)).collect();
        HyperellipticData::from_roots(&f, &roots).unwrap()
    }

    #[test]
    fn basis_product_examples() {
        let h = curve(1, 10009);
        let p = basis_product(&h, 0b1, 0b1);
        assert_eq!((p.sign, p.word), (1, 0));
        assert_eq!(p.factor, h.factors[0]);
        let p = basis_product(&h, 0b10, 0b1);
        assert_eq!((p.sign, p.word), (-1, 0b11));
        let p = basis_product(&h, 0b011, 0b110);
        assert_eq!((p.sign, p.word), (1, 0b101));
        assert_eq!(p.factor, h.factors[1]);
    }

    #[test]
    fn square_of_sum_of_generators() {
        let h = curve(1, 10009);
        let r = &h.ring;
        let a = CliffordElement::word(r, 1).add(&CliffordElement::word(r, 2));
        let sq = clifford_multiply(&h, &a, &a).unwrap();
        assert_eq!(sq, CliffordElement::scalar(&h.factors[0] + &h.factors[1]));
        assert_eq!(a.homogeneous_degree(), Some(1));
        assert_eq!(a.parity(), Parity::Odd);
    }

    #[test]
    fn y_needs_square_root_of_minus_one_for_even_genus() {
        let h = curve(2, 10007);
        assert!(matches!(central_element_y(&h), Err(AlgebraError::NotASquare { .. })));
        let h = curve(2, 13);
        let y = central_element_y(&h).unwrap();
        assert_eq!(y.coeff(0b111111).as_constant(), Some(8));
    }

    #[test]
    fn y_anticommutes_with_generators() {
        let h = curve(1, 10009);
        let y = central_element_y(&h).unwrap();
        let e = CliffordElement::word(&h.ring, 1);
        let s = clifford_multiply(&h, &y, &e).unwrap().add(&clifford_multiply(&h, &e, &y).unwrap());
        assert!(s.is_zero());
    }

    #[test]
    fn even_words_commute_with_y() {
        for g in 1..=2 {
            let h = curve(g, 10009);
            let y = central_element_y(&h).unwrap();
            for w in 0..1u32 << (2 * g + 2) {
                if w.count_ones() % 2 == 0 {
                    let e = CliffordElement::word(&h.ring, w);
                    let c = clifford_multiply(&h, &y, &e).unwrap().sub(&clifford_multiply(&h, &e, &y).unwrap());
                    assert!(c.is_zero(), "word {w:b}");
                }
            }
        }
    }

    #[test]
    fn clifford_module_dims() {
        let h = curve(1, 10009);
        let m = clifford_module(&h, 4).unwrap();
        assert_eq!(m.dims, vec![1, 4, 8, 12, 16]);
        assert!((0..=4).all(|i| m.dims[i] as u64 == clifford_piece_dim(1, i as u32)));
    }

    #[test]
    fn broken_sign_is_rejected() {
        let h = curve(1, 10009);
        let mut m = clifford_module(&h, 3).unwrap();
        let field = m.field.clone();
        let v = field.neg(m.generators[1][0].get(1, 0));
        assert!(!field.is_zero(&v));
        m.generators[1][0].set(1, 0, v);
        assert!(matches!(bgg_complex(&m, 0..=3), Err(AlgebraError::InvalidInput(_))));
    }

    #[test]
    fn even_subsets_match_line_bundles() {
        let h = curve(1, 10009);
        for mask in 0..16u32 {
            if mask.count_ones() % 2 == 0 {
                let i = LineBundleIndex::new(mask, 4).unwrap();
                let r = even_decomposition_check(&h, &i).unwrap();
                assert!(r.passed(), "{i}");
            }
        }
        let odd = LineBundleIndex::new(1, 4).unwrap();
        assert!(even_decomposition_check(&h, &odd).is_err());
    }

    #[test]
    fn differential_squares_to_quadrics() {
        let h = curve(1, 10009);
        let m = clifford_module(&h, 4).unwrap();
        let c = bgg_complex(&m, 0..=4).unwrap();
        assert_eq!(c.ranks, vec![1, 4, 8, 12, 16]);
        assert_eq!(c.certified_pairs, 3);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(h: &HyperellipticData<PrimeField>, terms: &[(u32, u64, u64)]) -> CliffordElement<PrimeField> {
            let r = &h.ring;
            terms.iter().fold(CliffordElement::zero(r), |acc, (w, a, b)| {
                let c = Poly::from_binary_coeffs(r, &[*b, *a]);
                acc.add(&CliffordElement::term(c, *w))
            })
        }

        proptest! {
            #[test]
            fn sign_symmetry(i in 0u32..256, j in 0u32..256) {
                let prod = sign_is_negative(i, j) ^ sign_is_negative(j, i);
                let expected = (i.count_ones() * j.count_ones() - (i & j).count_ones()) % 2 == 1;
                prop_assert_eq!(prod, expected);
            }

            #[test]
            fn associative(
                a in prop::collection::vec((0u32..64, 0u64..50, 0u64..50), 1..4),
                b in prop::collection::vec((0u32..64, 0u64..50, 0u64..50), 1..4),
                c in prop::collection::vec((0u32..64, 0u64..50, 0u64..50), 1..4),
            ) {
                let h = curve(2, 10009);
                let (a, b, c) = (element(&h, &a), element(&h, &b), element(&h, &c));
                let left = clifford_multiply(&h, &clifford_multiply(&h, &a, &b).unwrap(), &c).unwrap();
                let right = clifford_multiply(&h, &a, &clifford_multiply(&h, &b, &c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
}
