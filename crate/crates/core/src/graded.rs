//! Graded free modules and degree-by-degree linear algebra over polynomial rings.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::matrix::{Matrix, RowReducer};
use crate::poly::{monomial_count, Monomial, Poly, PolyRing};
use crate::polymatrix::PolyMatrix;

/// `⊕_j R(-a_j)` for the listed generator degrees `a_j`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedFreeModule {
    pub degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable();
        GradedFreeModule { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Dimension of the degree-`n` piece over a ring with `nvars` variables.
    pub fn hilbert(&self, nvars: usize, n: i64) -> usize {
        self.degrees
            .iter()
            .map(|a| monomial_count(nvars, n - a))
            .sum()
    }

    /// The twist `M(k)`, whose generators sit in degrees `a_j - k`.
    pub fn twist(&self, k: i64) -> Self {
        GradedFreeModule {
            degrees: self.degrees.iter().map(|a| a - k).collect(),
        }
    }
}

/// Coordinates of degree-`d` pieces of `⊕_i R(-b_i)` in the monomial basis.
pub(crate) struct PieceBasis {
    offsets: Vec<usize>,
    index: Vec<BTreeMap<Monomial, usize>>,
    monomials: Vec<Vec<Monomial>>,
    dim: usize,
}

impl PieceBasis {
    pub(crate) fn new<F: Field>(ring: &Arc<PolyRing<F>>, degrees: &[i64], d: i64) -> Self {
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut index = Vec::with_capacity(degrees.len());
        let mut monomials = Vec::with_capacity(degrees.len());
        let mut dim = 0;
        for b in degrees {
            offsets.push(dim);
            let monos = if d - b >= 0 {
                ring.monomials_of_degree((d - b) as u32)
            } else {
                Vec::new()
            };
            index.push(monos.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect());
            dim += monos.len();
            monomials.push(monos);
        }
        PieceBasis {
            offsets,
            index,
            monomials,
            dim,
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn coords<F: Field>(&self, field: &F, v: &[Poly<F>]) -> Result<Vec<F::Elem>> {
        let mut out = vec![field.zero(); self.dim];
        for (i, p) in v.iter().enumerate() {
            for (exp, c) in p.terms() {
                let k = self.index[i].get(exp).ok_or_else(|| {
                    AlgebraError::NotHomogeneous(format!("component {i} = {p} has the wrong degree"))
                })?;
                out[self.offsets[i] + k] = c.clone();
            }
        }
        Ok(out)
    }

    pub(crate) fn vector<F: Field>(&self, ring: &Arc<PolyRing<F>>, coords: &[F::Elem]) -> Vec<Poly<F>> {
        self.monomials
            .iter()
            .zip(&self.offsets)
            .map(|(monos, off)| {
                Poly::from_terms(
                    ring,
                    monos
                        .iter()
                        .enumerate()
                        .map(|(k, m)| (m.clone(), coords[off + k].clone())),
                )
                .expect("monomials have the ring's length")
            })
            .collect()
    }
}

fn labels<F: Field>(m: &PolyMatrix<F>) -> Result<(Vec<i64>, Vec<i64>)> {
    match (m.row_degrees(), m.col_degrees()) {
        (Some(r), Some(c)) => Ok((r.to_vec(), c.to_vec())),
        _ => m.infer_degrees().ok_or_else(|| {
            AlgebraError::NotHomogeneous("matrix admits no consistent degree labels".to_string())
        }),
    }
}

/// The scalar matrix of `m` restricted to degree-`d` pieces.
pub fn degree_piece<F: Field>(m: &PolyMatrix<F>, d: i64) -> Result<Matrix<F>> {
    let (rows, cols) = labels(m)?;
    piece_with_labels(m, &rows, &cols, d)
}

fn piece_with_labels<F: Field>(
    m: &PolyMatrix<F>,
    rows: &[i64],
    cols: &[i64],
    d: i64,
) -> Result<Matrix<F>> {
    let ring = m.ring();
    let field = ring.field();
    let source = PieceBasis::new(ring, cols, d);
    let target = PieceBasis::new(ring, rows, d);
    let mut out = Matrix::zeros(field, target.dim(), source.dim());
    for j in 0..m.cols() {
        for (k, mono) in source.monomials[j].iter().enumerate() {
            let x = Poly::monomial(ring, mono.clone(), field.one());
            let image: Vec<Poly<F>> = (0..m.rows()).map(|i| m.get(i, j) * &x).collect();
            let coords = target.coords(field, &image)?;
            for (r, c) in coords.into_iter().enumerate() {
                if !field.is_zero(&c) {
                    out.set(r, source.offsets[j] + k, c);
                }
            }
        }
    }
    Ok(out)
}

/// Rank of `m` over the fraction field, from evaluations at sample points.
pub fn generic_rank<F: Field>(m: &PolyMatrix<F>) -> Result<usize> {
    let ring = m.ring();
    let field = ring.field();
    let full = m.rows().min(m.cols());
    let mut best = 0;
    let budget: u64 = m
        .max_entry_degree()
        .map_or(1, |d| d as u64 * full as u64 + 2);
    if ring.nvars() == 2 {
        let limit = field.size().map_or(budget, |q| q.min(budget));
        for k in 0..limit {
            let r = m.eval(&[field.nth_element(k), field.one()])?.rank();
            best = best.max(r);
            if best == full {
                break;
            }
        }
        let r = m.eval(&[field.one(), field.zero()])?.rank();
        return Ok(best.max(r));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..budget.min(12) {
        let point: Vec<F::Elem> = (0..ring.nvars()).map(|_| field.random_elem(&mut rng)).collect();
        best = best.max(m.eval(&point)?.rank());
        if best == full {
            break;
        }
    }
    Ok(best)
}

/// Minimal homogeneous generators of the kernel of a labeled matrix.
#[derive(Clone, Debug)]
pub struct GradedKernel<F: Field> {
    /// Columns are the generators; rows carry the source labels of the input.
    pub generators: PolyMatrix<F>,
    pub degrees: Vec<i64>,
    /// Kernel dimension in each inspected degree, starting at `first_degree`.
    pub piece_dims: Vec<usize>,
    pub first_degree: i64,
}

/// Default search bound: the sum of the column labels plus two, but never below
/// the largest label plus the row degree bound plus two.
pub fn default_degree_cap<F: Field>(m: &PolyMatrix<F>) -> Result<i64> {
    let (_, cols) = labels(m)?;
    let sum: i64 = cols.iter().sum();
    let max = cols.iter().copied().max().unwrap_or(0);
    let row_bound: i64 = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter_map(|j| m.get(i, j).degree())
                .max()
                .unwrap_or(0) as i64
        })
        .sum();
    Ok((sum + 2).max(max + row_bound + 2))
}

/// Computes generators of `ker m` degree by degree.
pub fn graded_kernel<F: Field>(m: &PolyMatrix<F>, cap: Option<i64>) -> Result<GradedKernel<F>> {
    let ring = m.ring();
    let field = ring.field();
    let (rows, cols) = labels(m)?;
    let cap = match cap {
        Some(c) => c,
        None => default_degree_cap(m)?,
    };
    let expected = m.cols() - generic_rank(m)?;
    let first = cols.iter().copied().min().unwrap_or(0);
    let mut gens: Vec<Vec<Poly<F>>> = Vec::new();
    let mut degrees: Vec<i64> = Vec::new();
    let mut piece_dims = Vec::new();
    let mut settled = 0;
    let mut d = first;
    if expected == 0 {
        return Ok(GradedKernel {
            generators: PolyMatrix::zeros(ring, m.cols(), 0).with_degrees(cols, Vec::new())?,
            degrees,
            piece_dims,
            first_degree: first,
        });
    }
    loop {
        if d > cap {
            return Err(AlgebraError::DegreeCapExceeded {
                cap,
                what: format!("finding {expected} kernel generators"),
            });
        }
        let piece = piece_with_labels(m, &rows, &cols, d)?;
        let basis = PieceBasis::new(ring, &cols, d);
        let null = piece.nullspace();
        piece_dims.push(null.len());
        let mut span = RowReducer::new(field, basis.dim());
        for (g, e) in gens.iter().zip(&degrees) {
            for mono in ring.monomials_of_degree((d - e) as u32) {
                let x = Poly::monomial(ring, mono, field.one());
                let shifted: Vec<Poly<F>> = g.iter().map(|p| p * &x).collect();
                span.insert(&basis.coords(field, &shifted)?);
            }
        }
        let mut added = false;
        for v in &null {
            if span.insert(v) {
                gens.push(basis.vector(ring, v));
                degrees.push(d);
                added = true;
            }
        }
        if gens.len() > expected {
            return Err(AlgebraError::VerificationFailed(format!(
                "kernel needs more than {expected} generators; labels are inconsistent"
            )));
        }
        if gens.len() == expected && !added {
            settled += 1;
            if settled == 2 {
                break;
            }
        } else {
            settled = 0;
        }
        d += 1;
    }
    let mut generators = PolyMatrix::zeros(ring, m.cols(), gens.len());
    for (c, g) in gens.iter().enumerate() {
        for (r, p) in g.iter().enumerate() {
            generators.set(r, c, p.clone());
        }
    }
    let generators = generators.with_degrees(cols, degrees.clone())?;
    Ok(GradedKernel {
        generators,
        degrees,
        piece_dims,
        first_degree: first,
    })
}

/// Writes the homogeneous vector `v` (of degree `d` in the labeling of the rows of
/// `gens`) as a combination of the columns of `gens`.
pub fn express_in_columns<F: Field>(
    gens: &PolyMatrix<F>,
    v: &[Poly<F>],
    d: i64,
) -> Result<Option<Vec<Poly<F>>>> {
    let ring = gens.ring();
    let field = ring.field();
    let (Some(rows), Some(cols)) = (gens.row_degrees(), gens.col_degrees()) else {
        return Err(AlgebraError::NotHomogeneous("generators need degree labels".into()));
    };
    let basis = PieceBasis::new(ring, rows, d);
    let target = basis.coords(field, v)?;
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    let mut columns: Vec<Vec<F::Elem>> = Vec::new();
    for (c, e) in cols.iter().enumerate() {
        if d < *e {
            continue;
        }
        for mono in ring.monomials_of_degree((d - e) as u32) {
            let x = Poly::monomial(ring, mono.clone(), field.one());
            let shifted: Vec<Poly<F>> = (0..gens.rows()).map(|r| gens.get(r, c) * &x).collect();
            columns.push(basis.coords(field, &shifted)?);
            unknowns.push((c, mono));
        }
    }
    let mut system = Matrix::zeros(field, basis.dim(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            if !field.is_zero(x) {
                system.set(i, j, x.clone());
            }
        }
    }
    let Some(sol) = system.solve(&target)? else {
        return Ok(None);
    };
    let mut coeffs = vec![Poly::zero(ring); gens.cols()];
    for ((c, mono), x) in unknowns.into_iter().zip(sol) {
        coeffs[c] = &coeffs[c] + &Poly::monomial(ring, mono, x);
    }
    Ok(Some(coeffs))
}

/// Column degrees of a homogeneous presentation with target degrees `rows`.
fn column_degrees<F: Field>(gens: &PolyMatrix<F>, rows: &[i64]) -> Result<Vec<Option<i64>>> {
    (0..gens.cols())
        .map(|j| {
            let mut deg = None;
            for (i, b) in rows.iter().enumerate() {
                let p = gens.get(i, j);
                if let Some(e) = p.homogeneous_degree()? {
                    let c = e as i64 + b;
                    match deg {
                        None => deg = Some(c),
                        Some(prev) if prev != c => {
                            return Err(AlgebraError::NotHomogeneous(format!(
                                "column {j} is not homogeneous"
                            )))
                        }
                        _ => {}
                    }
                }
            }
            Ok(deg)
        })
        .collect()
}

/// Dimensions of the graded pieces of `coker(gens)`, where `gens` maps into
/// `⊕_i R(-rows[i])`, for each degree in `degrees`.
///
/// Each piece is computed as the dimension of the free module minus the rank of
/// the Macaulay matrix of monomial multiples of the columns.
pub fn graded_quotient_dims<F: Field>(
    gens: &PolyMatrix<F>,
    rows: &[i64],
    degrees: core::ops::RangeInclusive<i64>,
) -> Result<Vec<usize>> {
    if rows.len() != gens.rows() {
        return Err(AlgebraError::DimensionMismatch("row labels".into()));
    }
    let ring = gens.ring();
    let field = ring.field();
    let col_deg = column_degrees(gens, rows)?;
    let mut out = Vec::new();
    for d in degrees {
        let basis = PieceBasis::new(ring, rows, d);
        let mut span = RowReducer::new(field, basis.dim());
        for (j, e) in col_deg.iter().enumerate() {
            let Some(e) = e else { continue };
            if d < *e {
                continue;
            }
            for mono in ring.monomials_of_degree((d - e) as u32) {
                let x = Poly::monomial(ring, mono, field.one());
                let v: Vec<Poly<F>> = (0..gens.rows()).map(|i| gens.get(i, j) * &x).collect();
                span.insert(&basis.coords(field, &v)?);
                if span.rank() == basis.dim() {
                    break;
                }
            }
        }
        out.push(basis.dim() - span.rank());
    }
    Ok(out)
}

/// Hilbert function of `R / (gens)` for homogeneous ideal generators.
pub fn ideal_quotient_dims<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Poly<F>],
    degrees: core::ops::RangeInclusive<i64>,
) -> Result<Vec<usize>> {
    let m = PolyMatrix::from_rows(ring, vec![gens.to_vec()])?;
    graded_quotient_dims(&m, &[0], degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    fn st() -> Arc<PolyRing<PrimeField>> {
        PolyRing::binary(PrimeField::new(10009).unwrap())
    }

    fn row(ring: &Arc<PolyRing<PrimeField>>, entries: &[&str]) -> PolyMatrix<PrimeField> {
        PolyMatrix::from_rows(
            ring,
            vec![entries.iter().map(|e| parse_poly(ring, e).unwrap()).collect()],
        )
        .unwrap()
    }

    #[test]
    fn koszul_syzygy() {
        let r = st();
        let m = row(&r, &["s", "-t"]).with_degrees(vec![-1], vec![0, 0]).unwrap();
        let k = graded_kernel(&m, None).unwrap();
        assert_eq!(k.degrees, vec![1]);
        let g = k.generators.column(0);
        assert_eq!(g, vec![parse_poly(&r, "t").unwrap(), parse_poly(&r, "s").unwrap()]);
    }

    #[test]
    fn invertible_matrix_has_no_kernel() {
        let r = st();
        let m = PolyMatrix::from_rows(
            &r,
            vec![
                vec![parse_poly(&r, "s").unwrap(), parse_poly(&r, "t").unwrap()],
                vec![parse_poly(&r, "t").unwrap(), parse_poly(&r, "s").unwrap()],
            ],
        )
        .unwrap();
        let k = graded_kernel(&m, None).unwrap();
        assert_eq!(k.generators.cols(), 0);
    }

    #[test]
    fn kernel_of_a_cubic_row() {
        // (s^2, st, t^2): the kernel is free on two linear syzygies
        let r = st();
        let m = row(&r, &["s^2", "s*t", "t^2"]).with_degrees(vec![0], vec![2, 2, 2]).unwrap();
        let k = graded_kernel(&m, None).unwrap();
        assert_eq!(k.degrees, vec![3, 3]);
        assert!(m.mul(&k.generators).unwrap().is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let r = st();
        let m = row(&r, &["s^5", "t^5"]).with_degrees(vec![0], vec![5, 5]).unwrap();
        assert!(matches!(
            graded_kernel(&m, Some(7)),
            Err(AlgebraError::DegreeCapExceeded { .. })
        ));
        assert_eq!(graded_kernel(&m, None).unwrap().degrees, vec![10]);
    }

    #[test]
    fn quotient_dims_of_monomial_ideals() {
        let q = Rationals;
        let r = PolyRing::new(q, &["u", "v"]);
        let u2 = parse_poly(&r, "u^2").unwrap();
        let v2 = parse_poly(&r, "v^2").unwrap();
        assert_eq!(
            ideal_quotient_dims(&r, &[u2.clone(), v2], 0..=3).unwrap(),
            vec![1, 2, 1, 0]
        );
        assert_eq!(ideal_quotient_dims(&r, &[u2], 0..=3).unwrap(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn generic_quadric_pair_is_a_complete_intersection() {
        let r = PolyRing::new(PrimeField::new(10009).unwrap(), &["u", "v"]);
        let q1 = parse_poly(&r, "3*u^2 + 5*u*v - v^2").unwrap();
        let q2 = parse_poly(&r, "u^2 - 7*u*v + 2*v^2").unwrap();
        assert_eq!(ideal_quotient_dims(&r, &[q1, q2], 0..=3).unwrap(), vec![1, 2, 1, 0]);
    }

    #[test]
    fn hilbert_function_of_free_module() {
        let m = GradedFreeModule::new(vec![0, 1, 1, 2]);
        assert_eq!(m.hilbert(2, 0), 1);
        assert_eq!(m.hilbert(2, 2), 3 + 2 + 2 + 1);
        assert_eq!(m.twist(1).degrees, vec![-1, 0, 0, 1]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn kernel_generators_are_syzygies_with_matching_hilbert_function(
                raw in prop::collection::vec((0u64..10009, 0u64..10009, 0u64..10009), 6),
            ) {
                // a 2x3 matrix of quadrics in s, t
                let r = st();
                let m = PolyMatrix::from_fn(&r, 2, 3, |i, j| {
                    let (a, b, c) = raw[i * 3 + j];
                    Poly::from_binary_coeffs(&r, &[a, b, c])
                })
                .with_degrees(vec![0, 0], vec![2, 2, 2])
                .unwrap();
                let k = graded_kernel(&m, None).unwrap();
                prop_assert!(m.mul(&k.generators).unwrap().is_zero());
                prop_assert_eq!(generic_rank(&k.generators).unwrap(), k.generators.cols());
                for (off, dim) in k.piece_dims.iter().enumerate() {
                    let d = k.first_degree + off as i64;
                    let gen_dims = graded_quotient_dims(&k.generators, &[2, 2, 2], d..=d).unwrap();
                    let free = PieceBasis::new(&r, &[2, 2, 2], d).dim();
                    prop_assert_eq!(free - gen_dims[0], *dim);
                    let piece = degree_piece(&m, d).unwrap();
                    prop_assert_eq!(piece.cols() - piece.rank(), *dim);
                }
            }
        }
    }
}
