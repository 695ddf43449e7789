//! Library results compared against independent computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use ulrich_core::betti::{betti_number, fu_degrees, tate_shape_pu};
use ulrich_core::binary::binary_form_roots;
use ulrich_core::clifford::clifford_piece_dim;
use ulrich_core::knorrer::knorrer_pair;
use ulrich_core::matrix::Matrix;
use ulrich_core::pencil::{simultaneous_diagonalize, verify_diagonalization, QuadricPencil};
use ulrich_core::ulrich::{
    elementary_matrix, restricted_hessian, ulrich_for_roots_odd_ambient, verify_candidate, RootTargets,
};
use ulrich_core::{Field, PrimeField, Rationals};

const P: u64 = 10009;

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn distinct(v: &[u64]) -> bool {
    (0..v.len()).all(|i| (0..i).all(|j| v[i] != v[j]))
}

/// Coefficients of `num / den` as a power series, up to `len` terms.
fn series_div(num: &[i64], den: &[i64], len: usize) -> Vec<i64> {
    let mut out = vec![0; len];
    for k in 0..len {
        let mut acc = num.get(k).copied().unwrap_or(0);
        for j in 1..=k.min(den.len() - 1) {
            acc -= den[j] * out[k - j];
        }
        out[k] = acc / den[0];
    }
    out
}

fn binomial_row(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = vec![1i64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}

// (1 - z^2)^2
const DOUBLE_POLE: [i64; 5] = [1, 0, -2, 0, 1];

#[test]
fn betti_numbers_match_generating_function() {
    for g in 0..=8u32 {
        let series = series_div(&binomial_row(g as usize + 2), &DOUBLE_POLE, 16);
        for (j, a) in series.iter().enumerate() {
            assert_eq!(betti_number(g, j as u32) as i64, *a, "g={g} j={j}");
        }
    }
}

#[test]
fn clifford_dims_match_generating_function() {
    for g in 1..=4u32 {
        let series = series_div(&binomial_row(2 * g as usize + 2), &DOUBLE_POLE, 10);
        for (i, d) in series.iter().enumerate() {
            assert_eq!(clifford_piece_dim(g, i as u32) as i64, *d, "g={g} i={i}");
        }
    }
}

#[test]
fn fu_rank_and_degree() {
    for g in 1..=8u32 {
        let s = fu_degrees(g);
        assert_eq!(s.rank, 1 << g);
        assert_eq!(2 * s.degree, g as i64 * (1 << g));
        assert_eq!(s.even.rank() + s.odd.rank(), 1 << (g + 2));
    }
}

#[test]
fn tate_shape_strands_are_dual() {
    for g in 1..=8u32 {
        let t = tate_shape_pu(g);
        assert!(t.strand_duality_holds());
        assert_eq!(t.quadratic(g as i64), Some(1));
    }
}

#[test]
fn knorrer_sizes_double() {
    let f = fp();
    for n in 0..=5 {
        let pair = knorrer_pair(&f, n).unwrap();
        assert_eq!(pair.phi.rows(), 1 << n);
        assert_eq!(pair.q.num_terms(), n + 1);
    }
}

fn vandermonde<F: Field>(field: &F, a: &[F::Elem]) -> F::Elem {
    let mut acc = field.one();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            acc = field.mul(&acc, &field.sub(&a[i], &a[j]));
        }
    }
    acc
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn elementary_determinant_is_vandermonde_mod_p(a in prop::collection::vec(1u64..P, 1..=6)) {
        prop_assume!(distinct(&a));
        let f = fp();
        prop_assert_eq!(elementary_matrix(&f, &a).det().unwrap(), vandermonde(&f, &a));
    }

    #[test]
    fn elementary_determinant_is_vandermonde_over_q(a in prop::collection::vec(-50i64..50, 1..=6)) {
        let a: Vec<BigRational> = a.into_iter().map(q).collect();
        prop_assume!((0..a.len()).all(|i| (0..i).all(|j| a[i] != a[j])));
        prop_assert_eq!(elementary_matrix(&Rationals, &a).det().unwrap(), vandermonde(&Rationals, &a));
    }

    /// Evaluates `B^T H(s0) B` as a scalar matrix and compares its determinant with
    /// `(-1)^(n+1) 2 h(s0) ∏ (s0 + a_i)`, `h` taken from its defining sum.
    #[test]
    fn restricted_hessian_pointwise(
        a in prop::collection::vec(1u64..P, 2..=5),
        b_seed in prop::collection::vec(0u64..P, 9),
        s0 in 0u64..P,
    ) {
        prop_assume!(distinct(&a));
        let f = fp();
        let n = a.len() - 1;
        let b: Vec<u64> = b_seed[..2 * n + 1].to_vec();
        let hess = restricted_hessian(&f, &a, &b).unwrap();

        let m = 2 * n + 2;
        let ell: Vec<u64> = a.iter().map(|ai| f.add(&s0, ai)).collect();
        let mut h_mat = Matrix::zeros(&f, m, m);
        for i in 0..=n {
            h_mat.set(i, n + 1 + i, ell[i]);
            h_mat.set(n + 1 + i, i, ell[i]);
        }
        let mut embed = Matrix::zeros(&f, m, m - 1);
        for i in 0..m - 1 {
            embed.set(i, i, 1);
            embed.set(m - 1, i, b[i]);
        }
        let det = embed.transpose().mul(&h_mat).unwrap().mul(&embed).unwrap().det().unwrap();

        let others = |skip: usize| (0..=n).filter(|j| *j != skip).fold(1, |acc, j| f.mul(&acc, &ell[j]));
        let mut h = f.neg(&f.mul(&b[n], &others(n)));
        for i in 0..n {
            h = f.add(&h, &f.mul(&f.mul(&b[i], &b[n + 1 + i]), &others(i)));
        }
        let prod = ell.iter().fold(1, |acc, l| f.mul(&acc, l));
        let mut expected = f.mul(&f.from_i64(2), &f.mul(&h, &prod));
        if n % 2 == 0 {
            expected = f.neg(&expected);
        }
        prop_assert_eq!(det, expected);
        prop_assert_eq!(hess.sign as i64, if n % 2 == 0 { -1 } else { 1 });
    }

    #[test]
    fn discriminant_is_congruence_invariant(
        d1 in prop::collection::vec(1u64..P, 4),
        d2 in prop::collection::vec(0u64..P, 4),
        s in prop::collection::vec(0u64..P, 16),
    ) {
        let f = fp();
        let diag = |d: &[u64]| {
            let mut m = Matrix::zeros(&f, 4, 4);
            for (i, v) in d.iter().enumerate() {
                m.set(i, i, *v);
            }
            m
        };
        let pencil = QuadricPencil::new(diag(&d1), diag(&d2)).unwrap();
        let rows: Vec<Vec<u64>> = s.chunks(4).map(|c| c.to_vec()).collect();
        let change = Matrix::from_rows(&f, rows).unwrap();
        prop_assume!(change.det().unwrap() != 0);
        let moved = pencil.congruence(&change).unwrap();
        prop_assert_eq!(moved.discriminant().unwrap(), pencil.discriminant().unwrap());
    }

    /// A diagonal pencil disguised by a random change of basis is diagonalized again,
    /// with the factors multiplying back to the discriminant.
    #[test]
    fn diagonalization_of_disguised_pencil(
        roots in prop::collection::vec(1u64..P, 4..=6),
        s in prop::collection::vec(0u64..P, 36),
    ) {
        prop_assume!(distinct(&roots));
        let f = fp();
        let r = roots.len();
        let mut b1 = Matrix::zeros(&f, r, r);
        let mut b2 = Matrix::zeros(&f, r, r);
        for (i, root) in roots.iter().enumerate() {
            b1.set(i, i, 1);
            b2.set(i, i, f.neg(root));
        }
        let rows: Vec<Vec<u64>> = s.chunks(6).take(r).map(|c| c[..r].to_vec()).collect();
        let change = Matrix::from_rows(&f, rows).unwrap();
        prop_assume!(change.det().unwrap() != 0);
        let pencil = QuadricPencil::new(b1, b2).unwrap().congruence(&change).unwrap();
        let h = simultaneous_diagonalize(&pencil).unwrap();
        prop_assert!(verify_diagonalization(&pencil, &h).is_ok());
        let product = h.factors.iter().skip(1).fold(h.factors[0].clone(), |acc, l| &acc * l);
        let disc = pencil.discriminant().unwrap();
        let found = binary_form_roots(&product).unwrap().multiset();
        let expected = binary_form_roots(&disc).unwrap().multiset();
        prop_assert_eq!(found.len(), expected.len());
        prop_assert!(found.iter().all(|x| expected.contains(x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// The odd pipeline puts the discriminant roots at `-a_i, -c_j` and keeps the certificates.
    #[test]
    fn odd_pipeline_hits_targets(values in prop::collection::vec(1u64..P, 5), seed in 0u64..1000) {
        prop_assume!(distinct(&values));
        let f = fp();
        let targets = RootTargets::split(&f, &values).unwrap();
        let odd = ulrich_for_roots_odd_ambient(&f, &targets).unwrap();
        let expected: Vec<u64> = values.iter().map(|v| f.neg(v)).collect();
        let record = verify_candidate(&odd.candidate, Some(&expected), 1, seed).unwrap();
        prop_assert!(record.complex.passed());
        prop_assert_eq!(record.roots_match, Some(true));
        prop_assert!(record.passed(), "{:?}", record.hilbert);
    }
}
