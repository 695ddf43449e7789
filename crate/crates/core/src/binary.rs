//! Binary forms in `(s, t)`: roots, squarefreeness, normalization.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::univariate;

/// Roots `λ` of a binary form, one per linear factor `s - λ t`, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRoots<F: Field> {
    pub roots: Vec<(F::Elem, usize)>,
    /// Multiplicity of the factor `t`.
    pub at_infinity: usize,
    pub degree: usize,
    pub splits: bool,
}

impl<F: Field> BinaryRoots<F> {
    /// Finite roots listed with repetition.
    pub fn multiset(&self) -> Vec<F::Elem> {
        self.roots
            .iter()
            .flat_map(|(r, m)| core::iter::repeat(r.clone()).take(*m))
            .collect()
    }
}

fn form_degree<F: Field>(f: &Poly<F>) -> Result<u32> {
    if f.ring().nvars() != 2 {
        return Err(AlgebraError::InvalidInput("binary form expected in two variables".into()));
    }
    match f.homogeneous_degree()? {
        Some(d) => Ok(d),
        None => Err(AlgebraError::InvalidInput("zero binary form".into())),
    }
}

/// Dehomogenization `f(λ, 1)`, low degree first.
fn dehomogenize<F: Field>(f: &Poly<F>) -> Result<(u32, Vec<F::Elem>)> {
    let d = form_degree(f)?;
    let coeffs = f.binary_coeffs(d)?;
    Ok((d, univariate::trimmed(f.field(), &coeffs)))
}

pub fn binary_form_roots<F: Field>(f: &Poly<F>) -> Result<BinaryRoots<F>> {
    let field = f.field();
    let (d, mut u) = dehomogenize(f)?;
    let at_infinity = d as usize + 1 - u.len();
    let mut roots = Vec::new();
    for r in field.univariate_roots(&u)? {
        let linear = [field.neg(&r), field.one()];
        let mut mult = 0;
        loop {
            let (q, rem) = univariate::div_rem(field, &u, &linear)?;
            if !rem.is_empty() {
                break;
            }
            u = q;
            mult += 1;
        }
        roots.push((r, mult));
    }
    let found: usize = roots.iter().map(|(_, m)| m).sum::<usize>() + at_infinity;
    Ok(BinaryRoots {
        roots,
        at_infinity,
        degree: d as usize,
        splits: found == d as usize,
    })
}

/// True when `f` has no repeated linear factor over the algebraic closure.
pub fn squarefree_distinct<F: Field>(f: &Poly<F>) -> Result<bool> {
    let field = f.field();
    let (_, u) = dehomogenize(f)?;
    let d = form_degree(f)? as usize;
    let at_infinity = d + 1 - u.len();
    if at_infinity > 1 {
        return Ok(false);
    }
    let du = univariate::derivative(field, &u);
    if du.is_empty() {
        return Ok(u.len() <= 1);
    }
    let g = univariate::gcd(field, &u, &du)?;
    Ok(g.len() <= 1)
}

/// Scales `f` so that its first nonzero coefficient in the order
/// `s^d, s^(d-1) t, ..., t^d` is one.
pub fn normalize<F: Field>(f: &Poly<F>) -> Result<Poly<F>> {
    let field = f.field();
    let d = form_degree(f)?;
    let coeffs = f.binary_coeffs(d)?;
    let lead = coeffs
        .iter()
        .rev()
        .find(|c| !field.is_zero(c))
        .ok_or_else(|| AlgebraError::InvalidInput("zero binary form".into()))?;
    Ok(f.scale(&field.inv(lead)?))
}

/// `a s + b t`.
pub fn linear_form<F: Field>(ring: &Arc<PolyRing<F>>, a: F::Elem, b: F::Elem) -> Poly<F> {
    Poly::from_binary_coeffs(ring, &[b, a])
}

/// `∏ (s - λ t)` over the given roots.
pub fn from_roots<F: Field>(ring: &Arc<PolyRing<F>>, roots: &[F::Elem]) -> Poly<F> {
    let field = ring.field();
    roots.iter().fold(Poly::one(ring), |acc, r| {
        &acc * &linear_form(ring, field.one(), field.neg(r))
    })
}

/// Root `λ` of a linear form `a s + b t` with `a != 0`.
pub fn linear_root<F: Field>(l: &Poly<F>) -> Result<F::Elem> {
    let field = l.field();
    let c = l.binary_coeffs(1)?;
    if field.is_zero(&c[1]) {
        return Err(AlgebraError::InvalidInput(format!("{l} has its root at infinity")));
    }
    Ok(field.neg(&field.div(&c[0], &c[1])?))
}

/// True when two nonzero linear forms are scalar multiples of each other.
pub fn proportional<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<bool> {
    let field = a.field();
    let x = a.binary_coeffs(1)?;
    let y = b.binary_coeffs(1)?;
    Ok(field.sub(&field.mul(&x[0], &y[1]), &field.mul(&x[1], &y[0])) == field.zero())
}

pub fn describe_roots<F: Field>(roots: &BinaryRoots<F>, field: &F) -> alloc::string::String {
    let mut parts: Vec<alloc::string::String> = roots
        .roots
        .iter()
        .map(|(r, m)| {
            if *m == 1 {
                field.elem_to_string(r)
            } else {
                format!("{} (x{m})", field.elem_to_string(r))
            }
        })
        .collect();
    if roots.at_infinity > 0 {
        parts.push(format!("infinity (x{})", roots.at_infinity));
    }
    if parts.is_empty() {
        return "none".to_string();
    }
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    #[test]
    fn roots_of_difference_of_squares() {
        let r = PolyRing::binary(Rationals);
        let f = parse_poly(&r, "s^2 - t^2").unwrap();
        let roots = binary_form_roots(&f).unwrap();
        assert!(roots.splits);
        assert_eq!(roots.at_infinity, 0);
        let mut vals = roots.multiset();
        vals.sort();
        assert_eq!(vals, [Rationals.from_i64(-1), Rationals.from_i64(1)]);
    }

    #[test]
    fn double_root_and_root_at_infinity() {
        let r = PolyRing::binary(PrimeField::new(101).unwrap());
        let f = parse_poly(&r, "s^2*t + 2*s*t^2 + t^3").unwrap();
        let roots = binary_form_roots(&f).unwrap();
        assert_eq!(roots.roots, [(100, 2)]);
        assert_eq!(roots.at_infinity, 1);
        assert!(roots.splits);
        assert!(!squarefree_distinct(&f).unwrap());
    }

    #[test]
    fn irreducible_quadratic_does_not_split() {
        let r = PolyRing::binary(Rationals);
        let f = parse_poly(&r, "s^2 + t^2").unwrap();
        let roots = binary_form_roots(&f).unwrap();
        assert!(!roots.splits);
        assert!(squarefree_distinct(&f).unwrap());
    }

    #[test]
    fn squarefree_examples() {
        let r = PolyRing::binary(Rationals);
        assert!(squarefree_distinct(&parse_poly(&r, "s^2 - t^2").unwrap()).unwrap());
        assert!(!squarefree_distinct(&parse_poly(&r, "s^2 - 2*s*t + t^2").unwrap()).unwrap());
        assert!(squarefree_distinct(&parse_poly(&r, "s*t").unwrap()).unwrap());
    }

    #[test]
    fn normalization_makes_leading_coefficient_one() {
        let r = PolyRing::binary(Rationals);
        let f = parse_poly(&r, "3*s^2 - 3*t^2").unwrap();
        assert_eq!(normalize(&f).unwrap(), parse_poly(&r, "s^2 - t^2").unwrap());
        let g = parse_poly(&r, "2*s*t + 4*t^2").unwrap();
        assert_eq!(normalize(&g).unwrap(), parse_poly(&r, "s*t + 2*t^2").unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn recovered_factors_multiply_back(roots in prop::collection::vec(0u64..97, 1..7), inf in 0usize..3, scale in 1u64..97) {
                let f = PrimeField::new(97).unwrap();
                let r = PolyRing::binary(f);
                let t = Poly::var(&r, 1);
                let form = (0..inf).fold(from_roots(&r, &roots), |acc, _| &acc * &t).scale(&scale);
                let found = binary_form_roots(&form).unwrap();
                prop_assert!(found.splits);
                prop_assert_eq!(found.at_infinity, inf);
                let rebuilt = (0..inf).fold(from_roots(&r, &found.multiset()), |acc, _| &acc * &t);
                prop_assert_eq!(normalize(&rebuilt).unwrap(), normalize(&form).unwrap());
            }
        }
    }
}
