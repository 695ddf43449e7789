//! Dense univariate helpers on coefficient vectors (low degree first).

use alloc::vec::Vec;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

pub(crate) fn trimmed<F: Field>(field: &F, coeffs: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = coeffs.to_vec();
    while out.last().is_some_and(|c| field.is_zero(c)) {
        out.pop();
    }
    out
}

pub(crate) fn eval<F: Field>(field: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

pub(crate) fn derivative<F: Field>(field: &F, coeffs: &[F::Elem]) -> Vec<F::Elem> {
    let out: Vec<F::Elem> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| field.mul(c, &field.from_i64(k as i64)))
        .collect();
    trimmed(field, &out)
}

pub(crate) fn div_rem<F: Field>(
    field: &F,
    num: &[F::Elem],
    den: &[F::Elem],
) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let den = trimmed(field, den);
    let Some(lead) = den.last() else {
        return Err(AlgebraError::DivisionByZero);
    };
    let lead_inv = field.inv(lead)?;
    let mut rem = trimmed(field, num);
    if rem.len() < den.len() {
        return Ok((Vec::new(), rem));
    }
    let mut quot = alloc::vec![field.zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let c = field.mul(rem.last().expect("nonempty"), &lead_inv);
        for (k, d) in den.iter().enumerate() {
            let t = field.mul(&c, d);
            rem[shift + k] = field.sub(&rem[shift + k], &t);
        }
        quot[shift] = c;
        rem = trimmed(field, &rem);
    }
    Ok((trimmed(field, &quot), rem))
}

pub(crate) fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let mut a = trimmed(field, a);
    let mut b = trimmed(field, b);
    while !b.is_empty() {
        let (_, r) = div_rem(field, &a, &b)?;
        a = b;
        b = r;
    }
    Ok(a)
}

/// Newton interpolation through `(xs[k], ys[k])`; the `xs` must be distinct.
pub(crate) fn interpolate<F: Field>(
    field: &F,
    xs: &[F::Elem],
    ys: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    let n = xs.len();
    let mut diffs = ys.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            let num = field.sub(&diffs[k], &diffs[k - 1]);
            let den = field.sub(&xs[k], &xs[k - level]);
            diffs[k] = field.div(&num, &den)?;
        }
    }
    let mut coeffs: Vec<F::Elem> = Vec::new();
    for k in (0..n).rev() {
        // coeffs = coeffs * (x - xs[k]) + diffs[k]
        let mut next = alloc::vec![field.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            next[i] = field.sub(&next[i], &field.mul(c, &xs[k]));
        }
        next[0] = field.add(&next[0], &diffs[k]);
        coeffs = next;
    }
    Ok(trimmed(field, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn interpolation_recovers_cubic() {
        let f = PrimeField::new(101).unwrap();
        let poly = [5u64, 0, 3, 7];
        let xs: Vec<u64> = (0..4).collect();
        let ys: Vec<u64> = xs.iter().map(|x| eval(&f, &poly, x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys).unwrap(), poly.to_vec());
    }

    #[test]
    fn gcd_of_coprime_and_shared_factor() {
        let f = PrimeField::new(13).unwrap();
        // (x-1)(x-2) and (x-1)(x-3)
        let a = [2u64, 10, 1];
        let b = [3u64, 9, 1];
        let g = gcd(&f, &a, &b).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(eval(&f, &g, &1), 0);
        assert_eq!(derivative(&f, &a), alloc::vec![10, 2]);
    }
}
