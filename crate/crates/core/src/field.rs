//! Exact base fields: prime fields `F_p` (p odd) and the rationals.
//!
//! Arithmetic is routed through a field object, in the style of
//! `field.mul(&a, &b)`, so that elements of `F_p` stay plain machine words.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Debug, Display};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;

use crate::error::{AlgebraError, Result};
use crate::univariate;

/// Largest modulus accepted by [`PrimeField`]; products of two residues fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Prime fields above this size are not scanned exhaustively for roots.
pub const MAX_ROOT_SCAN: u64 = 1 << 24;

pub trait Field: Clone + PartialEq + Eq + Debug + Display {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` when infinite.
    fn size(&self) -> Option<u64>;

    /// A fixed enumeration of field elements: `0, 1, 2, ...` in `F_p`,
    /// `0, 1, -1, 2, -2, ...` in the rationals.
    fn nth_element(&self, k: u64) -> Self::Elem;

    /// Square root with the deterministic tie-break described on [`PrimeField::sqrt`].
    fn sqrt(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Distinct roots of a univariate polynomial given by coefficients, low degree first.
    fn univariate_roots(&self, coeffs: &[Self::Elem]) -> Result<Vec<Self::Elem>>;

    fn random_elem<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn elem_to_string(&self, a: &Self::Elem) -> String;

    /// Canonical rational encoding: residues in `0..p` with denominator 1,
    /// rationals in lowest terms with positive denominator.
    fn to_rational_parts(&self, a: &Self::Elem) -> (BigInt, BigInt);
    fn from_rational_parts(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Random element different from zero.
    fn random_nonzero<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random_elem(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Parses an integer or a fraction `a/b`.
    fn parse_elem(&self, text: &str) -> Result<Self::Elem> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| AlgebraError::InvalidInput(format!("not a number: {text:?}")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| AlgebraError::InvalidInput(format!("not a number: {text:?}")))?;
        self.from_rational_parts(&num, &den)
    }
}

/// The prime field `F_p` for an odd prime `p <= MAX_PRIME`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(AlgebraError::InvalidInput(format!(
                "modulus {p} is not an odd prime"
            )));
        }
        if p > MAX_PRIME {
            return Err(AlgebraError::InvalidInput(format!(
                "modulus {p} exceeds the supported bound {MAX_PRIME}"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    /// Tonelli–Shanks square root. Of the two roots, the one in `0..=(p-1)/2` is returned.
    pub fn sqrt_residue(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(&a, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while self.pow(&z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(&a, q);
        let mut r = self.pow(&a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = t2 * t2 % p;
                i += 1;
            }
            let b = self.pow(&c, 1u64 << (m - i - 1));
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        Some(r.min(p - r))
    }
}

impl Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn size(&self) -> Option<u64> {
        Some(self.p)
    }
    fn nth_element(&self, k: u64) -> u64 {
        k % self.p
    }
    fn sqrt(&self, a: &u64) -> Result<u64> {
        self.sqrt_residue(*a).ok_or_else(|| AlgebraError::NotASquare {
            value: self.elem_to_string(a),
            field: self.to_string(),
        })
    }
    fn univariate_roots(&self, coeffs: &[u64]) -> Result<Vec<u64>> {
        let coeffs = univariate::trimmed(self, coeffs);
        if coeffs.is_empty() {
            return Err(AlgebraError::InvalidInput(
                "roots of the zero polynomial".to_string(),
            ));
        }
        if coeffs.len() == 1 {
            return Ok(Vec::new());
        }
        if self.p > MAX_ROOT_SCAN {
            return Err(AlgebraError::InvalidInput(format!(
                "root scan over {self} is limited to p <= {MAX_ROOT_SCAN}"
            )));
        }
        let mut roots = Vec::new();
        for x in 0..self.p {
            if univariate::eval(self, &coeffs, &x) == 0 {
                roots.push(x);
                if roots.len() + 1 == coeffs.len() {
                    break;
                }
            }
        }
        Ok(roots)
    }
    fn random_elem<R: RngCore + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.next_u64() % self.p
    }
    fn elem_to_string(&self, a: &u64) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn to_rational_parts(&self, a: &u64) -> (BigInt, BigInt) {
        (BigInt::from(*a), BigInt::one())
    }
    fn from_rational_parts(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let n = self.reduce_big(num);
        let d = self.reduce_big(den);
        self.div(&n, &d)
    }
}

/// The field of rational numbers, backed by arbitrary-precision fractions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Hash)]
pub struct Rationals;

impl Display for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q")
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn nth_element(&self, k: u64) -> BigRational {
        let m = k.div_ceil(2) as i64;
        if k % 2 == 1 {
            self.from_i64(m)
        } else {
            self.from_i64(-m)
        }
    }
    fn sqrt(&self, a: &BigRational) -> Result<BigRational> {
        let not_square = || AlgebraError::NotASquare {
            value: self.elem_to_string(a),
            field: "Q".to_string(),
        };
        if a.is_negative() {
            return Err(not_square());
        }
        let n = a.numer().sqrt();
        let d = a.denom().sqrt();
        if &(&n * &n) == a.numer() && &(&d * &d) == a.denom() {
            Ok(BigRational::new(n, d))
        } else {
            Err(not_square())
        }
    }
    fn univariate_roots(&self, coeffs: &[BigRational]) -> Result<Vec<BigRational>> {
        rational_roots(coeffs)
    }
    fn random_elem<R: RngCore + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64((rng.next_u64() % 201) as i64 - 100)
    }
    fn elem_to_string(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn to_rational_parts(&self, a: &BigRational) -> (BigInt, BigInt) {
        (a.numer().clone(), a.denom().clone())
    }
    fn from_rational_parts(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
}

/// Deterministic primality test by trial division; inputs are at most `MAX_PRIME`-sized.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `p >= from` with `p ≡ 1 (mod 4)`.
pub fn next_prime_one_mod_four(from: u64) -> u64 {
    let mut p = from.max(5);
    loop {
        if p % 4 == 1 && is_prime(p) {
            return p;
        }
        p += 1;
    }
}

const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;

fn positive_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|v| *v <= RATIONAL_ROOT_LIMIT)
        .ok_or_else(|| {
            AlgebraError::InvalidInput(format!(
                "coefficient {n} too large for rational root search"
            ))
        })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Rational roots by the rational root theorem, deflating after every hit.
fn rational_roots(coeffs: &[BigRational]) -> Result<Vec<BigRational>> {
    let q = Rationals;
    let mut poly = univariate::trimmed(&q, coeffs);
    if poly.is_empty() {
        return Err(AlgebraError::InvalidInput(
            "roots of the zero polynomial".to_string(),
        ));
    }
    let mut roots = Vec::new();
    if poly[0].is_zero() {
        roots.push(BigRational::zero());
        while poly.len() > 1 && poly[0].is_zero() {
            poly.remove(0);
        }
    }
    loop {
        if poly.len() <= 1 {
            break;
        }
        // integer coefficients
        let lcm = poly
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = poly
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = ints.last().expect("nonempty").clone();
        let constant = ints[0].clone();
        let mut found = None;
        'search: for num in positive_divisors(&constant)? {
            for den in positive_divisors(&lead)? {
                for sign in [Sign::Plus, Sign::Minus] {
                    let cand = BigRational::new(BigInt::from_biguint(sign, num.into()), den.into());
                    if univariate::eval(&q, &poly, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(root) => {
                let linear = [-root.clone(), BigRational::one()];
                let (quot, _) = univariate::div_rem(&q, &poly, &linear)?;
                poly = quot;
                if !roots.contains(&root) {
                    roots.push(root);
                }
            }
            None => break,
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_two_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.sqrt(&2).unwrap(), 3);
        assert_eq!(f.sqrt(&0).unwrap(), 0);
    }

    #[test]
    fn three_is_not_a_square_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        // brute force over F_7
        assert!((0..7u64).all(|x| x * x % 7 != 3));
        assert!(matches!(f.sqrt(&3), Err(AlgebraError::NotASquare { .. })));
    }

    #[test]
    fn sqrt_minus_one_mod_thirteen_picks_small_representative() {
        let f = PrimeField::new(13).unwrap();
        let r = f.sqrt(&f.from_i64(-1)).unwrap();
        assert_eq!(r, 5);
    }

    #[test]
    fn sqrt_agrees_with_brute_force() {
        for p in [3u64, 5, 7, 11, 13, 17, 10009] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p.min(300) {
                let brute = (0..=(p - 1) / 2).find(|x| x * x % p == a);
                assert_eq!(f.sqrt_residue(a), brute, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn rejects_even_and_composite_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(10007).is_ok());
    }

    #[test]
    fn default_prime_candidate() {
        assert_eq!(next_prime_one_mod_four(10000), 10009);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(f.inv(&0), Err(AlgebraError::DivisionByZero));
        assert_eq!(Rationals.inv(&Rationals.zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn rational_square_roots() {
        let q = Rationals;
        let a = q.parse_elem("9/4").unwrap();
        assert_eq!(q.sqrt(&a).unwrap(), q.parse_elem("3/2").unwrap());
        assert!(q.sqrt(&q.from_i64(2)).is_err());
        assert!(q.sqrt(&q.from_i64(-1)).is_err());
    }

    #[test]
    fn rational_roots_of_cubic() {
        let q = Rationals;
        // (x - 1/2)(x + 3)(x - 2) = x^3 + x^2/2 - 13x/2 + 3
        let coeffs = [
            q.from_i64(3),
            q.parse_elem("-13/2").unwrap(),
            q.parse_elem("1/2").unwrap(),
            q.one(),
        ];
        let mut roots = q.univariate_roots(&coeffs).unwrap();
        roots.sort();
        assert_eq!(
            roots,
            [q.from_i64(-3), q.parse_elem("1/2").unwrap(), q.from_i64(2)]
        );
    }
}
