//! Sparse multivariate polynomials over a [`Field`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::field::Field;

/// Exponent vector, one entry per ring variable.
pub type Monomial = Vec<u16>;

/// A polynomial ring `k[v_0, ..., v_{m-1}]` with named variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S]) -> Arc<Self> {
        Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
        })
    }

    /// `k[s, t]`, the coordinate ring of the parameter line.
    pub fn binary(field: F) -> Arc<Self> {
        Self::new(field, &["s", "t"])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// All monomials of total degree `d`, in decreasing lex order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u16; self.nvars()];
        fill_monomials(&mut out, &mut current, 0, d);
        out
    }
}

fn fill_monomials(out: &mut Vec<Monomial>, current: &mut Monomial, pos: usize, left: u32) {
    let m = current.len();
    if m == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos == m - 1 {
        current[pos] = left as u16;
        out.push(current.clone());
        current[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        current[pos] = e as u16;
        fill_monomials(out, current, pos + 1, left - e);
    }
    current[pos] = 0;
}

/// Number of monomials of degree `d` in `m` variables.
pub fn monomial_count(m: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    if m == 0 {
        return usize::from(d == 0);
    }
    binomial(d as u64 + m as u64 - 1, m as u64 - 1) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

fn same_ring<F: Field>(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, vec![0; ring.nvars()], c)
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn from_i64(ring: &Arc<PolyRing<F>>, n: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(n))
    }

    pub fn var(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index {i} out of range");
        let mut exp = vec![0; ring.nvars()];
        exp[i] = 1;
        Self::monomial(ring, exp, ring.field.one())
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, exp: Monomial, c: F::Elem) -> Self {
        assert_eq!(exp.len(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !ring.field.is_zero(&c) {
            terms.insert(exp, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from possibly repeated terms; zero sums are dropped.
    pub fn from_terms<I>(ring: &Arc<PolyRing<F>>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut p = Self::zero(ring);
        for (exp, c) in terms {
            if exp.len() != ring.nvars() {
                return Err(AlgebraError::InvalidInput(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    exp.len(),
                    ring.nvars()
                )));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u16]) -> F::Elem {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Constant term, or `None` when the polynomial has a nonconstant term.
    pub fn as_constant(&self) -> Option<F::Elem> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 => {
                let (exp, c) = self.terms.iter().next()?;
                exp.iter().all(|e| *e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| monomial_degree(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| monomial_degree(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        if !self.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous(self.to_string()));
        }
        Ok(self.degree())
    }

    /// Leading term in lex order (first variable largest).
    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, exp: Monomial, c: F::Elem) {
        let field = &self.ring.field;
        if field.is_zero(&c) {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), &c);
                if field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(format!(
                "{}[{}] vs {}[{}]",
                self.ring.field,
                self.ring.vars.join(","),
                other.ring.field,
                other.ring.vars.join(",")
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        let field = &self.ring.field;
        for (e, c) in &other.terms {
            out.add_term(e.clone(), field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        out.add_mul_assign(self, other);
        Ok(out)
    }

    /// `self += a * b` without allocating the intermediate product.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        assert!(
            same_ring(&self.ring, &a.ring) && same_ring(&a.ring, &b.ring),
            "polynomials from different rings"
        );
        let field = self.ring.field.clone();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exp: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(exp, field.mul(ca, cb));
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), field.mul(v, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.ring.nvars() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        let field = &self.ring.field;
        let mut acc = field.zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, e) in point.iter().zip(exp) {
                if *e > 0 {
                    term = field.mul(&term, &field.pow(x, *e as u64));
                }
            }
            acc = field.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(AlgebraError::RingMismatch(
                "substitution images live in different rings".to_string(),
            ));
        }
        let mut powers: Vec<Vec<Poly<F>>> = images
            .iter()
            .map(|p| vec![Poly::one(&target), p.clone()])
            .collect();
        let mut out = Poly::zero(&target);
        for (exp, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, e) in exp.iter().enumerate() {
                let e = *e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in a ring with the same field and variable count.
    pub fn in_ring(&self, ring: &Arc<PolyRing<F>>) -> Result<Poly<F>> {
        if ring.nvars() != self.ring.nvars() || ring.field != self.ring.field {
            return Err(AlgebraError::RingMismatch(
                "target ring has a different shape".to_string(),
            ));
        }
        Ok(Poly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    pub fn derivative(&self, var: usize) -> Poly<F> {
        let field = &self.ring.field;
        let mut out = Poly::zero(&self.ring);
        for (exp, c) in &self.terms {
            let e = exp[var];
            if e == 0 {
                continue;
            }
            let mut exp = exp.clone();
            exp[var] -= 1;
            out.add_term(exp, field.mul(c, &field.from_i64(e as i64)));
        }
        out
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly<F>) -> Result<Poly<F>> {
        self.check_ring(d)?;
        let field = &self.ring.field;
        let (lead_exp, lead_c) = d.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = field.inv(lead_c)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while let Some((exp, c)) = rem.leading_term() {
            if exp.iter().zip(lead_exp).any(|(a, b)| a < b) {
                return Err(AlgebraError::VerificationFailed(format!(
                    "{d} does not divide {self}"
                )));
            }
            let q_exp: Monomial = exp.iter().zip(lead_exp).map(|(a, b)| a - b).collect();
            let q = Poly::monomial(&self.ring, q_exp, field.mul(c, &lead_inv));
            rem = &rem - &(&q * d);
            quot = &quot + &q;
        }
        Ok(quot)
    }

    /// Coefficients `[c_0, ..., c_d]` of a binary form `Σ c_k s^k t^(d-k)` of degree `d`.
    pub fn binary_coeffs(&self, d: u32) -> Result<Vec<F::Elem>> {
        if self.ring.nvars() != 2 {
            return Err(AlgebraError::InvalidInput(
                "binary form expected in two variables".to_string(),
            ));
        }
        let field = &self.ring.field;
        let mut out = vec![field.zero(); d as usize + 1];
        for (exp, c) in &self.terms {
            if (exp[0] + exp[1]) as u32 != d {
                return Err(AlgebraError::NotHomogeneous(format!(
                    "{self} is not a form of degree {d}"
                )));
            }
            out[exp[0] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Inverse of [`Poly::binary_coeffs`].
    pub fn from_binary_coeffs(ring: &Arc<PolyRing<F>>, coeffs: &[F::Elem]) -> Poly<F> {
        let d = coeffs.len().saturating_sub(1) as u16;
        let mut p = Poly::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u16, d - k as u16], c.clone());
        }
        p
    }
}

pub fn monomial_degree(exp: &[u16]) -> u32 {
    exp.iter().map(|e| *e as u32).sum()
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = &self.ring.field;
        for (k, (exp, c)) in self.terms.iter().rev().enumerate() {
            let mut coeff = field.elem_to_string(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if coeff != "1" || exp.iter().all(|e| *e == 0) {
                factors.push(coeff);
            }
            for (v, e) in self.ring.vars.iter().zip(exp) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let field = &self.ring.field;
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), field.neg(c)))
                .collect(),
        }
    }
}

/// Parses expressions such as `3*s^2*t - t^3 + 1/2*x0*y1`.
pub fn parse_poly<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Poly<F>> {
    let field = ring.field();
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(AlgebraError::InvalidInput("empty polynomial".to_string()));
    }
    let mut out = Poly::zero(ring);
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in cleaned.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
            chunks.push((negative, core::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    chunks.push((negative, current));
    for (neg, chunk) in chunks {
        if chunk.is_empty() {
            return Err(AlgebraError::InvalidInput(format!("malformed polynomial {text:?}")));
        }
        let mut coeff = field.one();
        let mut exp = vec![0u16; ring.nvars()];
        for factor in chunk.split('*') {
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => (
                    b,
                    p.parse::<u16>().map_err(|_| {
                        AlgebraError::InvalidInput(format!("bad exponent in {factor:?}"))
                    })?,
                ),
                None => (factor, 1),
            };
            if let Some(i) = ring.var_index(base) {
                exp[i] += power;
            } else {
                let c = field.parse_elem(base).map_err(|_| {
                    AlgebraError::InvalidInput(format!("unknown variable or number {base:?}"))
                })?;
                coeff = field.mul(&coeff, &field.pow(&c, power as u64));
            }
        }
        if neg {
            coeff = field.neg(&coeff);
        }
        out.add_term(exp, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn st(p: u64) -> Arc<PolyRing<PrimeField>> {
        PolyRing::binary(PrimeField::new(p).unwrap())
    }

    #[test]
    fn difference_of_squares() {
        let r = st(101);
        let s = Poly::var(&r, 0);
        let t = Poly::var(&r, 1);
        let lhs = &(&s + &t) * &(&s - &t);
        assert_eq!(lhs, parse_poly(&r, "s^2 - t^2").unwrap());
        assert!((&lhs * &Poly::zero(&r)).is_zero());
    }

    #[test]
    fn product_over_f7_matches_convolution() {
        let r = st(7);
        let a = parse_poly(&r, "s + 2*t").unwrap();
        let b = parse_poly(&r, "s + 3*t").unwrap();
        // coefficient convolution of (1,2) and (1,3) in s-major order
        let conv = [1 % 7, (3 + 2) % 7, (2 * 3) % 7];
        let expected = Poly::from_binary_coeffs(&r, &[conv[2], conv[1], conv[0]]);
        assert_eq!(&a * &b, expected);
        assert_eq!(&a * &b, parse_poly(&r, "s^2 + 5*s*t + 6*t^2").unwrap());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Poly::var(&st(7), 0);
        let other = PolyRing::new(PrimeField::new(7).unwrap(), &["x", "y"]);
        let b = Poly::var(&other, 0);
        assert!(matches!(a.try_add(&b), Err(AlgebraError::RingMismatch(_))));
        let c = Poly::var(&st(11), 0);
        assert!(a.try_mul(&c).is_err());
    }

    #[test]
    fn exact_division_and_failure() {
        let r = PolyRing::new(Rationals, &["x", "y", "z"]);
        let a = parse_poly(&r, "x^2 - y*z + 1/2*x").unwrap();
        let b = parse_poly(&r, "3*y + z^2 - x").unwrap();
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(a.exact_div(&b).is_err());
    }

    #[test]
    fn substitution_changes_rings() {
        let f = PrimeField::new(13).unwrap();
        let xy = PolyRing::new(f, &["x", "y"]);
        let st = PolyRing::binary(f);
        let p = parse_poly(&xy, "x^2 - 3*x*y").unwrap();
        let images = [parse_poly(&st, "s + t").unwrap(), parse_poly(&st, "t").unwrap()];
        let q = p.substitute(&images).unwrap();
        assert_eq!(q, parse_poly(&st, "s^2 - s*t - 2*t^2").unwrap());
    }

    #[test]
    fn display_round_trips_through_parser() {
        let r = PolyRing::new(Rationals, &["x0", "y0"]);
        let p = parse_poly(&r, "-2/3*x0^2*y0 + y0 - 5").unwrap();
        assert_eq!(parse_poly(&r, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn monomial_enumeration_counts() {
        let r = PolyRing::new(Rationals, &["a", "b", "c", "d"]);
        for d in 0..5 {
            assert_eq!(r.monomials_of_degree(d).len(), monomial_count(4, d as i64));
        }
        assert_eq!(monomial_count(3, 2), 6);
        assert_eq!(binomial(10, 3), 120);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(r: Arc<PolyRing<PrimeField>>) -> impl Strategy<Value = Poly<PrimeField>> {
            prop::collection::vec((0u16..3, 0u16..3, 0u16..3, 0u64..31), 0..6).prop_map(
                move |terms| {
                    Poly::from_terms(&r, terms.into_iter().map(|(a, b, c, k)| (vec![a, b, c], k)))
                        .unwrap()
                },
            )
        }

        fn ring() -> Arc<PolyRing<PrimeField>> {
            PolyRing::new(PrimeField::new(31).unwrap(), &["x", "y", "z"])
        }

        proptest! {
            #[test]
            fn ring_axioms(a in arb_poly(ring()), b in arb_poly(ring()), c in arb_poly(ring())) {
                let r = ring();
                let (a, b, c) = (a.in_ring(&r).unwrap(), b.in_ring(&r).unwrap(), c.in_ring(&r).unwrap());
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn evaluation_is_a_homomorphism(a in arb_poly(ring()), b in arb_poly(ring()), pt in prop::array::uniform3(0u64..31)) {
                let f = PrimeField::new(31).unwrap();
                let r = ring();
                let (a, b) = (a.in_ring(&r).unwrap(), b.in_ring(&r).unwrap());
                let lhs = (&a * &b).eval(&pt).unwrap();
                prop_assert_eq!(lhs, f.mul(&a.eval(&pt).unwrap(), &b.eval(&pt).unwrap()));
            }
        }
    }
}
