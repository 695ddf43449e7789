//! JSON encoding of field elements, polynomials, matrices, pencils and candidates.
//!
//! Objects are built from `serde_json::Value`, whose maps keep keys sorted, so
//! serializing the same object twice gives identical bytes.

use std::sync::Arc;

use anyhow::{anyhow, bail, ensure, Context};
use num_bigint::BigInt;
use serde_json::{json, Value};
use ulrich_core::binary::linear_root;
use ulrich_core::clifford::CliffordElement;
use ulrich_core::knorrer::UlrichCandidate;
use ulrich_core::mf::MatrixFactorization;
use ulrich_core::matrix::Matrix;
use ulrich_core::pencil::{HyperellipticData, QuadricPencil};
use ulrich_core::{Field, Poly, PolyMatrix, PolyRing};

fn bigint_to_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> anyhow::Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| anyhow!("expected an integer, got {n}")),
        Value::String(s) => s.trim().parse().with_context(|| format!("bad integer {s:?}")),
        other => bail!("expected an integer, got {other}"),
    }
}

/// An integer when the denominator is 1, otherwise the string `"n/d"`.
pub fn elem_to_json<F: Field>(field: &F, a: &F::Elem) -> Value {
    let (num, den) = field.to_rational_parts(a);
    if den == BigInt::from(1) {
        bigint_to_json(&num)
    } else {
        Value::String(format!("{num}/{den}"))
    }
}

pub fn elem_from_json<F: Field>(field: &F, v: &Value) -> anyhow::Result<F::Elem> {
    match v {
        Value::String(s) => Ok(field.parse_elem(s)?),
        _ => Ok(field.from_rational_parts(&bigint_from_json(v)?, &BigInt::from(1))?),
    }
}

pub fn elems_to_json<F: Field>(field: &F, xs: &[F::Elem]) -> Value {
    Value::Array(xs.iter().map(|x| elem_to_json(field, x)).collect())
}

pub fn elems_from_json<F: Field>(field: &F, v: &Value) -> anyhow::Result<Vec<F::Elem>> {
    as_array(v, "element list")?
        .iter()
        .map(|x| elem_from_json(field, x))
        .collect()
}

fn as_array<'a>(v: &'a Value, what: &str) -> anyhow::Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| anyhow!("{what} must be a JSON array"))
}

fn as_usize(v: &Value, what: &str) -> anyhow::Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| anyhow!("{what} must be a non-negative integer"))
}

pub fn field_of<'a>(doc: &'a Value, key: &str) -> anyhow::Result<&'a Value> {
    doc.get(key).ok_or_else(|| anyhow!("missing key {key:?}"))
}

/// `[[exponents...], numerator, denominator]` per term, in the polynomial's term order.
pub fn poly_to_json<F: Field>(p: &Poly<F>) -> Value {
    let field = p.field();
    Value::Array(
        p.terms()
            .map(|(exp, c)| {
                let (num, den) = field.to_rational_parts(c);
                json!([exp, bigint_to_json(&num), bigint_to_json(&den)])
            })
            .collect(),
    )
}

pub fn poly_from_json<F: Field>(ring: &Arc<PolyRing<F>>, v: &Value) -> anyhow::Result<Poly<F>> {
    let field = ring.field();
    let mut terms = Vec::new();
    for term in as_array(v, "polynomial")? {
        let parts = as_array(term, "polynomial term")?;
        ensure!(
            parts.len() == 2 || parts.len() == 3,
            "polynomial term must be [exponents, numerator, denominator]"
        );
        let exp = as_array(&parts[0], "exponent vector")?
            .iter()
            .map(|e| {
                e.as_u64()
                    .and_then(|e| u16::try_from(e).ok())
                    .ok_or_else(|| anyhow!("bad exponent {e}"))
            })
            .collect::<anyhow::Result<Vec<u16>>>()?;
        let num = bigint_from_json(&parts[1])?;
        let den = match parts.get(2) {
            Some(d) => bigint_from_json(d)?,
            None => BigInt::from(1),
        };
        terms.push((exp, field.from_rational_parts(&num, &den)?));
    }
    Ok(Poly::from_terms(ring, terms)?)
}

pub fn poly_matrix_to_json<F: Field>(m: &PolyMatrix<F>) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(poly_to_json).collect::<Vec<_>>(),
        "row_degrees": m.row_degrees(),
        "col_degrees": m.col_degrees(),
    })
}

pub fn poly_matrix_from_json<F: Field>(ring: &Arc<PolyRing<F>>, v: &Value) -> anyhow::Result<PolyMatrix<F>> {
    let rows = as_usize(field_of(v, "rows")?, "rows")?;
    let cols = as_usize(field_of(v, "cols")?, "cols")?;
    let entries = as_array(field_of(v, "entries")?, "entries")?
        .iter()
        .map(|p| poly_from_json(ring, p))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let m = PolyMatrix::from_entries(ring, rows, cols, entries)?;
    let degrees = |key: &str| -> anyhow::Result<Option<Vec<i64>>> {
        match v.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(d) => as_array(d, key)?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| anyhow!("{key} must hold integers")))
                .collect::<anyhow::Result<Vec<_>>>()
                .map(Some),
        }
    };
    match (degrees("row_degrees")?, degrees("col_degrees")?) {
        (Some(r), Some(c)) => Ok(m.with_degrees(r, c)?),
        (None, None) => Ok(m),
        _ => bail!("row_degrees and col_degrees must be given together"),
    }
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    let field = m.field();
    Value::Array((0..m.rows()).map(|i| elems_to_json(field, m.row(i))).collect())
}

pub fn matrix_from_json<F: Field>(field: &F, v: &Value) -> anyhow::Result<Matrix<F>> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|row| elems_from_json(field, row))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, rows)?)
}

pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// `{"vars": r, "q1": Poly, "q2": Poly}` with variables `x0 .. x{r-1}`.
pub fn pencil_to_json<F: Field>(q1: &Poly<F>, q2: &Poly<F>) -> Value {
    json!({
        "vars": q1.ring().nvars(),
        "q1": poly_to_json(q1),
        "q2": poly_to_json(q2),
    })
}

pub struct PencilInput<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub q1: Poly<F>,
    pub q2: Poly<F>,
    pub pencil: QuadricPencil<F>,
}

pub fn pencil_from_json<F: Field>(field: &F, v: &Value) -> anyhow::Result<PencilInput<F>> {
    let r = as_usize(field_of(v, "vars")?, "vars")?;
    ensure!(r > 0, "a pencil needs at least one variable");
    let ring = PolyRing::new(field.clone(), &var_names("x", r));
    let q1 = poly_from_json(&ring, field_of(v, "q1")?)?;
    let q2 = poly_from_json(&ring, field_of(v, "q2")?)?;
    let pencil = QuadricPencil::from_quadrics(&q1, &q2)?;
    Ok(PencilInput { ring, q1, q2, pencil })
}

/// Matrices and quadrics of a candidate, with the ring's variable names.
pub fn candidate_to_json<F: Field>(c: &UlrichCandidate<F>) -> Value {
    json!({
        "vars": c.ring.vars(),
        "q1": poly_to_json(&c.q1),
        "q2": poly_to_json(&c.q2),
        "a": poly_matrix_to_json(&c.a),
        "b": poly_matrix_to_json(&c.b),
        "c1": poly_matrix_to_json(&c.c1),
        "c2": poly_matrix_to_json(&c.c2),
    })
}

pub fn candidate_from_json<F: Field>(field: &F, v: &Value) -> anyhow::Result<UlrichCandidate<F>> {
    let vars = as_array(field_of(v, "vars")?, "vars")?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| anyhow!("variable names must be strings"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let ring = PolyRing::new(field.clone(), &vars);
    let matrix = |key: &str| poly_matrix_from_json(&ring, field_of(v, key)?).with_context(|| format!("in {key:?}"));
    Ok(UlrichCandidate {
        q1: poly_from_json(&ring, field_of(v, "q1")?)?,
        q2: poly_from_json(&ring, field_of(v, "q2")?)?,
        a: matrix("a")?,
        b: matrix("b")?,
        c1: matrix("c1")?,
        c2: matrix("c2")?,
        ring,
    })
}

/// A factorization on the curve branched at `roots`: generator degrees and `φ = ψ`.
pub fn mf_to_json<F: Field>(h: &HyperellipticData<F>, m: &MatrixFactorization<F>) -> anyhow::Result<Value> {
    let roots = h
        .factors
        .iter()
        .map(linear_root)
        .collect::<ulrich_core::Result<Vec<_>>>()?;
    Ok(json!({
        "roots": elems_to_json(h.field(), &roots),
        "degrees": m.degrees(),
        "phi": poly_matrix_to_json(&m.phi),
        "psi": poly_matrix_to_json(&m.psi),
    }))
}

/// Decodes and re-verifies a factorization written by [`mf_to_json`].
pub fn mf_from_json<F: Field>(field: &F, v: &Value) -> anyhow::Result<(HyperellipticData<F>, MatrixFactorization<F>)> {
    let roots = elems_from_json(field, field_of(v, "roots")?)?;
    let h = HyperellipticData::from_roots(field, &roots)?;
    let degrees = as_array(field_of(v, "degrees")?, "degrees")?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| anyhow!("degrees must be integers")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let phi = poly_matrix_from_json(&h.ring, field_of(v, "phi")?)?;
    let psi = poly_matrix_from_json(&h.ring, field_of(v, "psi")?)?;
    let m = MatrixFactorization::new(h.f(), degrees, phi, psi)?;
    Ok((h, m))
}

/// Terms keyed by the sorted 1-based index list of each basis word.
pub fn clifford_to_json<F: Field>(e: &CliffordElement<F>) -> Value {
    Value::Array(
        e.terms()
            .iter()
            .map(|(w, c)| {
                let word: Vec<u32> = (0..32).filter(|k| w >> k & 1 == 1).map(|k| k + 1).collect();
                json!({"word": word, "coeff": poly_to_json(c)})
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use ulrich_core::poly::parse_poly;
    use ulrich_core::{PrimeField, Rationals};

    #[test]
    fn poly_round_trip_over_q() {
        let ring = PolyRing::new(Rationals, &["s", "t"]);
        let p = parse_poly(&ring, "1/2*s^2 - 3*s*t + 7/5*t^2").unwrap();
        let v = poly_to_json(&p);
        assert_eq!(poly_from_json(&ring, &v).unwrap(), p);
        assert!(v.to_string().contains("[[2,0],1,2]"));
    }

    #[test]
    fn residues_are_encoded_in_canonical_range() {
        let f = PrimeField::new(13).unwrap();
        let x = f.from_i64(-1);
        assert_eq!(elem_to_json(&f, &x), json!(12));
        assert_eq!(elem_from_json(&f, &json!("-1")).unwrap(), x);
        assert_eq!(elem_from_json(&f, &json!(12)).unwrap(), x);
    }

    #[test]
    fn labelled_matrix_round_trip() {
        let f = PrimeField::new(101).unwrap();
        let ring = PolyRing::new(f, &["s", "t"]);
        let s = parse_poly(&ring, "s").unwrap();
        let t = parse_poly(&ring, "t").unwrap();
        let m = PolyMatrix::from_rows(&ring, vec![vec![s.clone(), t], vec![Poly::zero(&ring), s]])
            .unwrap()
            .with_degrees(vec![0, 0], vec![1, 1])
            .unwrap();
        let back = poly_matrix_from_json(&ring, &poly_matrix_to_json(&m)).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.col_degrees(), Some(&[1, 1][..]));
    }

    #[test]
    fn factorization_round_trip() {
        let f = PrimeField::new(10009).unwrap();
        let h = HyperellipticData::from_roots(&f, &[1, 2, 3, 4]).unwrap();
        let m = ulrich_core::mf::line_bundle_mf(&h, &ulrich_core::mf::LineBundleIndex::new(0b11, 4).unwrap()).unwrap();
        let (h2, m2) = mf_from_json(&f, &mf_to_json(&h, &m).unwrap()).unwrap();
        assert_eq!(h2.factors, h.factors);
        assert_eq!(m2.degrees(), m.degrees());
        assert_eq!(m2.phi, m.phi);
    }

    #[test]
    fn rejects_malformed_terms() {
        let ring = PolyRing::new(Rationals, &["s", "t"]);
        assert!(poly_from_json(&ring, &json!([[[1], 1, 1]])).is_err());
        assert!(poly_from_json(&ring, &json!([[[1, 0], 1, 0]])).is_err());
        assert!(poly_from_json(&ring, &json!({"a": 1})).is_err());
    }
}
