//! Ulrich candidates: the root-targeting pipelines, their verification checks and
//! the JSON document that carries a candidate between runs.

use std::collections::BTreeMap;

use anyhow::{bail, ensure, Context};
use serde_json::{json, Value};
use ulrich_core::knorrer::{build_candidate, diagonal_lambda, jacobian_check, UlrichCandidate};
use ulrich_core::ulrich::{
    artinian_hilbert_check, ulrich_for_roots_even_ambient, ulrich_for_roots_odd_ambient, verify_candidate,
    HilbertReport, RootTargets,
};
use ulrich_core::Field;

use crate::codec::{candidate_from_json, candidate_to_json, elems_from_json, elems_to_json, field_of};
use crate::config::{FieldSpec, RunConfig};
use crate::transcript::Transcript;
use crate::with_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    /// `2n+1` roots, `X ⊂ P^{2n}`.
    Odd,
    /// `2n` roots, `X ⊂ P^{2n-1}`, via a fresh root and a hyperplane section.
    Even,
}

impl Pipeline {
    pub fn as_str(self) -> &'static str {
        match self {
            Pipeline::Odd => "odd",
            Pipeline::Even => "even",
        }
    }
}

/// Builds a candidate whose pencil has the given discriminant roots.
pub fn candidate_for_roots<F: Field>(field: &F, roots: &[F::Elem]) -> anyhow::Result<(Pipeline, UlrichCandidate<F>)> {
    if roots.len() % 2 == 1 {
        let values: Vec<F::Elem> = roots.iter().map(|r| field.neg(r)).collect();
        let targets = RootTargets::split(field, &values)?;
        Ok((Pipeline::Odd, ulrich_for_roots_odd_ambient(field, &targets)?.candidate))
    } else {
        Ok((Pipeline::Even, ulrich_for_roots_even_ambient(field, roots)?.candidate))
    }
}

fn hilbert_detail(h: &HilbertReport) -> Value {
    json!({
        "ring_dims": h.ring_dims,
        "artinian_dims": h.artinian_dims,
        "section_dims": h.section_dims,
        "retries": h.retries,
    })
}

/// Matrix identities, discriminant roots, smoothness and the Hilbert check.
pub fn candidate_checks<F: Field>(
    t: &mut Transcript,
    cand: &UlrichCandidate<F>,
    expected_roots: Option<&[F::Elem]>,
    trials: usize,
    seed: u64,
) -> anyhow::Result<bool> {
    let field = cand.ring.field();
    let record = verify_candidate(cand, expected_roots, trials, seed)?;
    let (r, c) = record.shape;
    t.check(
        "ulrich-complex",
        format!("{r}x{c}"),
        record.complex.passed() && c == 2 * r,
        json!({
            "a_b_vanishes": record.complex.composition_vanishes,
            "a_c1_is_q1": record.complex.first_certificate,
            "a_c2_is_q2": record.complex.second_certificate,
            "linear": record.complex.linear,
            "module_rank": cand.module_rank(),
        }),
    );
    if let Some(expected) = expected_roots {
        t.check(
            "discriminant",
            "roots match targets",
            record.roots_match == Some(true),
            json!({
                "expected": elems_to_json(field, expected),
                "found": elems_to_json(field, &record.discriminant_roots),
            }),
        );
    }
    t.check(
        "smoothness",
        "squarefree discriminant",
        record.smooth,
        json!({"diagnosis": record.smoothness_diagnosis}),
    );
    t.check(
        "hilbert",
        format!("trials={trials}"),
        record.hilbert.passed(),
        hilbert_detail(&record.hilbert),
    );
    Ok(record.passed())
}

/// Runs the pipeline for `roots`, which must number `2n+1` or `2n`.
pub fn pipeline_checks<F: Field>(
    t: &mut Transcript,
    field: &F,
    n: usize,
    roots: &[F::Elem],
    trials: usize,
    seed: u64,
) -> anyhow::Result<UlrichCandidate<F>> {
    ensure!(
        roots.len() / 2 == n && n >= 2,
        "n = {n} needs 2n+1 or 2n roots with n >= 2, got {} roots",
        roots.len()
    );
    let (pipeline, cand) = candidate_for_roots(field, roots)?;
    t.param("pipeline", pipeline.as_str());
    t.param("roots", elems_to_json(field, roots));
    candidate_checks(t, &cand, Some(roots), trials, seed)?;
    Ok(cand)
}

/// The diagonal candidate `Λ = diag(d)` before any restriction.
pub fn construct_checks<F: Field>(
    t: &mut Transcript,
    field: &F,
    n: usize,
    d: &[F::Elem],
    trials: usize,
    seed: u64,
) -> anyhow::Result<UlrichCandidate<F>> {
    ensure!(d.len() == n + 1, "n = {n} needs {} values of d, got {}", n + 1, d.len());
    let cand = build_candidate(field, n, &diagonal_lambda(field, d))?;
    let complex = cand.check_complex()?;
    t.check(
        "ulrich-complex",
        format!("{}x{}", cand.a.rows(), cand.a.cols()),
        complex.passed(),
        json!({
            "a_b_vanishes": complex.composition_vanishes,
            "a_c1_is_q1": complex.first_certificate,
            "a_c2_is_q2": complex.second_certificate,
            "linear": complex.linear,
        }),
    );
    let jac = jacobian_check(field, d, 20, seed)?;
    t.check(
        "smoothness",
        "jacobian at sampled points",
        jac.passed(),
        json!({"distinct_squares": jac.distinct_squares, "samples": jac.samples, "smooth_samples": jac.smooth_samples}),
    );
    let hilbert = artinian_hilbert_check(&cand, trials, seed)?;
    t.check("hilbert", format!("trials={trials}"), hilbert.passed(), hilbert_detail(&hilbert));
    Ok(cand)
}

/// A self-contained candidate file: matrices, quadrics, the run settings and the
/// transcript of its verification.
pub fn candidate_document<F: Field>(
    t: &Transcript,
    cand: &UlrichCandidate<F>,
    expected_roots: Option<&[F::Elem]>,
    trials: usize,
) -> Value {
    let field = cand.ring.field();
    json!({
        "field": t.field,
        "seed": t.seed,
        "trials": trials,
        "subject": t.subject,
        "params": t.params,
        "expected_roots": expected_roots.map(|r| elems_to_json(field, r)),
        "candidate": candidate_to_json(cand),
        "transcript": t.to_json(),
    })
}

/// Result of re-verifying a candidate document.
pub struct DocumentVerification {
    pub transcript: Transcript,
    /// Whether the recomputed transcript equals the embedded one, when present.
    pub matches_embedded: Option<bool>,
}

pub fn verify_document(doc: &Value, verbosity: u8) -> anyhow::Result<DocumentVerification> {
    let field: FieldSpec = field_of(doc, "field")?
        .as_str()
        .context("\"field\" must be a string")?
        .parse()?;
    let seed = field_of(doc, "seed")?.as_u64().context("\"seed\" must be an integer")?;
    let trials = field_of(doc, "trials")?.as_u64().context("\"trials\" must be an integer")? as usize;
    let subject = field_of(doc, "subject")?.as_str().context("\"subject\" must be a string")?;
    let params: BTreeMap<String, Value> = match doc.get("params") {
        Some(Value::Object(m)) => m.clone().into_iter().collect(),
        None | Some(Value::Null) => BTreeMap::new(),
        Some(_) => bail!("\"params\" must be an object"),
    };
    let cfg = RunConfig {
        field,
        seed,
        verbosity,
        ..RunConfig::default()
    };
    let mut t = Transcript::new(subject, &cfg);
    t.params = params;
    with_field!(field, |f| {
        let cand = candidate_from_json(&f, field_of(doc, "candidate")?)?;
        let expected = match doc.get("expected_roots") {
            None | Some(Value::Null) => None,
            Some(v) => Some(elems_from_json(&f, v)?),
        };
        candidate_checks(&mut t, &cand, expected.as_deref(), trials, seed)?;
    });
    let matches_embedded = doc.get("transcript").map(|v| *v == t.to_json());
    Ok(DocumentVerification {
        transcript: t,
        matches_embedded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ulrich_core::PrimeField;

    #[test]
    fn document_round_trip_reproduces_transcript() {
        let field = PrimeField::new(10009).unwrap();
        let cfg = RunConfig {
            seed: 7,
            ..RunConfig::default()
        };
        let roots: Vec<u64> = [1, 4, 9, 2, 3].iter().map(|r| field.neg(r)).collect();
        let mut t = Transcript::new("ulrich for-roots", &cfg);
        t.param("n", 2);
        let cand = pipeline_checks(&mut t, &field, 2, &roots, 3, 7).unwrap();
        assert!(t.passed(), "{}", t.render_text());
        let doc = candidate_document(&t, &cand, Some(&roots), 3);
        let text = serde_json::to_string(&doc).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        let v = verify_document(&back, 0).unwrap();
        assert_eq!(v.matches_embedded, Some(true));
        assert_eq!(v.transcript.render_text(), t.render_text());
    }

    #[test]
    fn wrong_root_count_is_rejected() {
        let field = PrimeField::new(10009).unwrap();
        let mut t = Transcript::new("x", &RunConfig::default());
        assert!(pipeline_checks(&mut t, &field, 3, &[1, 2, 3, 4, 5], 1, 0).is_err());
    }
}
