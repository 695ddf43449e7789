//! Verification suites. Each one appends checks to a [`Transcript`].

use anyhow::{bail, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use ulrich_core::binary::linear_root;
use ulrich_core::betti::{
    betti_number, chi_and_parity, fu_cohomology_table, fu_degrees, riemann_roch, tate_shape_pu,
};
use ulrich_core::clifford::{
    bgg_complex, central_element_y, clifford_module, clifford_multiply, clifford_piece_dim,
    even_decomposition_check, CliffordElement,
};
use ulrich_core::knorrer::{knorrer_pair, mixed_identity_check};
use ulrich_core::mf::{is_isomorphic_line_bundle, line_bundle_mf, verify_group_law, LineBundleIndex};
use ulrich_core::pencil::HyperellipticData;
use ulrich_core::poly::binomial;
use ulrich_core::{Field, Poly};

use crate::codec::elems_to_json;
use crate::config::RunConfig;
use crate::transcript::Transcript;
use crate::with_field;

/// The `g = 3` Tate-resolution table of `P_U`.
pub const BETTI_G3_GOLDEN: &str = "... 28 20 12  5  1\n           1  5 12 20 28 36 ...\n";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    Grouplaw,
    Clifford,
    Betti,
    Knorrer,
    UlrichE2e,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Grouplaw => "grouplaw",
            SuiteName::Clifford => "clifford",
            SuiteName::Betti => "betti",
            SuiteName::Knorrer => "knorrer",
            SuiteName::UlrichE2e => "ulrich-e2e",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub g: u32,
    pub n: usize,
    /// Branch points for curve suites, discriminant roots for `ulrich-e2e`.
    pub roots: Option<Vec<String>>,
    /// Random pairs for the group law, random triples for associativity.
    pub samples: usize,
    pub trials: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            g: 1,
            n: 2,
            roots: None,
            samples: 50,
            trials: 3,
        }
    }
}

pub fn run_suite(cfg: &RunConfig, name: SuiteName, params: &SuiteParams) -> anyhow::Result<Transcript> {
    let mut t = Transcript::new(format!("suite {}", name.as_str()), cfg);
    match name {
        SuiteName::Betti => {
            t.param("g", params.g);
            betti_checks(&mut t, params.g);
        }
        _ => with_field!(cfg.field, |field| {
            match name {
                SuiteName::Grouplaw => {
                    let h = curve(&field, params.g, params.roots.as_deref())?;
                    t.param("g", h.genus());
                    t.param("roots", branch_points_json(&h)?);
                    group_law_checks(&mut t, &h, params.samples, cfg.seed, cfg.degree_cap)?;
                    if h.genus() <= 2 {
                        two_torsion_checks(&mut t, &h)?;
                    }
                }
                SuiteName::Clifford => {
                    let h = curve(&field, params.g, params.roots.as_deref())?;
                    t.param("g", h.genus());
                    t.param("roots", branch_points_json(&h)?);
                    clifford_checks(&mut t, &h, params.samples.max(200), cfg.seed)?;
                    bgg_checks(&mut t, &h, 4)?;
                }
                SuiteName::Knorrer => {
                    t.param("n", params.n);
                    knorrer_checks(&mut t, &field, params.n, params.n.min(6))?;
                }
                SuiteName::UlrichE2e => {
                    let roots = match &params.roots {
                        Some(r) => parse_elems(&field, r)?,
                        None => random_distinct_roots(&field, 2 * params.n + 1, cfg.seed)?,
                    };
                    t.param("n", params.n);
                    t.param("trials", params.trials);
                    crate::candidate::pipeline_checks(&mut t, &field, params.n, &roots, params.trials, cfg.seed)?;
                }
                SuiteName::Betti => unreachable!(),
            }
        }),
    }
    Ok(t)
}

pub fn parse_elems<F: Field>(field: &F, items: &[String]) -> anyhow::Result<Vec<F::Elem>> {
    items
        .iter()
        .map(|s| field.parse_elem(s).with_context(|| format!("bad field element {s:?}")))
        .collect()
}

/// `count` distinct nonzero elements drawn from a seeded generator.
pub fn random_distinct_roots<F: Field>(field: &F, count: usize, seed: u64) -> anyhow::Result<Vec<F::Elem>> {
    if let Some(size) = field.size() {
        if size <= count as u64 + 1 {
            bail!("field {field} is too small for {count} distinct nonzero roots");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<F::Elem> = Vec::with_capacity(count);
    while roots.len() < count {
        let r = match field.size() {
            Some(_) => field.random_nonzero(&mut rng),
            None => field.from_i64(rng.gen_range(1..=1000) * if rng.gen::<bool>() { 1 } else { -1 }),
        };
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    Ok(roots)
}

/// The curve branched at the given points, or at `1, 2, ..., 2g+2`.
pub fn curve<F: Field>(field: &F, g: u32, roots: Option<&[String]>) -> anyhow::Result<HyperellipticData<F>> {
    let roots = match roots {
        Some(r) => parse_elems(field, r)?,
        None => (1..=2 * g as i64 + 2).map(|k| field.from_i64(k)).collect(),
    };
    Ok(HyperellipticData::from_roots(field, &roots)?)
}

fn branch_points_json<F: Field>(h: &HyperellipticData<F>) -> anyhow::Result<Value> {
    let roots = h
        .factors
        .iter()
        .map(linear_root)
        .collect::<ulrich_core::Result<Vec<_>>>()?;
    Ok(elems_to_json(h.field(), &roots))
}

/// Exhaustive over canonical pairs for genus 1, `samples` random pairs otherwise.
pub fn group_law_checks<F: Field>(
    t: &mut Transcript,
    h: &HyperellipticData<F>,
    samples: usize,
    seed: u64,
    cap: Option<i64>,
) -> anyhow::Result<()> {
    let points = h.factors.len() as u32;
    let canonical = LineBundleIndex::all_canonical(points);
    let pairs: Vec<(LineBundleIndex, LineBundleIndex)> = if h.genus() <= 1 {
        canonical
            .iter()
            .flat_map(|i| canonical.iter().map(move |j| (*i, *j)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let i = canonical[rng.gen_range(0..canonical.len())];
                let j = canonical[rng.gen_range(0..canonical.len())];
                (i, j)
            })
            .collect()
    };
    t.param("group_law_pairs", pairs.len());
    for (i, j) in pairs {
        let report = verify_group_law(h, &i, &j, cap)?;
        t.check(
            "group-law",
            format!("{i} x {j}"),
            report.passed(),
            json!({
                "expected": report.expected.to_string(),
                "twisted": report.twisted,
                "product_degrees": report.product_degrees,
            }),
        );
    }
    Ok(())
}

/// The canonical even and odd line bundles: `2^(2g)` of each, pairwise non-isomorphic.
pub fn two_torsion_checks<F: Field>(t: &mut Transcript, h: &HyperellipticData<F>) -> anyhow::Result<()> {
    let g = h.genus() as u32;
    let points = h.factors.len() as u32;
    let all = LineBundleIndex::all_canonical(points);
    for (label, parity) in [("even", 0), ("odd", 1)] {
        let family: Vec<LineBundleIndex> = all.iter().copied().filter(|i| i.len() % 2 == parity).collect();
        let bundles = family
            .iter()
            .map(|i| line_bundle_mf(h, i))
            .collect::<ulrich_core::Result<Vec<_>>>()?;
        let mut isomorphic_pairs = Vec::new();
        for a in 0..bundles.len() {
            for b in a + 1..bundles.len() {
                if is_isomorphic_line_bundle(&bundles[a], &bundles[b])?.is_some() {
                    isomorphic_pairs.push(format!("{} ~ {}", family[a], family[b]));
                }
            }
        }
        let expected = 1usize << (2 * g);
        t.check(
            "two-torsion",
            format!("{label} count={}", family.len()),
            family.len() == expected && isomorphic_pairs.is_empty(),
            json!({"expected": expected, "isomorphic_pairs": isomorphic_pairs}),
        );
    }
    Ok(())
}

fn random_element<F: Field>(h: &HyperellipticData<F>, rng: &mut ChaCha8Rng) -> CliffordElement<F> {
    let field = h.field();
    let words = 1u32 << h.factors.len();
    let s = Poly::var(&h.ring, 0);
    let tt = Poly::var(&h.ring, 1);
    (0..3).fold(CliffordElement::zero(&h.ring), |acc, k| {
        let c = Poly::constant(&h.ring, field.random_elem(rng));
        let coeff = match k {
            0 => c,
            1 => &c * &s,
            _ => &c * &tt,
        };
        acc.add(&CliffordElement::term(coeff, rng.gen_range(0..words)))
    })
}

/// Associativity on random triples, `y^2 = f`, the behaviour of `y` on every
/// basis word, and the even-subset decompositions.
pub fn clifford_checks<F: Field>(
    t: &mut Transcript,
    h: &HyperellipticData<F>,
    triples: usize,
    seed: u64,
) -> anyhow::Result<()> {
    associativity_check(t, h, triples, seed)?;
    center_checks(t, h)?;
    let points = h.factors.len() as u32;
    for subset in LineBundleIndex::all_canonical(points).into_iter().filter(|i| i.len() % 2 == 0) {
        decomposition_check(t, h, &subset)?;
    }
    Ok(())
}

pub fn associativity_check<F: Field>(
    t: &mut Transcript,
    h: &HyperellipticData<F>,
    triples: usize,
    seed: u64,
) -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for k in 0..triples {
        let (a, b, c) = (random_element(h, &mut rng), random_element(h, &mut rng), random_element(h, &mut rng));
        let left = clifford_multiply(h, &clifford_multiply(h, &a, &b)?, &c)?;
        let right = clifford_multiply(h, &a, &clifford_multiply(h, &b, &c)?)?;
        if left != right {
            bad.push(k);
        }
    }
    t.check(
        "associativity",
        format!("triples={triples}"),
        bad.is_empty(),
        json!({"failing_triples": bad}),
    );
    Ok(())
}

/// `y^2 = f`, and `y` commutes with even words and anticommutes with odd ones.
pub fn center_checks<F: Field>(t: &mut Transcript, h: &HyperellipticData<F>) -> anyhow::Result<CliffordElement<F>> {
    let y = central_element_y(h)?;
    let y2 = clifford_multiply(h, &y, &y)?;
    t.check(
        "y-squared",
        "y*y = f",
        y2 == CliffordElement::scalar(h.f()),
        json!({"terms": y.terms().len()}),
    );

    let words = 1u32 << h.factors.len();
    let mut failures = Vec::new();
    for w in 0..words {
        let e = CliffordElement::word(&h.ring, w);
        let yw = clifford_multiply(h, &y, &e)?;
        let wy = clifford_multiply(h, &e, &y)?;
        let ok = if w.count_ones() % 2 == 0 {
            yw == wy
        } else {
            yw == wy.neg()
        };
        if !ok {
            failures.push(w);
        }
    }
    t.check(
        "center",
        format!("words={words}"),
        failures.is_empty(),
        json!({"failing_words": failures}),
    );
    Ok(y)
}

pub fn decomposition_check<F: Field>(
    t: &mut Transcript,
    h: &HyperellipticData<F>,
    subset: &LineBundleIndex,
) -> anyhow::Result<()> {
    let d = even_decomposition_check(h, subset)?;
    t.check(
        "even-decomposition",
        subset.to_string(),
        d.passed(),
        json!({"antidiagonal": d.antidiagonal, "units_multiply_to_one": d.units_multiply_to_one}),
    );
    Ok(())
}

/// The square of the differential of `Hom(C, P)` on the window `0..=top`.
pub fn bgg_checks<F: Field>(t: &mut Transcript, h: &HyperellipticData<F>, top: usize) -> anyhow::Result<()> {
    let g = h.genus() as u32;
    let module = clifford_module(h, top)?;
    let expected: Vec<u64> = (0..=top as u32).map(|i| clifford_piece_dim(g, i)).collect();
    match bgg_complex(&module, 0..=top) {
        Ok(complex) => {
            let ranks: Vec<u64> = complex.ranks.iter().map(|r| *r as u64).collect();
            t.check(
                "bgg-square",
                format!("window=0..{top}"),
                complex.certified_pairs + 1 == top && ranks == expected,
                json!({"ranks": ranks, "expected_ranks": expected, "certified_pairs": complex.certified_pairs}),
            );
        }
        Err(ulrich_core::AlgebraError::VerificationFailed(msg)) => {
            t.check("bgg-square", format!("window=0..{top}"), false, json!({"error": msg}));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// `a_j` counted as `Σ_{a+2b=j} C(g+2, a) (b+1)`, independently of the closed formula.
pub fn betti_by_enumeration(g: u32, j: u32) -> u64 {
    let n = g as u64 + 2;
    let mut total = 0;
    for b in 0..=j / 2 {
        let a = j - 2 * b;
        total += binomial(n, a as u64) * (b as u64 + 1);
    }
    total
}

pub fn betti_checks(t: &mut Transcript, g: u32) {
    let table = tate_shape_pu(g);
    let text = table.to_two_row().render();
    t.output("betti", text.clone(), json!({"overlap": table.overlap, "linear": table.linear}));

    if g == 3 {
        let upper: Vec<Option<u64>> = (-1..=3).map(|j| table.quadratic(j)).collect();
        t.check(
            "betti-golden",
            "g=3",
            text == BETTI_G3_GOLDEN
                && table.linear[..6] == [1, 5, 12, 20, 28, 36]
                && upper == [Some(28), Some(20), Some(12), Some(5), Some(1)]
                && table.overlap == 3,
            Value::Null,
        );
    }
    let mismatches: Vec<u32> = (0..table.linear.len() as u32)
        .filter(|&j| betti_number(g, j) != betti_by_enumeration(g, j))
        .collect();
    t.check(
        "betti-enumeration",
        format!("g={g}"),
        mismatches.is_empty(),
        json!({"mismatched_indices": mismatches}),
    );
    t.check("strand-duality", format!("g={g}"), table.strand_duality_holds(), Value::Null);

    let shape = fu_degrees(g);
    let rank_ok = shape.rank == 1 << g;
    let degree_ok = 2 * shape.degree == g as i64 * (1 << g);
    t.check(
        "fu-numerics",
        format!("g={g}"),
        rank_ok && degree_ok,
        json!({"rank": shape.rank, "degree": shape.degree}),
    );

    let cohomology = fu_cohomology_table(g, -4, 4);
    let euler_ok = (-4..=4).all(|j| {
        let chi = riemann_roch(shape.rank, shape.degree + j * shape.rank, g);
        cohomology.h0_at(j).unwrap() as i64 - cohomology.h1_at(j).unwrap() as i64 == chi
    });
    t.check(
        "cohomology-euler",
        format!("g={g} twists=-4..4"),
        euler_ok,
        json!({"h0": cohomology.h0, "h1": cohomology.h1}),
    );

    // The same numbers read as h^1(F_U(jp)) above h^0(F_U((j+1)p)).
    let as_cohomology = fu_cohomology_table(g, -3, g as i64 + 2).to_two_row().render();
    t.check(
        "cohomology-betti",
        format!("g={g} twists=-3..{}", g + 2),
        as_cohomology == text,
        Value::Null,
    );

    let mut rows = Vec::new();
    let mut parity_ok = true;
    for r in 1..=4u64 {
        let p = chi_and_parity(g, r, 0);
        let zero_somewhere = (-64..=64).any(|d| chi_and_parity(g, r, d).chi == 0);
        let ok = p.admissible == (r * g as u64 % 2 == 0)
            && zero_somewhere == p.admissible
            && p.vanishing_degree.map_or(true, |d| chi_and_parity(g, r, d).chi == 0);
        parity_ok &= ok;
        rows.push(json!({"r": r, "admissible": p.admissible, "d": p.vanishing_degree}));
    }
    t.check("chi-parity", format!("g={g}"), parity_ok, Value::Array(rows));
}

/// `φψ = ψφ = q·id` for `0..=n` and the mixed identity for `0..=mixed`.
pub fn knorrer_checks<F: Field>(t: &mut Transcript, field: &F, n: usize, mixed: usize) -> anyhow::Result<()> {
    for k in 0..=n {
        let (ok, detail) = match knorrer_pair(field, k) {
            Ok(pair) => (
                pair.phi.mul(&pair.psi)?.is_scalar_identity(&pair.q) && pair.psi.mul(&pair.phi)?.is_scalar_identity(&pair.q),
                json!({"size": pair.phi.rows()}),
            ),
            Err(ulrich_core::AlgebraError::VerificationFailed(msg)) => (false, json!({"error": msg})),
            Err(e) => return Err(e.into()),
        };
        t.check("knorrer-identity", format!("n={k}"), ok, detail);
    }
    for k in 0..=mixed {
        t.check("mixed-identity", format!("n={k}"), mixed_identity_check(field, k)?, Value::Null);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_agrees_with_small_values() {
        assert_eq!((0..6).map(|j| betti_by_enumeration(3, j)).collect::<Vec<_>>(), [1, 5, 12, 20, 28, 36]);
    }

    #[test]
    fn golden_matches_rendering() {
        assert_eq!(tate_shape_pu(3).to_two_row().render(), BETTI_G3_GOLDEN);
    }

    #[test]
    fn random_roots_are_distinct_and_seeded() {
        let f = ulrich_core::PrimeField::new(10009).unwrap();
        let a = random_distinct_roots(&f, 7, 3).unwrap();
        assert_eq!(a, random_distinct_roots(&f, 7, 3).unwrap());
        assert!(a.iter().all(|x| *x != 0));
        assert!(random_distinct_roots(&ulrich_core::PrimeField::new(5).unwrap(), 4, 0).is_err());
    }
}
