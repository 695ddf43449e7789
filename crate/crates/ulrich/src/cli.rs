//! Argument parsing and dispatch for the `ulrich` binary.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use ulrich_core::betti::{chi_and_parity, fu_cohomology_table, tate_shape_pu};
use ulrich_core::binary::{binary_form_roots, describe_roots};
use ulrich_core::clifford::{bgg_complex, clifford_module, clifford_multiply, CliffordElement};
use ulrich_core::mf::{
    cohomology_table, line_bundle_mf, rank_degree, raynaud_check, tensor_mf, verify_group_law, verify_mf,
    LineBundleIndex, MatrixFactorization,
};
use ulrich_core::pencil::{simultaneous_diagonalize, smoothness_check, verify_diagonalization, HyperellipticData};
use ulrich_core::{AlgebraError, Field};

use crate::candidate::{candidate_document, construct_checks, pipeline_checks, verify_document};
use crate::codec::{clifford_to_json, elems_to_json, matrix_to_json, mf_from_json, mf_to_json, pencil_from_json, poly_to_json};
use crate::config::{FieldSpec, Format, RunConfig, DEFAULT_PRIME};
use crate::suites::{self, SuiteName, SuiteParams};
use crate::transcript::{pretty, Transcript};
use crate::with_field;

#[derive(Debug, Parser)]
#[command(name = "ulrich", version, about = "Exact constructions and certificates for Ulrich modules on intersections of two quadrics")]
pub struct Cli {
    /// Base field: an odd prime or Q.
    #[arg(long, global = true, env = "FIELD", default_value_t = FieldSpec::Prime(DEFAULT_PRIME))]
    pub field: FieldSpec,
    /// Seed for every randomized check.
    #[arg(long, global = true, env = "SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest generator degree searched by kernel computations.
    #[arg(long, global = true, env = "DEGREE_CAP")]
    pub degree_cap: Option<i64>,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discriminant, diagonalization and smoothness of a pencil given as JSON.
    #[command(subcommand)]
    Pencil(PencilCommand),
    /// Matrix factorizations of f on the hyperelliptic curve y^2 = f.
    #[command(subcommand)]
    Mf(MfCommand),
    /// The Clifford algebra of a diagonal pencil.
    #[command(subcommand)]
    Clifford(CliffordCommand),
    /// Betti and cohomology tables of F_U.
    #[command(subcommand)]
    Betti(BettiCommand),
    /// Construction and verification of Ulrich candidates.
    #[command(subcommand)]
    Ulrich(UlrichCommand),
    /// Run a named verification suite.
    Suite(SuiteArgs),
    /// Write an object to a file in the chosen format.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Debug, Subcommand)]
pub enum PencilCommand {
    Diag { input: PathBuf },
    Disc { input: PathBuf },
    Smooth { input: PathBuf },
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Genus; the curve is branched at 1, 2, ..., 2g+2 unless --roots is given.
    #[arg(long, default_value_t = 1)]
    pub g: u32,
    /// Branch points, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub roots: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum MfCommand {
    /// The factorization of the line bundle L_I.
    #[command(name = "build-LI", alias = "build-li")]
    BuildLi {
        #[command(flatten)]
        curve: CurveArgs,
        /// 1-based branch point indices.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<u32>,
    },
    Tensor {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_delimiter = ',')]
        left: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        right: Vec<u32>,
    },
    Cohomology {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_delimiter = ',', conflicts_with = "input")]
        subset: Option<Vec<u32>>,
        /// A factorization written by `mf build-LI --format json`.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        to: i64,
    },
    Raynaud {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_delimiter = ',', conflicts_with = "input")]
        subset: Option<Vec<u32>>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    Grouplaw {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_delimiter = ',')]
        left: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        right: Vec<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CliffordCommand {
    /// Product of two basis words, given as 1-based index lists.
    Mul {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_delimiter = ',')]
        left: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        right: Vec<u32>,
    },
    /// The central element y.
    Center {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// The even-subset decomposition, for one subset or all of them.
    Decompose {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<u32>>,
    },
    /// The complex Hom(C, P) on degrees 0..=top.
    Bgg {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 4)]
        top: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BettiCommand {
    Table {
        #[arg(long, default_value_t = 3)]
        g: u32,
    },
    Chi {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        r: u64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    Cohomology {
        #[arg(long, default_value_t = 3)]
        g: u32,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        to: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum UlrichCommand {
    /// The diagonal candidate Λ = diag(d) in 2n+2 variables.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d: Vec<String>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// A candidate whose pencil has the given discriminant roots.
    ForRoots {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        roots: Vec<String>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Write the candidate document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a candidate document.
    Verify { input: PathBuf },
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(value_enum)]
    pub name: SuiteName,
    #[arg(long, default_value_t = 1)]
    pub g: u32,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub roots: Option<Vec<String>>,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

#[derive(Debug, Subcommand)]
pub enum ExportCommand {
    /// The two-row Betti table of P_U.
    Betti {
        #[arg(long, default_value_t = 3)]
        g: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// The cohomology table of F_U.
    Cohomology {
        #[arg(long, default_value_t = 3)]
        g: u32,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        to: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// A verified candidate document (always JSON) for the given discriminant roots.
    Candidate {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        roots: Vec<String>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            field: self.field,
            seed: self.seed,
            format: self.format,
            degree_cap: self.degree_cap,
            verbosity: self.verbose,
        }
    }
}

/// What a command produced: a transcript to print, or a file already written.
pub enum Outcome {
    Transcript(Transcript),
    /// A transcript plus an extra failure that is not one of its checks.
    Mismatch(Transcript, String),
    Written(PathBuf),
}

/// 1 for failed verification, 2 for everything else.
pub fn error_exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<AlgebraError>() {
        Some(AlgebraError::VerificationFailed(_)) => 1,
        _ => 2,
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config();
    match run(&cli.command, &cfg) {
        Ok(Outcome::Transcript(t)) => {
            print!("{}", t.render(cfg.format));
            ExitCode::from(t.exit_code())
        }
        Ok(Outcome::Mismatch(t, msg)) => {
            print!("{}", t.render(cfg.format));
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Outcome::Written(path)) => {
            if cfg.verbosity > 0 {
                eprintln!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_exit_code(&e))
        }
    }
}

fn read_input(path: &Path) -> anyhow::Result<Value> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(path: &Path, contents: &str) -> anyhow::Result<()> {
    if path.as_os_str() == "-" {
        io::stdout().write_all(contents.as_bytes())?;
        return Ok(());
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn subset_index<F: Field>(h: &HyperellipticData<F>, points: &[u32]) -> anyhow::Result<LineBundleIndex> {
    Ok(LineBundleIndex::from_points(points, h.factors.len() as u32)?)
}

fn word_of(points: &[u32], total: usize) -> anyhow::Result<u32> {
    let mut word = 0u32;
    for &p in points {
        ensure!((1..=total as u32).contains(&p), "index {p} is outside 1..={total}");
        word |= 1 << (p - 1);
    }
    Ok(word)
}

pub fn run(command: &Command, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    match command {
        Command::Pencil(cmd) => run_pencil(cmd, cfg).map(Outcome::Transcript),
        Command::Mf(cmd) => run_mf(cmd, cfg).map(Outcome::Transcript),
        Command::Clifford(cmd) => run_clifford(cmd, cfg).map(Outcome::Transcript),
        Command::Betti(cmd) => Ok(Outcome::Transcript(run_betti(cmd, cfg))),
        Command::Ulrich(cmd) => run_ulrich(cmd, cfg),
        Command::Suite(args) => {
            let params = SuiteParams {
                g: args.g,
                n: args.n,
                roots: args.roots.clone(),
                samples: args.samples,
                trials: args.trials,
            };
            suites::run_suite(cfg, args.name, &params).map(Outcome::Transcript)
        }
        Command::Export(cmd) => run_export(cmd, cfg),
    }
}

fn run_pencil(cmd: &PencilCommand, cfg: &RunConfig) -> anyhow::Result<Transcript> {
    let (name, input) = match cmd {
        PencilCommand::Diag { input } => ("diag", input),
        PencilCommand::Disc { input } => ("disc", input),
        PencilCommand::Smooth { input } => ("smooth", input),
    };
    let doc = read_input(input)?;
    let mut t = Transcript::new(format!("pencil {name}"), cfg);
    with_field!(cfg.field, |field| {
        let p = pencil_from_json(&field, &doc)?;
        t.param("vars", p.ring.nvars());
        match cmd {
            PencilCommand::Disc { .. } => {
                let disc = p.pencil.discriminant()?;
                let roots = binary_form_roots(&disc)?;
                t.output(
                    "discriminant",
                    format!("{disc}\nroots: {}\n", describe_roots(&roots, &field)),
                    json!({"poly": poly_to_json(&disc), "roots": elems_to_json(&field, &roots.multiset())}),
                );
            }
            PencilCommand::Diag { .. } => {
                let h = simultaneous_diagonalize(&p.pencil)?;
                let verified = verify_diagonalization(&p.pencil, &h);
                let factors: Vec<String> = h.factors.iter().map(|f| f.to_string()).collect();
                t.output(
                    "diagonal",
                    format!("factors: {}\n", factors.join(", ")),
                    json!({
                        "factors": h.factors.iter().map(poly_to_json).collect::<Vec<_>>(),
                        "basis": matrix_to_json(&h.basis),
                        "pencil_move": h.pencil_move.as_ref().map(|l| elems_to_json(&field, std::slice::from_ref(l))[0].clone()),
                    }),
                );
                t.check(
                    "diagonalization",
                    "M^T (s B1 + t B2) M = diag(f_i)",
                    verified.is_ok(),
                    json!({"error": verified.err().map(|e| e.to_string())}),
                );
            }
            PencilCommand::Smooth { .. } => {
                let report = smoothness_check(&p.pencil);
                t.check("smoothness", "squarefree discriminant", report.smooth, json!({"diagnosis": report.diagnosis}));
            }
        }
    });
    Ok(t)
}

fn mf_summary<F: Field>(t: &mut Transcript, h: &HyperellipticData<F>, name: &str, m: &MatrixFactorization<F>) -> anyhow::Result<()> {
    let report = verify_mf(m);
    t.check("mf-product", name, report.ok, json!({"failure": report.failure}));
    let rd = rank_degree(m)?;
    t.output(
        name,
        format!("degrees: {:?}\nrank {} degree {}\nphi =\n{}", m.degrees(), rd.rank, rd.degree, m.phi),
        json!({"factorization": mf_to_json(h, m)?, "rank": rd.rank, "degree": rd.degree}),
    );
    Ok(())
}

fn load_or_build<F: Field>(
    field: &F,
    curve: &CurveArgs,
    subset: &Option<Vec<u32>>,
    input: &Option<PathBuf>,
) -> anyhow::Result<(HyperellipticData<F>, MatrixFactorization<F>, String)> {
    match (subset, input) {
        (_, Some(path)) => {
            let (h, m) = mf_from_json(field, &read_input(path)?)?;
            Ok((h, m, path.display().to_string()))
        }
        (Some(points), None) => {
            let h = suites::curve(field, curve.g, curve.roots.as_deref())?;
            let i = subset_index(&h, points)?;
            let m = line_bundle_mf(&h, &i)?;
            Ok((h, m, format!("L{i}")))
        }
        (None, None) => bail!("give either --subset or --input"),
    }
}

fn run_mf(cmd: &MfCommand, cfg: &RunConfig) -> anyhow::Result<Transcript> {
    let name = match cmd {
        MfCommand::BuildLi { .. } => "build-LI",
        MfCommand::Tensor { .. } => "tensor",
        MfCommand::Cohomology { .. } => "cohomology",
        MfCommand::Raynaud { .. } => "raynaud",
        MfCommand::Grouplaw { .. } => "grouplaw",
    };
    let mut t = Transcript::new(format!("mf {name}"), cfg);
    with_field!(cfg.field, |field| {
        match cmd {
            MfCommand::BuildLi { curve, subset } => {
                let h = suites::curve(&field, curve.g, curve.roots.as_deref())?;
                let i = subset_index(&h, subset)?;
                t.param("subset", i.to_string());
                mf_summary(&mut t, &h, &format!("L{i}"), &line_bundle_mf(&h, &i)?)?;
            }
            MfCommand::Tensor { curve, left, right } => {
                let h = suites::curve(&field, curve.g, curve.roots.as_deref())?;
                let (i, j) = (subset_index(&h, left)?, subset_index(&h, right)?);
                t.param("left", i.to_string());
                t.param("right", j.to_string());
                let product = tensor_mf(&line_bundle_mf(&h, &i)?, &line_bundle_mf(&h, &j)?, cfg.degree_cap)?;
                mf_summary(&mut t, &h, &format!("L{i} x L{j}"), &product)?;
            }
            MfCommand::Cohomology { curve, subset, input, from, to } => {
                ensure!(from <= to, "--from must not exceed --to");
                let (h, m, label) = load_or_build(&field, curve, subset, input)?;
                t.param("bundle", label);
                t.param("twists", format!("{from}..{to}"));
                let table = cohomology_table(&h, &m, *from, *to, cfg.degree_cap)?;
                let rd = rank_degree(&m)?;
                let g = h.genus() as u32;
                let euler = (*from..=*to).all(|j| {
                    let chi = ulrich_core::betti::riemann_roch(rd.rank, rd.degree + j * rd.rank, g);
                    table.h0_at(j).unwrap() as i64 - table.h1_at(j).unwrap() as i64 == chi
                });
                t.output(
                    "cohomology",
                    table.to_two_row().render(),
                    json!({"first_twist": table.first_twist, "h0": table.h0, "h1": table.h1}),
                );
                t.check("cohomology-euler", "h0 - h1 = chi", euler, Value::Null);
            }
            MfCommand::Raynaud { curve, subset, input } => {
                let (_, m, label) = load_or_build(&field, curve, subset, input)?;
                t.param("bundle", label);
                let r = raynaud_check(&m)?;
                t.check("raynaud", "h0 = h1 = 0", r.holds, json!({"h0": r.h0, "h1": r.h1}));
            }
            MfCommand::Grouplaw { curve, left, right } => {
                let h = suites::curve(&field, curve.g, curve.roots.as_deref())?;
                let (i, j) = (subset_index(&h, left)?, subset_index(&h, right)?);
                let r = verify_group_law(&h, &i, &j, cfg.degree_cap)?;
                t.check(
                    "group-law",
                    format!("{i} x {j}"),
                    r.passed(),
                    json!({"expected": r.expected.to_string(), "twisted": r.twisted, "product_degrees": r.product_degrees}),
                );
            }
        }
    });
    Ok(t)
}

fn run_clifford(cmd: &CliffordCommand, cfg: &RunConfig) -> anyhow::Result<Transcript> {
    let (name, curve) = match cmd {
        CliffordCommand::Mul { curve, .. } => ("mul", curve),
        CliffordCommand::Center { curve } => ("center", curve),
        CliffordCommand::Decompose { curve, .. } => ("decompose", curve),
        CliffordCommand::Bgg { curve, .. } => ("bgg", curve),
    };
    let mut t = Transcript::new(format!("clifford {name}"), cfg);
    with_field!(cfg.field, |field| {
        let h = suites::curve(&field, curve.g, curve.roots.as_deref())?;
        t.param("g", h.genus());
        match cmd {
            CliffordCommand::Mul { left, right, .. } => {
                let total = h.factors.len();
                let a = CliffordElement::word(&h.ring, word_of(left, total)?);
                let b = CliffordElement::word(&h.ring, word_of(right, total)?);
                let p = clifford_multiply(&h, &a, &b)?;
                t.output("product", format!("{p}\n"), clifford_to_json(&p));
            }
            CliffordCommand::Center { .. } => {
                let y = suites::center_checks(&mut t, &h)?;
                t.output("y", format!("{y}\n"), clifford_to_json(&y));
            }
            CliffordCommand::Decompose { subset, .. } => match subset {
                Some(points) => suites::decomposition_check(&mut t, &h, &subset_index(&h, points)?)?,
                None => {
                    let points = h.factors.len() as u32;
                    for i in LineBundleIndex::all_canonical(points).into_iter().filter(|i| i.len() % 2 == 0) {
                        suites::decomposition_check(&mut t, &h, &i)?;
                    }
                }
            },
            CliffordCommand::Bgg { top, .. } => {
                suites::bgg_checks(&mut t, &h, *top)?;
                let complex = bgg_complex(&clifford_module(&h, *top)?, 0..=*top);
                if let Ok(c) = complex {
                    t.output(
                        "ranks",
                        format!("{:?}\nq1 = {}\nq2 = {}\n", c.ranks, c.q1, c.q2),
                        json!({"ranks": c.ranks, "q1": poly_to_json(&c.q1), "q2": poly_to_json(&c.q2)}),
                    );
                }
            }
        }
    });
    Ok(t)
}

fn run_betti(cmd: &BettiCommand, cfg: &RunConfig) -> Transcript {
    match cmd {
        BettiCommand::Table { g } => {
            let mut t = Transcript::new("betti table", cfg);
            t.param("g", *g);
            suites::betti_checks(&mut t, *g);
            t
        }
        BettiCommand::Chi { g, r, d } => {
            let mut t = Transcript::new("betti chi", cfg);
            t.param("g", *g).param("r", *r).param("d", *d);
            let c = chi_and_parity(*g, *r, *d);
            t.output(
                "chi",
                format!(
                    "chi = {}\nrank on X = {}/{}\nadmissible: {}\n",
                    c.chi, c.rank_on_x.0, c.rank_on_x.1, c.admissible
                ),
                json!({
                    "chi": c.chi,
                    "rank_on_x": [c.rank_on_x.0, c.rank_on_x.1],
                    "admissible": c.admissible,
                    "vanishing_degree": c.vanishing_degree,
                }),
            );
            t.check(
                "chi-parity",
                format!("g={g} r={r}"),
                c.admissible == (r * *g as u64 % 2 == 0),
                Value::Null,
            );
            t
        }
        BettiCommand::Cohomology { g, from, to } => {
            let mut t = Transcript::new("betti cohomology", cfg);
            t.param("g", *g).param("twists", format!("{from}..{to}"));
            let table = fu_cohomology_table(*g, *from, (*to).max(*from));
            t.output(
                "cohomology",
                table.to_two_row().render(),
                json!({"first_twist": table.first_twist, "h0": table.h0, "h1": table.h1}),
            );
            t
        }
    }
}

fn candidate_for_roots_run(
    cfg: &RunConfig,
    subject: &str,
    roots: &[String],
    trials: usize,
) -> anyhow::Result<(Transcript, Value)> {
    let mut t = Transcript::new(subject, cfg);
    let doc = with_field!(cfg.field, |field| {
        let parsed = suites::parse_elems(&field, roots)?;
        let n = parsed.len() / 2;
        t.param("n", n);
        t.param("trials", trials);
        let cand = pipeline_checks(&mut t, &field, n, &parsed, trials, cfg.seed)?;
        candidate_document(&t, &cand, Some(&parsed), trials)
    });
    Ok((t, doc))
}

fn run_ulrich(cmd: &UlrichCommand, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    match cmd {
        UlrichCommand::Construct { n, d, trials } => {
            let mut t = Transcript::new("ulrich construct", cfg);
            t.param("n", *n).param("trials", *trials);
            with_field!(cfg.field, |field| {
                let d = suites::parse_elems(&field, d)?;
                t.param("d", elems_to_json(&field, &d));
                construct_checks(&mut t, &field, *n, &d, *trials, cfg.seed)?;
            });
            Ok(Outcome::Transcript(t))
        }
        UlrichCommand::ForRoots { roots, trials, out } => {
            let (t, doc) = candidate_for_roots_run(cfg, "ulrich candidate", roots, *trials)?;
            if let Some(path) = out {
                write_output(path, &(doc.to_string() + "\n"))?;
            }
            Ok(Outcome::Transcript(t))
        }
        UlrichCommand::Verify { input } => {
            let v = verify_document(&read_input(input)?, cfg.verbosity)?;
            match v.matches_embedded {
                Some(false) => Ok(Outcome::Mismatch(
                    v.transcript,
                    "recomputed transcript differs from the one stored in the candidate".into(),
                )),
                _ => Ok(Outcome::Transcript(v.transcript)),
            }
        }
    }
}

fn run_export(cmd: &ExportCommand, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let (contents, out) = match cmd {
        ExportCommand::Betti { g, out } => {
            let table = tate_shape_pu(*g);
            let text = match cfg.format {
                Format::Text => table.to_two_row().render(),
                Format::Json => pretty(&json!({"g": g, "overlap": table.overlap, "linear": table.linear})),
            };
            (text, out)
        }
        ExportCommand::Cohomology { g, from, to, out } => {
            ensure!(from <= to, "--from must not exceed --to");
            let table = fu_cohomology_table(*g, *from, *to);
            let text = match cfg.format {
                Format::Text => table.to_two_row().render(),
                Format::Json => pretty(&json!({
                    "g": g,
                    "first_twist": table.first_twist,
                    "h0": table.h0,
                    "h1": table.h1,
                })),
            };
            (text, out)
        }
        ExportCommand::Candidate { roots, trials, out } => {
            // The document is the file format; --format does not apply.
            let (_, doc) = candidate_for_roots_run(cfg, "ulrich candidate", roots, *trials)?;
            (doc.to_string() + "\n", out)
        }
    };
    write_output(out, &contents)?;
    Ok(Outcome::Written(out.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_parse_anywhere() {
        let cli = Cli::try_parse_from(["ulrich", "betti", "table", "--g", "3", "--field", "Q", "--format", "json"]).unwrap();
        assert_eq!(cli.field, FieldSpec::Rationals);
        assert_eq!(cli.format, Format::Json);
        assert!(Cli::try_parse_from(["ulrich", "--format", "xml", "betti", "table"]).is_err());
    }

    #[test]
    fn negative_roots_are_accepted() {
        let cli = Cli::try_parse_from(["ulrich", "ulrich", "for-roots", "--roots", "-1,-2,-3,-4,-5"]).unwrap();
        match cli.command {
            Command::Ulrich(UlrichCommand::ForRoots { roots, .. }) => assert_eq!(roots.len(), 5),
            _ => panic!("wrong command"),
        }
    }

    #[test]
    fn verification_errors_map_to_one() {
        let e = anyhow::Error::from(AlgebraError::VerificationFailed("x".into()));
        assert_eq!(error_exit_code(&e), 1);
        assert_eq!(error_exit_code(&anyhow::anyhow!("bad")), 2);
    }
}
