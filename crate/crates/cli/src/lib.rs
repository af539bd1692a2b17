//! Command-line front end: build and verify spaces, run single criteria,
//! sweep the classification and compare it against the reference lists.
//!
//! [`run`] does all the work and returns the exit code together with the
//! text destined for stdout and stderr, so it can be tested without a
//! subprocess.

pub mod expected;
pub mod render;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use drspolar::clifford::{build_module, CliffordClass};
use drspolar::damek_ricci::DamekRicciSpace;
use drspolar::exactla::Subspace;
use drspolar::heisenberg::{all_pass, build_heisenberg, AxiomCheck};
use drspolar::polarity::{
    check_foliation_polar, check_main, check_mthm, check_pasl_action, check_pasl_action_float, classify,
    construct_cor_pfol, construct_cor_psgo, is_totally_geodesic, Arithmetic, Certificate, ClassificationEntry,
    PolarityError, PolarityReport, RepAction, SubalgebraSpec, Verdict,
};
use drspolar::sampling::{derive_seed, random_rational_vector, rng_from_seed};

/// Largest `m` a classification sweep accepts.
pub const MAX_M_EXACT: usize = 12;
pub const MAX_M_FLOAT: usize = 16;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "drspolar", version, about = "Polar actions on Damek-Ricci spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Arith::Exact)]
    pub arith: Arith,
    /// Relative tolerance of the float path.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Clifford, Heisenberg and Damek-Ricci axioms of one space.
    Verify {
        #[arg(long, value_parser = parse_class)]
        space: CliffordClass,
    },
    /// Classify every class with `m <= m_max` and multiplicities up to `k_max`.
    Classify {
        #[arg(long, default_value_t = 9)]
        m_max: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Run one criterion. Exit code 0 polar, 1 non-polar, 3 inconclusive.
    Check {
        #[arg(value_enum)]
        criterion: Criterion,
        #[arg(long, value_parser = parse_class)]
        space: CliffordClass,
        /// Basis file for `w`.
        #[arg(long)]
        w: Option<PathBuf>,
        /// Basis file for `v'`.
        #[arg(long)]
        vprime: Option<PathBuf>,
        /// Basis file for `z'`.
        #[arg(long)]
        zprime: Option<PathBuf>,
        /// Generators of `q` as `{carrier_dim, generators}`; trivial if absent.
        #[arg(long)]
        q: Option<PathBuf>,
        /// Whether `h` contains `a`.
        #[arg(long, value_enum, default_value_t = BPart::Zero)]
        b: BPart,
    },
    /// Print the module, algebra or space data as JSON.
    Dump {
        #[arg(long, value_parser = parse_class)]
        space: CliffordClass,
        #[arg(long, value_enum, default_value_t = DumpWhat::Space)]
        what: DumpWhat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arith {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Tg,
    Foliation,
    Pasl,
    Mthm,
    Main,
    Pfol,
    Psgo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BPart {
    #[value(name = "0")]
    Zero,
    #[value(name = "a")]
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpWhat {
    Module,
    Algebra,
    Space,
}

fn parse_class(s: &str) -> Result<CliffordClass, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Exit code and output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Outcome {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Outcome::input_error("--tol must be positive");
    }
    match &cli.command {
        Command::Verify { space } => verify(*space, cli),
        Command::Classify { m_max, k_max } => run_classify(*m_max, *k_max, cli),
        Command::Check { criterion, space, w, vprime, zprime, q, b } => {
            let files = BasisFiles { w: w.as_deref(), vprime: vprime.as_deref(), zprime: zprime.as_deref(), q: q.as_deref() };
            match check(*criterion, *space, &files, *b, cli) {
                Ok(o) => o,
                Err(e) => Outcome::input_error(e),
            }
        }
        Command::Dump { space, what } => dump(*space, *what, cli.format),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    space: String,
    seed: u64,
    pass: bool,
    checks: Vec<AxiomCheck>,
}

/// Heisenberg axioms plus the Jacobi identity and torsion-freeness on `s`.
pub fn verify_checks(cls: CliffordClass, seed: u64) -> Vec<AxiomCheck> {
    let heis = build_heisenberg(cls);
    let mut checks = heis.verify_axioms(seed);
    let space = DamekRicciSpace::from_heisenberg(heis);
    checks.push(AxiomCheck::new(
        "jacobi_s",
        space.jacobi_failure().map(|(i, j, k)| format!("e_{}, e_{}, e_{}", i + 1, j + 1, k + 1)),
    ));
    let mut rng = rng_from_seed(derive_seed(seed, "torsion"));
    let mut witness = None;
    for _ in 0..100 {
        let x = space.from_flat(&random_rational_vector(&mut rng, space.s_dim()));
        let y = space.from_flat(&random_rational_vector(&mut rng, space.s_dim()));
        let torsion = space.nabla_left_invariant(&x, &y).sub(&space.nabla_left_invariant(&y, &x));
        if torsion != space.bracket_s(&x, &y) {
            witness = Some(format!("x = {:?}, y = {:?}", x.to_flat(), y.to_flat()));
            break;
        }
    }
    checks.push(AxiomCheck::new("torsion_free", witness));
    checks
}

fn verify(cls: CliffordClass, cli: &Cli) -> Outcome {
    let checks = verify_checks(cls, cli.seed);
    let pass = all_pass(&checks);
    let label = cls.space_label();
    let stdout = match cli.format {
        Format::Json => to_json(&VerifyReport { space: label.clone(), seed: cli.seed, pass, checks: checks.clone() }),
        Format::Md => render::axioms_md(&label, &checks),
    };
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.axiom.as_str()).collect();
    let stderr = if pass {
        format!("{label}: all {} checks pass\n", checks.len())
    } else {
        format!("{label}: failing checks: {}\n", failed.join(", "))
    };
    Outcome { code: if pass { EXIT_OK } else { EXIT_FAIL }, stdout, stderr }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Match,
    Mismatch,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub computed: Verdict,
    pub expected: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomogeneity: Option<usize>,
    pub status: Status,
}

impl Comparison {
    fn new(r: &PolarityReport, expected: Verdict) -> Self {
        let status = match r.verdict {
            Verdict::Inconclusive => Status::Inconclusive,
            v if v == expected => Status::Match,
            _ => Status::Mismatch,
        };
        Self { computed: r.verdict, expected, cohomogeneity: r.cohomogeneity, status }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub group: String,
    pub derivation_dim: usize,
    pub representation: Comparison,
    pub pasl: Comparison,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
    pub mismatches: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRun {
    pub m_max: usize,
    pub k_max: usize,
    pub seed: u64,
    pub arithmetic: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub entries: Vec<ClassificationEntry>,
    pub summary: Summary,
}

impl ClassificationRun {
    pub fn exit_code(&self) -> i32 {
        if self.summary.mismatches > 0 {
            EXIT_FAIL
        } else if self.summary.inconclusive > 0 {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_OK
        }
    }
}

pub fn summarize(entries: &[ClassificationEntry]) -> Summary {
    let rows: Vec<SummaryRow> = entries
        .iter()
        .map(|e| SummaryRow {
            group: e.group.clone(),
            derivation_dim: e.derivation_dim,
            representation: Comparison::new(&e.representation, expected::representation(e.class)),
            pasl: Comparison::new(&e.pasl, expected::pasl(e.class)),
        })
        .collect();
    let count = |s: Status| rows.iter().map(|r| [&r.representation, &r.pasl].iter().filter(|c| c.status == s).count()).sum();
    Summary { mismatches: count(Status::Mismatch), inconclusive: count(Status::Inconclusive), rows }
}

/// Runs the sweep after checking the resource guard.
pub fn classification(m_max: usize, k_max: usize, seed: u64, arith: Arith, tol: f64) -> Result<ClassificationRun, String> {
    let (limit, arithmetic, tolerance) = match arith {
        Arith::Exact => (MAX_M_EXACT, Arithmetic::Exact, None),
        Arith::Float => (MAX_M_FLOAT, Arithmetic::Float { tol }, Some(tol)),
    };
    if m_max > limit {
        return Err(format!("--m-max {m_max} exceeds the limit {limit} for this arithmetic"));
    }
    let entries = classify(m_max, k_max, seed, arithmetic);
    let summary = summarize(&entries);
    Ok(ClassificationRun {
        m_max,
        k_max,
        seed,
        arithmetic: if tolerance.is_some() { "float" } else { "exact" },
        tolerance,
        entries,
        summary,
    })
}

fn run_classify(m_max: usize, k_max: usize, cli: &Cli) -> Outcome {
    let run = match classification(m_max, k_max, cli.seed, cli.arith, cli.tol) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let stdout = match cli.format {
        Format::Json => to_json(&run),
        Format::Md => render::summary_md(&run),
    };
    Outcome { code: run.exit_code(), stdout, stderr: render::summary_text(&run) }
}

struct BasisFiles<'a> {
    w: Option<&'a Path>,
    vprime: Option<&'a Path>,
    zprime: Option<&'a Path>,
    q: Option<&'a Path>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn subspace_or_zero(path: Option<&Path>, dim: usize, name: &str) -> Result<Subspace, String> {
    let s = match path {
        Some(p) => read_json::<Subspace>(p)?,
        None => return Ok(Subspace::zero(dim)),
    };
    if s.ambient_dim() != dim {
        return Err(format!("{name} lives in dimension {}, expected {dim}", s.ambient_dim()));
    }
    Ok(s)
}

#[derive(Serialize)]
struct GeodesicReport {
    space: String,
    criterion: &'static str,
    totally_geodesic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Polar => EXIT_OK,
        Verdict::NonPolar => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn report_outcome(r: &PolarityReport, format: Format) -> Outcome {
    let stdout = match format {
        Format::Json => to_json(r),
        Format::Md => render::report_md(r),
    };
    let c = r.cohomogeneity.map(|c| format!(", cohomogeneity {c}")).unwrap_or_default();
    let stderr = format!("{}: {} is {}{c}\n", r.space, r.action, r.verdict);
    Outcome { code: verdict_code(r.verdict), stdout, stderr }
}

fn check(criterion: Criterion, cls: CliffordClass, files: &BasisFiles<'_>, b: BPart, cli: &Cli) -> Result<Outcome, String> {
    let space = DamekRicciSpace::from_heisenberg(build_heisenberg(cls));
    let (n, m) = (space.v_dim(), space.z_dim());
    let pe = |e: PolarityError| e.to_string();
    let w = || -> Result<Subspace, String> {
        match files.w {
            Some(_) => subspace_or_zero(files.w, n, "w"),
            None => Err("this criterion needs --w".into()),
        }
    };
    let q = || -> Result<RepAction, String> {
        match files.q {
            Some(p) => read_json::<RepAction>(p),
            None => Ok(RepAction::trivial(n)),
        }
    };
    let report = match criterion {
        Criterion::Tg => {
            let spec = SubalgebraSpec::with_a(
                &space,
                subspace_or_zero(files.vprime, n, "v'")?,
                subspace_or_zero(files.zprime, m, "z'")?,
            )
            .map_err(pe)?;
            let t = is_totally_geodesic(&spec).map_err(pe)?;
            let r = GeodesicReport {
                space: space.label(),
                criterion: "tg",
                totally_geodesic: t.holds,
                certificate: t.certificate,
            };
            let stdout = match cli.format {
                Format::Json => to_json(&r),
                Format::Md => format!("## {}: totally geodesic: {}\n\n```json\n{}```\n", r.space, r.totally_geodesic, to_json(&r)),
            };
            let stderr = format!("{}: exp(a + v' + z') totally geodesic: {}\n", r.space, r.totally_geodesic);
            return Ok(Outcome { code: if t.holds { EXIT_OK } else { EXIT_FAIL }, stdout, stderr });
        }
        Criterion::Foliation => check_foliation_polar(
            &space,
            &subspace_or_zero(files.vprime, n, "v'")?,
            &subspace_or_zero(files.zprime, m, "z'")?,
        )
        .map_err(pe)?,
        Criterion::Pasl => match cli.arith {
            Arith::Exact => check_pasl_action(&space, cli.seed),
            Arith::Float => check_pasl_action_float(&space, cli.seed, cli.tol),
        },
        Criterion::Mthm => check_mthm(&space, &w()?, &q()?, cli.seed).map_err(pe)?,
        Criterion::Main => {
            let b = match b {
                BPart::Zero => Subspace::zero(1),
                BPart::A => Subspace::full(1),
            };
            check_main(&space, &b, &w()?, &q()?, cli.seed).map_err(pe)?
        }
        Criterion::Pfol => construct_cor_pfol(&space, cli.seed).map_err(pe)?.1,
        Criterion::Psgo => construct_cor_psgo(&space, cli.seed).map_err(pe)?.1,
    };
    Ok(report_outcome(&report, cli.format))
}

fn dump(cls: CliffordClass, what: DumpWhat, format: Format) -> Outcome {
    let json = match what {
        DumpWhat::Module => to_json(&build_module(cls).dump()),
        DumpWhat::Algebra => to_json(&build_heisenberg(cls).dump()),
        DumpWhat::Space => to_json(&DamekRicciSpace::from_heisenberg(build_heisenberg(cls)).dump()),
    };
    let stdout = match format {
        Format::Json => json,
        Format::Md => format!("```json\n{json}```\n"),
    };
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let mut full = vec!["drspolar"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn verify_small_space() {
        let o = run_args(&["verify", "--space", "S(3,1,0)"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn bad_class_is_a_parse_error() {
        assert!(Cli::try_parse_from(["drspolar", "verify", "--space", "S(3,1)"]).is_err());
    }

    #[test]
    fn resource_guard() {
        assert_eq!(run_args(&["classify", "--m-max", "13"]).code, EXIT_INPUT);
        assert_eq!(run_args(&["--tol", "0", "classify", "--m-max", "1"]).code, EXIT_INPUT);
    }

    #[test]
    fn mthm_needs_w() {
        assert_eq!(run_args(&["check", "mthm", "--space", "S(1,1)"]).code, EXIT_INPUT);
    }

    #[test]
    fn markdown_outputs() {
        let o = run_args(&["--format", "md", "check", "pasl", "--space", "S(2,1)"]);
        assert!(o.stdout.starts_with("## S(2,1)"));
        let o = run_args(&["--format", "md", "classify", "--m-max", "1", "--k-max", "1"]);
        assert!(o.stdout.contains("| N(1,1) |"));
    }
}
