//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any of them fails.

use std::process::Command;
use std::time::Instant;

use drspolar::clifford::{CliffordClass, Multiplicity};
use drspolar::damek_ricci::{build_space, DamekRicciSpace, SVector};
use drspolar::exactla::{dot, orth_complement, Rational, Subspace, Vector};
use drspolar::heisenberg::{all_pass, build_heisenberg};
use drspolar::polarity::{
    check_pasl_action, construct_cor_pfol, construct_cor_psgo, derivation_algebra, is_totally_geodesic, Certificate,
    PolarityError, SubalgebraSpec, Verdict,
};
use drspolar::sampling::{derive_seed, random_int, random_int_vector, rng_from_seed};
use drspolar_cli::{classification, expected, verify_checks, Arith};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        let shown: Vec<&str> = failures.iter().take(8).map(String::as_str).collect();
        let more = if failures.len() > 8 { format!(" and {} more", failures.len() - 8) } else { String::new() };
        Outcome { pass: false, detail: format!("{}{more}", shown.join("; ")) }
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_drspolar"))
}

fn run_bin(args: &[&str]) -> (i32, Vec<u8>) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn classes() -> Vec<CliffordClass> {
    CliffordClass::enumerate(9, 3)
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let list = classes();
    for &cls in &list {
        let checks = verify_checks(cls, 0);
        if !all_pass(&checks) {
            let bad: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.axiom.clone()).collect();
            failures.push(format!("{}: {}", cls.space_label(), bad.join(",")));
        }
    }
    outcome(&failures, format!("{} classes, every axiom holds exactly", list.len()))
}

fn criterion_2() -> Outcome {
    let (code, stdout) = run_bin(&["classify", "--m-max", "9", "--k-max", "3", "--seed", "0"]);
    let v: Value = match serde_json::from_slice(&stdout) {
        Ok(v) => v,
        Err(e) => return Outcome { pass: false, detail: format!("unreadable output: {e}") },
    };
    let mut failures = Vec::new();
    let rows = v["summary"]["rows"].as_array().cloned().unwrap_or_default();
    for row in &rows {
        let r = &row["representation"];
        if r["status"] != "MATCH" {
            failures.push(format!(
                "{} computed {} expected {}",
                row["group"].as_str().unwrap_or("?"),
                r["computed"].as_str().unwrap_or("?"),
                r["expected"].as_str().unwrap_or("?")
            ));
        }
    }
    if code != 0 {
        failures.push(format!("classify exit code {code}"));
    }
    outcome(&failures, format!("{} classes match the reference list, exit code 0", rows.len()))
}

fn witness_index(r: &drspolar::polarity::PolarityReport) -> Option<usize> {
    r.witnesses.iter().find_map(|w| match (&w.certificate, w.pass) {
        (Some(Certificate::JPairing { index, .. }), false) => Some(*index),
        _ => None,
    })
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let list = CliffordClass::enumerate(8, 3);
    for &cls in &list {
        let r = check_pasl_action(&build_space(cls), 0);
        let want = expected::pasl(cls);
        if r.verdict != want {
            failures.push(format!("{} computed {} expected {}", cls.space_label(), r.verdict, want));
        }
    }
    for s in ["S(4,1)", "S(8,1)"] {
        let r = check_pasl_action(&build_space(s.parse().unwrap()), 0);
        if r.verdict != Verdict::NonPolar || witness_index(&r).is_none() {
            failures.push(format!("{s} lacks a non-polar verdict with a generator witness"));
        }
    }
    let idx: Vec<String> = ["S(4,1)", "S(8,1)"]
        .iter()
        .filter_map(|s| witness_index(&check_pasl_action(&build_space(s.parse().unwrap()), 0)).map(|i| format!("{s}: e_{i}")))
        .collect();
    outcome(&failures, format!("{} spaces match; witnesses {}", list.len(), idx.join(", ")))
}

fn so(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn sp(n: usize) -> usize {
    n * (2 * n + 1)
}

fn group_dim(cls: CliffordClass) -> usize {
    so(cls.m)
        + match (cls.m % 8, cls.multiplicity) {
            (0 | 6, Multiplicity::Single(k)) => so(k),
            (1 | 5, Multiplicity::Single(k)) => k * k,
            (2 | 4, Multiplicity::Single(k)) => sp(k),
            (3, Multiplicity::Pair(p, n)) => sp(p) + sp(n),
            (7, Multiplicity::Pair(p, n)) => so(p) + so(n),
            _ => unreachable!(),
        }
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let list = classes();
    for &cls in &list {
        let d = derivation_algebra(&build_heisenberg(cls)).dim();
        if d != group_dim(cls) {
            failures.push(format!("{}: {} instead of {}", cls.group_label(), d, group_dim(cls)));
        }
    }
    outcome(&failures, format!("{} classes", list.len()))
}

const SUITE: [&str; 10] = [
    "S(1,1)", "S(1,2)", "S(2,1)", "S(3,1,0)", "S(3,1,1)", "S(4,1)", "S(5,1)", "S(6,1)", "S(7,1,0)", "S(2,2)",
];
const CONFIGS: u64 = 100;

fn combo(rng: &mut ChaCha8Rng, s: &Subspace) -> Vector {
    let mut out = vec![Rational::zero(); s.ambient_dim()];
    for b in s.basis() {
        let c = random_int(rng);
        for (o, x) in out.iter_mut().zip(b) {
            *o += &c * x;
        }
    }
    out
}

fn random_subspace(rng: &mut ChaCha8Rng, n: usize, max_dim: usize) -> Subspace {
    let d = rng.gen_range(0..=max_dim.min(n));
    let vs: Vec<Vector> = (0..d).map(|_| random_int_vector(rng, n)).collect();
    Subspace::span(n, &vs).unwrap()
}

fn brackets(sp: &DamekRicciSpace, v: &Subspace) -> Vec<Vector> {
    let mut zs = Vec::new();
    for a in v.basis() {
        for b in v.basis() {
            zs.push(sp.heisenberg().bracket_v(a, b));
        }
    }
    zs
}

/// Smallest `(v', z')` containing the seeds, closed under `J_{z'}` and with
/// `[v', v']` inside `z'`.
fn geodesic_hull(sp: &DamekRicciSpace, mut v: Subspace, mut z: Subspace) -> (Subspace, Subspace) {
    loop {
        let mut vs: Vec<Vector> = v.basis().to_vec();
        for x in z.basis() {
            for u in v.basis() {
                vs.push(sp.heisenberg().j_apply(x, u));
            }
        }
        let v2 = Subspace::span(sp.v_dim(), &vs).unwrap();
        let mut zs = z.basis().to_vec();
        zs.extend(brackets(sp, &v2));
        let z2 = Subspace::span(sp.z_dim(), &zs).unwrap();
        if (v2.dim(), z2.dim()) == (v.dim(), z.dim()) {
            return (v2, z2);
        }
        (v, z) = (v2, z2);
    }
}

fn closed_under_nabla(sp: &DamekRicciSpace, flat: &Subspace) -> bool {
    let ech = flat.echelon();
    flat.basis().iter().all(|x| {
        let x = sp.from_flat(x);
        flat.basis().iter().all(|y| ech.contains(&sp.nabla_left_invariant(&x, &sp.from_flat(y)).to_flat()))
    })
}

/// Algebraic geodesic criterion against closure under the connection.
fn oracle_a(sp: &DamekRicciSpace, rng: &mut ChaCha8Rng) -> (bool, bool) {
    let (v, z) = if rng.gen_bool(0.3) {
        let v = random_subspace(rng, sp.v_dim(), 2);
        let z = random_subspace(rng, sp.z_dim(), 2);
        geodesic_hull(sp, v, z)
    } else {
        let v = random_subspace(rng, sp.v_dim(), 3);
        let mut zs = brackets(sp, &v);
        zs.extend(random_subspace(rng, sp.z_dim(), 1).basis().iter().cloned());
        let z = Subspace::span(sp.z_dim(), &zs).unwrap();
        (v, z)
    };
    let spec = SubalgebraSpec::with_a(sp, v, z).unwrap();
    let tg = is_totally_geodesic(&spec).unwrap().holds;
    (tg, tg == closed_under_nabla(sp, &spec.flat()))
}

/// Condition (ii) against vanishing of the Killing Koszul form.
fn oracle_b(sp: &DamekRicciSpace, rng: &mut ChaCha8Rng) -> (bool, bool) {
    let v = random_subspace(rng, sp.v_dim(), 3);
    let (v, z) = if rng.gen_bool(0.7) {
        (v, Subspace::zero(sp.z_dim()))
    } else {
        let z = random_subspace(rng, sp.z_dim(), 2);
        geodesic_hull(sp, v, z)
    };
    let hz = orth_complement(&z, &Subspace::full(sp.z_dim())).unwrap();
    let hv = orth_complement(&v, &Subspace::full(sp.v_dim())).unwrap();
    let heis = sp.heisenberg();
    let cond = hz
        .basis()
        .iter()
        .all(|x| v.basis().iter().all(|a| v.basis().iter().all(|b| dot(&heis.j_apply(x, a), b).is_zero())));
    let tangent = SubalgebraSpec::with_a(sp, v, z).unwrap().flat();
    let normal = hv.embed(sp.s_dim(), sp.v_offset()).sum(&hz.embed(sp.s_dim(), sp.z_offset())).unwrap();
    let k = |a: &[Rational], b: &[Rational], c: &[Rational]| {
        sp.killing_koszul_at_e(&sp.from_flat(a), &sp.from_flat(b), &sp.from_flat(c))
    };
    let mut vanishes = true;
    for xi in tangent.basis() {
        for eta in normal.basis() {
            for zeta in tangent.basis() {
                vanishes &= k(xi, eta, zeta).is_zero();
            }
        }
    }
    for _ in 0..4 {
        let (xi, eta, zeta) = (combo(rng, &tangent), combo(rng, &normal), combo(rng, &tangent));
        vanishes &= k(&xi, &eta, &zeta).is_zero();
    }
    (cond, cond == vanishes)
}

/// The Killing Koszul value on the geodesic configuration is `-<J_X V, W>`.
fn oracle_c(sp: &DamekRicciSpace, rng: &mut ChaCha8Rng) -> bool {
    let v = random_subspace(rng, sp.v_dim(), 2);
    let z = random_subspace(rng, sp.z_dim(), 2);
    let (v, z) = geodesic_hull(sp, v, z);
    let hz = orth_complement(&z, &Subspace::full(sp.z_dim())).unwrap();
    let hv = orth_complement(&v, &Subspace::full(sp.v_dim())).unwrap();
    let (vv, ww) = (combo(rng, &v), combo(rng, &v));
    let (y, zz) = (combo(rng, &z), combo(rng, &z));
    let (x, u) = (combo(rng, &hz), combo(rng, &hv));
    let (s, t) = (random_int(rng), random_int(rng));
    let expected = -dot(&sp.heisenberg().j_apply(&x, &vv), &ww);
    let xi = SVector::new(s, vv, y);
    let eta = SVector::new(Rational::zero(), u, x);
    let zeta = SVector::new(t, ww, zz);
    sp.killing_koszul_at_e(&xi, &eta, &zeta) == expected
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let (mut tg_true, mut cond_true, mut total) = (0, 0, 0);
    for label in SUITE {
        let sp = build_space(label.parse().unwrap());
        for seed in 0..CONFIGS {
            total += 1;
            let mut rng = rng_from_seed(derive_seed(seed, label));
            let (tg, ok) = oracle_a(&sp, &mut rng);
            tg_true += tg as usize;
            if !ok {
                failures.push(format!("(a) {label} seed {seed}"));
            }
            let (cond, ok) = oracle_b(&sp, &mut rng);
            cond_true += cond as usize;
            if !ok {
                failures.push(format!("(b) {label} seed {seed}"));
            }
            if !oracle_c(&sp, &mut rng) {
                failures.push(format!("(c) {label} seed {seed}"));
            }
        }
    }
    outcome(
        &failures,
        format!(
            "{} spaces x {CONFIGS} configurations; (a) {tg_true}/{total} geodesic, (b) {cond_true}/{total} with condition (ii), (c) exact",
            SUITE.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let (mut pfol, mut psgo, mut skipped) = (0, 0, Vec::new());
    for cls in classes() {
        let space = build_space(cls);
        let label = space.label();
        if space.v_dim() >= 1 {
            pfol += 1;
            match construct_cor_pfol(&space, 0) {
                Ok((_, r)) if r.verdict == Verdict::Polar => {}
                Ok((_, r)) => failures.push(format!("pfol {label}: {}", r.verdict)),
                Err(e) => failures.push(format!("pfol {label}: {e}")),
            }
        }
        if space.v_dim() >= 2 {
            match construct_cor_psgo(&space, 0) {
                Ok((_, r)) if r.verdict == Verdict::Polar => psgo += 1,
                Ok((_, r)) => failures.push(format!("psgo {label}: {}", r.verdict)),
                Err(PolarityError::Precondition(msg)) if msg.contains("trivially") => skipped.push(label),
                Err(e) => failures.push(format!("psgo {label}: {e}")),
            }
        }
    }
    outcome(&failures, format!("pfol polar on {pfol} spaces, psgo polar on {psgo} spaces, trivial torus on {skipped:?}"))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let runs: [&[&str]; 4] = [
        &["classify", "--m-max", "8", "--k-max", "2", "--seed", "7"],
        &["classify", "--m-max", "5", "--k-max", "2", "--seed", "7", "--arith", "float"],
        &["check", "psgo", "--space", "S(3,1,1)", "--seed", "3"],
        &["check", "pasl", "--space", "S(6,1)", "--seed", "11", "--format", "md"],
    ];
    for args in runs {
        let (c1, a) = run_bin(args);
        let (c2, b) = run_bin(args);
        if a != b || c1 != c2 || a.is_empty() {
            failures.push(format!("output differs for {}", args.join(" ")));
        }
    }
    let exact = classification(8, 2, 0, Arith::Exact, 1e-9).unwrap();
    let float = classification(8, 2, 0, Arith::Float, 1e-9).unwrap();
    for (e, f) in exact.entries.iter().zip(&float.entries) {
        if e.representation.verdict != f.representation.verdict || e.pasl.verdict != f.pasl.verdict {
            failures.push(format!("{}: exact and float verdicts differ", e.group));
        }
    }
    outcome(&failures, format!("byte-identical reruns; {} classes agree exact vs float at 1e-9", exact.entries.len()))
}

/// Exit-code contract of the binary.
fn cli_contract() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.json");
    std::fs::write(&line, r#"{"ambient_dim": 4, "basis": [["1", "0", "0", "0"]]}"#).unwrap();
    let line = line.to_str().unwrap();
    let cases: [(&[&str], i32); 9] = [
        (&["verify", "--space", "S(3,1,0)"], 0),
        (&["verify", "--space", "S(3,1)"], 2),
        (&["verify", "--space", "S(9,1)"], 0),
        (&["check", "foliation", "--space", "S(2,1)", "--vprime", line], 0),
        (&["check", "pasl", "--space", "S(8,1)"], 1),
        (&["check", "pfol", "--space", "S(7,0,2)"], 0),
        (&["check", "mthm", "--space", "S(2,1)"], 2),
        (&["classify", "--m-max", "0", "--k-max", "3"], 0),
        (&["classify", "--m-max", "13"], 2),
    ];
    let mut failures = Vec::new();
    for (args, want) in cases {
        let (got, _) = run_bin(args);
        if got != want {
            failures.push(format!("{} exited {got}, expected {want}", args.join(" ")));
        }
    }
    outcome(&failures, format!("{} invocations", cases.len()))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 8] = [
        ("1", "axiom suite", criterion_1),
        ("2", "representation classification", criterion_2),
        ("3", "A(N)_0 x L(Z) classification", criterion_3),
        ("4", "derivation algebra dimensions", criterion_4),
        ("5", "oracle equivalences", criterion_5),
        ("6", "corollary constructors", criterion_6),
        ("7", "determinism and float agreement", criterion_7),
        ("-", "cli exit codes", cli_contract),
    ];
    let mut failed = Vec::new();
    for (id, title, f) in criteria {
        let start = Instant::now();
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} {status}: {title} ({}) [{:.1?}]", o.detail, start.elapsed());
        if !o.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {}", failed.join(", "));
        std::process::exit(1);
    }
}
