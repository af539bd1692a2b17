//! Markdown and plain-text renderings of reports.

use std::fmt::Write;

use drspolar::heisenberg::AxiomCheck;
use drspolar::polarity::PolarityReport;

use crate::ClassificationRun;

fn mark(pass: bool) -> &'static str {
    if pass {
        "yes"
    } else {
        "no"
    }
}

pub fn report_md(r: &PolarityReport) -> String {
    let mut s = String::new();
    writeln!(s, "## {}: {}", r.space, r.action).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "- verdict: {}", r.verdict).unwrap();
    if let Some(c) = r.cohomogeneity {
        writeln!(s, "- cohomogeneity: {c}").unwrap();
    }
    if let Some(sec) = &r.section_basis {
        writeln!(s, "- section dimension: {}", sec.dim()).unwrap();
    }
    writeln!(s, "- seed: {}", r.seed).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "| condition | pass | certificate |").unwrap();
    writeln!(s, "|---|---|---|").unwrap();
    for w in &r.witnesses {
        let cert = w
            .certificate
            .as_ref()
            .map(|c| serde_json::to_string(c).expect("certificates serialize"))
            .unwrap_or_default();
        writeln!(s, "| {} | {} | `{}` |", w.condition, mark(w.pass), cert).unwrap();
    }
    s
}

pub fn axioms_md(space: &str, checks: &[AxiomCheck]) -> String {
    let mut s = format!("## axioms of {space}\n\n| axiom | pass | witness |\n|---|---|---|\n");
    for c in checks {
        writeln!(s, "| {} | {} | {} |", c.axiom, mark(c.pass), c.witness.as_deref().unwrap_or("")).unwrap();
    }
    s
}

/// The summary table, one row per class.
pub fn summary_text(run: &ClassificationRun) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:<12} {:>6}  {:<12} {:<12} {:<13}  {:<16} {:<12} {:<13}",
        "class", "dim", "A(N)_0 on v", "expected", "status", "A(N)_0 x L(Z)", "expected", "status"
    )
    .unwrap();
    for row in &run.summary.rows {
        let c = |x: Option<usize>| x.map(|c| format!(" c={c}")).unwrap_or_default();
        writeln!(
            s,
            "{:<12} {:>6}  {:<12} {:<12} {:<13}  {:<16} {:<12} {:<13}",
            row.group,
            row.derivation_dim,
            format!("{}{}", row.representation.computed, c(row.representation.cohomogeneity)),
            row.representation.expected.to_string(),
            row.representation.status,
            format!("{}{}", row.pasl.computed, c(row.pasl.cohomogeneity)),
            row.pasl.expected.to_string(),
            row.pasl.status,
        )
        .unwrap();
    }
    writeln!(
        s,
        "{} classes: {} mismatches, {} inconclusive",
        run.summary.rows.len(),
        run.summary.mismatches,
        run.summary.inconclusive
    )
    .unwrap();
    s
}

pub fn summary_md(run: &ClassificationRun) -> String {
    let mut s = String::new();
    writeln!(s, "## classification, m <= {}, k <= {}, seed {}", run.m_max, run.k_max, run.seed).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "| class | dim A(N)_0 | on v | expected | status | on S | expected | status |").unwrap();
    writeln!(s, "|---|---|---|---|---|---|---|---|").unwrap();
    for row in &run.summary.rows {
        writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            row.group,
            row.derivation_dim,
            row.representation.computed,
            row.representation.expected,
            row.representation.status,
            row.pasl.computed,
            row.pasl.expected,
            row.pasl.status
        )
        .unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "{} mismatches, {} inconclusive", run.summary.mismatches, run.summary.inconclusive).unwrap();
    s
}
