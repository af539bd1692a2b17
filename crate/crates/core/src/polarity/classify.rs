//! Sweep over Clifford classes: polarity of `A(N)_0` on `v` and of the
//! `A(N)_0 x L(Z)` action on `S`.

use rayon::prelude::*;
use serde::Serialize;

use super::criteria::{pasl_float_with, pasl_with};
use super::derivations::derivation_algebra;
use super::rep::{is_polar_rep, is_polar_rep_float, FloatPolarity, RepPolarity};
use super::report::{Certificate, PolarityReport, Verdict, Witness};
use crate::clifford::CliffordClass;
use crate::damek_ricci::DamekRicciSpace;
use crate::heisenberg::build_heisenberg;
use crate::sampling::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Arithmetic {
    Exact,
    Float { tol: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationEntry {
    #[serde(skip)]
    pub class: CliffordClass,
    pub group: String,
    pub derivation_dim: usize,
    /// `A(N)_0` acting on `v`.
    pub representation: PolarityReport,
    /// `A(N)_0 x L(Z)` acting on `S`.
    pub pasl: PolarityReport,
}

fn representation_report(cls: CliffordClass, rep: &RepPolarity, seed: u64) -> PolarityReport {
    let mut r = PolarityReport::new(cls.group_label(), "A(N)_0 on v", seed);
    match rep {
        RepPolarity::Polar { section, cohomogeneity, .. } => {
            r.push(Witness::pass("normal_space_is_section"));
            r.polar(section.clone(), *cohomogeneity);
        }
        RepPolarity::NonPolar { cohomogeneity, generator, y, z, value, .. } => {
            r.cohomogeneity = Some(*cohomogeneity);
            r.push(Witness::fail(
                "normal_space_is_section",
                Certificate::Bilinear { generator: *generator, y: y.clone(), z: z.clone(), value: value.clone() },
            ));
            r.verdict = Verdict::NonPolar;
        }
        RepPolarity::Inconclusive { orbit_dims } => r.push(Witness::with(
            "generic_point",
            false,
            Certificate::Note { text: format!("orbit dimensions disagree: {orbit_dims:?}") },
        )),
    }
    r
}

fn representation_report_float(cls: CliffordClass, rep: &FloatPolarity, seed: u64) -> PolarityReport {
    let mut r = PolarityReport::new(cls.group_label(), "A(N)_0 on v", seed);
    match rep {
        FloatPolarity::Polar { cohomogeneity, section } => {
            r.push(Witness::pass("normal_space_is_section"));
            let ell = super::criteria::rationalize_columns(section);
            r.polar(ell, *cohomogeneity);
        }
        FloatPolarity::NonPolar { cohomogeneity, generator, value } => {
            r.cohomogeneity = Some(*cohomogeneity);
            r.push(Witness::fail(
                "normal_space_is_section",
                Certificate::Numeric { generator: *generator, value: *value },
            ));
            r.verdict = Verdict::NonPolar;
        }
        FloatPolarity::Inconclusive { orbit_dims } => r.push(Witness::with(
            "generic_point",
            false,
            Certificate::Note { text: format!("orbit dimensions disagree: {orbit_dims:?}") },
        )),
    }
    r
}

/// Both reports for one class; the seed is specialised per class so the
/// result does not depend on sweep order.
pub fn classify_class(cls: CliffordClass, seed: u64, arith: Arithmetic) -> ClassificationEntry {
    let class_seed = derive_seed(seed, &cls.group_label());
    let heis = build_heisenberg(cls);
    let derivs = derivation_algebra(&heis);
    let on_v = derivs.on_v();
    let space = DamekRicciSpace::from_heisenberg(heis);
    let rep_seed = derive_seed(class_seed, "rep");
    let (representation, pasl) = match arith {
        Arithmetic::Exact => {
            let rep = is_polar_rep(&on_v, rep_seed);
            (representation_report(cls, &rep, seed), pasl_with(&space, &derivs, &rep, seed))
        }
        Arithmetic::Float { tol } => {
            let rep = is_polar_rep_float(&on_v, rep_seed, tol);
            (
                representation_report_float(cls, &rep, seed),
                pasl_float_with(&space, &derivs, &rep, seed, tol),
            )
        }
    };
    ClassificationEntry { class: cls, group: cls.group_label(), derivation_dim: derivs.dim(), representation, pasl }
}

/// Every class with `m <= m_max` and multiplicities up to `k_max`, sorted.
pub fn classify(m_max: usize, k_max: usize, seed: u64, arith: Arithmetic) -> Vec<ClassificationEntry> {
    CliffordClass::enumerate(m_max, k_max)
        .into_par_iter()
        .map(|cls| classify_class(cls, seed, arith))
        .collect()
}
