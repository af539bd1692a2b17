use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactla::{ExactMatrix, Rational, Subspace, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Polar,
    NonPolar,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Polar => "polar",
            Verdict::NonPolar => "non-polar",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Evidence attached to a witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `<M y, z> != 0` for generator `M` of the acting algebra.
    Bilinear {
        generator: usize,
        y: Vector,
        z: Vector,
        value: Rational,
    },
    /// `<J_{e_i} v, w> != 0`; `index` is the 1-based z-coordinate.
    JPairing {
        index: usize,
        v: Vector,
        w: Vector,
        value: Rational,
    },
    /// `J_Z V` has a component outside `v'`.
    Containment { z: Vector, v: Vector, outside: Vector },
    /// Float-path counterpart of the bilinear certificates.
    Numeric { generator: usize, value: f64 },
    Dimension { value: usize },
    Vector { vector: Vector },
    Matrices { matrices: Vec<ExactMatrix> },
    Note { text: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub condition: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Witness {
    pub fn pass(condition: &str) -> Self {
        Self { condition: condition.into(), pass: true, certificate: None }
    }

    pub fn fail(condition: &str, certificate: Certificate) -> Self {
        Self { condition: condition.into(), pass: false, certificate: Some(certificate) }
    }

    pub fn with(condition: &str, pass: bool, certificate: Certificate) -> Self {
        Self { condition: condition.into(), pass, certificate: Some(certificate) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarityReport {
    pub space: String,
    pub action: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomogeneity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_basis: Option<Subspace>,
    pub witnesses: Vec<Witness>,
    pub seed: u64,
}

impl PolarityReport {
    pub fn new(space: impl Into<String>, action: impl Into<String>, seed: u64) -> Self {
        Self {
            space: space.into(),
            action: action.into(),
            verdict: Verdict::Inconclusive,
            cohomogeneity: None,
            section_basis: None,
            witnesses: Vec::new(),
            seed,
        }
    }

    pub fn push(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn polar(&mut self, section: Subspace, cohomogeneity: usize) {
        self.verdict = Verdict::Polar;
        self.cohomogeneity = Some(cohomogeneity);
        self.section_basis = Some(section);
    }

    pub fn is_polar(&self) -> bool {
        self.verdict == Verdict::Polar
    }

    pub fn witness(&self, condition: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.condition == condition)
    }

    /// Checks the consistency rules between the verdict and the evidence.
    pub fn validate(&self) -> Result<(), String> {
        match self.verdict {
            Verdict::Polar => {
                if self.section_basis.is_none() {
                    return Err("polar verdict without a section".into());
                }
                if let Some(w) = self.witnesses.iter().find(|w| !w.pass) {
                    return Err(format!("polar verdict with failing witness {:?}", w.condition));
                }
            }
            Verdict::NonPolar => {
                if !self.witnesses.iter().any(|w| !w.pass && w.certificate.is_some()) {
                    return Err("non-polar verdict without a certified failing witness".into());
                }
            }
            Verdict::Inconclusive => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rules() {
        let mut r = PolarityReport::new("S(1,1)", "test", 0);
        assert!(r.validate().is_ok());
        r.verdict = Verdict::Polar;
        assert!(r.validate().is_err());
        r.polar(Subspace::full(1), 1);
        assert!(r.validate().is_ok());
        r.push(Witness::fail("x", Certificate::Dimension { value: 1 }));
        assert!(r.validate().is_err());
        r.verdict = Verdict::NonPolar;
        assert!(r.validate().is_ok());
    }

    #[test]
    fn json_shape() {
        let mut r = PolarityReport::new("S(0,1)", "N", 3);
        r.polar(Subspace::full(1), 1);
        r.push(Witness::pass("ok"));
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(
            j,
            r#"{"space":"S(0,1)","action":"N","verdict":"polar","cohomogeneity":1,"section_basis":{"ambient_dim":1,"basis":[["1"]]},"witnesses":[{"condition":"ok","pass":true}],"seed":3}"#
        );
        let back: PolarityReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
