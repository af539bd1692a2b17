//! Polarity criteria for isometric actions on Damek-Ricci spaces.
//!
//! Everything here is evaluated at the identity `e` of `S`, using the
//! algebraic data of [`crate::damek_ricci`]: subalgebras are given by
//! subspaces of the blocks `a`, `v`, `z`, and compact groups of automorphisms
//! are given by bases of skew-symmetric matrices.

mod classify;
mod criteria;
mod derivations;
mod rep;
mod report;
mod torus;

pub use classify::{classify, classify_class, Arithmetic, ClassificationEntry};
pub use criteria::{
    check_foliation_polar, check_main, check_mthm, check_pasl_action, check_pasl_action_float,
    construct_cor_pfol, is_totally_geodesic, GeodesicTest,
};
pub use derivations::{derivation_algebra, Derivations};
pub use rep::{
    certify_generic_point, cohomogeneity, is_polar_rep, is_polar_rep_float, is_polar_rep_on,
    FloatPolarity, GenericPoint, RepAction, RepPolarity,
};
pub use report::{Certificate, PolarityReport, Verdict, Witness};
pub use torus::{construct_cor_psgo, maximal_torus};

use thiserror::Error;

use crate::damek_ricci::DamekRicciSpace;
use crate::exactla::{LinalgError, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarityError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("generator {0} does not leave the subspace invariant")]
    NotInvariant(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Subalgebra `b + v' + z'` of `s`.
#[derive(Debug, Clone)]
pub struct SubalgebraSpec<'a> {
    pub space: &'a DamekRicciSpace,
    /// Subspace of the one-dimensional `a`.
    pub b: Subspace,
    pub v_prime: Subspace,
    pub z_prime: Subspace,
}

impl<'a> SubalgebraSpec<'a> {
    pub fn new(
        space: &'a DamekRicciSpace,
        b: Subspace,
        v_prime: Subspace,
        z_prime: Subspace,
    ) -> Result<Self, PolarityError> {
        let checks = [
            (b.ambient_dim(), 1, "b"),
            (v_prime.ambient_dim(), space.v_dim(), "v'"),
            (z_prime.ambient_dim(), space.z_dim(), "z'"),
        ];
        for (got, want, name) in checks {
            if got != want {
                return Err(PolarityError::Invalid(format!(
                    "{name} lives in dimension {got}, expected {want}"
                )));
            }
        }
        Ok(Self { space, b, v_prime, z_prime })
    }

    /// `a + v' + z'`.
    pub fn with_a(space: &'a DamekRicciSpace, v_prime: Subspace, z_prime: Subspace) -> Result<Self, PolarityError> {
        Self::new(space, Subspace::full(1), v_prime, z_prime)
    }

    pub fn dim(&self) -> usize {
        self.b.dim() + self.v_prime.dim() + self.z_prime.dim()
    }

    /// The subalgebra as a subspace of `s` in flat coordinates.
    pub fn flat(&self) -> Subspace {
        flat_subspace(self.space, &self.b, &self.v_prime, &self.z_prime)
    }
}

/// Joins block subspaces into one subspace of `s`.
pub(crate) fn flat_subspace(space: &DamekRicciSpace, b: &Subspace, v: &Subspace, z: &Subspace) -> Subspace {
    let n = space.s_dim();
    let mut basis: Vec<Vector> = b.embed(n, 0).basis().to_vec();
    basis.extend(v.embed(n, space.v_offset()).basis().iter().cloned());
    basis.extend(z.embed(n, space.z_offset()).basis().iter().cloned());
    Subspace::from_basis(n, basis).expect("blocks are independent")
}
