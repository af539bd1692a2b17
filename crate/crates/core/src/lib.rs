//! Damek-Ricci spaces built from Clifford modules, with exact checks of
//! polarity criteria for isometric actions on them.
//!
//! The layers, bottom up:
//!
//! * [`exactla`]: exact rational linear algebra.
//! * [`clifford`]: integer generator matrices of real Clifford modules.
//! * [`heisenberg`]: generalized Heisenberg algebras `n = v + z`.
//! * [`damek_ricci`]: the solvable extension `s = a + v + z`, its metric and
//!   the two connection formulas evaluated at the identity.
//! * [`polarity`]: totally geodesic subgroups, derivation algebras,
//!   polar representations and the composite polarity criteria.

pub mod clifford;
pub mod damek_ricci;
pub mod exactla;
pub mod heisenberg;
pub mod polarity;
pub mod sampling;

pub use clifford::{CliffordClass, CliffordModule, Multiplicity};
pub use damek_ricci::{DamekRicciSpace, SVector};
pub use exactla::{ExactMatrix, Rational, Subspace};
pub use heisenberg::HeisenbergAlgebra;
