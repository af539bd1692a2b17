//! Skew-symmetric derivations of `n` preserving `v` and `z`: the Lie algebra
//! of the identity component of the isometric automorphisms of `N`.

use super::rep::RepAction;
use crate::exactla::{
    commutator_entry_terms, Echelon, ExactMatrix, MatrixUnknowns, SparseRow, SparseSquare,
};
use crate::heisenberg::HeisenbergAlgebra;

/// Basis of the derivation algebra as pairs `(D_v, D_z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivations {
    v_dim: usize,
    z_dim: usize,
    basis: Vec<(ExactMatrix, ExactMatrix)>,
}

impl Derivations {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(ExactMatrix, ExactMatrix)] {
        &self.basis
    }

    /// The action on `v + z` by block-diagonal matrices.
    pub fn action(&self) -> RepAction {
        let gens = self
            .basis
            .iter()
            .map(|(dv, dz)| ExactMatrix::block_diagonal(&[dv.clone(), dz.clone()]))
            .collect();
        RepAction::new(self.v_dim + self.z_dim, gens).expect("skew by construction")
    }

    /// The action restricted to `v`.
    pub fn on_v(&self) -> RepAction {
        RepAction::new(self.v_dim, self.basis.iter().map(|(dv, _)| dv.clone()).collect())
            .expect("skew by construction")
    }

    /// Span of the `v`-parts, in skew upper-triangle coordinates.
    pub(crate) fn v_span(&self) -> Echelon {
        let u = MatrixUnknowns::Skew { n: self.v_dim };
        let mut ech = Echelon::new(u.count());
        for (dv, _) in &self.basis {
            ech.insert(skew_coordinates(dv));
        }
        ech
    }
}

/// Upper-triangle coordinates of a skew matrix.
pub(crate) fn skew_coordinates(m: &ExactMatrix) -> SparseRow {
    let n = m.rows();
    let u = MatrixUnknowns::Skew { n };
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = m.get(i, j);
            if !x.is_zero() {
                terms.push((u.entry(i, j).expect("off-diagonal").0, x.clone()));
            }
        }
    }
    SparseRow::from_terms(terms)
}

/// Solves `D[U,V] = [DU,V] + [U,DV]` for skew block-preserving `D`.
///
/// In terms of the generators this reads
/// `sum_i (D_z)_{ji} G_i = G_j D_v - D_v G_j` for every `j`.
pub fn derivation_algebra(heis: &HeisenbergAlgebra) -> Derivations {
    let (n, m) = (heis.v_dim(), heis.z_dim());
    let uv = MatrixUnknowns::Skew { n };
    let uz = MatrixUnknowns::Skew { n: m };
    let offset = uv.count();
    let mut ech = Echelon::new(offset + uz.count());
    let gens = heis.generators();
    let sparse: Vec<SparseSquare> = gens.iter().map(SparseSquare::new).collect();
    let mut terms = Vec::new();
    for (j, sj) in sparse.iter().enumerate() {
        // both sides are skew, so the strict upper triangle suffices
        for a in 0..n {
            for b in a + 1..n {
                terms.clear();
                commutator_entry_terms(sj, sj, &uv, 0, a, b, &mut terms);
                for t in terms.iter_mut() {
                    t.1 = -&t.1;
                }
                for (i, g) in gens.iter().enumerate() {
                    let x = g.get(a, b);
                    if x.is_zero() {
                        continue;
                    }
                    if let Some((k, pos)) = uz.entry(j, i) {
                        terms.push((offset + k, if pos { x.clone() } else { -x }));
                    }
                }
                if !terms.is_empty() {
                    ech.insert(SparseRow::from_terms(terms.drain(..)));
                }
            }
        }
    }
    let basis = ech
        .nullspace()
        .into_iter()
        .map(|c| (uv.to_matrix(&c[..offset]), uz.to_matrix(&c[offset..])))
        .collect();
    Derivations { v_dim: n, z_dim: m, basis }
}

/// Whether every matrix lies in the span of the derivations' `v`-parts.
pub(crate) fn in_derivation_image(derivs: &Derivations, mats: &[ExactMatrix]) -> Option<usize> {
    let ech = derivs.v_span();
    mats.iter().position(|m| !ech.reduce(skew_coordinates(m)).is_empty())
}
