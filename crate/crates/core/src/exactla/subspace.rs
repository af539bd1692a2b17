use serde::{Deserialize, Serialize};

use super::matrix::{dot, is_zero_vector, primitive, sub_vectors, ExactMatrix, Vector};
use super::rational::Rational;
use super::sparse::{Echelon, SparseRow};
use super::LinalgError;

/// A linear subspace of `Q^ambient_dim`, stored as a list of linearly
/// independent basis vectors (the columns of the basis matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| super::matrix::unit_vector(ambient_dim, i))
                .collect(),
        }
    }

    /// Span of arbitrary vectors; dependent vectors are dropped, keeping the
    /// first independent ones in order.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self, LinalgError> {
        let mut ech = Echelon::new(ambient_dim);
        let mut basis = Vec::new();
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {ambient_dim}",
                    v.len()
                )));
            }
            if ech.insert_dense(v) {
                basis.push(v.clone());
            }
        }
        Ok(Self { ambient_dim, basis })
    }

    /// Subspace from a basis that must already be independent.
    pub fn from_basis(ambient_dim: usize, basis: Vec<Vector>) -> Result<Self, LinalgError> {
        let s = Self::span(ambient_dim, &basis)?;
        if s.dim() != basis.len() {
            return Err(LinalgError::DependentBasis);
        }
        Ok(s)
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(ambient_dim: usize, axes: impl IntoIterator<Item = usize>) -> Self {
        Self {
            ambient_dim,
            basis: axes
                .into_iter()
                .map(|i| super::matrix::unit_vector(ambient_dim, i))
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.ambient_dim, &self.basis).expect("consistent lengths")
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim);
        for v in &self.basis {
            e.insert_dense(v);
        }
        e
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        if other.ambient_dim != self.ambient_dim {
            return false;
        }
        let e = self.echelon();
        other.basis.iter().all(|v| e.contains(v))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &all)
    }

    /// Orthogonal projection of `v` onto the subspace (standard inner product).
    pub fn project(&self, v: &[Rational]) -> Vector {
        let k = self.dim();
        if k == 0 {
            return vec![Rational::zero(); self.ambient_dim];
        }
        let mut gram = ExactMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram.set(i, j, dot(&self.basis[i], &self.basis[j]));
            }
        }
        let rhs: Vector = self.basis.iter().map(|b| dot(b, v)).collect();
        let c = gram.solve(&rhs).expect("Gram matrix of a basis is nonsingular");
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += ci * x;
            }
        }
        out
    }

    /// Component of `v` orthogonal to the subspace.
    pub fn reject(&self, v: &[Rational]) -> Vector {
        sub_vectors(v, &self.project(v))
    }

    /// Embeds a subspace of a block into a larger ambient space at `offset`.
    pub fn embed(&self, ambient_dim: usize, offset: usize) -> Subspace {
        assert!(offset + self.ambient_dim <= ambient_dim);
        Subspace {
            ambient_dim,
            basis: self
                .basis
                .iter()
                .map(|b| {
                    let mut v = vec![Rational::zero(); ambient_dim];
                    v[offset..offset + b.len()].clone_from_slice(b);
                    v
                })
                .collect(),
        }
    }

    /// Basis with every vector rescaled to a primitive integer vector.
    pub fn primitive(&self) -> Subspace {
        Subspace {
            ambient_dim: self.ambient_dim,
            basis: self.basis.iter().map(|b| primitive(b)).collect(),
        }
    }
}

/// Wire form: `{ "ambient_dim": n, "basis": [[...], ...] }`, one inner array
/// per basis vector.
#[derive(Serialize, Deserialize)]
struct SubspaceWire {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SubspaceWire {
            ambient_dim: self.ambient_dim,
            basis: self.basis.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = SubspaceWire::deserialize(deserializer)?;
        Subspace::from_basis(w.ambient_dim, w.basis).map_err(serde::de::Error::custom)
    }
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(m: &ExactMatrix) -> Subspace {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(SparseRow::from_dense(m.row(i)));
    }
    Subspace {
        ambient_dim: m.cols(),
        basis: e.nullspace(),
    }
}

/// Orthogonal complement of `u` inside `within`, for the standard inner
/// product on the ambient coordinates.
pub fn orth_complement(u: &Subspace, within: &Subspace) -> Result<Subspace, LinalgError> {
    if u.ambient_dim != within.ambient_dim {
        return Err(LinalgError::DimensionMismatch(
            "subspaces live in different ambient spaces".into(),
        ));
    }
    if !within.contains_subspace(u) {
        return Err(LinalgError::NotContained);
    }
    // Coefficients c with <u_i, W c> = 0 for all i.
    let k = within.dim();
    let mut e = Echelon::new(k);
    for ui in &u.basis {
        let row: Vector = within.basis.iter().map(|w| dot(ui, w)).collect();
        e.insert_dense(&row);
    }
    let basis = e
        .nullspace()
        .into_iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); within.ambient_dim];
            for (ci, w) in c.iter().zip(&within.basis) {
                if ci.is_zero() {
                    continue;
                }
                for (o, x) in v.iter_mut().zip(w) {
                    *o += ci * x;
                }
            }
            primitive(&v)
        })
        .filter(|v| !is_zero_vector(v))
        .collect();
    Ok(Subspace {
        ambient_dim: within.ambient_dim,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::matrix::{int_vector, unit_vector};

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&ExactMatrix::identity(3)).dim(), 0);
        assert_eq!(nullspace(&ExactMatrix::zeros(2, 3)).dim(), 3);
        let ns = nullspace(&ExactMatrix::from_i64(&[&[1, 1, 0]]));
        assert_eq!(ns.dim(), 2);
        for b in ns.basis() {
            // substitution: b1 + b2 = 0
            assert!((&b[0] + &b[1]).is_zero());
        }
    }

    #[test]
    fn complement_examples() {
        let r3 = Subspace::full(3);
        let e1 = Subspace::coordinate(3, [0]);
        let c = orth_complement(&e1, &r3).unwrap();
        assert!(c.same_span(&Subspace::coordinate(3, [1, 2])));
        assert_eq!(orth_complement(&r3, &r3).unwrap().dim(), 0);

        let plane = Subspace::coordinate(3, [0, 1]);
        let diag = Subspace::span(3, &[int_vector(&[1, 1, 0])]).unwrap();
        let c = orth_complement(&diag, &plane).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(dot(&c.basis()[0], &int_vector(&[1, 1, 0])).is_zero());
        assert!(c.contains(&int_vector(&[1, -1, 0])));
    }

    #[test]
    fn complement_requires_containment() {
        let plane = Subspace::coordinate(3, [0, 1]);
        let e3 = Subspace::coordinate(3, [2]);
        assert_eq!(orth_complement(&e3, &plane), Err(LinalgError::NotContained));
    }

    #[test]
    fn projection_and_rejection() {
        let line = Subspace::span(2, &[int_vector(&[1, 1])]).unwrap();
        let p = line.project(&unit_vector(2, 0));
        assert_eq!(p, vec![Rational::new(1, 2), Rational::new(1, 2)]);
        assert_eq!(line.reject(&unit_vector(2, 0)), vec![Rational::new(1, 2), Rational::new(-1, 2)]);
    }

    #[test]
    fn wire_format() {
        let s = Subspace::span(2, &[int_vector(&[1, 2])]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"ambient_dim":2,"basis":[["1","2"]]}"#);
        let back: Subspace = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Subspace>(r#"{"ambient_dim":2,"basis":[["1","2"],["2","4"]]}"#).is_err());
        assert!(serde_json::from_str::<Subspace>(r#"{"ambient_dim":3,"basis":[["1","2"]]}"#).is_err());
    }
}
