//! Damek-Ricci spaces as solvable extensions `s = a + v + z` of generalized
//! Heisenberg algebras.
//!
//! Flat coordinates on `s`: index 0 is the `A` direction, then the `v`
//! block, then the `z` block. The inner product is the standard dot product
//! in these coordinates.

use serde::Serialize;

use crate::clifford::CliffordClass;
use crate::exactla::{dot, is_zero_vector, unit_vector, Rational, Vector};
use crate::heisenberg::{build_heisenberg, HeisenbergAlgebra};

/// An element `rA + U + X` of `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SVector {
    pub a_part: Rational,
    pub v_part: Vector,
    pub z_part: Vector,
}

impl SVector {
    pub fn zero(v_dim: usize, z_dim: usize) -> Self {
        Self {
            a_part: Rational::zero(),
            v_part: vec![Rational::zero(); v_dim],
            z_part: vec![Rational::zero(); z_dim],
        }
    }

    pub fn new(a_part: Rational, v_part: Vector, z_part: Vector) -> Self {
        Self { a_part, v_part, z_part }
    }

    /// Splits flat coordinates according to the block layout.
    pub fn from_flat(flat: &[Rational], v_dim: usize) -> Self {
        assert!(!flat.is_empty() && flat.len() > v_dim, "flat vector too short");
        Self {
            a_part: flat[0].clone(),
            v_part: flat[1..1 + v_dim].to_vec(),
            z_part: flat[1 + v_dim..].to_vec(),
        }
    }

    pub fn to_flat(&self) -> Vector {
        let mut out = Vec::with_capacity(1 + self.v_part.len() + self.z_part.len());
        out.push(self.a_part.clone());
        out.extend(self.v_part.iter().cloned());
        out.extend(self.z_part.iter().cloned());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a_part.is_zero() && is_zero_vector(&self.v_part) && is_zero_vector(&self.z_part)
    }

    pub fn add(&self, other: &SVector) -> SVector {
        SVector {
            a_part: &self.a_part + &other.a_part,
            v_part: crate::exactla::add_vectors(&self.v_part, &other.v_part),
            z_part: crate::exactla::add_vectors(&self.z_part, &other.z_part),
        }
    }

    pub fn sub(&self, other: &SVector) -> SVector {
        SVector {
            a_part: &self.a_part - &other.a_part,
            v_part: crate::exactla::sub_vectors(&self.v_part, &other.v_part),
            z_part: crate::exactla::sub_vectors(&self.z_part, &other.z_part),
        }
    }

    pub fn scale(&self, c: &Rational) -> SVector {
        SVector {
            a_part: c * &self.a_part,
            v_part: crate::exactla::scale_vector(c, &self.v_part),
            z_part: crate::exactla::scale_vector(c, &self.z_part),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DamekRicciSpace {
    heis: HeisenbergAlgebra,
    s_dim: usize,
}

pub fn build_space(cls: CliffordClass) -> DamekRicciSpace {
    let space = DamekRicciSpace::from_heisenberg(build_heisenberg(cls));
    if cfg!(debug_assertions) && space.s_dim <= 24 {
        debug_assert!(space.jacobi_failure().is_none(), "Jacobi identity fails on {}", cls.space_label());
    }
    space
}

fn axpy(out: &mut [Rational], c: &Rational, x: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (o, xi) in out.iter_mut().zip(x) {
        if !xi.is_zero() {
            *o += c * xi;
        }
    }
}

impl DamekRicciSpace {
    pub fn from_heisenberg(heis: HeisenbergAlgebra) -> Self {
        let s_dim = 1 + heis.v_dim() + heis.z_dim();
        Self { heis, s_dim }
    }

    pub fn heisenberg(&self) -> &HeisenbergAlgebra {
        &self.heis
    }

    pub fn class(&self) -> CliffordClass {
        self.heis.class()
    }

    pub fn label(&self) -> String {
        self.class().space_label()
    }

    pub fn s_dim(&self) -> usize {
        self.s_dim
    }

    pub fn v_dim(&self) -> usize {
        self.heis.v_dim()
    }

    pub fn z_dim(&self) -> usize {
        self.heis.z_dim()
    }

    /// Offset of the `v` block in flat coordinates.
    pub fn v_offset(&self) -> usize {
        1
    }

    pub fn z_offset(&self) -> usize {
        1 + self.v_dim()
    }

    pub fn zero(&self) -> SVector {
        SVector::zero(self.v_dim(), self.z_dim())
    }

    pub fn a_unit(&self) -> SVector {
        let mut x = self.zero();
        x.a_part = Rational::one();
        x
    }

    pub fn from_v(&self, u: Vector) -> SVector {
        assert_eq!(u.len(), self.v_dim());
        SVector::new(Rational::zero(), u, vec![Rational::zero(); self.z_dim()])
    }

    pub fn from_z(&self, x: Vector) -> SVector {
        assert_eq!(x.len(), self.z_dim());
        SVector::new(Rational::zero(), vec![Rational::zero(); self.v_dim()], x)
    }

    pub fn basis_vector(&self, i: usize) -> SVector {
        SVector::from_flat(&unit_vector(self.s_dim, i), self.v_dim())
    }

    pub fn from_flat(&self, flat: &[Rational]) -> SVector {
        assert_eq!(flat.len(), self.s_dim);
        SVector::from_flat(flat, self.v_dim())
    }

    fn check_dims(&self, x: &SVector) {
        assert_eq!(x.v_part.len(), self.v_dim(), "v-part has the wrong dimension");
        assert_eq!(x.z_part.len(), self.z_dim(), "z-part has the wrong dimension");
    }

    pub fn inner(&self, x: &SVector, y: &SVector) -> Rational {
        self.check_dims(x);
        self.check_dims(y);
        &(&(&x.a_part * &y.a_part) + &dot(&x.v_part, &y.v_part)) + &dot(&x.z_part, &y.z_part)
    }

    /// `[rA+U+X, sA+V+Y] = r(V/2 + Y) - s(U/2 + X) + [U,V]`.
    pub fn bracket_s(&self, x: &SVector, y: &SVector) -> SVector {
        self.check_dims(x);
        self.check_dims(y);
        let half = Rational::new(1, 2);
        let mut out = self.zero();
        let (r, s) = (&x.a_part, &y.a_part);
        axpy(&mut out.v_part, &(&half * r), &y.v_part);
        axpy(&mut out.v_part, &-(&half * s), &x.v_part);
        axpy(&mut out.z_part, r, &y.z_part);
        axpy(&mut out.z_part, &-s, &x.z_part);
        if self.z_dim() > 0 && !is_zero_vector(&x.v_part) && !is_zero_vector(&y.v_part) {
            let uv = self.heis.bracket_v(&x.v_part, &y.v_part);
            axpy(&mut out.z_part, &Rational::one(), &uv);
        }
        out
    }

    /// `ad_y^T x`, i.e. the vector `w` with `<w, u> = <x, [y, u]>` for all `u`.
    fn ad_transpose(&self, y: &SVector, x: &SVector) -> SVector {
        let half = Rational::new(1, 2);
        let a = -(&(&half * &dot(&y.v_part, &x.v_part)) + &dot(&y.z_part, &x.z_part));
        let mut v = crate::exactla::scale_vector(&(&half * &y.a_part), &x.v_part);
        if self.z_dim() > 0 && !is_zero_vector(&x.z_part) {
            axpy(&mut v, &Rational::one(), &self.heis.j_apply(&x.z_part, &y.v_part));
        }
        let z = crate::exactla::scale_vector(&y.a_part, &x.z_part);
        SVector::new(a, v, z)
    }

    /// Levi-Civita connection on left-invariant fields, from
    /// `2<D_x y, w> = <[x,y],w> - <[y,w],x> + <[w,x],y>`.
    pub fn nabla_left_invariant(&self, x: &SVector, y: &SVector) -> SVector {
        let two = self
            .bracket_s(x, y)
            .sub(&self.ad_transpose(y, x))
            .sub(&self.ad_transpose(x, y));
        two.scale(&Rational::new(1, 2))
    }

    /// `2<D_xi eta, zeta>(e)` for right-invariant Killing fields with the
    /// given values at the identity.
    pub fn killing_koszul_at_e(&self, xi: &SVector, eta: &SVector, zeta: &SVector) -> Rational {
        let t1 = self.inner(&self.bracket_s(xi, eta), zeta);
        let t2 = self.inner(&self.bracket_s(xi, zeta), eta);
        let t3 = self.inner(xi, &self.bracket_s(eta, zeta));
        -(&(&t1 + &t2) + &t3)
    }

    /// `[e_i, e_j]` for all basis pairs, as sparse coordinate lists.
    fn bracket_table(&self) -> Vec<Vec<Vec<(usize, Rational)>>> {
        let basis: Vec<SVector> = (0..self.s_dim).map(|i| self.basis_vector(i)).collect();
        basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| {
                        let b = self.bracket_s(x, y).to_flat();
                        b.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let t = self.bracket_table();
        let n = self.s_dim;
        let mut acc = vec![Rational::zero(); n];
        let mut touched: Vec<usize> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for (x, y, w) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, c) in &t[x][y] {
                            for (m, d) in &t[*l][w] {
                                acc[*m] += c * d;
                                touched.push(*m);
                            }
                        }
                    }
                    let bad = touched.iter().any(|&m| !acc[m].is_zero());
                    for &m in &touched {
                        acc[m] = Rational::zero();
                    }
                    touched.clear();
                    if bad {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Nonzero structure constants `[e_i, e_j] = sum_k c_ij^k e_k` with `i < j`.
    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for i in 0..self.s_dim {
            let ei = self.basis_vector(i);
            for j in i + 1..self.s_dim {
                let b = self.bracket_s(&ei, &self.basis_vector(j)).to_flat();
                for (k, c) in b.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.push(StructureConstant { i, j, k, value: c });
                    }
                }
            }
        }
        out
    }

    pub fn dump(&self) -> SpaceDump {
        SpaceDump {
            space: self.label(),
            s_dim: self.s_dim,
            v_dim: self.v_dim(),
            z_dim: self.z_dim(),
            layout: "index 0 = A, then v, then z".to_string(),
            structure_constants: self.structure_constants(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpaceDump {
    pub space: String,
    pub s_dim: usize,
    pub v_dim: usize,
    pub z_dim: usize,
    pub layout: String,
    pub structure_constants: Vec<StructureConstant>,
}
