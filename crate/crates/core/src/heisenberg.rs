//! Generalized Heisenberg algebras `n = v + z` built from Clifford modules.
//!
//! Coordinates on `n` are the concatenation of the `v` and `z` blocks, and
//! the inner product is the standard dot product, so `<v, z> = 0` holds by
//! construction. The bracket of `U, V` in `v` is the `z`-vector with
//! coordinates `<G_i U, V>`, which is exactly the relation
//! `<J_Z U, V> = <[U, V], Z>` for the map `J_Z = sum_i Z_i G_i`.

use serde::Serialize;

use crate::clifford::{build_module, CliffordClass, CliffordModule};
use crate::exactla::{dot, Echelon, ExactMatrix, Rational, SparseRow, SparseSquare, Subspace, Vector};
use crate::sampling::{random_rational_vector, rng_from_seed};

#[derive(Debug, Clone)]
pub struct HeisenbergAlgebra {
    module: CliffordModule,
    v_dim: usize,
    z_dim: usize,
    /// `B_i = G_i^T`, so that `[U, V]_i = U^T B_i V`.
    bracket_tensor: Vec<ExactMatrix>,
    sparse: Vec<SparseSquare>,
}

/// Result of one axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn new(axiom: &str, witness: Option<String>) -> Self {
        Self {
            axiom: axiom.to_string(),
            pass: witness.is_none(),
            witness,
        }
    }
}

pub fn all_pass(checks: &[AxiomCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}

pub fn build_heisenberg(cls: CliffordClass) -> HeisenbergAlgebra {
    HeisenbergAlgebra::from_module(build_module(cls))
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl HeisenbergAlgebra {
    pub fn from_module(module: CliffordModule) -> Self {
        let bracket_tensor = module.generators().iter().map(ExactMatrix::transpose).collect();
        let sparse = module.generators().iter().map(SparseSquare::new).collect();
        Self {
            v_dim: module.v_dim(),
            z_dim: module.m(),
            module,
            bracket_tensor,
            sparse,
        }
    }

    pub fn class(&self) -> CliffordClass {
        self.module.class()
    }

    pub fn module(&self) -> &CliffordModule {
        &self.module
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn z_dim(&self) -> usize {
        self.z_dim
    }

    pub fn n_dim(&self) -> usize {
        self.v_dim + self.z_dim
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        self.module.generators()
    }

    pub fn bracket_tensor(&self) -> &[ExactMatrix] {
        &self.bracket_tensor
    }

    /// `J_Z = sum_i Z_i G_i`.
    pub fn j_of(&self, z: &[Rational]) -> ExactMatrix {
        assert_eq!(z.len(), self.z_dim, "z-vector has the wrong dimension");
        let mut out = ExactMatrix::zeros(self.v_dim, self.v_dim);
        for (zi, g) in z.iter().zip(self.generators()) {
            if !zi.is_zero() {
                out = &out + &g.scale(zi);
            }
        }
        out
    }

    /// `J_Z U` without forming the matrix.
    pub fn j_apply(&self, z: &[Rational], u: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.v_dim];
        for (zi, g) in z.iter().zip(&self.sparse) {
            if zi.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g.apply(u)) {
                if !x.is_zero() {
                    *o += zi * &x;
                }
            }
        }
        out
    }

    /// `[U, V]` for `U, V` in `v`; a `z`-vector.
    pub fn bracket_v(&self, u: &[Rational], v: &[Rational]) -> Vector {
        assert_eq!(u.len(), self.v_dim);
        assert_eq!(v.len(), self.v_dim);
        // <G_i U, V>, with the generators stored sparsely
        self.sparse.iter().map(|g| dot(&g.apply(u), v)).collect()
    }

    /// Bracket on `n`, vectors given in `v + z` coordinates.
    pub fn bracket_n(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let (xv, _) = x.split_at(self.v_dim);
        let (yv, _) = y.split_at(self.v_dim);
        let mut out = vec![Rational::zero(); self.v_dim];
        out.extend(self.bracket_v(xv, yv));
        out
    }

    /// Center of `n` as a subspace of `v + z` coordinates.
    pub fn center(&self) -> Subspace {
        let (n, nv) = (self.n_dim(), self.v_dim);
        // x is central iff the z_k-coefficient of [x, e_b] vanishes for all
        // b, k; only the v-part of x contributes.
        let mut ech = Echelon::new(n);
        for b in 0..nv {
            let eb = crate::exactla::unit_vector(nv, b);
            let cols: Vec<Vector> =
                (0..nv).map(|a| self.bracket_v(&crate::exactla::unit_vector(nv, a), &eb)).collect();
            for k in 0..self.z_dim {
                let terms = cols.iter().enumerate().map(|(a, c)| (a, c[k].clone()));
                ech.insert(SparseRow::from_terms(terms));
            }
        }
        Subspace::from_basis(n, ech.nullspace()).expect("nullspace basis is independent")
    }

    /// Checks every defining axiom; failures carry a witness.
    pub fn verify_axioms(&self, seed: u64) -> Vec<AxiomCheck> {
        let mut out = Vec::new();
        let n = self.v_dim;
        let gens = self.generators();

        let rel = self.module.relation_failures();
        out.push(AxiomCheck::new(
            "clifford_relations",
            rel.first()
                .map(|(i, j)| format!("G_{} G_{} + G_{} G_{} != -2 delta I", i + 1, j + 1, j + 1, i + 1)),
        ));

        out.push(AxiomCheck::new(
            "generators_skew",
            gens.iter()
                .position(|g| !g.is_skew())
                .map(|i| format!("G_{} is not skew-symmetric", i + 1)),
        ));

        let mut witness = None;
        'basis: for (i, (g, b)) in gens.iter().zip(&self.bracket_tensor).enumerate() {
            for a in 0..n {
                for c in 0..n {
                    // <G_i e_a, e_c> = (G_i)_{ca};  <[e_a, e_c], e_i> = (B_i)_{ac}
                    if g.get(c, a) != b.get(a, c) {
                        witness = Some(format!("U = e_{}, V = e_{}, Z = e_{}", a + 1, c + 1, i + 1));
                        break 'basis;
                    }
                }
            }
        }
        let mut rng = rng_from_seed(seed);
        if witness.is_none() && n > 0 && self.z_dim > 0 {
            for _ in 0..100 {
                let u = random_rational_vector(&mut rng, n);
                let v = random_rational_vector(&mut rng, n);
                let z = random_rational_vector(&mut rng, self.z_dim);
                let lhs = dot(&self.j_apply(&z, &u), &v);
                let rhs = dot(&self.bracket_v(&u, &v), &z);
                if lhs != rhs {
                    witness = Some(format!("U = {}, V = {}, Z = {}", fmt_vec(&u), fmt_vec(&v), fmt_vec(&z)));
                    break;
                }
            }
        }
        out.push(AxiomCheck::new("defining_relation", witness));

        let minus_id = -&ExactMatrix::identity(n);
        out.push(AxiomCheck::new(
            "j_squared_basis",
            gens.iter()
                .position(|g| &(g * g) != &minus_id)
                .map(|i| format!("J_(e_{})^2 != -I", i + 1)),
        ));

        let mut witness = None;
        if self.z_dim > 0 && n > 0 {
            for _ in 0..3 {
                let z = random_rational_vector(&mut rng, self.z_dim);
                let j = self.j_of(&z);
                if &j * &j != ExactMatrix::scalar(n, &-dot(&z, &z)) {
                    witness = Some(format!("Z = {}", fmt_vec(&z)));
                    break;
                }
            }
        }
        out.push(AxiomCheck::new("j_squared_random", witness));

        let nd = self.n_dim();
        let mut witness = None;
        'grading: for a in 0..nd {
            for b in a..nd {
                let br = self.bracket_n(
                    &crate::exactla::unit_vector(nd, a),
                    &crate::exactla::unit_vector(nd, b),
                );
                let in_z = br[..n].iter().all(Rational::is_zero);
                let involves_z = a >= n || b >= n;
                let vanishes = br.iter().all(Rational::is_zero);
                if !in_z || (involves_z && !vanishes) {
                    witness = Some(format!("[e_{}, e_{}] = {}", a + 1, b + 1, fmt_vec(&br)));
                    break 'grading;
                }
            }
        }
        out.push(AxiomCheck::new("bracket_grading", witness));

        let mut witness = None;
        for _ in 0..20 {
            let x = random_rational_vector(&mut rng, nd);
            let y = random_rational_vector(&mut rng, nd);
            let w = random_rational_vector(&mut rng, nd);
            let j1 = self.bracket_n(&self.bracket_n(&x, &y), &w);
            let j2 = self.bracket_n(&self.bracket_n(&y, &w), &x);
            let j3 = self.bracket_n(&self.bracket_n(&w, &x), &y);
            let sum: Vector = (0..nd).map(|i| &(&j1[i] + &j2[i]) + &j3[i]).collect();
            if sum.iter().any(|s| !s.is_zero()) {
                witness = Some(format!("x = {}, y = {}, z = {}", fmt_vec(&x), fmt_vec(&y), fmt_vec(&w)));
                break;
            }
        }
        out.push(AxiomCheck::new("jacobi", witness));

        if n > 0 && self.z_dim > 0 {
            let center = self.center();
            let z_block = Subspace::coordinate(nd, n..nd);
            out.push(AxiomCheck::new(
                "center_is_z",
                (!center.same_span(&z_block)).then(|| format!("center has dimension {}", center.dim())),
            ));
        }
        out
    }

    pub fn dump(&self) -> AlgebraDump {
        AlgebraDump {
            class: self.class().group_label(),
            v_dim: self.v_dim,
            z_dim: self.z_dim,
            generators: self
                .generators()
                .iter()
                .map(|g| g.to_i64_rows().expect("integer generators"))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraDump {
    pub class: String,
    pub v_dim: usize,
    pub z_dim: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
}
