//! Real Clifford modules for positive definite quadratic forms.
//!
//! Irreducible modules for `m <= 8` are hardcoded as integer (signed
//! permutation) matrices; larger `m` uses the eightfold periodicity
//! `Cl_{m+8} = Cl_m (x) R(16)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{ExactMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("cannot parse {0:?}: expected N(m,k), N(m,k+,k-), S(m,k) or S(m,k+,k-)")]
    Parse(String),
    #[error("extended spin generators need a single irreducible module with m = 4 or m = 8, got {0}")]
    UnsupportedSpinExtension(String),
}

/// Multiplicity data of a Clifford module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    /// `k` copies of the unique irreducible module (`m` not 3 mod 4).
    Single(usize),
    /// `k+` copies with volume `+1` and `k-` copies with volume `-1`
    /// (`m` = 3 mod 4).
    Pair(usize, usize),
}

impl Multiplicity {
    pub fn total(&self) -> usize {
        match *self {
            Multiplicity::Single(k) => k,
            Multiplicity::Pair(p, n) => p + n,
        }
    }
}

/// Isomorphism class `N(m,k)` / `N(m,k+,k-)` of a Clifford module, i.e. of
/// a generalized Heisenberg algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordClass {
    pub m: usize,
    pub multiplicity: Multiplicity,
}

impl CliffordClass {
    /// `N(m,k)` for `m` not congruent to 3 mod 4.
    pub fn single(m: usize, k: usize) -> Result<Self, CliffordError> {
        if m % 4 == 3 {
            return Err(CliffordError::InvalidClass(format!(
                "m = {m} is 3 mod 4 and needs a multiplicity pair (k+, k-)"
            )));
        }
        Ok(Self {
            m,
            multiplicity: Multiplicity::Single(k),
        })
    }

    /// `N(m,k+,k-)` for `m` congruent to 3 mod 4.
    pub fn pair(m: usize, plus: usize, minus: usize) -> Result<Self, CliffordError> {
        if m % 4 != 3 {
            return Err(CliffordError::InvalidClass(format!(
                "m = {m} is not 3 mod 4 and takes a single multiplicity k"
            )));
        }
        Ok(Self {
            m,
            multiplicity: Multiplicity::Pair(plus, minus),
        })
    }

    pub fn total_multiplicity(&self) -> usize {
        self.multiplicity.total()
    }

    pub fn v_dim(&self) -> usize {
        irreducible_dimension(self.m) * self.total_multiplicity()
    }

    /// Class with `k+` and `k-` exchanged (identity otherwise).
    pub fn swapped(&self) -> Self {
        match self.multiplicity {
            Multiplicity::Single(_) => *self,
            Multiplicity::Pair(p, n) => Self {
                m: self.m,
                multiplicity: Multiplicity::Pair(n, p),
            },
        }
    }

    fn args(&self) -> String {
        match self.multiplicity {
            Multiplicity::Single(k) => format!("{},{}", self.m, k),
            Multiplicity::Pair(p, n) => format!("{},{},{}", self.m, p, n),
        }
    }

    /// Name of the generalized Heisenberg group, `N(...)`.
    pub fn group_label(&self) -> String {
        format!("N({})", self.args())
    }

    /// Name of the Damek-Ricci space, `S(...)`.
    pub fn space_label(&self) -> String {
        format!("S({})", self.args())
    }

    /// Every class with `m <= m_max` and multiplicities `<= k_max`
    /// (pairs with `k+ + k- <= k_max`), sorted by `(m, multiplicities)`.
    /// The degenerate zero-dimensional `N(0,0)` is skipped.
    pub fn enumerate(m_max: usize, k_max: usize) -> Vec<CliffordClass> {
        let mut out = Vec::new();
        for m in 0..=m_max {
            if m % 4 == 3 {
                for p in 0..=k_max {
                    for n in 0..=k_max - p {
                        out.push(Self::pair(m, p, n).expect("m is 3 mod 4"));
                    }
                }
            } else {
                let start = usize::from(m == 0);
                for k in start..=k_max {
                    out.push(Self::single(m, k).expect("m is not 3 mod 4"));
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for CliffordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.group_label())
    }
}

/// Accepts `N(...)` and `S(...)`; both name the same class.
impl FromStr for CliffordClass {
    type Err = CliffordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CliffordError::Parse(s.to_string());
        let t = s.trim();
        let rest = t
            .strip_prefix('N')
            .or_else(|| t.strip_prefix('S'))
            .ok_or_else(bad)?;
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|p| {
                let p = p.trim();
                if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                    Err(bad())
                } else {
                    p.parse::<usize>().map_err(|_| bad())
                }
            })
            .collect::<Result<_, _>>()?;
        match nums.as_slice() {
            [m, k] => Self::single(*m, *k),
            [m, p, n] => Self::pair(*m, *p, *n),
            _ => Err(bad()),
        }
    }
}

/// Real dimension of an irreducible `Cl_m`-module: 1,2,4,4,8,8,8,8,16 for
/// `m = 0..8`, then multiplied by 16 for every further 8.
pub fn irreducible_dimension(m: usize) -> usize {
    const BASE: [usize; 8] = [1, 2, 4, 4, 8, 8, 8, 8];
    BASE[m % 8] * 16usize.pow((m / 8) as u32)
}

fn signed_permutation(n: usize, images: &[(usize, i64)]) -> ExactMatrix {
    // images[j] = (i, s): basis vector j maps to s * e_i.
    let mut g = ExactMatrix::zeros(n, n);
    for (j, &(i, s)) in images.iter().enumerate() {
        g.set(i, j, Rational::from_integer(s));
    }
    g
}

/// Left multiplication by the imaginary quaternion units i, j, k on
/// `H = R^4` with basis (1, i, j, k).
fn quaternion_units() -> Vec<ExactMatrix> {
    vec![
        signed_permutation(4, &[(1, 1), (0, -1), (3, 1), (2, -1)]),
        signed_permutation(4, &[(2, 1), (3, -1), (0, -1), (1, 1)]),
        signed_permutation(4, &[(3, 1), (2, 1), (1, -1), (0, -1)]),
    ]
}

/// Product `e_a e_b` of octonion basis elements `e_0 = 1, e_1..e_7`, using
/// the triples `e_i e_{i+1} = e_{i+3}` (indices mod 7).
fn octonion_product(a: usize, b: usize) -> (usize, i64) {
    if a == 0 {
        return (b, 1);
    }
    if b == 0 {
        return (a, 1);
    }
    if a == b {
        return (0, -1);
    }
    let wrap = |x: usize| (x - 1) % 7 + 1;
    for i in 1..=7 {
        let t = [i, wrap(i + 1), wrap(i + 3)];
        for r in 0..3 {
            let (x, y, z) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
            if (a, b) == (x, y) {
                return (z, 1);
            }
            if (a, b) == (y, x) {
                return (z, -1);
            }
        }
    }
    unreachable!("every pair of distinct imaginary units lies in one triple")
}

/// Left multiplications by the seven imaginary octonion units on `R^8`.
fn octonion_units() -> Vec<ExactMatrix> {
    (1..=7)
        .map(|a| {
            let images: Vec<(usize, i64)> = (0..8).map(|b| octonion_product(a, b)).collect();
            signed_permutation(8, &images)
        })
        .collect()
}

/// Generators for `m = 8` on `R^16` from the `m = 7` set by doubling.
fn doubled_octonion_units() -> Vec<ExactMatrix> {
    let off_diag = |upper: &ExactMatrix, lower: &ExactMatrix| {
        let mut k = ExactMatrix::zeros(16, 16);
        for i in 0..8 {
            for j in 0..8 {
                k.set(i, 8 + j, upper.get(i, j).clone());
                k.set(8 + i, j, lower.get(i, j).clone());
            }
        }
        k
    };
    let mut gens: Vec<ExactMatrix> = octonion_units().iter().map(|g| off_diag(g, g)).collect();
    let id = ExactMatrix::identity(8);
    gens.push(off_diag(&-&id, &id));
    gens
}

/// Ordered product `G_1 G_2 ... G_m` (identity of size `n` when empty).
pub fn volume_element(n: usize, generators: &[ExactMatrix]) -> ExactMatrix {
    generators
        .iter()
        .fold(ExactMatrix::identity(n), |acc, g| &acc * g)
}

/// Generators of an irreducible `Cl_m`-module. For `m = 3 mod 4` the volume
/// element equals `volume_sign * I`; otherwise `volume_sign` is ignored.
pub fn build_generators(m: usize, volume_sign: i8) -> Vec<ExactMatrix> {
    let mut gens = match m {
        0 => return Vec::new(),
        1 => vec![ExactMatrix::from_i64(&[&[0, -1], &[1, 0]])],
        2 | 3 => quaternion_units().into_iter().take(m).collect(),
        4..=7 => octonion_units().into_iter().take(m).collect(),
        8 => doubled_octonion_units(),
        _ => {
            let lower = build_generators(m - 8, 1);
            let a = doubled_octonion_units();
            let omega = volume_element(16, &a);
            let id = ExactMatrix::identity(irreducible_dimension(m - 8));
            let mut g: Vec<ExactMatrix> = a.iter().map(|ai| id.kronecker(ai)).collect();
            g.extend(lower.iter().map(|gj| gj.kronecker(&omega)));
            g
        }
    };
    if m % 4 == 3 {
        let n = irreducible_dimension(m);
        let want = ExactMatrix::scalar(n, &Rational::from_integer(if volume_sign < 0 { -1 } else { 1 }));
        if volume_element(n, &gens) != want {
            let last = gens.pop().expect("m >= 3");
            gens.push(-&last);
        }
        debug_assert_eq!(volume_element(n, &gens), want);
    }
    gens
}

/// A Clifford module: `m` anticommuting skew-orthogonal generators on `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordModule {
    cls: CliffordClass,
    v_dim: usize,
    generators: Vec<ExactMatrix>,
}

impl CliffordModule {
    pub fn class(&self) -> CliffordClass {
        self.cls
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn m(&self) -> usize {
        self.cls.m
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    pub fn volume(&self) -> ExactMatrix {
        volume_element(self.v_dim, &self.generators)
    }

    /// Wraps arbitrary matrices without checking any Clifford relation.
    /// Used to exercise the axiom checks against faulty input.
    pub fn from_raw(cls: CliffordClass, v_dim: usize, generators: Vec<ExactMatrix>) -> Self {
        Self {
            cls,
            v_dim,
            generators,
        }
    }

    /// Pairs `(i, j)` with `G_i G_j + G_j G_i != -2 delta_ij I`.
    pub fn relation_failures(&self) -> Vec<(usize, usize)> {
        let id2 = ExactMatrix::scalar(self.v_dim, &Rational::from_integer(-2));
        let zero = ExactMatrix::zeros(self.v_dim, self.v_dim);
        let mut bad = Vec::new();
        for i in 0..self.generators.len() {
            for j in i..self.generators.len() {
                let ac = self.generators[i].anticommutator(&self.generators[j]);
                let want = if i == j { &id2 } else { &zero };
                if &ac != want {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    pub fn dump(&self) -> ModuleDump {
        ModuleDump {
            class: self.cls.group_label(),
            m: self.cls.m,
            v_dim: self.v_dim,
            generators: self
                .generators
                .iter()
                .map(|g| g.to_i64_rows().expect("generators are integer matrices"))
                .collect(),
        }
    }
}

/// JSON form of a module: integer generator matrices.
#[derive(Debug, Clone, Serialize)]
pub struct ModuleDump {
    pub class: String,
    pub m: usize,
    pub v_dim: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
}

/// Block-diagonal direct sum of irreducible modules; for `m = 3 mod 4` the
/// `k+` volume-`+1` blocks come first.
pub fn build_module(cls: CliffordClass) -> CliffordModule {
    let m = cls.m;
    let d = irreducible_dimension(m);
    let blocks: Vec<Vec<ExactMatrix>> = match cls.multiplicity {
        Multiplicity::Single(k) => {
            let g = build_generators(m, 1);
            vec![g; k]
        }
        Multiplicity::Pair(p, n) => {
            let plus = build_generators(m, 1);
            let minus = build_generators(m, -1);
            std::iter::repeat(plus)
                .take(p)
                .chain(std::iter::repeat(minus).take(n))
                .collect()
        }
    };
    let generators = (0..m)
        .map(|i| {
            let diag: Vec<ExactMatrix> = blocks.iter().map(|b| b[i].clone()).collect();
            ExactMatrix::block_diagonal(&diag)
        })
        .collect();
    CliffordModule {
        cls,
        v_dim: d * cls.total_multiplicity(),
        generators,
    }
}

/// Basis `{G_i G_j : i < j} + {G_i}` of the `spin(m+1)` action obtained from
/// `Cl_m = Cl^0_{m+1}`; only for a single irreducible module with
/// `m = 4` or `m = 8`.
pub fn extended_spin_generators(module: &CliffordModule) -> Result<Vec<ExactMatrix>, CliffordError> {
    let cls = module.class();
    if !matches!(cls.m, 4 | 8) || cls.multiplicity != Multiplicity::Single(1) {
        return Err(CliffordError::UnsupportedSpinExtension(cls.group_label()));
    }
    let g = module.generators();
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            out.push(&g[i] * &g[j]);
        }
    }
    out.extend(g.iter().cloned());
    Ok(out)
}
