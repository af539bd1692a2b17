//! Orthogonal representations of compact groups, given by a basis of their
//! Lie algebra, and the polarity test at a generic point.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::PolarityError;
use crate::exactla::float::{complement_f64, rank_f64};
use crate::exactla::{dot, orth_complement, ExactMatrix, Echelon, Rational, Subspace, Vector};
use crate::sampling::{random_int_vector, rng_from_seed, RESAMPLE_BUDGET};

/// A Lie algebra of skew-symmetric matrices acting on `R^carrier_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepWire")]
pub struct RepAction {
    carrier_dim: usize,
    generators: Vec<ExactMatrix>,
    #[serde(skip)]
    sparse: Vec<SparseMatrix>,
}

#[derive(Deserialize)]
struct RepWire {
    carrier_dim: usize,
    generators: Vec<ExactMatrix>,
}

impl TryFrom<RepWire> for RepAction {
    type Error = PolarityError;

    fn try_from(w: RepWire) -> Result<Self, Self::Error> {
        RepAction::new(w.carrier_dim, w.generators)
    }
}

/// Row-wise nonzeros, for cheap products with sparse generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct SparseMatrix(Vec<Vec<(usize, Rational)>>);

impl SparseMatrix {
    fn new(m: &ExactMatrix) -> Self {
        Self(
            (0..m.rows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(j, x)| (j, x.clone()))
                        .collect()
                })
                .collect(),
        )
    }

    fn apply(&self, v: &[Rational]) -> Vector {
        self.0
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        acc += a * &v[*j];
                    }
                }
                acc
            })
            .collect()
    }
}

impl RepAction {
    pub fn new(carrier_dim: usize, generators: Vec<ExactMatrix>) -> Result<Self, PolarityError> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != carrier_dim || g.cols() != carrier_dim {
                return Err(PolarityError::Invalid(format!(
                    "generator {} is {}x{}, expected {carrier_dim}x{carrier_dim}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
            if !g.is_skew() {
                return Err(PolarityError::Invalid(format!("generator {} is not skew-symmetric", i + 1)));
            }
        }
        let sparse = generators.iter().map(SparseMatrix::new).collect();
        Ok(Self { carrier_dim, generators, sparse })
    }

    /// The zero algebra.
    pub fn trivial(carrier_dim: usize) -> Self {
        Self { carrier_dim, generators: Vec::new(), sparse: Vec::new() }
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `M x` for generator `i`.
    pub fn apply(&self, i: usize, x: &[Rational]) -> Vector {
        self.sparse[i].apply(x)
    }

    /// Tangent vectors `M x` of the orbit through `x`.
    pub fn tangent_vectors(&self, x: &[Rational]) -> Vec<Vector> {
        (0..self.len()).map(|i| self.apply(i, x)).collect()
    }

    /// First generator not mapping `w` into itself.
    pub fn invariance_failure(&self, w: &Subspace) -> Option<usize> {
        let ech = w.echelon();
        (0..self.len()).find(|&i| w.basis().iter().any(|b| !ech.contains(&self.apply(i, b))))
    }

    /// First pair whose bracket leaves the span of the generators.
    pub fn closure_failure(&self) -> Option<(usize, usize)> {
        let n = self.carrier_dim;
        let mut ech = Echelon::new(n * n);
        for g in &self.generators {
            ech.insert_dense(g.entries());
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let c = self.generators[i].commutator(&self.generators[j]);
                if !ech.contains(c.entries()) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> Vec<DMatrix<f64>> {
        self.generators.iter().map(ExactMatrix::to_f64).collect()
    }
}

/// A point of the carrier certified to lie on a principal orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericPoint {
    pub point: Vector,
    pub orbit_dim: usize,
    pub tangent: Subspace,
}

fn sample_in(carrier: &Subspace, rng: &mut rand_chacha::ChaCha8Rng) -> Vector {
    let c = random_int_vector(rng, carrier.dim());
    let mut x = vec![Rational::zero(); carrier.ambient_dim()];
    for (ci, b) in c.iter().zip(carrier.basis()) {
        if ci.is_zero() {
            continue;
        }
        for (o, bi) in x.iter_mut().zip(b) {
            if !bi.is_zero() {
                *o += ci * bi;
            }
        }
    }
    x
}

/// Draws points in rounds of three until three agree on the orbit
/// dimension; `Err` carries every observed dimension.
pub fn certify_generic_point(rep: &RepAction, carrier: &Subspace, seed: u64) -> Result<GenericPoint, Vec<usize>> {
    let mut rng = rng_from_seed(seed);
    let mut seen = Vec::new();
    for _ in 0..RESAMPLE_BUDGET {
        let mut round = Vec::with_capacity(3);
        for _ in 0..3 {
            let x = sample_in(carrier, &mut rng);
            let tangent = Subspace::span(carrier.ambient_dim(), &rep.tangent_vectors(&x)).expect("consistent dimensions");
            seen.push(tangent.dim());
            round.push((x, tangent));
        }
        if round.iter().all(|(_, t)| t.dim() == round[0].1.dim()) {
            let (point, tangent) = round.swap_remove(0);
            return Ok(GenericPoint { orbit_dim: tangent.dim(), point, tangent });
        }
    }
    Err(seen)
}

/// Outcome of the polarity test for a representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepPolarity {
    Polar {
        section: Subspace,
        cohomogeneity: usize,
        point: Vector,
    },
    NonPolar {
        cohomogeneity: usize,
        point: Vector,
        generator: usize,
        y: Vector,
        z: Vector,
        value: Rational,
    },
    Inconclusive {
        orbit_dims: Vec<usize>,
    },
}

impl RepPolarity {
    pub fn is_polar(&self) -> Option<bool> {
        match self {
            RepPolarity::Polar { .. } => Some(true),
            RepPolarity::NonPolar { .. } => Some(false),
            RepPolarity::Inconclusive { .. } => None,
        }
    }

    pub fn cohomogeneity(&self) -> Option<usize> {
        match self {
            RepPolarity::Polar { cohomogeneity, .. } | RepPolarity::NonPolar { cohomogeneity, .. } => {
                Some(*cohomogeneity)
            }
            RepPolarity::Inconclusive { .. } => None,
        }
    }
}

/// Codimension of a principal orbit; `None` when genericity cannot be certified.
pub fn cohomogeneity(rep: &RepAction, seed: u64) -> Option<usize> {
    let full = Subspace::full(rep.carrier_dim());
    certify_generic_point(rep, &full, seed)
        .ok()
        .map(|g| rep.carrier_dim() - g.orbit_dim)
}

pub fn is_polar_rep(rep: &RepAction, seed: u64) -> RepPolarity {
    is_polar_rep_on(rep, &Subspace::full(rep.carrier_dim()), seed).expect("the full space is invariant")
}

/// Polarity of the action restricted to an invariant subspace: the normal
/// space `Sigma` at a generic point is a section iff `<M y, z> = 0` for all
/// generators `M` and `y, z` in `Sigma`.
pub fn is_polar_rep_on(rep: &RepAction, carrier: &Subspace, seed: u64) -> Result<RepPolarity, PolarityError> {
    if carrier.ambient_dim() != rep.carrier_dim() {
        return Err(PolarityError::Invalid(format!(
            "carrier subspace lives in dimension {}, the action in {}",
            carrier.ambient_dim(),
            rep.carrier_dim()
        )));
    }
    if let Some(i) = rep.invariance_failure(carrier) {
        return Err(PolarityError::NotInvariant(i + 1));
    }
    let generic = match certify_generic_point(rep, carrier, seed) {
        Ok(g) => g,
        Err(orbit_dims) => return Ok(RepPolarity::Inconclusive { orbit_dims }),
    };
    let cohomogeneity = carrier.dim() - generic.orbit_dim;
    let section = orth_complement(&generic.tangent, carrier)?;
    let basis = section.basis();
    for g in 0..rep.len() {
        for (a, y) in basis.iter().enumerate() {
            let my = rep.apply(g, y);
            for z in &basis[a + 1..] {
                let value = dot(&my, z);
                if !value.is_zero() {
                    return Ok(RepPolarity::NonPolar {
                        cohomogeneity,
                        point: generic.point,
                        generator: g + 1,
                        y: y.clone(),
                        z: z.clone(),
                        value,
                    });
                }
            }
        }
    }
    Ok(RepPolarity::Polar { section, cohomogeneity, point: generic.point })
}

/// Float shadow of [`is_polar_rep`] on the full carrier.
#[derive(Debug, Clone, PartialEq)]
pub enum FloatPolarity {
    Polar { cohomogeneity: usize, section: DMatrix<f64> },
    NonPolar { cohomogeneity: usize, generator: usize, value: f64 },
    Inconclusive { orbit_dims: Vec<usize> },
}

pub fn is_polar_rep_float(rep: &RepAction, seed: u64, tol: f64) -> FloatPolarity {
    let n = rep.carrier_dim();
    let gens = rep.to_f64();
    let mut rng = rng_from_seed(seed);
    let mut seen = Vec::new();
    let full = Subspace::full(n);
    for _ in 0..RESAMPLE_BUDGET {
        let mut round = Vec::with_capacity(3);
        for _ in 0..3 {
            let x = sample_in(&full, &mut rng);
            let xf = nalgebra::DVector::from_iterator(n, x.iter().map(Rational::to_f64));
            let cols: Vec<nalgebra::DVector<f64>> = gens.iter().map(|g| g * &xf).collect();
            let t = if cols.is_empty() { DMatrix::zeros(n, 0) } else { DMatrix::from_columns(&cols) };
            seen.push(rank_f64(&t, tol));
            round.push(t);
        }
        let d = seen[seen.len() - 3];
        if seen[seen.len() - 3..].iter().all(|&e| e == d) {
            let t = round.swap_remove(0);
            let section = complement_f64(&t, n, tol);
            let cohomogeneity = section.ncols();
            for (gi, g) in gens.iter().enumerate() {
                let scale = g.norm().max(1.0);
                let b = section.transpose() * g * &section;
                let worst = b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                if worst > tol * scale {
                    return FloatPolarity::NonPolar { cohomogeneity, generator: gi + 1, value: worst };
                }
            }
            return FloatPolarity::Polar { cohomogeneity, section };
        }
    }
    FloatPolarity::Inconclusive { orbit_dims: seen }
}
