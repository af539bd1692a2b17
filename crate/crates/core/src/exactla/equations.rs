//! Linear matrix equations `A X = X B`, optionally restricted to skew `X`.

use super::matrix::{ExactMatrix, Vector};
use super::rational::Rational;
use super::sparse::{Echelon, SparseRow};
use super::subspace::Subspace;
use super::LinalgError;

/// Coordinates on a space of matrices: either every entry is an unknown, or
/// only the strict upper triangle of a skew-symmetric matrix is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixUnknowns {
    General { rows: usize, cols: usize },
    Skew { n: usize },
}

impl MatrixUnknowns {
    pub fn count(&self) -> usize {
        match *self {
            Self::General { rows, cols } => rows * cols,
            Self::Skew { n } => n * n.saturating_sub(1) / 2,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match *self {
            Self::General { rows, cols } => (rows, cols),
            Self::Skew { n } => (n, n),
        }
    }

    /// Unknown index and sign representing entry `(i, j)`; `None` for the
    /// zero diagonal of a skew matrix.
    pub fn entry(&self, i: usize, j: usize) -> Option<(usize, bool)> {
        match *self {
            Self::General { cols, .. } => Some((i * cols + j, true)),
            Self::Skew { n } => {
                if i == j {
                    None
                } else if i < j {
                    Some((skew_index(n, i, j), true))
                } else {
                    Some((skew_index(n, j, i), false))
                }
            }
        }
    }

    /// Matrix described by a coordinate vector.
    pub fn to_matrix(&self, coords: &[Rational]) -> ExactMatrix {
        let (rows, cols) = self.shape();
        let mut m = ExactMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if let Some((k, pos)) = self.entry(i, j) {
                    let x = &coords[k];
                    m.set(i, j, if pos { x.clone() } else { -x });
                }
            }
        }
        m
    }
}

fn skew_index(n: usize, i: usize, j: usize) -> usize {
    // Row-major position in the strict upper triangle.
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Sparse view of a square matrix: nonzeros per row and per column.
#[derive(Debug, Clone)]
pub(crate) struct SparseSquare {
    pub by_row: Vec<Vec<(usize, Rational)>>,
    pub by_col: Vec<Vec<(usize, Rational)>>,
}

impl SparseSquare {
    pub fn new(m: &ExactMatrix) -> Self {
        let n = m.rows();
        let mut by_row = vec![Vec::new(); n];
        let mut by_col = vec![Vec::new(); m.cols()];
        for i in 0..n {
            for j in 0..m.cols() {
                let x = m.get(i, j);
                if !x.is_zero() {
                    by_row[i].push((j, x.clone()));
                    by_col[j].push((i, x.clone()));
                }
            }
        }
        Self { by_row, by_col }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.by_row
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

/// Terms of entry `(i, j)` of `A X - X B` in the given unknowns, with
/// unknown indices shifted by `offset`.
pub(crate) fn commutator_entry_terms(
    a: &SparseSquare,
    b: &SparseSquare,
    unknowns: &MatrixUnknowns,
    offset: usize,
    i: usize,
    j: usize,
    out: &mut Vec<(usize, Rational)>,
) {
    for (k, aik) in &a.by_row[i] {
        if let Some((u, pos)) = unknowns.entry(*k, j) {
            out.push((offset + u, if pos { aik.clone() } else { -aik }));
        }
    }
    for (k, bkj) in &b.by_col[j] {
        if let Some((u, pos)) = unknowns.entry(i, *k) {
            out.push((offset + u, if pos { -bkj } else { bkj.clone() }));
        }
    }
}

/// Solution space of a matrix equation system, as flattened coordinate
/// vectors in the chosen unknowns.
#[derive(Clone, Debug)]
pub struct MatrixSolutionSpace {
    pub unknowns: MatrixUnknowns,
    pub space: Subspace,
}

impl MatrixSolutionSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrices(&self) -> Vec<ExactMatrix> {
        self.space
            .basis()
            .iter()
            .map(|c| self.unknowns.to_matrix(c))
            .collect()
    }
}

/// All `X` of the given shape with `A_i X = X B_i` for every pair, and
/// `X = -X^T` when `skew` is set.
pub fn solve_matrix_equation(
    shape: (usize, usize),
    constraints: &[(ExactMatrix, ExactMatrix)],
    skew: bool,
) -> Result<MatrixSolutionSpace, LinalgError> {
    let (p, q) = shape;
    if skew && p != q {
        return Err(LinalgError::DimensionMismatch(
            "skew solutions need a square shape".into(),
        ));
    }
    for (a, b) in constraints {
        if !a.is_square() || !b.is_square() || a.rows() != p || b.rows() != q {
            return Err(LinalgError::DimensionMismatch(format!(
                "constraint {}x{} / {}x{} incompatible with X of shape {p}x{q}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
    }
    let unknowns = if skew {
        MatrixUnknowns::Skew { n: p }
    } else {
        MatrixUnknowns::General { rows: p, cols: q }
    };
    let mut ech = Echelon::new(unknowns.count());
    let mut terms = Vec::new();
    for (a, b) in constraints {
        let (sa, sb) = (SparseSquare::new(a), SparseSquare::new(b));
        for i in 0..p {
            for j in 0..q {
                terms.clear();
                commutator_entry_terms(&sa, &sb, &unknowns, 0, i, j, &mut terms);
                if !terms.is_empty() {
                    ech.insert(SparseRow::from_terms(terms.drain(..)));
                }
            }
        }
    }
    let basis: Vec<Vector> = ech.nullspace();
    Ok(MatrixSolutionSpace {
        unknowns,
        space: Subspace::from_basis(unknowns.count(), basis)?,
    })
}
