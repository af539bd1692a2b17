//! Incremental row echelon form over sparse rows.
//!
//! Used for the large but very sparse linear systems that arise from
//! commutant and derivation equations, and for span-membership queries on
//! long flattened vectors.

use std::collections::BTreeMap;

use super::matrix::{primitive, Vector};
use super::rational::Rational;

/// Sparse row: strictly increasing column indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseRow(Vec<(usize, Rational)>);

impl SparseRow {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Builds a row from unsorted `(col, value)` terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (usize, Rational)>>(terms: I) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, x) in terms {
            if x.is_zero() {
                continue;
            }
            let e = map.entry(c).or_insert_with(Rational::zero);
            *e += x;
        }
        Self(map.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        Self(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, n: usize) -> Vector {
        let mut v = vec![Rational::zero(); n];
        for (c, x) in &self.0 {
            v[*c] = x.clone();
        }
        v
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.0
    }

    pub fn leading(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Option<&Rational> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    /// `self - factor * other`.
    fn sub_scaled(&self, factor: &Rational, other: &SparseRow) -> SparseRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map(|t| t.0).unwrap_or(usize::MAX);
            let cj = other.0.get(j).map(|t| t.0).unwrap_or(usize::MAX);
            if ci < cj {
                out.push(self.0[i].clone());
                i += 1;
            } else if cj < ci {
                out.push((cj, -(factor * &other.0[j].1)));
                j += 1;
            } else {
                let x = &self.0[i].1 - &(factor * &other.0[j].1);
                if !x.is_zero() {
                    out.push((ci, x));
                }
                i += 1;
                j += 1;
            }
        }
        SparseRow(out)
    }

    fn normalized(self) -> SparseRow {
        let Some((_, lead)) = self.0.first() else {
            return self;
        };
        if lead.is_one() {
            return self;
        }
        let inv = lead.recip();
        SparseRow(self.0.into_iter().map(|(c, x)| (c, &x * &inv)).collect())
    }
}

/// Row echelon form built one row at a time. Each stored pivot row has
/// leading coefficient 1 at its pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut k = 0;
        while k < row.0.len() {
            let c = row.0[k].0;
            if let Some(p) = self.pivots.get(&c) {
                let f = row.0[k].1.clone();
                row = row.sub_scaled(&f, p);
                // Entries before position k are untouched (pivot rows start at c).
            } else {
                k += 1;
            }
        }
        row
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        match r.leading() {
            None => false,
            Some(c) => {
                self.pivots.insert(c, r.normalized());
                true
            }
        }
    }

    pub fn insert_dense(&mut self, v: &[Rational]) -> bool {
        self.insert(SparseRow::from_dense(v))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(SparseRow::from_dense(v)).is_empty()
    }

    /// Back-substitutes so every pivot column is zero in every other pivot row.
    fn reduced(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&c, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.0.len() {
                let cc = r.0[k].0;
                if let Some(p) = done.get(&cc) {
                    let f = r.0[k].1.clone();
                    r = r.sub_scaled(&f, p);
                } else {
                    k += 1;
                }
            }
            done.insert(c, r);
        }
        done
    }

    /// Basis of the solution space of the homogeneous system, one primitive
    /// integer vector per free column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let rref = self.reduced();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !rref.contains_key(c)).collect();
        let mut index_of_free = vec![usize::MAX; self.ncols];
        for (i, &f) in free.iter().enumerate() {
            index_of_free[f] = i;
        }
        let mut basis: Vec<Vector> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                v
            })
            .collect();
        for (&p, row) in &rref {
            for (c, x) in row.terms().iter().skip(1) {
                let fi = index_of_free[*c];
                debug_assert!(fi != usize::MAX);
                basis[fi][p] = -x;
            }
        }
        basis.iter().map(|v| primitive(v)).collect()
    }

    /// Rows of the reduced echelon form as dense vectors.
    pub fn basis_rows(&self) -> Vec<Vector> {
        self.reduced().values().map(|r| r.to_dense(self.ncols)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::matrix::int_vector;

    #[test]
    fn insert_reduce_and_nullspace() {
        let mut e = Echelon::new(3);
        assert!(e.insert_dense(&int_vector(&[1, 1, 0])));
        assert!(!e.insert_dense(&int_vector(&[2, 2, 0])));
        assert_eq!(e.rank(), 1);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((&v[0] + &v[1]).is_zero());
        }
        assert!(e.contains(&int_vector(&[-3, -3, 0])));
        assert!(!e.contains(&int_vector(&[0, 0, 1])));
    }

    #[test]
    fn merges_duplicate_terms() {
        let r = SparseRow::from_terms(vec![
            (2, Rational::one()),
            (0, Rational::one()),
            (2, -Rational::one()),
        ]);
        assert_eq!(r.terms(), &[(0, Rational::one())]);
    }

    #[test]
    fn nullspace_after_full_back_substitution() {
        // x0 + x1 + x2 + x3 = 0, x1 - x3 = 0, x2 + 2 x3 = 0
        let mut e = Echelon::new(4);
        e.insert_dense(&int_vector(&[1, 1, 1, 1]));
        e.insert_dense(&int_vector(&[0, 1, 0, -1]));
        e.insert_dense(&int_vector(&[0, 0, 1, 2]));
        let ns = e.nullspace();
        assert_eq!(ns, vec![int_vector(&[0, 1, -2, 1])]);
    }
}
