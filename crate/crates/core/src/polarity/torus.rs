//! Maximal tori of the derivation algebra and the polar actions built from
//! an invariant 2-plane of `v`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::criteria::mthm_with;
use super::derivations::{derivation_algebra, skew_coordinates, Derivations};
use super::rep::RepAction;
use super::report::{Certificate, PolarityReport, Witness};
use super::{PolarityError, SubalgebraSpec};
use crate::damek_ricci::DamekRicciSpace;
use crate::exactla::{nullspace, orth_complement, Echelon, ExactMatrix, MatrixUnknowns, Rational, Subspace};
use crate::heisenberg::HeisenbergAlgebra;
use crate::sampling::{derive_seed, random_int, rng_from_seed, RESAMPLE_BUDGET};

type SparseRows = Vec<Vec<(usize, Rational)>>;

fn sparse_rows(m: &ExactMatrix) -> SparseRows {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect()
}

/// Upper-triangle entries of `AB - BA` for skew `A`, `B`.
fn commutator_upper(a: &SparseRows, b: &SparseRows) -> BTreeMap<(usize, usize), Rational> {
    let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut acc = |x: &SparseRows, y: &SparseRows, sign: bool| {
        for (i, row) in x.iter().enumerate() {
            for (k, xik) in row {
                for (j, ykj) in &y[*k] {
                    if *j <= i {
                        continue;
                    }
                    let p = xik * ykj;
                    let e = out.entry((i, *j)).or_insert_with(Rational::zero);
                    if sign {
                        *e += p;
                    } else {
                        *e -= p;
                    }
                }
            }
        }
    };
    acc(a, b, true);
    acc(b, a, false);
    out.retain(|_, x| !x.is_zero());
    out
}

fn commute(a: &SparseRows, b: &SparseRows) -> bool {
    commutator_upper(a, b).is_empty()
}

/// Candidates tried first: products `G_i G_j`, disjoint pairs leading.
fn pool(heis: &HeisenbergAlgebra, derivs: &Derivations) -> Vec<ExactMatrix> {
    let g = heis.generators();
    let m = g.len();
    let mut out = Vec::new();
    for i in (0..m.saturating_sub(1)).step_by(2) {
        out.push(&g[i] * &g[i + 1]);
    }
    for i in 0..m {
        for j in i + 1..m {
            if !(i % 2 == 0 && j == i + 1) {
                out.push(&g[i] * &g[j]);
            }
        }
    }
    out.extend(derivs.basis().iter().map(|(dv, _)| dv.clone()));
    out
}

/// Centralizer of `torus` inside the derivation algebra (acting on `v`).
fn centralizer(derivs: &Derivations, torus: &[SparseRows]) -> Vec<ExactMatrix> {
    let basis: Vec<SparseRows> = derivs.basis().iter().map(|(dv, _)| sparse_rows(dv)).collect();
    let d = basis.len();
    let mut ech = Echelon::new(d);
    for t in torus {
        let mut rows: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for (k, b) in basis.iter().enumerate() {
            for (pos, x) in commutator_upper(b, t) {
                rows.entry(pos).or_default().push((k, x));
            }
        }
        for (_, terms) in rows {
            ech.insert(crate::exactla::SparseRow::from_terms(terms));
        }
    }
    ech.nullspace()
        .into_iter()
        .map(|c| {
            let mut m = ExactMatrix::zeros(derivs.basis()[0].0.rows(), derivs.basis()[0].0.cols());
            for (ck, (dv, _)) in c.iter().zip(derivs.basis()) {
                if !ck.is_zero() {
                    m = &m + &dv.scale(ck);
                }
            }
            m
        })
        .collect()
}

/// A maximal abelian subalgebra of the derivation algebra, as `v`-parts.
/// In a compact Lie algebra this is the Lie algebra of a maximal torus.
pub fn maximal_torus(heis: &HeisenbergAlgebra, derivs: &Derivations) -> Vec<ExactMatrix> {
    if derivs.dim() == 0 {
        return Vec::new();
    }
    let n = heis.v_dim();
    let mut span = Echelon::new(MatrixUnknowns::Skew { n }.count());
    let mut torus: Vec<ExactMatrix> = Vec::new();
    let mut sparse: Vec<SparseRows> = Vec::new();
    let mut adjoin = |x: ExactMatrix, torus: &mut Vec<ExactMatrix>, sparse: &mut Vec<SparseRows>| {
        let sx = sparse_rows(&x);
        if sparse.iter().all(|t| commute(t, &sx)) && span.insert(skew_coordinates(&x)) {
            torus.push(x);
            sparse.push(sx);
        }
    };
    for x in pool(heis, derivs) {
        adjoin(x, &mut torus, &mut sparse);
    }
    loop {
        let c = centralizer(derivs, &sparse);
        if c.len() <= torus.len() {
            break;
        }
        let before = torus.len();
        for x in c {
            adjoin(x, &mut torus, &mut sparse);
            if torus.len() > before {
                break;
            }
        }
        if torus.len() == before {
            break;
        }
    }
    torus
}

/// A 2-plane of `v` invariant under every torus element and rotated by
/// at least one of them.
fn invariant_plane(torus: &[ExactMatrix], n: usize, seed: u64) -> Option<Subspace> {
    let mut rng = rng_from_seed(seed);
    for _ in 0..RESAMPLE_BUDGET {
        let mut t = ExactMatrix::zeros(n, n);
        for g in torus {
            t = &t + &g.scale(&random_int(&mut rng));
        }
        if t.is_zero() {
            continue;
        }
        let s = -&(&t * &t);
        let sf: DMatrix<f64> = s.to_f64();
        let mut eig: Vec<f64> = sf.symmetric_eigen().eigenvalues.iter().cloned().filter(|&x| x > 1e-6).collect();
        eig.sort_by(f64::total_cmp);
        eig.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        for mu in eig {
            let Some(r) = Rational::approximate(mu, 1000) else { continue };
            if (r.to_f64() - mu).abs() > 1e-6 {
                continue;
            }
            let kernel = nullspace(&(&s - &ExactMatrix::scalar(n, &r)));
            let Some(u) = kernel.basis().first() else { continue };
            let tu = t.mul_vec(u);
            let plane = Subspace::span(n, &[u.clone(), tu.clone()]).ok()?;
            if plane.dim() != 2 {
                continue;
            }
            let ech = plane.echelon();
            if torus.iter().all(|g| ech.contains(&g.mul_vec(u)) && ech.contains(&g.mul_vec(&tu))) {
                return Some(plane.primitive());
            }
        }
    }
    None
}

/// Maximal torus `T` of the automorphism algebra, an invariant 2-plane `P`
/// of `v` on which it acts nontrivially, and the action of `T x L(H)` with
/// `h = (v - P) + z`.
pub fn construct_cor_psgo<'a>(
    space: &'a DamekRicciSpace,
    seed: u64,
) -> Result<(SubalgebraSpec<'a>, PolarityReport), PolarityError> {
    let n = space.v_dim();
    if n < 2 {
        return Err(PolarityError::Precondition("dim v < 2".into()));
    }
    let heis = space.heisenberg();
    let derivs = derivation_algebra(heis);
    let torus = maximal_torus(heis, &derivs);
    if torus.is_empty() {
        return Err(PolarityError::Precondition("the torus acts trivially on v".into()));
    }
    let plane = invariant_plane(&torus, n, derive_seed(seed, "plane")).ok_or_else(|| {
        PolarityError::Precondition("no torus-invariant 2-plane with rational weights found".into())
    })?;
    let w = orth_complement(&plane, &Subspace::full(n))?;
    let q = RepAction::new(n, torus.clone())?;
    let mut report = mthm_with(space, &w, &q, &derivs, seed)?;
    report.action = format!("T ⋉ L(H), T maximal torus of rank {}, h = w + z, codim w = 2", torus.len());
    report.push(Witness::with("maximal_torus", true, Certificate::Matrices { matrices: torus }));
    report.push(Witness::with("invariant_plane", true, Certificate::Dimension { value: plane.dim() }));
    let codim = space.s_dim() - (w.dim() + space.z_dim());
    report.push(Witness::with("orbit_codimension_at_e", codim == 3, Certificate::Dimension { value: codim }));
    let spec = SubalgebraSpec::new(space, Subspace::zero(1), w, Subspace::full(space.z_dim()))?;
    Ok((spec, report))
}
