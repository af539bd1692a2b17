//! The composite polarity criteria, all evaluated at the identity of `S`.

use nalgebra::DMatrix;

use super::derivations::{derivation_algebra, in_derivation_image, Derivations};
use super::rep::{is_polar_rep, is_polar_rep_float, is_polar_rep_on, FloatPolarity, RepAction, RepPolarity};
use super::report::{Certificate, PolarityReport, Verdict, Witness};
use super::{flat_subspace, PolarityError, SubalgebraSpec};
use crate::clifford::{extended_spin_generators, Multiplicity};
use crate::damek_ricci::DamekRicciSpace;
use crate::exactla::{dot, orth_complement, Rational, Subspace, Vector};
use crate::heisenberg::HeisenbergAlgebra;
use crate::sampling::derive_seed;

/// Outcome of the totally-geodesic test.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTest {
    pub holds: bool,
    pub certificate: Option<Certificate>,
}

/// `exp(a + v' + z')` is totally geodesic iff `J_Z v'` lies in `v'` for all
/// `Z` in `z'`.
pub fn is_totally_geodesic(spec: &SubalgebraSpec<'_>) -> Result<GeodesicTest, PolarityError> {
    if spec.b.dim() != 1 {
        return Err(PolarityError::Precondition("the subalgebra must contain a".into()));
    }
    let heis = spec.space.heisenberg();
    let ech = spec.v_prime.echelon();
    for z in spec.z_prime.basis() {
        for v in spec.v_prime.basis() {
            let jv = heis.j_apply(z, v);
            if !ech.contains(&jv) {
                return Ok(GeodesicTest {
                    holds: false,
                    certificate: Some(Certificate::Containment {
                        z: z.clone(),
                        v: v.clone(),
                        outside: spec.v_prime.reject(&jv),
                    }),
                });
            }
        }
    }
    Ok(GeodesicTest { holds: true, certificate: None })
}

/// First `<J_{e_i} V, W> != 0` over the z-basis and pairs of `basis`.
pub(crate) fn j_pairing_failure(heis: &HeisenbergAlgebra, basis: &[Vector]) -> Option<Certificate> {
    for (i, g) in heis.generators().iter().enumerate() {
        for (a, v) in basis.iter().enumerate() {
            let gv = g.mul_vec(v);
            for w in &basis[a + 1..] {
                let value = dot(&gv, w);
                if !value.is_zero() {
                    return Some(Certificate::JPairing { index: i + 1, v: v.clone(), w: w.clone(), value });
                }
            }
        }
    }
    None
}

fn condition_ii(report: &mut PolarityReport, heis: &HeisenbergAlgebra, basis: &[Vector]) -> bool {
    match j_pairing_failure(heis, basis) {
        None => {
            report.push(Witness::pass("condition_ii"));
            true
        }
        Some(c) => {
            report.push(Witness::fail("condition_ii", c));
            false
        }
    }
}

/// The action of the subgroup with Lie algebra `(v - v') + (z - z')`.
pub fn check_foliation_polar(
    space: &DamekRicciSpace,
    v_prime: &Subspace,
    z_prime: &Subspace,
) -> Result<PolarityReport, PolarityError> {
    if space.v_dim() == 0 {
        return Err(PolarityError::Precondition("v = 0".into()));
    }
    let spec = SubalgebraSpec::with_a(space, v_prime.clone(), z_prime.clone())?;
    let tg = is_totally_geodesic(&spec)?;
    if !tg.holds {
        return Err(PolarityError::Precondition("a + v' + z' is not totally geodesic".into()));
    }
    if v_prime.dim() == space.v_dim() && z_prime.dim() == space.z_dim() {
        return Err(PolarityError::Precondition("a + v' + z' is all of s".into()));
    }
    let full_v = Subspace::full(space.v_dim());
    let full_z = Subspace::full(space.z_dim());
    let h_v = orth_complement(v_prime, &full_v)?;
    let h_z = orth_complement(z_prime, &full_z)?;
    let mut report = PolarityReport::new(
        space.label(),
        format!("L(H), h = (v - v') + (z - z'), dim h = {}", h_v.dim() + h_z.dim()),
        0,
    );
    report.push(Witness::pass("totally_geodesic"));
    let mut polar = true;
    if let Some(z) = z_prime.basis().first() {
        report.push(Witness::fail("z_prime_zero", Certificate::Vector { vector: z.clone() }));
        polar = false;
    } else {
        report.push(Witness::pass("z_prime_zero"));
    }
    polar &= condition_ii(&mut report, space.heisenberg(), v_prime.basis());
    if polar {
        let section = flat_subspace(space, &Subspace::full(1), v_prime, z_prime);
        let c = section.dim();
        report.polar(section, c);
    } else {
        report.verdict = Verdict::NonPolar;
    }
    Ok(report)
}

fn a_only(space: &DamekRicciSpace) -> Subspace {
    flat_subspace(space, &Subspace::full(1), &Subspace::zero(space.v_dim()), &Subspace::zero(space.z_dim()))
}

fn bilinear_certificate(r: &RepPolarity) -> Option<Certificate> {
    match r {
        RepPolarity::NonPolar { generator, y, z, value, .. } => Some(Certificate::Bilinear {
            generator: *generator,
            y: y.clone(),
            z: z.clone(),
            value: value.clone(),
        }),
        _ => None,
    }
}

/// `A(N)_0 x L(Z)` via its slice representation at `e`.
pub fn check_pasl_action(space: &DamekRicciSpace, seed: u64) -> PolarityReport {
    let derivs = derivation_algebra(space.heisenberg());
    let rep = is_polar_rep(&derivs.on_v(), derive_seed(seed, "rep"));
    pasl_with(space, &derivs, &rep, seed)
}

pub(crate) fn pasl_with(space: &DamekRicciSpace, derivs: &Derivations, rep: &RepPolarity, seed: u64) -> PolarityReport {
    let mut report = PolarityReport::new(space.label(), "A(N)_0 ⋉ L(Z)", seed);
    if space.v_dim() == 0 {
        report.push(Witness::pass("v_zero_horosphere_foliation"));
        report.polar(a_only(space), 1);
        return report;
    }
    report.push(Witness::with("derivation_algebra", true, Certificate::Dimension { value: derivs.dim() }));
    let section = match rep {
        RepPolarity::Inconclusive { orbit_dims } => {
            report.push(Witness::with(
                "generic_point",
                false,
                Certificate::Note { text: format!("orbit dimensions disagree: {orbit_dims:?}") },
            ));
            return report;
        }
        RepPolarity::NonPolar { .. } => {
            report.push(Witness::fail("slice_representation_polar", bilinear_certificate(rep).expect("non-polar")));
            report.verdict = Verdict::NonPolar;
            return report;
        }
        RepPolarity::Polar { section, cohomogeneity, .. } => {
            report.push(Witness::with(
                "slice_representation_polar",
                true,
                Certificate::Dimension { value: *cohomogeneity },
            ));
            section
        }
    };
    if condition_ii(&mut report, space.heisenberg(), section.basis()) {
        let flat = flat_subspace(space, &Subspace::full(1), section, &Subspace::zero(space.z_dim()));
        let c = flat.dim();
        report.polar(flat, c);
    } else {
        report.verdict = Verdict::NonPolar;
        spin_extension_witness(space, rep, &mut report);
    }
    report
}

/// For an irreducible module with `m = 4, 8`, the enlarged spin algebra is
/// transitive on spheres, which is what breaks condition (ii).
fn spin_extension_witness(space: &DamekRicciSpace, rep: &RepPolarity, report: &mut PolarityReport) {
    let module = space.heisenberg().module();
    if module.class().multiplicity != Multiplicity::Single(1) {
        return;
    }
    let (Ok(gens), RepPolarity::Polar { point, .. }) = (extended_spin_generators(module), rep) else {
        return;
    };
    let ext = RepAction::new(space.v_dim(), gens).expect("skew generators");
    let orbit = Subspace::span(space.v_dim(), &ext.tangent_vectors(point)).expect("consistent dimensions");
    report.push(Witness::with(
        "extended_spin_transitive_on_sphere",
        orbit.dim() + 1 == space.v_dim(),
        Certificate::Dimension { value: orbit.dim() },
    ));
}

/// Float shadow of [`check_pasl_action`].
pub fn check_pasl_action_float(space: &DamekRicciSpace, seed: u64, tol: f64) -> PolarityReport {
    let derivs = derivation_algebra(space.heisenberg());
    let rep = is_polar_rep_float(&derivs.on_v(), derive_seed(seed, "rep"), tol);
    pasl_float_with(space, &derivs, &rep, seed, tol)
}

pub(crate) fn rationalize_columns(m: &DMatrix<f64>) -> Subspace {
    let vectors: Vec<Vector> = m
        .column_iter()
        .map(|c| c.iter().map(|&x| Rational::approximate(x, 1_000_000).unwrap_or_else(Rational::zero)).collect())
        .collect();
    Subspace::span(m.nrows(), &vectors).expect("consistent dimensions")
}

pub(crate) fn pasl_float_with(
    space: &DamekRicciSpace,
    derivs: &Derivations,
    rep: &FloatPolarity,
    seed: u64,
    tol: f64,
) -> PolarityReport {
    let mut report = PolarityReport::new(space.label(), "A(N)_0 ⋉ L(Z)", seed);
    if space.v_dim() == 0 {
        report.push(Witness::pass("v_zero_horosphere_foliation"));
        report.polar(a_only(space), 1);
        return report;
    }
    report.push(Witness::with("derivation_algebra", true, Certificate::Dimension { value: derivs.dim() }));
    let section = match rep {
        FloatPolarity::Inconclusive { orbit_dims } => {
            report.push(Witness::with(
                "generic_point",
                false,
                Certificate::Note { text: format!("orbit dimensions disagree: {orbit_dims:?}") },
            ));
            return report;
        }
        FloatPolarity::NonPolar { generator, value, .. } => {
            report.push(Witness::fail(
                "slice_representation_polar",
                Certificate::Numeric { generator: *generator, value: *value },
            ));
            report.verdict = Verdict::NonPolar;
            return report;
        }
        FloatPolarity::Polar { section, cohomogeneity } => {
            report.push(Witness::with(
                "slice_representation_polar",
                true,
                Certificate::Dimension { value: *cohomogeneity },
            ));
            section
        }
    };
    for (i, g) in space.heisenberg().generators().iter().enumerate() {
        let b = section.transpose() * g.to_f64() * section;
        let worst = b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if worst > tol {
            report.push(Witness::fail("condition_ii", Certificate::Numeric { generator: i + 1, value: worst }));
            report.verdict = Verdict::NonPolar;
            return report;
        }
    }
    report.push(Witness::pass("condition_ii"));
    report.push(Witness::with(
        "float_section",
        true,
        Certificate::Note { text: "section basis rounded from floating point".into() },
    ));
    let ell = rationalize_columns(section);
    let flat = flat_subspace(space, &Subspace::full(1), &ell, &Subspace::zero(space.z_dim()));
    let c = 1 + section.ncols();
    report.polar(flat, c);
    report
}

/// Result of evaluating "Q acts polarly on v - w with a section l satisfying
/// <J_X l, l> = 0".
pub(crate) struct Hypothesis {
    pub witnesses: Vec<Witness>,
    /// `Some(Some(l))` if it holds, `Some(None)` if it fails.
    pub outcome: Option<Option<Subspace>>,
}

pub(crate) fn validate_q(
    space: &DamekRicciSpace,
    w: &Subspace,
    q: &RepAction,
    derivs: &Derivations,
) -> Result<(), PolarityError> {
    if w.ambient_dim() != space.v_dim() {
        return Err(PolarityError::Invalid(format!(
            "w lives in dimension {}, v has dimension {}",
            w.ambient_dim(),
            space.v_dim()
        )));
    }
    if q.carrier_dim() != space.v_dim() {
        return Err(PolarityError::Invalid(format!(
            "q acts on dimension {}, v has dimension {}",
            q.carrier_dim(),
            space.v_dim()
        )));
    }
    if let Some(i) = q.invariance_failure(w) {
        return Err(PolarityError::NotInvariant(i + 1));
    }
    if let Some(i) = in_derivation_image(derivs, q.generators()) {
        return Err(PolarityError::Precondition(format!(
            "q generator {} is not the v-part of a skew derivation",
            i + 1
        )));
    }
    if let Some((i, j)) = q.closure_failure() {
        return Err(PolarityError::Precondition(format!(
            "q is not closed under brackets: [{}, {}] leaves its span",
            i + 1,
            j + 1
        )));
    }
    Ok(())
}

pub(crate) fn hypothesis(
    space: &DamekRicciSpace,
    w: &Subspace,
    q: &RepAction,
    seed: u64,
) -> Result<Hypothesis, PolarityError> {
    let complement = orth_complement(w, &Subspace::full(space.v_dim()))?;
    let mut witnesses = vec![Witness::pass("q_valid")];
    if complement.is_zero() {
        witnesses.push(Witness::pass("w_is_v"));
        return Ok(Hypothesis { witnesses, outcome: Some(Some(complement)) });
    }
    let rep = is_polar_rep_on(q, &complement, derive_seed(seed, "rep"))?;
    let ell = match rep {
        RepPolarity::Inconclusive { orbit_dims } => {
            witnesses.push(Witness::with(
                "generic_point",
                false,
                Certificate::Note { text: format!("orbit dimensions disagree: {orbit_dims:?}") },
            ));
            return Ok(Hypothesis { witnesses, outcome: None });
        }
        RepPolarity::NonPolar { .. } => {
            witnesses.push(Witness::fail("q_polar_on_complement", bilinear_certificate(&rep).expect("non-polar")));
            return Ok(Hypothesis { witnesses, outcome: Some(None) });
        }
        RepPolarity::Polar { section, cohomogeneity, .. } => {
            witnesses.push(Witness::with(
                "q_polar_on_complement",
                true,
                Certificate::Dimension { value: cohomogeneity },
            ));
            section
        }
    };
    match j_pairing_failure(space.heisenberg(), ell.basis()) {
        None => {
            witnesses.push(Witness::pass("condition_ii"));
            Ok(Hypothesis { witnesses, outcome: Some(Some(ell)) })
        }
        Some(c) => {
            witnesses.push(Witness::fail("condition_ii", c));
            Ok(Hypothesis { witnesses, outcome: Some(None) })
        }
    }
}

/// `Q x L(H)` with `h = w + z`.
pub fn check_mthm(space: &DamekRicciSpace, w: &Subspace, q: &RepAction, seed: u64) -> Result<PolarityReport, PolarityError> {
    let derivs = derivation_algebra(space.heisenberg());
    mthm_with(space, w, q, &derivs, seed)
}

pub(crate) fn mthm_with(
    space: &DamekRicciSpace,
    w: &Subspace,
    q: &RepAction,
    derivs: &Derivations,
    seed: u64,
) -> Result<PolarityReport, PolarityError> {
    validate_q(space, w, q, derivs)?;
    let hyp = hypothesis(space, w, q, seed)?;
    let mut report = PolarityReport::new(
        space.label(),
        format!("Q ⋉ L(H), h = w + z, dim w = {}, dim q = {}", w.dim(), q.len()),
        seed,
    );
    report.witnesses = hyp.witnesses;
    match hyp.outcome {
        None => {}
        Some(None) => report.verdict = Verdict::NonPolar,
        Some(Some(ell)) => {
            let flat = flat_subspace(space, &Subspace::full(1), &ell, &Subspace::zero(space.z_dim()));
            let c = flat.dim();
            report.polar(flat, c);
        }
    }
    Ok(report)
}

/// `Q x L(H)` with `h = b + w + z`, `b` either `0` or `a`.
pub fn check_main(
    space: &DamekRicciSpace,
    b: &Subspace,
    w: &Subspace,
    q: &RepAction,
    seed: u64,
) -> Result<PolarityReport, PolarityError> {
    if b.ambient_dim() != 1 {
        return Err(PolarityError::Invalid("b must be a subspace of the one-dimensional a".into()));
    }
    let derivs = derivation_algebra(space.heisenberg());
    if b.is_zero() {
        return mthm_with(space, w, q, &derivs, seed);
    }
    validate_q(space, w, q, &derivs)?;
    let hyp = hypothesis(space, w, q, seed)?;
    let mut report = PolarityReport::new(
        space.label(),
        format!("Q ⋉ L(H), h = a + w + z, dim w = {}, dim q = {}", w.dim(), q.len()),
        seed,
    );
    report.witnesses = hyp.witnesses;
    match hyp.outcome {
        Some(Some(ell)) => {
            let flat = flat_subspace(space, &Subspace::zero(1), &ell, &Subspace::zero(space.z_dim()));
            let c = flat.dim();
            report.polar(flat, c);
        }
        Some(None) => report.push(Witness::with(
            "sufficient_condition_only",
            true,
            Certificate::Note { text: "hypothesis fails; no conclusion when h contains a".into() },
        )),
        None => {}
    }
    Ok(report)
}

/// Codimension-one `w`, trivial `Q`.
pub fn construct_cor_pfol<'a>(
    space: &'a DamekRicciSpace,
    seed: u64,
) -> Result<(SubalgebraSpec<'a>, PolarityReport), PolarityError> {
    let n = space.v_dim();
    if n == 0 {
        return Err(PolarityError::Precondition("v = 0".into()));
    }
    let w = Subspace::coordinate(n, 0..n - 1);
    let report = check_mthm(space, &w, &RepAction::trivial(n), seed)?;
    let spec = SubalgebraSpec::new(space, Subspace::zero(1), w, Subspace::full(space.z_dim()))?;
    Ok((spec, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::damek_ricci::build_space;
    use crate::exactla::int_vector;

    fn space(s: &str) -> DamekRicciSpace {
        build_space(s.parse().unwrap())
    }

    #[test]
    fn totally_geodesic_examples() {
        let sp = space("S(1,1)");
        let line = Subspace::span(2, &[int_vector(&[1, 0])]).unwrap();
        let t = is_totally_geodesic(&SubalgebraSpec::with_a(&sp, line.clone(), Subspace::full(1)).unwrap()).unwrap();
        assert!(!t.holds);
        assert!(matches!(t.certificate, Some(Certificate::Containment { .. })));
        let t = is_totally_geodesic(&SubalgebraSpec::with_a(&sp, line, Subspace::zero(1)).unwrap()).unwrap();
        assert!(t.holds);
        let t = is_totally_geodesic(&SubalgebraSpec::with_a(&sp, Subspace::full(2), Subspace::full(1)).unwrap()).unwrap();
        assert!(t.holds);
        let no_a = SubalgebraSpec::new(&sp, Subspace::zero(1), Subspace::full(2), Subspace::zero(1)).unwrap();
        assert!(is_totally_geodesic(&no_a).is_err());
    }

    #[test]
    fn foliation_examples() {
        let sp = space("S(1,1)");
        let r = check_foliation_polar(&sp, &Subspace::zero(2), &Subspace::zero(1)).unwrap();
        assert_eq!((r.verdict, r.cohomogeneity), (Verdict::Polar, Some(1)));
        let r = check_foliation_polar(&sp, &Subspace::coordinate(2, [1]), &Subspace::zero(1)).unwrap();
        assert_eq!(r.verdict, Verdict::Polar);
        let r = check_foliation_polar(&sp, &Subspace::full(2), &Subspace::zero(1)).unwrap();
        assert_eq!(r.verdict, Verdict::NonPolar);
        assert!(r.validate().is_ok());
        assert!(check_foliation_polar(&sp, &Subspace::full(2), &Subspace::full(1)).is_err());
        assert!(check_foliation_polar(&space("S(0,2)"), &Subspace::zero(2), &Subspace::zero(0)).is_ok());
        assert!(check_foliation_polar(&space("S(2,0)"), &Subspace::zero(0), &Subspace::zero(2)).is_err());
    }

    #[test]
    fn pasl_small_cases() {
        let r = check_pasl_action(&space("S(2,0)"), 0);
        assert_eq!((r.verdict, r.cohomogeneity), (Verdict::Polar, Some(1)));
        let r = check_pasl_action(&space("S(2,1)"), 0);
        assert_eq!((r.verdict, r.cohomogeneity), (Verdict::Polar, Some(2)));
        let r = check_pasl_action(&space("S(4,1)"), 0);
        assert_eq!(r.verdict, Verdict::NonPolar);
        assert!(r.validate().is_ok());
        let ext = r.witness("extended_spin_transitive_on_sphere").unwrap();
        assert!(ext.pass);
    }

    #[test]
    fn pasl_float_agrees_on_small_cases() {
        for s in ["S(1,2)", "S(3,1,1)", "S(4,1)", "S(5,2)"] {
            let sp = space(s);
            assert_eq!(check_pasl_action(&sp, 3).verdict, check_pasl_action_float(&sp, 3, 1e-9).verdict, "{s}");
        }
    }

    #[test]
    fn mthm_and_main() {
        let sp = space("S(1,1)");
        let q = RepAction::trivial(2);
        let r = check_mthm(&sp, &Subspace::coordinate(2, [0]), &q, 0).unwrap();
        assert_eq!((r.verdict, r.cohomogeneity), (Verdict::Polar, Some(2)));
        let r = check_mthm(&sp, &Subspace::full(2), &q, 0).unwrap();
        assert_eq!((r.verdict, r.cohomogeneity), (Verdict::Polar, Some(1)));
        let r = check_mthm(&sp, &Subspace::zero(2), &q, 0).unwrap();
        assert_eq!(r.verdict, Verdict::NonPolar);
        let r = check_main(&sp, &Subspace::full(1), &Subspace::coordinate(2, [0]), &q, 0).unwrap();
        assert_eq!((r.verdict, r.cohomogeneity), (Verdict::Polar, Some(1)));
        let r = check_main(&sp, &Subspace::full(1), &Subspace::zero(2), &q, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn q_validation() {
        let sp = space("S(2,1)");
        let g = sp.heisenberg().generators();
        let q = RepAction::new(4, vec![&g[0] * &g[1]]).unwrap();
        let w = Subspace::coordinate(4, [0]);
        assert_eq!(check_mthm(&sp, &w, &q, 0).unwrap_err(), PolarityError::NotInvariant(1));
        let mut rot = crate::exactla::ExactMatrix::zeros(4, 4);
        rot.set(2, 3, Rational::one());
        rot.set(3, 2, -Rational::one());
        let q = RepAction::new(4, vec![rot]).unwrap();
        assert!(matches!(check_mthm(&sp, &Subspace::coordinate(4, [0, 1]), &q, 0), Err(PolarityError::Precondition(_))));
    }

    #[test]
    fn pfol_examples() {
        for s in ["S(1,1)", "S(0,2)", "S(7,1,0)"] {
            let sp = space(s);
            let (spec, r) = construct_cor_pfol(&sp, 0).unwrap();
            assert!(r.is_polar(), "{s}");
            assert_eq!(r.cohomogeneity, Some(2));
            assert_eq!(spec.dim(), sp.v_dim() - 1 + sp.z_dim());
        }
        assert!(construct_cor_pfol(&space("S(3,0,0)"), 0).is_err());
    }
}
