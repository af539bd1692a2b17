use drspolar::clifford::{CliffordClass, Multiplicity};
use drspolar::exactla::{dot, ExactMatrix, Rational, Vector};
use drspolar::heisenberg::build_heisenberg;
use drspolar::polarity::{classify, derivation_algebra, Arithmetic, Verdict};

/// Octonionic classes on which the exact computation finds a flat section
/// although they are missing from the published lists.
fn octonionic_triple(cls: CliffordClass) -> bool {
    cls.m == 7 && matches!(cls.multiplicity, Multiplicity::Pair(3, 0) | Multiplicity::Pair(0, 3))
}

/// Published polar cases of the isometric automorphisms on `v`.
fn rep_polar(cls: CliffordClass) -> bool {
    if cls.v_dim() == 0 {
        return true;
    }
    match (cls.m, cls.multiplicity) {
        (0..=3, _) => true,
        (4 | 5 | 6 | 8, Multiplicity::Single(k)) => k == 1,
        (7, Multiplicity::Pair(p, n)) => matches!((p, n), (1, 0) | (0, 1) | (2, 0) | (0, 2)),
        _ => false,
    }
}

/// Published polar cases of `A(N)_0 x L(Z)` on `S`.
fn pasl_polar(cls: CliffordClass) -> bool {
    if cls.v_dim() == 0 {
        return true;
    }
    match (cls.m, cls.multiplicity) {
        (0..=3, _) => true,
        (5 | 6, Multiplicity::Single(k)) => k == 1,
        (7, Multiplicity::Pair(p, n)) => matches!((p, n), (1, 0) | (0, 1) | (2, 0) | (0, 2)),
        _ => false,
    }
}

fn verdict(b: bool) -> Verdict {
    if b {
        Verdict::Polar
    } else {
        Verdict::NonPolar
    }
}

#[test]
fn sweep_agrees_with_published_lists_off_the_octonionic_triples() {
    let entries = classify(9, 3, 0, Arithmetic::Exact);
    assert_eq!(entries.len(), 51);
    for e in &entries {
        assert!(e.representation.validate().is_ok(), "{}", e.group);
        assert!(e.pasl.validate().is_ok(), "{}", e.group);
        if octonionic_triple(e.class) {
            assert_eq!(e.representation.verdict, Verdict::Polar, "{}", e.group);
            assert_eq!(e.representation.cohomogeneity, Some(3));
            assert_eq!(e.pasl.verdict, Verdict::Polar, "{}", e.group);
            assert_eq!(e.pasl.cohomogeneity, Some(4));
            continue;
        }
        assert_eq!(e.representation.verdict, verdict(rep_polar(e.class)), "rep {}", e.group);
        assert_eq!(e.pasl.verdict, verdict(pasl_polar(e.class)), "pasl {}", e.group);
    }
}

fn orbit_rank(gens: &[ExactMatrix], x: &Vector) -> usize {
    let rows: Vec<Vector> = gens.iter().map(|g| g.mul_vec(x)).collect();
    ExactMatrix::from_rows(&rows).unwrap().rank()
}

/// Independent check for `N(7,3,0)` and `N(7,0,3)`: with `u_j` the `j`-th
/// basis vector of the `j`-th copy of the octonions, every derivation `D`
/// satisfies `<D u_i, u_j> = 0`, and a generic point of the span has an orbit
/// of codimension 3. So the span is a flat section.
#[test]
fn octonionic_triples_have_a_diagonal_section() {
    for cls in [CliffordClass::pair(7, 3, 0).unwrap(), CliffordClass::pair(7, 0, 3).unwrap()] {
        let heis = build_heisenberg(cls);
        let d = derivation_algebra(&heis);
        assert_eq!(d.dim(), 24);
        let gens: Vec<ExactMatrix> = d.basis().iter().map(|(dv, _)| dv.clone()).collect();
        let n = heis.v_dim();
        assert_eq!(n, 24);
        let u: Vec<Vector> = (0..3).map(|j| drspolar::exactla::unit_vector(n, 8 * j + j)).collect();
        for g in &gens {
            for a in &u {
                let ga = g.mul_vec(a);
                for b in &u {
                    assert!(dot(&ga, b).is_zero());
                }
            }
        }
        let x: Vector = (0..n)
            .map(|i| match i {
                0 => Rational::from_integer(1),
                9 => Rational::from_integer(2),
                18 => Rational::from_integer(5),
                _ => Rational::zero(),
            })
            .collect();
        assert_eq!(orbit_rank(&gens, &x), n - 3);
        let generic: Vector = (0..n as i64).map(|i| Rational::from_integer((7 * i + 3) % 11 - 5)).collect();
        assert_eq!(orbit_rank(&gens, &generic), n - 3);
    }
}
