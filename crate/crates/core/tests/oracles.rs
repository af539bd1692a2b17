use drspolar::damek_ricci::{build_space, DamekRicciSpace, SVector};
use drspolar::exactla::{dot, orth_complement, Rational, Subspace, Vector};
use drspolar::polarity::{is_totally_geodesic, SubalgebraSpec};
use drspolar::sampling::{random_int, random_int_vector, rng_from_seed};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SUITE: [&str; 10] = [
    "S(1,1)", "S(1,2)", "S(2,1)", "S(3,1,0)", "S(3,1,1)", "S(4,1)", "S(5,1)", "S(6,1)", "S(7,1,0)", "S(2,2)",
];

fn suite() -> Vec<DamekRicciSpace> {
    SUITE.iter().map(|s| build_space(s.parse().unwrap())).collect()
}

fn combo(rng: &mut ChaCha8Rng, s: &Subspace) -> Vector {
    let mut out = vec![Rational::zero(); s.ambient_dim()];
    for b in s.basis() {
        let c = random_int(rng);
        for (o, x) in out.iter_mut().zip(b) {
            *o += &c * x;
        }
    }
    out
}

fn random_subspace(rng: &mut ChaCha8Rng, n: usize, max_dim: usize) -> Subspace {
    let d = rng.gen_range(0..=max_dim.min(n));
    let vs: Vec<Vector> = (0..d).map(|_| random_int_vector(rng, n)).collect();
    Subspace::span(n, &vs).unwrap()
}

/// Smallest `(v', z')` containing the seeds with `[v',v'] in z'` and
/// `J_{z'} v' in v'`.
fn geodesic_hull(sp: &DamekRicciSpace, v: Subspace, z: Subspace) -> (Subspace, Subspace) {
    let heis = sp.heisenberg();
    let (mut v, mut z) = (v, z);
    loop {
        let mut vs: Vec<Vector> = v.basis().to_vec();
        for x in z.basis() {
            for u in v.basis() {
                vs.push(heis.j_apply(x, u));
            }
        }
        let v2 = Subspace::span(sp.v_dim(), &vs).unwrap();
        let mut zs: Vec<Vector> = z.basis().to_vec();
        for a in v2.basis() {
            for b in v2.basis() {
                zs.push(heis.bracket_v(a, b));
            }
        }
        let z2 = Subspace::span(sp.z_dim(), &zs).unwrap();
        if v2.dim() == v.dim() && z2.dim() == z.dim() {
            return (v2, z2);
        }
        (v, z) = (v2, z2);
    }
}

/// `v'` arbitrary and `z'` just large enough for `a + v' + z'` to close.
fn random_subalgebra(sp: &DamekRicciSpace, rng: &mut ChaCha8Rng) -> (Subspace, Subspace) {
    if rng.gen_bool(0.3) {
        let v = random_subspace(rng, sp.v_dim(), 2);
        let z = random_subspace(rng, sp.z_dim(), 2);
        return geodesic_hull(sp, v, z);
    }
    let v = random_subspace(rng, sp.v_dim(), 3);
    let mut zs: Vec<Vector> = Vec::new();
    for a in v.basis() {
        for b in v.basis() {
            zs.push(sp.heisenberg().bracket_v(a, b));
        }
    }
    zs.extend(random_subspace(rng, sp.z_dim(), 1).basis().iter().cloned());
    (v, Subspace::span(sp.z_dim(), &zs).unwrap())
}

fn closed_under_nabla(sp: &DamekRicciSpace, flat: &Subspace) -> bool {
    let ech = flat.echelon();
    flat.basis().iter().all(|x| {
        let x = sp.from_flat(x);
        flat.basis().iter().all(|y| ech.contains(&sp.nabla_left_invariant(&x, &sp.from_flat(y)).to_flat()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn geodesic_criterion_matches_connection(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        for sp in suite() {
            let (v, z) = random_subalgebra(&sp, &mut rng);
            let spec = SubalgebraSpec::with_a(&sp, v, z).unwrap();
            let tg = is_totally_geodesic(&spec).unwrap().holds;
            prop_assert_eq!(tg, closed_under_nabla(&sp, &spec.flat()), "{}", sp.label());
        }
    }

    #[test]
    fn condition_ii_matches_killing_vanishing(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        for sp in suite() {
            // an arbitrary candidate section a + l, or a geodesic subalgebra
            let v = random_subspace(&mut rng, sp.v_dim(), 3);
            let (v, z) = if rng.gen_bool(0.7) {
                (v, Subspace::zero(sp.z_dim()))
            } else {
                let z = random_subspace(&mut rng, sp.z_dim(), 2);
                geodesic_hull(&sp, v, z)
            };
            let hz = orth_complement(&z, &Subspace::full(sp.z_dim())).unwrap();
            let hv = orth_complement(&v, &Subspace::full(sp.v_dim())).unwrap();
            let heis = sp.heisenberg();
            let cond = hz.basis().iter().all(|x| {
                v.basis().iter().all(|a| v.basis().iter().all(|b| dot(&heis.j_apply(x, a), b).is_zero()))
            });
            let tangent = SubalgebraSpec::with_a(&sp, v.clone(), z.clone()).unwrap().flat();
            let normal = hv.embed(sp.s_dim(), sp.v_offset()).sum(&hz.embed(sp.s_dim(), sp.z_offset())).unwrap();
            let mut vanishes = true;
            for xi in tangent.basis() {
                for eta in normal.basis() {
                    for zeta in tangent.basis() {
                        let k = sp.killing_koszul_at_e(&sp.from_flat(xi), &sp.from_flat(eta), &sp.from_flat(zeta));
                        vanishes &= k.is_zero();
                    }
                }
            }
            for _ in 0..4 {
                let (xi, eta, zeta) = (combo(&mut rng, &tangent), combo(&mut rng, &normal), combo(&mut rng, &tangent));
                let k = sp.killing_koszul_at_e(&sp.from_flat(&xi), &sp.from_flat(&eta), &sp.from_flat(&zeta));
                vanishes &= k.is_zero();
            }
            prop_assert_eq!(cond, vanishes, "{}", sp.label());
        }
    }

    #[test]
    fn killing_value_on_geodesic_configuration(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        for sp in suite() {
            let v = random_subspace(&mut rng, sp.v_dim(), 2);
            let z = random_subspace(&mut rng, sp.z_dim(), 2);
            let (v, z) = geodesic_hull(&sp, v, z);
            let hz = orth_complement(&z, &Subspace::full(sp.z_dim())).unwrap();
            let hv = orth_complement(&v, &Subspace::full(sp.v_dim())).unwrap();
            let (vv, ww) = (combo(&mut rng, &v), combo(&mut rng, &v));
            let (y, zz) = (combo(&mut rng, &z), combo(&mut rng, &z));
            let (x, u) = (combo(&mut rng, &hz), combo(&mut rng, &hv));
            let (s, t) = (random_int(&mut rng), random_int(&mut rng));
            let xi = SVector::new(s, vv.clone(), y);
            let eta = SVector::new(Rational::zero(), u, x.clone());
            let zeta = SVector::new(t, ww.clone(), zz);
            let expected = -dot(&sp.heisenberg().j_apply(&x, &vv), &ww);
            prop_assert_eq!(sp.killing_koszul_at_e(&xi, &eta, &zeta), expected, "{}", sp.label());
        }
    }
}

#[test]
fn lines_satisfy_condition_ii() {
    for sp in suite() {
        let heis = sp.heisenberg();
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            let u = random_int_vector(&mut rng, sp.v_dim());
            for g in heis.generators() {
                assert!(dot(&g.mul_vec(&u), &u).is_zero());
            }
            let x = random_int_vector(&mut rng, sp.z_dim());
            assert!(dot(&heis.j_apply(&x, &u), &u).is_zero());
        }
    }
}

#[test]
fn hull_is_a_geodesic_subalgebra() {
    let sp = build_space("S(3,2,0)".parse().unwrap());
    let v = Subspace::span(8, &[drspolar::exactla::unit_vector(8, 0)]).unwrap();
    let z = Subspace::span(3, &[drspolar::exactla::unit_vector(3, 0)]).unwrap();
    let (v, z) = geodesic_hull(&sp, v, z);
    assert_eq!((v.dim(), z.dim()), (2, 1));
    let spec = SubalgebraSpec::with_a(&sp, v, z).unwrap();
    assert!(is_totally_geodesic(&spec).unwrap().holds);
    assert!(closed_under_nabla(&sp, &spec.flat()));
}
