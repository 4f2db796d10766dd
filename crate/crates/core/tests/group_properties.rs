use std::collections::HashSet;

use curveaut_core::autgroup::{self, StarLifter};
use curveaut_core::error::Error;
use curveaut_core::form::Form;
use curveaut_core::galois;
use curveaut_core::projgeom::{self, ProjMap};
use curveaut_core::{families, FieldCtx, FieldElem, PlaneCurve, ProjPoint};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn star(bits: u32) -> (FieldCtx, PlaneCurve) {
    let f = FieldCtx::with_default_modulus(bits, bits).unwrap();
    let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
    (f, c)
}

fn union(groups: &[&galois::PointGaloisGroup]) -> Vec<ProjMap> {
    groups.iter().flat_map(|g| g.elements.iter().copied()).collect()
}

#[test]
fn q4_closure_equals_brute_force() {
    let (f, c) = star(2);
    let pts = families::star_points(&f);
    let g1 = galois::point_galois_group(&f, &c, &pts[0], 2).unwrap();
    let g2 = galois::point_galois_group(&f, &c, &pts[1], 2).unwrap();
    let closure = autgroup::closure(&f, &union(&[&g1, &g2]), &c, 1000).unwrap();
    let brute = autgroup::brute_force_stabilizer(&f, &c, 2).unwrap();
    assert_eq!(closure.order(), 60);
    assert_eq!(closure.elements(), brute.elements());
}

#[test]
fn point_groups_match_direct_perspectivity_search() {
    let (f, c) = star(2);
    let sub = f.fq_elements();
    for p in families::star_points(&f) {
        let v = p.coords();
        // Every I + v a^T with a over F_q and 1 + a.v != 0, kept if it maps C to itself.
        let mut want = Vec::new();
        for &a0 in &sub {
            for &a1 in &sub {
                for &a2 in &sub {
                    let a = [a0, a1, a2];
                    let mut m = [FieldElem::ZERO; 9];
                    for i in 0..3 {
                        for j in 0..3 {
                            let id = if i == j { f.one() } else { f.zero() };
                            m[3 * i + j] = f.add(id, f.mul(v[i], a[j]));
                        }
                    }
                    if let Ok(map) = ProjMap::new(&f, m) {
                        if c.transform(&f, &map).same_curve(&f, &c) && !want.contains(&map) {
                            want.push(map);
                        }
                    }
                }
            }
        }
        want.sort();
        let got = galois::point_galois_group(&f, &c, &p, 2).unwrap();
        assert_eq!(got.elements, want);
        assert_eq!(got.order, 4);
    }
}

#[test]
fn doublestar_group_at_p1() {
    let f = FieldCtx::with_default_modulus(2, 1).unwrap();
    let c = PlaneCurve::build_doublestar(&f, f.gen()).unwrap();
    let p1 = families::doublestar_points(&f)[0];
    let sigma = ProjMap::from_bits(&f, [1, 0, 1, 0, 1, 0, 0, 0, 1]).unwrap();
    let tau = ProjMap::from_bits(&f, [1, 1, 0, 0, 1, 0, 0, 0, 1]).unwrap();
    let mut want = vec![ProjMap::identity(), sigma, tau, sigma.compose(&f, &tau)];
    want.sort();
    assert_eq!(galois::point_galois_group(&f, &c, &p1, 2).unwrap().elements, want);
}

#[test]
fn any_two_galois_points_generate_the_same_group() {
    let (f, c) = star(2);
    let pts = families::star_points(&f);
    let groups: Vec<_> = pts
        .iter()
        .map(|p| galois::point_galois_group(&f, &c, p, 2).unwrap())
        .collect();
    let reference = autgroup::closure(&f, &union(&[&groups[0], &groups[1]]), &c, 1000).unwrap();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let g = autgroup::closure(&f, &union(&[&groups[i], &groups[j]]), &c, 1000).unwrap();
            assert_eq!(g.elements(), reference.elements(), "pair ({i}, {j})");
        }
    }
}

#[test]
fn q8_group_is_sharply_3_transitive_on_nine_points() {
    let (f, c) = star(3);
    let pts = families::star_points(&f);
    let g1 = galois::point_galois_group(&f, &c, &pts[0], 3).unwrap();
    let g2 = galois::point_galois_group(&f, &c, &pts[1], 3).unwrap();
    let g = autgroup::closure(&f, &union(&[&g1, &g2]), &c, 2000).unwrap();
    assert_eq!(g.order(), 504);
    assert_eq!(pts.len(), 9);
    assert!(autgroup::sharply_3_transitive(&f, &g, &pts));
    let id = autgroup::identify_star(&f, &g, &families::line_y(&f), &pts).unwrap();
    assert!(id.pass());
}

#[test]
fn lift_examples() {
    let (f, c) = star(2);
    let pts = families::star_points(&f);
    let line = families::line_y(&f);
    let groups: Vec<_> = pts
        .iter()
        .map(|p| galois::point_galois_group(&f, &c, p, 2).unwrap().elements)
        .collect();
    let g = autgroup::closure(&f, &[groups[0].clone(), groups[1].clone()].concat(), &c, 1000).unwrap();
    let h = g.pointwise_stabilizer(&f, &pts[..2]);
    assert_eq!(h.len(), 3);
    assert!(autgroup::is_cyclic(&f, &h));
    let lifter = StarLifter::new(&f, &c, &line, pts.clone(), groups.clone(), h);
    let id = autgroup::line_matrix(&f, &ProjMap::identity(), &line).unwrap();
    assert_eq!(lifter.lift(&id).unwrap(), ProjMap::identity());
    for sigma in &groups[0] {
        let tau = autgroup::line_matrix(&f, sigma, &line).unwrap();
        assert_eq!(lifter.lift(&tau).unwrap(), *sigma);
    }
}

#[test]
fn pgl2_has_the_expected_order() {
    for bits in 1..=4u32 {
        let f = FieldCtx::with_default_modulus(bits, bits).unwrap();
        let q = 1u64 << bits;
        assert_eq!(projgeom::pgl2_elements(&f, bits).unwrap().len() as u64, q * q * q - q);
    }
}

#[test]
fn brute_force_guard_and_closure_errors() {
    let (f, c) = star(2);
    let big = FieldCtx::with_default_modulus(10, 5).unwrap();
    let cb = PlaneCurve::build_star(&big, big.gen()).unwrap();
    assert!(matches!(autgroup::brute_force_stabilizer(&big, &cb, 5), Err(Error::TooLarge(_))));
    let pts = families::star_points(&f);
    let g1 = galois::point_galois_group(&f, &c, &pts[0], 2).unwrap();
    let g2 = galois::point_galois_group(&f, &c, &pts[1], 2).unwrap();
    assert!(matches!(
        autgroup::closure(&f, &union(&[&g1, &g2]), &c, 10),
        Err(Error::CapExceeded(_))
    ));
    // (X:Y:Z) -> (Y:X:Z) swaps P_1 with (0:1:0), which is not on C.
    let swap = ProjMap::from_bits(&f, [0, 1, 0, 1, 0, 0, 0, 0, 1]).unwrap();
    assert!(matches!(autgroup::closure(&f, &[swap], &c, 1000), Err(Error::BadGenerator)));
    assert_eq!(autgroup::closure(&f, &[ProjMap::identity()], &c, 10).unwrap().order(), 1);
}

/// A dense quintic over GF(2) with pseudo-random coefficients.
fn dense_quintic(seed: u64) -> (FieldCtx, PlaneCurve) {
    let f = FieldCtx::with_default_modulus(4, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for a in 0..=5u32 {
        for b in 0..=5 - a {
            if rng.gen_bool(0.6) {
                terms.push(([a, b, 5 - a - b], f.one()));
            }
        }
    }
    (f.clone(), PlaneCurve::from_form(Form::from_terms(5, terms)))
}

#[test]
fn random_dense_quintic_has_trivial_stabilizer() {
    let (f, c) = dense_quintic(11);
    // Test-side oracle: every invertible GF(2) matrix, kept if it preserves the GF(16)-points.
    let points: HashSet<ProjPoint> = c.rational_points(&f, 4).unwrap().into_iter().collect();
    assert!(points.len() > 5);
    let mut keepers = 0;
    for bits in 0u32..512 {
        let m = std::array::from_fn(|i| (bits >> i & 1) as u64);
        let Ok(map) = ProjMap::from_bits(&f, m) else { continue };
        if points.iter().all(|p| points.contains(&map.apply(&f, p))) {
            keepers += 1;
        }
    }
    assert_eq!(keepers, 1);
    assert_eq!(autgroup::brute_force_stabilizer(&f, &c, 1).unwrap().order(), 1);
    assert_eq!(autgroup::brute_force_stabilizer(&f, &c, 2).unwrap().order(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn closure_ignores_generator_order(seed in any::<u64>()) {
        let (f, c) = star(2);
        let pts = families::star_points(&f);
        let g1 = galois::point_galois_group(&f, &c, &pts[0], 2).unwrap();
        let g2 = galois::point_galois_group(&f, &c, &pts[1], 2).unwrap();
        let mut gens = union(&[&g1, &g2]);
        let reference = autgroup::closure(&f, &gens, &c, 1000).unwrap();
        gens.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let g = autgroup::closure(&f, &gens, &c, 1000).unwrap();
        prop_assert_eq!(g.elements(), reference.elements());
        // Every element permutes the Galois points and stabilizes L_Y.
        let line = families::line_y(&f);
        for m in g.elements() {
            prop_assert_eq!(m.apply_line(&f, &line), line);
            let mut img: Vec<_> = pts.iter().map(|p| m.apply(&f, p)).collect();
            img.sort();
            let mut base = pts.clone();
            base.sort();
            prop_assert_eq!(img, base);
        }
    }
}
