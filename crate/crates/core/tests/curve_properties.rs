use curveaut_core::form::Form;
use curveaut_core::galois::{self, ScanRegion};
use curveaut_core::json::{curve_from_json, curve_to_json};
use curveaut_core::{autgroup, families, prank};
use curveaut_core::{FieldCtx, PlaneCurve, ProjLine, ProjMap, ProjPoint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn star(q_bits: u32) -> (FieldCtx, PlaneCurve) {
    let f = FieldCtx::with_default_modulus(q_bits, q_bits).unwrap();
    let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
    (f, c)
}

fn quartic() -> (FieldCtx, PlaneCurve) {
    let f = FieldCtx::with_default_modulus(2, 1).unwrap();
    let c = PlaneCurve::build_doublestar(&f, f.gen()).unwrap();
    (f, c)
}

fn random_map(f: &FieldCtx, rng: &mut ChaCha8Rng) -> ProjMap {
    loop {
        let m = [0; 9].map(|_| f.elem(rng.gen_range(0..f.size())).unwrap());
        if let Ok(p) = ProjMap::new(f, m) {
            return p;
        }
    }
}

fn sorted(mut v: Vec<ProjPoint>) -> Vec<ProjPoint> {
    v.sort();
    v
}

#[test]
fn tangent_formula_on_line_y() {
    for bits in [2, 3, 4] {
        let (f, c) = star(bits);
        for beta in f.fq_elements() {
            let p = ProjPoint::new(&f, [beta, f.zero(), f.one()]).unwrap();
            let want = ProjLine::new(&f, [f.one(), f.sqrt(beta), beta]).unwrap();
            // Independent of the gradient: the line passes through P and meets C there twice or more.
            assert!(want.contains(&f, &p));
            assert!(c.intersection_mult(&f, &want, &p).unwrap() >= 2);
            assert_eq!(c.tangent_line(&f, &p).unwrap(), want);
        }
    }
}

/// Common zeros of F and its partials among the GF(2^(n k))-points, by enumeration.
fn singular_points(f: &FieldCtx, c: &PlaneCurve, k: u32) -> usize {
    let (big, emb) = f.extend(k).unwrap();
    let form = Form::from_terms(c.degree(), c.form().terms().map(|(e, &a)| (*e, emb.map(a))));
    let grad = form.gradient();
    PlaneCurve::from_form(form)
        .rational_points(&big, big.n())
        .unwrap()
        .iter()
        .filter(|p| grad.iter().all(|g| g.eval(&big, &p.coords()).is_zero()))
        .count()
}

#[test]
fn star_with_lambda_one_is_singular() {
    let f = FieldCtx::with_default_modulus(2, 2).unwrap();
    let c = PlaneCurve::star_unchecked(&f, f.one());
    assert!(singular_points(&f, &c, 1) > 0);
    assert!(!c.is_smooth(&f).is_smooth());
    assert!(PlaneCurve::build_star(&f, f.one()).is_err());
}

/// With A = X^2+XZ, B = Y^2+YZ the partials are ZB, ZA, XB+YA. Off Z = 0 they
/// force A = B = 0 and then F = lambda Z^4 != 0; on Z = 0, F = (X^2+XY+Y^2)^2 has
/// no zero with XY(X+Y) = 0. So the quartic is smooth for every lambda != 0.
#[test]
fn quartic_with_lambda_one_is_smooth_with_a_larger_group() {
    let f = FieldCtx::with_default_modulus(2, 1).unwrap();
    let c = PlaneCurve::doublestar_unchecked(&f, f.one());
    for k in 1..=4 {
        assert_eq!(singular_points(&f, &c, k), 0);
    }
    assert!(c.is_smooth(&f).is_smooth());
    let f4 = FieldCtx::with_default_modulus(4, 1).unwrap();
    let c4 = PlaneCurve::doublestar_unchecked(&f4, f4.one());
    assert_eq!(autgroup::brute_force_stabilizer(&f4, &c4, 2).unwrap().order(), 168);
    assert_eq!(galois::galois_scan(&f4, &c4, ScanRegion::OffCurve, 4).unwrap().len(), 7);
}

/// Rational points found by direct evaluation over every point of the plane.
#[test]
fn rational_points_match_plane_enumeration() {
    let (f, c) = star(2);
    let (big, emb) = f.extend(2).unwrap();
    let form = Form::from_terms(c.degree(), c.form().terms().map(|(e, &a)| (*e, emb.map(a))));
    let cb = PlaneCurve::from_form(form);
    let mut want = Vec::new();
    for x in big.elements() {
        for y in big.elements() {
            for z in [big.zero(), big.one()] {
                if z.is_zero() && !(x.is_one() || (x.is_zero() && y.is_one())) {
                    continue;
                }
                if let Ok(p) = ProjPoint::new(&big, [x, y, z]) {
                    if cb.contains(&big, &p) && !want.contains(&p) {
                        want.push(p);
                    }
                }
            }
        }
    }
    assert_eq!(sorted(cb.rational_points(&big, 4).unwrap()), sorted(want));
}

#[test]
fn hasse_witt_convention_on_genus_one_fixtures() {
    let f = FieldCtx::with_default_modulus(2, 1).unwrap();
    let one = f.one();
    let fixtures = [
        Form::from_terms(3, [([0, 2, 1], one), ([0, 1, 2], one), ([3, 0, 0], one)]),
        Form::from_terms(3, [([0, 2, 1], one), ([1, 1, 1], one), ([3, 0, 0], one), ([0, 0, 3], one)]),
    ];
    for form in fixtures {
        let c = PlaneCurve::from_form(form);
        // Frobenius trace from point counts; ordinary iff it is odd.
        let n1 = c.rational_points(&f, 1).unwrap().len() as i64;
        let n2 = c.rational_points(&f, 2).unwrap().len() as i64;
        let a = 3 - n1;
        assert_eq!(n2, 9 - a * a);
        let want = (a % 2 != 0) as u64;
        assert_eq!(prank::hasse_witt_prank(&f, &c).unwrap().prank, want);
    }
}

#[test]
fn ds_and_hasse_witt_agree_on_the_star_family() {
    for bits in [2, 3] {
        let (f, c) = star(bits);
        let q = f.q();
        let p1 = families::star_points(&f)[0];
        let profile = galois::ramification_profile(&f, &c, &p1, bits).unwrap();
        let ds = prank::ds_prank(&c, &profile).unwrap();
        let hw = prank::hasse_witt_prank(&f, &c).unwrap();
        assert_eq!(ds.prank, q * (q - 1) / 2);
        assert_eq!(hw.prank, ds.prank);
        assert!(hw.ordinary && ds.ordinary);
    }
    let (_, c) = star(2);
    assert_eq!(prank::hasse_witt_matrix(&c).unwrap().len(), 6);
}

#[test]
fn galois_sets_and_prank_are_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (f, c) = star(2);
    let (fq, cq) = quartic();
    let star_on = galois::galois_scan(&f, &c, ScanRegion::OnCurve, 2).unwrap();
    let quart_off = galois::galois_scan(&fq, &cq, ScanRegion::OffCurve, 2).unwrap();
    assert_eq!(star_on.len(), 5);
    assert_eq!(quart_off.len(), 3);
    for _ in 0..20 {
        let m = random_map(&f, &mut rng);
        let d = c.transform(&f, &m);
        let moved = sorted(star_on.iter().map(|p| m.apply(&f, p)).collect());
        assert_eq!(galois::galois_scan(&f, &d, ScanRegion::OnCurve, 2).unwrap(), moved);
        assert_eq!(prank::hasse_witt_prank(&f, &d).unwrap().prank, 6);

        let m = random_map(&fq, &mut rng);
        let d = cq.transform(&fq, &m);
        let moved = sorted(quart_off.iter().map(|p| m.apply(&fq, p)).collect());
        assert_eq!(galois::galois_scan(&fq, &d, ScanRegion::OffCurve, 2).unwrap(), moved);
        assert_eq!(prank::hasse_witt_prank(&fq, &d).unwrap().prank, 3);
    }
}

fn line_strategy(bits: u32) -> impl Strategy<Value = [u64; 3]> {
    let top = 1u64 << bits;
    [0..top, 0..top, 0..top].prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bezout_star_q4(v in line_strategy(4)) {
        let f = FieldCtx::with_default_modulus(4, 2).unwrap();
        let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
        let line = ProjLine::from_bits(&f, v).unwrap();
        prop_assert_eq!(c.line_intersection(&f, &line).unwrap().total(), 5);
    }

    #[test]
    fn bezout_star_q8(v in line_strategy(6)) {
        let f = FieldCtx::with_default_modulus(6, 3).unwrap();
        let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
        let line = ProjLine::from_bits(&f, v).unwrap();
        prop_assert_eq!(c.line_intersection(&f, &line).unwrap().total(), 9);
    }

    #[test]
    fn bezout_quartic(v in line_strategy(4)) {
        let f = FieldCtx::with_default_modulus(4, 1).unwrap();
        let c = PlaneCurve::build_doublestar(&f, f.gen()).unwrap();
        let line = ProjLine::from_bits(&f, v).unwrap();
        let meet = c.line_intersection(&f, &line).unwrap();
        prop_assert_eq!(meet.total(), 4);
        for (p, m) in &meet.points {
            prop_assert!(c.contains(&f, p));
            prop_assert_eq!(c.intersection_mult(&f, &line, p).unwrap(), *m);
        }
    }

    #[test]
    fn curve_files_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FieldCtx::with_default_modulus(4, 2).unwrap();
        let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
        let d = c.transform(&f, &random_map(&f, &mut rng));
        let text = curve_to_json(&f, &d);
        let (g, back) = curve_from_json(&text).unwrap();
        prop_assert_eq!(g.modulus(), f.modulus());
        prop_assert_eq!(back.form(), d.form());
        prop_assert_eq!(curve_to_json(&g, &back), text);
    }
}
