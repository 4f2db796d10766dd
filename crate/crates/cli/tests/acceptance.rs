//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use curveaut_cli::report::{Bundle, Certification};
use curveaut_cli::theorem1::{self, Theorem1Args};
use curveaut_cli::theorem2::{self, Theorem2Args};
use curveaut_core::galois::{self, ScanRegion};
use curveaut_core::{prank, FieldCtx, PlaneCurve, ProjLine, ProjMap, ProjPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

type Check = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

/// The claim's computed value, provided the claim passed.
fn passed<'a>(b: &'a Bundle, id: &str) -> Result<&'a Value, String> {
    let c = b.claim(id).ok_or(format!("{}: missing claim {id}", b.command))?;
    ensure(c.pass, format!("{id} failed: {}", c.computed))?;
    Ok(&c.computed)
}

fn field(v: &Value, key: &str) -> Value {
    v[key].clone()
}

fn t1(q: u64, lambda: &str, ambient: Option<u32>, closure_only: bool) -> Result<Bundle, String> {
    let mut a = Theorem1Args::new(q, lambda);
    a.ambient = ambient;
    a.closure_only = closure_only;
    theorem1::verify(&a).map_err(|e| e.to_string())
}

fn t2(lambda: &str, ambient: Option<u32>) -> Result<Bundle, String> {
    theorem2::verify(&Theorem2Args::new(lambda, ambient)).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let b = t1(4, "w", Some(2), false)?;
    let closure = passed(&b, "thm1.closure_order")?;
    ensure(field(closure, "order") == 60, "closure order is not 60")?;
    let brute = passed(&b, "thm1.brute_force")?;
    ensure(
        brute["searched"] == 60480 && brute["order"] == 60 && brute["equals_closure"] == true,
        format!("brute force: {brute}"),
    )?;
    let r = passed(&b, "thm1.restriction_bijective")?;
    ensure(r["injective"] == true && r["onto_pgl2"] == true, format!("restriction: {r}"))?;
    let s = passed(&b, "thm1.sharply_3_transitive")?;
    ensure(s["points"] == 5, "expected 5 Galois points")?;
    Ok("order 60 = brute force over 60480, restriction bijective, sharply 3-transitive".into())
}

fn criterion_2() -> Check {
    let mut notes = Vec::new();
    for (q, order) in [(8u64, 504u64), (16, 4080)] {
        let b = t1(q, "w", None, false)?;
        let closure = passed(&b, "thm1.closure_order")?;
        ensure(closure["order"] == order, format!("q={q}: order {}", closure["order"]))?;
        let lift = passed(&b, "thm1.lift_roundtrip")?;
        ensure(
            lift["group_elements"] == order
                && lift["lift_after_restrict_failures"] == 0
                && lift["restrict_after_lift_failures"] == 0,
            format!("q={q}: lift {lift}"),
        )?;
        passed(&b, "thm1.restriction_bijective")?;
        passed(&b, "thm1.sharply_3_transitive")?;
        notes.push(format!("q={q} order {order}"));
    }
    Ok(format!("{}, restrict/lift round trip on every element", notes.join(", ")))
}

fn criterion_3() -> Check {
    let b = t1(64, "w", None, true)?;
    let closure = b.claim("thm1.closure_order").ok_or("missing closure claim")?;
    ensure(closure.pass && closure.computed["order"] == 262080, format!("closure: {}", closure.computed))?;
    ensure(
        closure.certification == Certification::ClosureOnlyInjectivityBound,
        format!("certification {:?}", closure.certification),
    )?;
    let h = passed(&b, "thm1.hurwitz")?;
    ensure(
        h["order"] == 262080 && h["bound"] == 169260 && h["exceeds"] == true,
        format!("hurwitz: {h}"),
    )?;
    let id = passed(&b, "remark.order_identity")?;
    ensure(id["holds"] == true, "order identity")?;
    ensure(b.pass, "some other claim failed")?;
    Ok("order 262080 > 169260, order identity holds, closure-only+injectivity-bound".into())
}

fn criterion_4() -> Check {
    for q in [4u64, 8] {
        let b = t1(q, "w", None, false)?;
        let a = passed(&b, "prop1a.line_section")?;
        ensure(
            a["count"] == q + 1 && a["all_rational"] == true && a["all_simple"] == true,
            format!("q={q} (a): {a}"),
        )?;
        let section = a["points"].clone();
        let bb = passed(&b, "prop1b.galois_points_on_curve")?;
        let e = q.trailing_zeros() as u64;
        ensure(bb["points"] == section, format!("q={q} (b): {bb}"))?;
        ensure(bb["scan_degree"].as_u64().is_some_and(|d| d % (2 * e) == 0), "scan is not over GF(q^2)")?;
        let c = passed(&b, "prop1c.ramification_at_p1")?;
        ensure(
            c["center_branch_indices"] == json!([q])
                && c["other_branches"] == q - 1
                && c["other_indices_all_2"] == true,
            format!("q={q} (c): {c}"),
        )?;
        let d = passed(&b, "prop1d.transitivity")?;
        ensure(d["triples_checked"] == (q + 1) * q * (q - 1), format!("q={q} (d): {d}"))?;
    }
    Ok("(a)-(d) hold for q = 4 and 8".into())
}

fn criterion_5() -> Check {
    for q in [4u64, 8] {
        let b = t1(q, "w", None, false)?;
        let ds = passed(&b, "remark.ds_prank")?;
        ensure(ds["prank"] == q * (q - 1) / 2, format!("q={q} ds: {ds}"))?;
        if q == 4 {
            passed(&b, "prank.hw_convention_fixtures")?;
            let hw = passed(&b, "remark.hw_prank")?;
            ensure(hw["prank"] == 6 && hw["ordinary"] == true, format!("hw: {hw}"))?;
        }
    }
    let fixtures = theorem1::hw_fixtures().map_err(|e| e.to_string())?;
    ensure(fixtures.pass, format!("fixtures: {}", fixtures.computed))?;
    let f = FieldCtx::with_default_modulus(2, 2).unwrap();
    let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
    let m = prank::hasse_witt_matrix(&c).map_err(|e| e.to_string())?;
    ensure(m.len() == 6 && m.iter().all(|r| r.len() == 6), "HW matrix is not 6x6")?;
    Ok("DS = 6, 28; HW = 6 (6x6, ordinary) after the genus-1 fixtures".into())
}

fn criterion_6() -> Check {
    for (lambda, ambient, degree) in [("w", 2u32, 2u64), ("w+1", 2, 2), ("w", 4, 4)] {
        let tag = format!("lambda={lambda} ambient={ambient}");
        let b = t2(lambda, Some(ambient))?;
        ensure(b.parameters["lambda_field_degree"] == degree, format!("{tag}: lambda field degree"))?;
        passed(&b, "thm2.smooth")?;
        let a = passed(&b, "prop2a.galois_points_off_curve")?;
        let want = json!([["0x0", "0x1", "0x0"], ["0x1", "0x0", "0x0"], ["0x1", "0x1", "0x0"]]);
        ensure(a["points"] == want, format!("{tag}: {a}"))?;
        let fr = passed(&b, "thm2.frame_candidates")?;
        ensure(fr["candidates"] == 24 && fr["stabilizing"] == 24, format!("{tag}: {fr}"))?;
        let bf = passed(&b, "thm2.brute_force_gf2")?;
        ensure(bf["order"] == 24 && bf["equals_frame_maps"] == true, format!("{tag}: {bf}"))?;
        let cl = passed(&b, "thm2.closure_order")?;
        ensure(cl["order"] == 24 && cl["equals_frame_maps"] == true, format!("{tag}: {cl}"))?;
        let s4 = passed(&b, "thm2.s4_identification")?;
        ensure(
            s4["faithful"] == true && s4["census"] == json!({"1": 1, "2": 9, "3": 8, "4": 6}),
            format!("{tag}: {s4}"),
        )?;
        ensure(b.pass, format!("{tag}: some claim failed"))?;
    }
    Ok("lambda in {w, w+1} over GF(4) and w in GF(16): order 24, S4 census".into())
}

fn criterion_7() -> Check {
    for (lambda, ambient) in [("w", 2u32), ("w+1", 2), ("w", 4)] {
        let b = t2(lambda, Some(ambient))?;
        let s = passed(&b, "prop2b.unique_sigma_with_axis_lz")?;
        ensure(s["sigma_count"] == json!([1, 1, 1]), format!("sigma: {s}"))?;
        let bt = passed(&b, "prop2c.bitangents_through_p")?;
        ensure(
            bt["counts"] == json!([2, 2, 2])
                && bt["lines_at_p1"] == json!([["0x0", "0x1", "0x0"], ["0x0", "0x1", "0x1"]]),
            format!("bitangents: {bt}"),
        )?;
    }
    Ok("one sigma with axis Z=0 per point; bitangents through P1 are Y=0 and Y+Z=0".into())
}

fn random_map(f: &FieldCtx, rng: &mut ChaCha8Rng) -> ProjMap {
    loop {
        let m = [0; 9].map(|_| f.elem(rng.gen_range(0..f.size())).unwrap());
        if let Ok(p) = ProjMap::new(f, m) {
            return p;
        }
    }
}

fn criterion_8() -> Check {
    // Field axioms, exhaustively.
    for n in 1..=4 {
        let f = FieldCtx::with_default_modulus(n, 1).unwrap();
        let all: Vec<_> = f.elements().collect();
        for &a in &all {
            ensure(a.is_zero() || f.mul(a, f.inv(a).unwrap()) == f.one(), "inverse")?;
            for &b in &all {
                ensure(f.mul(a, b) == f.mul(b, a), "commutativity")?;
                for &c in &all {
                    ensure(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), "associativity")?;
                    ensure(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), "distributivity")?;
                }
            }
        }
    }

    // Bezout on 100 random lines per curve.
    let mut curves = Vec::new();
    for (n, e) in [(4u32, 2u32), (6, 3)] {
        let f = FieldCtx::with_default_modulus(n, e).unwrap();
        let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
        curves.push((f, c));
    }
    let f = FieldCtx::with_default_modulus(4, 1).unwrap();
    let c = PlaneCurve::build_doublestar(&f, f.gen()).unwrap();
    curves.push((f, c));
    for (f, c) in &curves {
        let o = theorem1::bezout_check(f, c, 100, 0);
        ensure(o.pass && o.computed["lines"] == 100, format!("bezout: {}", o.computed))?;
    }

    // Tangent X + sqrt(beta) Y + beta Z against the gradient.
    for bits in [2, 3, 4] {
        let f = FieldCtx::with_default_modulus(bits, bits).unwrap();
        let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
        for beta in f.fq_elements() {
            let p = ProjPoint::new(&f, [beta, f.zero(), f.one()]).unwrap();
            let want = ProjLine::new(&f, [f.one(), f.sqrt(beta), beta]).unwrap();
            ensure(c.tangent_line(&f, &p).ok() == Some(want), format!("tangent at beta={beta:?}"))?;
        }
    }

    // Generation by every pair of Galois points at q = 4.
    let b = t1(4, "w", Some(2), false)?;
    let g = passed(&b, "remark.generation_by_any_pair")?;
    ensure(g["pairs"] == 10, "not every pair was tried")?;

    // Conjugation invariance.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = FieldCtx::with_default_modulus(2, 2).unwrap();
    let star = PlaneCurve::build_star(&f, f.gen()).unwrap();
    let fq = FieldCtx::with_default_modulus(2, 1).unwrap();
    let quart = PlaneCurve::build_doublestar(&fq, fq.gen()).unwrap();
    let on = galois::galois_scan(&f, &star, ScanRegion::OnCurve, 2).map_err(|e| e.to_string())?;
    let off = galois::galois_scan(&fq, &quart, ScanRegion::OffCurve, 2).map_err(|e| e.to_string())?;
    ensure(on.len() == 5 && off.len() == 3, "base Galois sets")?;
    for _ in 0..20 {
        for (f, c, pts, region, rank) in [(&f, &star, &on, ScanRegion::OnCurve, 6), (&fq, &quart, &off, ScanRegion::OffCurve, 3)] {
            let m = random_map(f, &mut rng);
            let d = c.transform(f, &m);
            let mut moved: Vec<_> = pts.iter().map(|p| m.apply(f, p)).collect();
            moved.sort();
            let scan = galois::galois_scan(f, &d, region, 2).map_err(|e| e.to_string())?;
            ensure(scan == moved, "Galois set moved incorrectly")?;
            let hw = prank::hasse_witt_prank(f, &d).map_err(|e| e.to_string())?;
            ensure(hw.prank == rank, "HW p-rank changed under conjugation")?;
        }
    }
    Ok("field axioms, Bezout x100 on 3 curves, tangent formula, pair independence, conjugation x20".into())
}

fn main() {
    let criteria: [(u32, fn() -> Check, Option<Duration>); 8] = [
        (1, criterion_1, Some(Duration::from_secs(10))),
        (2, criterion_2, Some(Duration::from_secs(60))),
        (3, criterion_3, Some(Duration::from_secs(600))),
        (4, criterion_4, None),
        (5, criterion_5, None),
        (6, criterion_6, Some(Duration::from_secs(10))),
        (7, criterion_7, None),
        (8, criterion_8, None),
    ];
    let mut failures = 0;
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&result, limit) {
            if elapsed > limit {
                result = Err(format!("took {elapsed:.1?}, limit {limit:?}"));
            }
        }
        match result {
            Ok(msg) => println!("PASS criterion {n}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {n}: {msg} ({elapsed:.2?})");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
