//! Named points, lines and configurations attached to the two curve families.

use crate::curves::PlaneCurve;
use crate::error::Result;
use crate::galois::PointGaloisGroup;
use crate::gf2e::{FieldCtx, FieldElem};
use crate::projgeom::{self, fixed_locus, line_through, ProjLine, ProjMap, ProjPoint};

fn point(f: &FieldCtx, v: [FieldElem; 3]) -> ProjPoint {
    ProjPoint::new(f, v).expect("nonzero")
}

/// The line Y = 0.
pub fn line_y(f: &FieldCtx) -> ProjLine {
    ProjLine::new(f, [f.zero(), f.one(), f.zero()]).expect("nonzero")
}

/// The line Z = 0.
pub fn line_z(f: &FieldCtx) -> ProjLine {
    ProjLine::new(f, [f.zero(), f.zero(), f.one()]).expect("nonzero")
}

/// L_Y(F_q) in the order P_1 = (1:0:0), P_2 = (0:0:1), then (b:0:1) for b != 0.
pub fn star_points(f: &FieldCtx) -> Vec<ProjPoint> {
    let (o, z) = (f.one(), f.zero());
    let mut out = vec![point(f, [o, z, z]), point(f, [z, z, o])];
    for b in f.fq_elements().into_iter().filter(|b| !b.is_zero()) {
        out.push(point(f, [b, z, o]));
    }
    out
}

/// P_1 = (1:0:0), P_2 = (1:1:0), P_3 = (0:1:0).
pub fn doublestar_points(f: &FieldCtx) -> [ProjPoint; 3] {
    let (o, z) = (f.one(), f.zero());
    [point(f, [o, z, z]), point(f, [o, o, z]), point(f, [z, o, z])]
}

/// (0:0:1), (1:0:1), (0:1:1), (1:1:1).
pub fn doublestar_frame(f: &FieldCtx) -> [ProjPoint; 4] {
    let (o, z) = (f.one(), f.zero());
    [
        point(f, [z, z, o]),
        point(f, [o, z, o]),
        point(f, [z, o, o]),
        point(f, [o, o, o]),
    ]
}

/// Nontrivial elements of a point group whose fixed locus contains the given line.
pub fn elements_with_axis(f: &FieldCtx, g: &PointGaloisGroup, axis: &ProjLine) -> Vec<ProjMap> {
    g.non_identity()
        .filter(|m| fixed_locus(f, m).fixed_line().as_ref() == Some(axis))
        .copied()
        .collect()
}

/// Number of distinct points of C on the line (over the closure) where the line is tangent.
pub fn tangency_points(f: &FieldCtx, c: &PlaneCurve, line: &ProjLine) -> Result<u32> {
    let meet = c.line_intersection(f, line)?;
    let rational = meet.points.iter().filter(|(_, m)| *m >= 2).count() as u32;
    let other: u32 = meet
        .unresolved
        .iter()
        .filter(|(_, m, _)| *m >= 2)
        .map(|(d, _, n)| d * n)
        .sum();
    Ok(rational + other)
}

/// Lines through `p` over GF(2^d), other than `exclude`, tangent to C at two or more points.
pub fn multitangent_lines(
    f: &FieldCtx,
    c: &PlaneCurve,
    p: &ProjPoint,
    exclude: Option<&ProjLine>,
    d: u32,
) -> Result<Vec<ProjLine>> {
    let mut out = Vec::new();
    for line in projgeom::pencil(f, p, d)? {
        if Some(&line) == exclude {
            continue;
        }
        if tangency_points(f, c, &line)? >= 2 {
            out.push(line);
        }
    }
    Ok(out)
}

/// Tangent lines of C through `p` over GF(2^d).
pub fn tangent_lines_through(f: &FieldCtx, c: &PlaneCurve, p: &ProjPoint, d: u32) -> Result<Vec<ProjLine>> {
    let mut out = Vec::new();
    for line in projgeom::pencil(f, p, d)? {
        if tangency_points(f, c, &line)? >= 1 {
            out.push(line);
        }
    }
    Ok(out)
}

/// All 4-sets of GF(2^d)-points off `avoid` such that the line through any two
/// of them is tangent to C and passes through one of `centers`.
pub fn tangent_quadrilaterals(
    f: &FieldCtx,
    c: &PlaneCurve,
    centers: &[ProjPoint],
    avoid: &ProjLine,
    d: u32,
) -> Result<Vec<[ProjPoint; 4]>> {
    let mut lines: Vec<ProjLine> = Vec::new();
    for p in centers {
        for l in tangent_lines_through(f, c, p, d)? {
            if l != *avoid && !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    // Each vertex meets the other three along three distinct admissible lines.
    let mut candidates: Vec<ProjPoint> = Vec::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(p) = a.meet(f, b) {
                if p.is_rational(f, d) && !avoid.contains(f, &p) && !candidates.contains(&p) {
                    let on = lines.iter().filter(|l| l.contains(f, &p)).count();
                    if on >= 3 {
                        candidates.push(p);
                    }
                }
            }
        }
    }
    candidates.sort();
    let admissible = |a: &ProjPoint, b: &ProjPoint| -> bool {
        let l = line_through(f, a, b).expect("distinct");
        lines.contains(&l)
    };
    let n = candidates.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !admissible(&candidates[i], &candidates[j]) {
                continue;
            }
            for k in j + 1..n {
                if !admissible(&candidates[i], &candidates[k]) || !admissible(&candidates[j], &candidates[k]) {
                    continue;
                }
                for l in k + 1..n {
                    let q = [candidates[i], candidates[j], candidates[k], candidates[l]];
                    if (0..3).all(|a| admissible(&q[a], &q[3])) {
                        out.push(q);
                    }
                }
            }
        }
    }
    Ok(out)
}
