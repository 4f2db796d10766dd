//! Projections from a point: ramification, the group G_P of perspectivities
//! with center P preserving the curve, and Galois points.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::PlaneCurve;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::gf2e::{FieldCtx, FieldElem};
use crate::linalg;
use crate::projgeom::{self, ProjLine, ProjMap, ProjPoint};

/// Ramification over one line of the pencil through the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub line: ProjLine,
    /// Fiber points with their ramification indices. The center appears only
    /// when it is on the curve and the line is tangent there.
    pub fiber: Vec<(ProjPoint, u32)>,
    /// Fiber points not rational over the ambient field, as
    /// (residue degree, ramification index, count).
    pub unresolved: Vec<(u32, u32, u32)>,
}

impl Branch {
    pub fn indices(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.fiber.iter().map(|(_, e)| *e).collect();
        for &(d, e, c) in &self.unresolved {
            out.extend(std::iter::repeat(e).take((d * c) as usize));
        }
        out.sort_unstable();
        out
    }

    pub fn total(&self) -> u32 {
        self.indices().iter().sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.indices().iter().any(|&e| e > 1)
    }

    /// Sum of (e - 1) over the fiber.
    pub fn tame_contribution(&self) -> u64 {
        self.indices().iter().map(|&e| (e - 1) as u64).sum()
    }
}

/// Riemann-Hurwitz bookkeeping for the projection C -> P^1 of degree m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhChecksum {
    /// deg of the different: 2g - 2 + 2m.
    pub different_degree: u64,
    /// Sum of (e - 1) over the reported branches, a lower bound for it.
    pub tame_sum: u64,
    /// different_degree - tame_sum, the wild excess (nonnegative when consistent).
    pub wild_excess: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamProfile {
    pub center: ProjPoint,
    pub on_curve: bool,
    pub proj_degree: u32,
    pub search_degree: u32,
    pub lines_examined: usize,
    pub branches: Vec<Branch>,
    pub checksum: RhChecksum,
}

impl RamProfile {
    /// Every branch has all fiber indices equal, as for a Galois cover.
    pub fn constant_per_branch(&self) -> bool {
        self.branches.iter().all(|b| {
            let idx = b.indices();
            idx.windows(2).all(|w| w[0] == w[1])
        })
    }

    pub fn branch(&self, line: &ProjLine) -> Option<&Branch> {
        self.branches.iter().find(|b| &b.line == line)
    }
}

pub fn projection_degree(f: &FieldCtx, c: &PlaneCurve, p: &ProjPoint) -> u32 {
    if c.contains(f, p) {
        c.degree() - 1
    } else {
        c.degree()
    }
}

/// Ramified lines of the projection from `p`, over the pencil of lines
/// defined over GF(2^search_degree).
pub fn ramification_profile(
    f: &FieldCtx,
    c: &PlaneCurve,
    p: &ProjPoint,
    search_degree: u32,
) -> Result<RamProfile> {
    let on_curve = c.contains(f, p);
    if on_curve {
        c.tangent_line(f, p).map_err(|_| Error::SingularCurve)?;
    }
    let lines = projgeom::pencil(f, p, search_degree)?;
    let branches: Result<Vec<Option<Branch>>> = lines
        .par_iter()
        .map(|line| {
            let meet = c.line_intersection(f, line)?;
            let mut fiber = Vec::new();
            for (q, m) in meet.points {
                let e = if on_curve && q == *p { m - 1 } else { m };
                if e > 0 {
                    fiber.push((q, e));
                }
            }
            let b = Branch {
                line: *line,
                fiber,
                unresolved: meet.unresolved,
            };
            Ok(b.is_ramified().then_some(b))
        })
        .collect();
    let branches: Vec<Branch> = branches?.into_iter().flatten().collect();
    let m = projection_degree(f, c, p) as u64;
    let g = c.genus();
    let different_degree = 2 * g + 2 * m - 2;
    let tame_sum = branches.iter().map(Branch::tame_contribution).sum();
    Ok(RamProfile {
        center: *p,
        on_curve,
        proj_degree: m as u32,
        search_degree,
        lines_examined: lines.len(),
        branches,
        checksum: RhChecksum {
            different_degree,
            tame_sum,
            wild_excess: different_degree as i64 - tame_sum as i64,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointGaloisGroup {
    pub center: ProjPoint,
    pub elements: Vec<ProjMap>,
    pub order: usize,
}

impl PointGaloisGroup {
    fn new(center: ProjPoint, mut elements: Vec<ProjMap>) -> Self {
        elements.sort();
        elements.dedup();
        let order = elements.len();
        PointGaloisGroup {
            center,
            elements,
            order,
        }
    }

    pub fn contains(&self, m: &ProjMap) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn non_identity(&self) -> impl Iterator<Item = &ProjMap> {
        self.elements.iter().filter(|m| !m.is_identity())
    }
}

/// Probe point Q on the curve together with the parameters s for which
/// Q + s v is again on the curve (v the center).
struct Probe {
    q: [FieldElem; 3],
    roots: Vec<FieldElem>,
    root_set: HashSet<FieldElem>,
}

fn probe(f: &FieldCtx, form: &Form, v: &[FieldElem; 3], q: &ProjPoint) -> Option<Probe> {
    let g = form.restrict(f, &q.coords(), v);
    if g.is_zero() {
        return None;
    }
    let roots = g.roots(f);
    let root_set = roots.iter().copied().collect();
    Some(Probe {
        q: q.coords(),
        roots,
        root_set,
    })
}

const PROBES: usize = 8;

/// Largest field in which the probe search runs when the ambient field has
/// too few curve points.
const PROBE_FIELD_LIMIT: u32 = 20;

/// Points of F = 0 suitable as probes: not the center and with the first three
/// linearly independent. None if there are too few such points over `f`.
fn probe_points(f: &FieldCtx, form: &Form, center: &ProjPoint) -> Option<Vec<ProjPoint>> {
    let (o, z) = (FieldElem::ONE, FieldElem::ZERO);
    let mut basis: Vec<ProjPoint> = Vec::new();
    let mut extra: Vec<ProjPoint> = Vec::new();
    let consider = |p: ProjPoint, basis: &mut Vec<ProjPoint>, extra: &mut Vec<ProjPoint>| {
        if p == *center || basis.contains(&p) || extra.contains(&p) {
            return;
        }
        let independent = match basis.len() {
            0 | 1 => true,
            2 => !projgeom::collinear(f, &basis[0], &basis[1], &p),
            _ => false,
        };
        if independent {
            basis.push(p);
        } else {
            extra.push(p);
        }
    };
    // Walk the chart Z = 1 column by column, then the line at infinity.
    for x in f.elements() {
        if basis.len() == 3 && extra.len() >= PROBES - 3 {
            break;
        }
        let g = form.restrict(f, &[x, z, o], &[z, o, z]);
        if g.is_zero() {
            continue;
        }
        for y in g.roots(f) {
            consider(ProjPoint::new(f, [x, y, o]).expect("Z = 1"), &mut basis, &mut extra);
        }
    }
    if basis.len() < 3 {
        let g = form.restrict(f, &[z, o, z], &[o, z, z]);
        for x in g.roots(f) {
            consider(ProjPoint::new(f, [x, o, z]).expect("Y = 1"), &mut basis, &mut extra);
        }
        let corner = [o, z, z];
        if form.eval(f, &corner).is_zero() {
            consider(ProjPoint::new(f, corner).expect("nonzero"), &mut basis, &mut extra);
        }
    }
    if basis.len() < 3 {
        return None;
    }
    extra.truncate(PROBES - 3);
    basis.extend(extra);
    Some(basis)
}

/// Covectors a over GF(2^d) such that I + v a^T maps every probe point back
/// onto F = 0. None if `f` has too few curve points to probe with.
fn fiber_candidates(f: &FieldCtx, form: &Form, center: &ProjPoint, d: u32) -> Option<Vec<[FieldElem; 3]>> {
    let pts = probe_points(f, form, center)?;
    let v = center.coords();
    let probes: Vec<Probe> = pts.iter().map(|q| probe(f, form, &v, q)).collect::<Option<_>>()?;
    // a = s1 c1 + s2 c2 + s3 c3, with c_j the columns of the inverse of [Q1; Q2; Q3].
    let qmat: linalg::Mat3 = [probes[0].q, probes[1].q, probes[2].q]
        .concat()
        .try_into()
        .expect("nine entries");
    let det_inv = f.inv(linalg::det3(f, &qmat)).ok()?;
    let adj = linalg::adj3(f, &qmat);
    let col = |j: usize| [0, 1, 2].map(|i| f.mul(adj[3 * i + j], det_inv));
    let cols = [col(0), col(1), col(2)];
    let combo = |s: FieldElem, cj: &[FieldElem; 3]| cj.map(|x| f.mul(s, x));

    let mut found = Vec::new();
    for &s1 in &probes[0].roots {
        let a1 = combo(s1, &cols[0]);
        for &s2 in &probes[1].roots {
            let a2 = combo(s2, &cols[1]);
            let a12 = [0, 1, 2].map(|i| f.add(a1[i], a2[i]));
            for &s3 in &probes[2].roots {
                let a3 = combo(s3, &cols[2]);
                let a = [0, 1, 2].map(|i| f.add(a12[i], a3[i]));
                if linalg::dot(f, &a, &v).is_one() || !a.iter().all(|&x| f.frob(x, d) == x) {
                    continue;
                }
                if probes[3..]
                    .iter()
                    .all(|pr| pr.root_set.contains(&linalg::dot(f, &a, &pr.q)))
                {
                    found.push(a);
                }
            }
        }
    }
    Some(found)
}

/// Elements of G_P defined over GF(2^field_degree).
///
/// A perspectivity with center v has the form I + v a^T. For a curve point Q,
/// the image Q + (a.Q) v lies on the curve, so a.Q is a root of F(Q + s v).
/// Three independent probes pin down a; further probes and an exact
/// substitution check filter the candidates. Probes are taken over an
/// extension of the ambient field when the ambient field has too few points.
pub fn point_galois_group(
    f: &FieldCtx,
    c: &PlaneCurve,
    p: &ProjPoint,
    field_degree: u32,
) -> Result<PointGaloisGroup> {
    f.check_subfield(field_degree)?;
    if !p.is_rational(f, field_degree) {
        return Ok(PointGaloisGroup::new(*p, vec![ProjMap::identity()]));
    }
    let mut k = 1;
    let candidates = loop {
        if k == 1 {
            if let Some(found) = fiber_candidates(f, c.form(), p, field_degree) {
                break found;
            }
        } else {
            let (big, emb) = f.extend(k)?;
            let form = Form::from_terms(c.degree(), c.form().terms().map(|(e, &a)| (*e, emb.map(a))));
            let center = ProjPoint::new(&big, p.coords().map(|x| emb.map(x)))?;
            if let Some(found) = fiber_candidates(&big, &form, &center, field_degree) {
                let back: HashMap<FieldElem, FieldElem> = f
                    .subfield_elements(field_degree)?
                    .into_iter()
                    .map(|x| (emb.map(x), x))
                    .collect();
                break found.into_iter().map(|a| a.map(|x| back[&x])).collect();
            }
        }
        k += 1;
        if f.n() * k > PROBE_FIELD_LIMIT {
            return brute_force_group(f, c, p, field_degree);
        }
    };
    let v = p.coords();
    let found = candidates
        .into_iter()
        .map(|a| {
            if a.iter().all(|x| x.is_zero()) {
                ProjMap::identity()
            } else {
                projgeom::perspectivity(f, &v, &a)
            }
        })
        .filter(|m| c.stabilized_by(f, m))
        .collect();
    Ok(PointGaloisGroup::new(*p, found))
}

/// Reference implementation: filter every perspectivity with the given center.
pub fn brute_force_group(
    f: &FieldCtx,
    c: &PlaneCurve,
    p: &ProjPoint,
    field_degree: u32,
) -> Result<PointGaloisGroup> {
    let size = 1u128 << (3 * field_degree);
    if size > 1 << 24 {
        return Err(Error::TooLarge(size));
    }
    let all = projgeom::perspectivities_with_center(f, p, field_degree)?;
    let kept = all.into_iter().filter(|m| c.stabilized_by(f, m)).collect();
    Ok(PointGaloisGroup::new(*p, kept))
}

pub fn is_galois_point(f: &FieldCtx, c: &PlaneCurve, p: &ProjPoint, field_degree: u32) -> Result<bool> {
    let g = point_galois_group(f, c, p, field_degree)?;
    Ok(g.order as u32 == projection_degree(f, c, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanRegion {
    OnCurve,
    OffCurve,
}

/// Galois points with coordinates in GF(2^field_degree), on or off the curve.
pub fn galois_scan(
    f: &FieldCtx,
    c: &PlaneCurve,
    region: ScanRegion,
    field_degree: u32,
) -> Result<Vec<ProjPoint>> {
    let candidates: Vec<ProjPoint> = match region {
        ScanRegion::OnCurve => c.rational_points(f, field_degree)?,
        ScanRegion::OffCurve => projgeom::plane_points(f, field_degree)?
            .into_iter()
            .filter(|p| !c.contains(f, p))
            .collect(),
    };
    let flags: Result<Vec<bool>> = candidates
        .par_iter()
        .map(|p| is_galois_point(f, c, p, field_degree))
        .collect();
    Ok(candidates
        .into_iter()
        .zip(flags?)
        .filter_map(|(p, g)| g.then_some(p))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub triples_checked: usize,
    /// Ordered triples (i, j, k) of indices with no element of G_{P_i} taking P_j to P_k.
    pub failures: Vec<(usize, usize, usize)>,
}

impl TransitivityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For all distinct i, j, k: some element of G_{P_i} maps P_j to P_k.
pub fn transitivity_check(
    f: &FieldCtx,
    c: &PlaneCurve,
    points: &[ProjPoint],
    field_degree: u32,
) -> Result<TransitivityReport> {
    let groups: Vec<PointGaloisGroup> = points
        .iter()
        .map(|p| point_galois_group(f, c, p, field_degree))
        .collect::<Result<_>>()?;
    let n = points.len();
    let mut triples_checked = 0;
    let mut failures = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let orbit: HashSet<ProjPoint> = groups[i]
                .elements
                .iter()
                .map(|m| m.apply(f, &points[j]))
                .collect();
            for k in (0..n).filter(|&k| k != i && k != j) {
                triples_checked += 1;
                if !orbit.contains(&points[k]) {
                    failures.push((i, j, k));
                }
            }
        }
    }
    Ok(TransitivityReport {
        triples_checked,
        failures,
    })
}
