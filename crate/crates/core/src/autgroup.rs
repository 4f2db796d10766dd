//! Automorphism groups of plane curves as subgroups of PGL(3).

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::PlaneCurve;
use crate::error::{Error, Result};
use crate::gf2e::{FieldCtx, FieldElem};
use crate::linalg::{self, Mat3};
use crate::projgeom::{self, LineMap, ProjLine, ProjMap, ProjPoint};

/// How membership of each element in the stabilizer of C was confirmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementCheck {
    /// F(Mx) compared with F coefficientwise for every element.
    Exact,
    /// Generators checked exactly; every element checked to map the listed
    /// curve points back onto C.
    Sampled { points: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    elements: Vec<ProjMap>,
    generators: Vec<ProjMap>,
    check: ElementCheck,
}

impl AutGroup {
    pub fn from_elements(mut elements: Vec<ProjMap>, generators: Vec<ProjMap>, check: ElementCheck) -> Self {
        elements.sort();
        elements.dedup();
        AutGroup {
            elements,
            generators,
            check,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjMap] {
        &self.elements
    }

    pub fn generators(&self) -> &[ProjMap] {
        &self.generators
    }

    pub fn check(&self) -> &ElementCheck {
        &self.check
    }

    pub fn contains(&self, m: &ProjMap) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    /// Elements fixing every listed point.
    pub fn pointwise_stabilizer(&self, f: &FieldCtx, points: &[ProjPoint]) -> Vec<ProjMap> {
        self.elements
            .iter()
            .filter(|m| points.iter().all(|p| m.apply(f, p) == *p))
            .copied()
            .collect()
    }

    /// Histogram of element orders.
    pub fn order_census(&self, f: &FieldCtx) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for m in &self.elements {
            *out.entry(m.order(f)).or_insert(0) += 1;
        }
        out
    }
}

/// The subgroup generated by `gens`, by breadth-first right multiplication.
pub fn generate(f: &FieldCtx, gens: &[ProjMap], cap: usize) -> Result<Vec<ProjMap>> {
    let mut seen: HashSet<ProjMap> = HashSet::new();
    seen.insert(ProjMap::identity());
    let mut frontier = vec![ProjMap::identity()];
    while !frontier.is_empty() {
        let products: Vec<ProjMap> = frontier
            .par_iter()
            .flat_map_iter(|g| gens.iter().map(move |h| g.compose(f, h)))
            .collect();
        frontier.clear();
        for m in products {
            if seen.insert(m) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
                frontier.push(m);
            }
        }
    }
    let mut out: Vec<ProjMap> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// A generating subset of a small group, chosen greedily in the given order.
pub fn reduce_generators(f: &FieldCtx, elements: &[ProjMap], cap: usize) -> Result<Vec<ProjMap>> {
    let mut kept: Vec<ProjMap> = Vec::new();
    let mut span: HashSet<ProjMap> = HashSet::from([ProjMap::identity()]);
    for m in elements {
        if span.contains(m) {
            continue;
        }
        kept.push(*m);
        span = generate(f, &kept, cap)?.into_iter().collect();
    }
    Ok(kept)
}

/// Points of C used for sampled membership checks.
pub fn sample_points(f: &FieldCtx, c: &PlaneCurve, count: usize) -> Result<Vec<ProjPoint>> {
    let mut pts = c.rational_points(f, f.n())?;
    // Spread the sample over the list rather than taking one corner of the chart.
    let step = (pts.len() / count.max(1)).max(1);
    pts = pts.into_iter().step_by(step).take(count).collect();
    Ok(pts)
}

/// Closure of `gens` with every element checked exactly.
pub fn closure(f: &FieldCtx, gens: &[ProjMap], c: &PlaneCurve, cap: usize) -> Result<AutGroup> {
    closure_checked(f, gens, c, cap, None)
}

/// Closure of `gens`; with `sample` given, elements other than the generators
/// are checked on those curve points instead of by full substitution.
pub fn closure_checked(
    f: &FieldCtx,
    gens: &[ProjMap],
    c: &PlaneCurve,
    cap: usize,
    sample: Option<&[ProjPoint]>,
) -> Result<AutGroup> {
    if gens.iter().any(|g| !c.stabilized_by(f, g)) {
        return Err(Error::BadGenerator);
    }
    let elements = generate(f, gens, cap)?;
    let ok = match sample {
        None => elements.par_iter().all(|m| c.stabilized_by(f, m)),
        Some(pts) => elements
            .par_iter()
            .all(|m| pts.iter().all(|p| c.contains(f, &m.apply(f, p)))),
    };
    if !ok {
        return Err(Error::BadGenerator);
    }
    let check = match sample {
        None => ElementCheck::Exact,
        Some(pts) => ElementCheck::Sampled { points: pts.len() },
    };
    Ok(AutGroup::from_elements(elements, gens.to_vec(), check))
}

/// Every projectivity over GF(2^d) stabilizing C.
pub fn brute_force_stabilizer(f: &FieldCtx, c: &PlaneCurve, d: u32) -> Result<AutGroup> {
    f.check_subfield(d)?;
    let size = projgeom::pgl3_order(1u128 << d);
    if size > 100_000_000 {
        return Err(Error::TooLarge(size));
    }
    let sample = sample_points(f, c, 12)?;
    let found = projgeom::pgl3_filter(f, d, |m| {
        sample.iter().all(|p| c.contains(f, &m.apply(f, p))) && c.stabilized_by(f, m)
    })?;
    Ok(AutGroup::from_elements(found, Vec::new(), ElementCheck::Exact))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameCandidate {
    /// Image index of each frame point.
    pub permutation: [usize; 4],
    pub map: ProjMap,
    pub stabilizes: bool,
}

/// The 24 projectivities permuting a projective frame, each tested against C.
pub fn frame_candidates(f: &FieldCtx, c: &PlaneCurve, frame: &[ProjPoint; 4]) -> Result<Vec<FrameCandidate>> {
    let base = projgeom::frame_map(f, frame)?.inverse(f);
    let mut out = Vec::new();
    for perm in permutations4() {
        let targets = perm.map(|i| frame[i]);
        let map = projgeom::frame_map(f, &targets)?.compose(f, &base);
        out.push(FrameCandidate {
            permutation: perm,
            map,
            stabilizes: c.stabilized_by(f, &map),
        });
    }
    Ok(out)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

/// Coordinates on a line: drop the coordinate of its last nonzero coefficient.
#[derive(Clone, Copy, Debug)]
struct LineChart {
    line: ProjLine,
    drop: usize,
    keep: [usize; 2],
}

impl LineChart {
    fn new(line: &ProjLine) -> Self {
        let l = line.coeffs();
        let drop = (0..3).rev().find(|&i| !l[i].is_zero()).expect("nonzero line");
        let keep = match drop {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        LineChart {
            line: *line,
            drop,
            keep,
        }
    }

    fn coords(&self, p: &ProjPoint) -> [FieldElem; 2] {
        let v = p.coords();
        [v[self.keep[0]], v[self.keep[1]]]
    }

    /// 3x2 matrix sending (u, w) to the point of the line with those kept coordinates.
    fn embed(&self, f: &FieldCtx) -> [[FieldElem; 2]; 3] {
        let l = self.line.coeffs();
        let inv = f.inv(l[self.drop]).expect("nonzero");
        let mut e = [[FieldElem::ZERO; 2]; 3];
        e[self.keep[0]][0] = FieldElem::ONE;
        e[self.keep[1]][1] = FieldElem::ONE;
        e[self.drop] = [f.mul(l[self.keep[0]], inv), f.mul(l[self.keep[1]], inv)];
        e
    }

    fn restrict(&self, f: &FieldCtx, m: &ProjMap) -> Result<LineMap> {
        if m.apply_line(f, &self.line) != self.line {
            return Err(Error::LineNotStable);
        }
        let e = self.embed(f);
        let a = m.matrix();
        let mut out = [FieldElem::ZERO; 4];
        for (r, &row) in self.keep.iter().enumerate() {
            for col in 0..2 {
                let mut acc = FieldElem::ZERO;
                for k in 0..3 {
                    acc = f.add(acc, f.mul(a[3 * row + k], e[k][col]));
                }
                out[2 * r + col] = acc;
            }
        }
        LineMap::new(f, out)
    }

    fn lift_point(&self, f: &FieldCtx, uw: [FieldElem; 2]) -> Result<ProjPoint> {
        let e = self.embed(f);
        ProjPoint::new(f, e.map(|row| f.add(f.mul(row[0], uw[0]), f.mul(row[1], uw[1]))))
    }
}

/// The induced map of `m` on the line, in the line's own coordinates.
pub fn line_matrix(f: &FieldCtx, m: &ProjMap, line: &ProjLine) -> Result<LineMap> {
    LineChart::new(line).restrict(f, m)
}

/// Applies a line map to a point of the line.
pub fn apply_on_line(f: &FieldCtx, t: &LineMap, line: &ProjLine, p: &ProjPoint) -> Result<ProjPoint> {
    let chart = LineChart::new(line);
    chart.lift_point(f, t.apply(f, chart.coords(p)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineAction {
    pub source: ProjMap,
    pub image: LineMap,
    /// permutation[i] = index of the image of rational_set[i].
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRestriction {
    pub actions: Vec<LineAction>,
    pub injective: bool,
    pub image_order: usize,
}

impl LineRestriction {
    /// Bijective onto PGL(2, F_q): injective with q^3 - q images defined over F_q.
    pub fn onto_pgl2(&self, f: &FieldCtx) -> bool {
        let q = f.q() as usize;
        self.injective
            && self.image_order == q * q * q - q
            && self.actions.iter().all(|a| a.image.is_defined_over(f, f.e()))
    }
}

pub fn restrict_to_line(
    f: &FieldCtx,
    g: &AutGroup,
    line: &ProjLine,
    rational_set: &[ProjPoint],
) -> Result<LineRestriction> {
    let chart = LineChart::new(line);
    let index: HashMap<ProjPoint, usize> = rational_set.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let actions: Vec<LineAction> = g
        .elements()
        .par_iter()
        .map(|m| {
            let image = chart.restrict(f, m)?;
            let mut permutation = Vec::with_capacity(rational_set.len());
            for p in rational_set {
                let q = m.apply(f, p);
                if chart.lift_point(f, image.apply(f, chart.coords(p)))? != q {
                    return Err(Error::LineNotStable);
                }
                permutation.push(*index.get(&q).ok_or(Error::LineNotStable)?);
            }
            Ok(LineAction {
                source: *m,
                image,
                permutation,
            })
        })
        .collect::<Result<_>>()?;
    let images: HashSet<LineMap> = actions.iter().map(|a| a.image).collect();
    Ok(LineRestriction {
        injective: images.len() == actions.len(),
        image_order: images.len(),
        actions,
    })
}

/// Elements of a group fixing two points; the cyclic check uses element orders.
pub fn is_cyclic(f: &FieldCtx, elements: &[ProjMap]) -> bool {
    elements.iter().any(|m| m.order(f) == elements.len() as u64)
}

/// Data for lifting maps of L_Y back to automorphisms of a star curve.
pub struct StarLifter<'a> {
    f: &'a FieldCtx,
    curve: &'a PlaneCurve,
    chart: LineChart,
    /// L_Y(F_q), with P_1 and P_2 first.
    points: Vec<ProjPoint>,
    /// G_{P_k} for each point, as projectivities.
    groups: Vec<Vec<ProjMap>>,
    /// Two-point stabilizer of P_1, P_2.
    h: Vec<ProjMap>,
}

impl<'a> StarLifter<'a> {
    pub fn new(
        f: &'a FieldCtx,
        curve: &'a PlaneCurve,
        line: &ProjLine,
        points: Vec<ProjPoint>,
        groups: Vec<Vec<ProjMap>>,
        h: Vec<ProjMap>,
    ) -> Self {
        StarLifter {
            f,
            curve,
            chart: LineChart::new(line),
            points,
            groups,
            h,
        }
    }

    fn on_line(&self, t: &LineMap, p: &ProjPoint) -> Result<ProjPoint> {
        self.chart.lift_point(self.f, t.apply(self.f, self.chart.coords(p)))
    }

    fn index(&self, p: &ProjPoint) -> Result<usize> {
        self.points.iter().position(|x| x == p).ok_or(Error::NoLift)
    }

    /// Finds gamma in Aut(C) with r(gamma) = tau: move tau(P_1) back to P_1
    /// with some G_{P_k}, fix P_2 with G_{P_1}, then match the remainder in H(C).
    pub fn lift(&self, tau: &LineMap) -> Result<ProjMap> {
        let f = self.f;
        let (p1, p2) = (self.points[0], self.points[1]);
        let i = self.index(&self.on_line(tau, &p1)?)?;
        let gamma1 = if i == 0 {
            ProjMap::identity()
        } else {
            let k = (1..self.points.len()).find(|&k| k != i).ok_or(Error::NoLift)?;
            *self.groups[k]
                .iter()
                .find(|g| g.apply(f, &self.points[i]) == p1)
                .ok_or(Error::NoLift)?
        };
        let r1 = self.chart.restrict(f, &gamma1)?;
        let t1 = r1.compose(f, tau);
        let moved = self.on_line(&t1, &p2)?;
        let gamma2 = *self.groups[0]
            .iter()
            .find(|g| g.apply(f, &moved) == p2)
            .ok_or(Error::NoLift)?;
        let h0 = self.chart.restrict(f, &gamma2)?.compose(f, &t1);
        let h = self
            .h
            .iter()
            .find(|h| self.chart.restrict(f, h).ok() == Some(h0))
            .ok_or(Error::NoLift)?;
        let gamma = gamma2.compose(f, &gamma1).inverse(f).compose(f, h);
        if self.chart.restrict(f, &gamma)? != *tau || !self.curve.stabilized_by(f, &gamma) {
            return Err(Error::NoLift);
        }
        Ok(gamma)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarIdentification {
    pub order: usize,
    pub expected_order: u64,
    pub restriction_injective: bool,
    pub restriction_onto_pgl2: bool,
    pub sharply_3_transitive: bool,
}

impl StarIdentification {
    pub fn pass(&self) -> bool {
        self.order as u64 == self.expected_order
            && self.restriction_injective
            && self.restriction_onto_pgl2
            && self.sharply_3_transitive
    }
}

/// Exactly one element takes (P_1, P_2, P_3) to each ordered triple of distinct points.
pub fn sharply_3_transitive(f: &FieldCtx, g: &AutGroup, points: &[ProjPoint]) -> bool {
    let n = points.len();
    if n < 3 {
        return false;
    }
    let mut seen: HashSet<[ProjPoint; 3]> = HashSet::new();
    for m in g.elements() {
        let img = [0, 1, 2].map(|i| m.apply(f, &points[i]));
        if img.iter().any(|p| !points.contains(p)) || !seen.insert(img) {
            return false;
        }
    }
    seen.len() == n * (n - 1) * (n - 2)
}

pub fn identify_star(f: &FieldCtx, g: &AutGroup, line: &ProjLine, points: &[ProjPoint]) -> Result<StarIdentification> {
    let q = f.q();
    let r = restrict_to_line(f, g, line, points)?;
    Ok(StarIdentification {
        order: g.order(),
        expected_order: q * q * q - q,
        restriction_injective: r.injective,
        restriction_onto_pgl2: r.onto_pgl2(f),
        sharply_3_transitive: sharply_3_transitive(f, g, points),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S4Identification {
    pub order: usize,
    pub permutes_frame: bool,
    pub faithful: bool,
    pub census: BTreeMap<u64, usize>,
}

impl S4Identification {
    pub fn pass(&self) -> bool {
        let want: BTreeMap<u64, usize> = [(1, 1), (2, 9), (3, 8), (4, 6)].into_iter().collect();
        self.order == 24 && self.permutes_frame && self.faithful && self.census == want
    }
}

/// The permutation of `points` induced by m, if m permutes them.
pub fn permutation_of(f: &FieldCtx, m: &ProjMap, points: &[ProjPoint]) -> Option<Vec<usize>> {
    points
        .iter()
        .map(|p| {
            let q = m.apply(f, p);
            points.iter().position(|x| *x == q)
        })
        .collect()
}

pub fn identify_s4(f: &FieldCtx, g: &AutGroup, frame: &[ProjPoint; 4]) -> S4Identification {
    let perms: Vec<Option<Vec<usize>>> = g.elements().iter().map(|m| permutation_of(f, m, frame)).collect();
    let permutes_frame = perms.iter().all(Option::is_some);
    let distinct: HashSet<&Vec<usize>> = perms.iter().flatten().collect();
    S4Identification {
        order: g.order(),
        permutes_frame,
        faithful: permutes_frame && distinct.len() == g.order(),
        census: g.order_census(f),
    }
}

/// The diagonal projectivity diag(d0, d1, d2).
pub fn diagonal(f: &FieldCtx, d: [FieldElem; 3]) -> Result<ProjMap> {
    let z = FieldElem::ZERO;
    let m: Mat3 = [d[0], z, z, z, d[1], z, z, z, d[2]];
    if linalg::det3(f, &m).is_zero() {
        return Err(Error::SingularMatrix);
    }
    ProjMap::new(f, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::galois::point_galois_group;

    fn gf4() -> FieldCtx {
        FieldCtx::new(2, 0b111, 2).unwrap()
    }

    #[test]
    fn generate_small_groups() {
        let f = gf4();
        assert_eq!(generate(&f, &[], 10).unwrap(), vec![ProjMap::identity()]);
        let sigma = ProjMap::from_bits(&f, [1, 0, 1, 0, 1, 0, 0, 0, 1]).unwrap();
        assert_eq!(generate(&f, &[sigma], 10).unwrap().len(), 2);
        let cyc = ProjMap::from_bits(&f, [0, 1, 0, 0, 0, 1, 1, 0, 0]).unwrap();
        assert_eq!(generate(&f, &[sigma, cyc], 1000).unwrap().len(), 168);
        assert_eq!(generate(&f, &[sigma, cyc], 100).unwrap_err(), Error::CapExceeded(100));
    }

    #[test]
    fn star_q4_closure_and_identification() {
        let f = gf4();
        let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
        let pts = families::star_points(&f);
        let g1 = point_galois_group(&f, &c, &pts[0], 2).unwrap();
        let g2 = point_galois_group(&f, &c, &pts[1], 2).unwrap();
        let gens: Vec<ProjMap> = g1.elements.iter().chain(&g2.elements).copied().collect();
        let g = closure(&f, &gens, &c, 1000).unwrap();
        assert_eq!(g.order(), 60);
        let id = identify_star(&f, &g, &families::line_y(&f), &pts).unwrap();
        assert!(id.pass(), "{id:?}");
        let h = g.pointwise_stabilizer(&f, &pts[..2]);
        assert_eq!(h.len(), 3);
        assert!(is_cyclic(&f, &h));
        let w = f.gen();
        assert!(h.contains(&diagonal(&f, [f.one(), w, f.square(w)]).unwrap()));
    }

    #[test]
    fn lift_round_trip_q4() {
        let f = gf4();
        let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
        let pts = families::star_points(&f);
        let line = families::line_y(&f);
        let groups: Vec<Vec<ProjMap>> = pts
            .iter()
            .map(|p| point_galois_group(&f, &c, p, 2).unwrap().elements)
            .collect();
        let gens: Vec<ProjMap> = groups[0].iter().chain(&groups[1]).copied().collect();
        let g = closure(&f, &gens, &c, 1000).unwrap();
        let h = g.pointwise_stabilizer(&f, &pts[..2]);
        let lifter = StarLifter::new(&f, &c, &line, pts.clone(), groups, h);
        for tau in projgeom::pgl2_elements(&f, 2).unwrap() {
            let gamma = lifter.lift(&tau).unwrap();
            assert_eq!(line_matrix(&f, &gamma, &line).unwrap(), tau);
            assert!(g.contains(&gamma));
        }
        assert_eq!(lifter.lift(&LineMap::identity()).unwrap(), ProjMap::identity());
    }

    #[test]
    fn doublestar_frames_and_s4() {
        let f = gf4();
        let c = PlaneCurve::build_doublestar(&f, f.gen()).unwrap();
        let frame = families::doublestar_frame(&f);
        let cands = frame_candidates(&f, &c, &frame).unwrap();
        assert_eq!(cands.len(), 24);
        assert!(cands.iter().all(|x| x.stabilizes));
        let ps = families::doublestar_points(&f);
        let gens: Vec<ProjMap> = ps[..2]
            .iter()
            .flat_map(|p| point_galois_group(&f, &c, p, 2).unwrap().elements)
            .collect();
        let g = closure(&f, &gens, &c, 1000).unwrap();
        let id = identify_s4(&f, &g, &frame);
        assert!(id.pass(), "{id:?}");
    }

    #[test]
    fn line_restriction_of_identity() {
        let f = gf4();
        let line = families::line_y(&f);
        assert_eq!(line_matrix(&f, &ProjMap::identity(), &line).unwrap(), LineMap::identity());
        let swap = ProjMap::from_bits(&f, [0, 1, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(line_matrix(&f, &swap, &line).unwrap_err(), Error::LineNotStable);
    }
}
