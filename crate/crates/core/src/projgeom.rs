//! The projective plane over GF(2^n): points, lines, and projectivities modulo scalars.
//!
//! Every type is stored in a canonical normal form (first nonzero entry equal
//! to one) so that equality and hashing are entrywise.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2e::{FieldCtx, FieldElem};
use crate::linalg::{self, Mat3};
use crate::upoly::UPoly;

fn normalize<const N: usize>(f: &FieldCtx, v: [FieldElem; N]) -> Option<[FieldElem; N]> {
    let lead = *v.iter().find(|x| !x.is_zero())?;
    if lead.is_one() {
        return Some(v);
    }
    let inv = f.inv(lead).ok()?;
    Some(v.map(|x| f.mul(x, inv)))
}

fn fmt_triple(f: &mut fmt::Formatter<'_>, v: &[FieldElem; 3]) -> fmt::Result {
    write!(f, "({}:{}:{})", v[0], v[1], v[2])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([FieldElem; 3]);

impl ProjPoint {
    pub fn new(f: &FieldCtx, v: [FieldElem; 3]) -> Result<Self> {
        normalize(f, v).map(ProjPoint).ok_or(Error::ZeroVector)
    }

    pub fn from_bits(f: &FieldCtx, v: [u64; 3]) -> Result<Self> {
        Self::new(f, [f.elem(v[0])?, f.elem(v[1])?, f.elem(v[2])?])
    }

    pub fn coords(&self) -> [FieldElem; 3] {
        self.0
    }

    /// True when the normalized coordinates lie in GF(2^d).
    pub fn is_rational(&self, f: &FieldCtx, d: u32) -> bool {
        self.0.iter().all(|&x| f.frob(x, d) == x)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(f, &self.0)
    }
}

/// The line aX + bY + cZ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine([FieldElem; 3]);

impl ProjLine {
    pub fn new(f: &FieldCtx, v: [FieldElem; 3]) -> Result<Self> {
        normalize(f, v).map(ProjLine).ok_or(Error::ZeroVector)
    }

    pub fn from_bits(f: &FieldCtx, v: [u64; 3]) -> Result<Self> {
        Self::new(f, [f.elem(v[0])?, f.elem(v[1])?, f.elem(v[2])?])
    }

    pub fn coeffs(&self) -> [FieldElem; 3] {
        self.0
    }

    pub fn contains(&self, f: &FieldCtx, p: &ProjPoint) -> bool {
        linalg::dot(f, &self.0, &p.0).is_zero()
    }

    /// Two distinct points spanning the line.
    pub fn basis(&self, f: &FieldCtx) -> (ProjPoint, ProjPoint) {
        let m = vec![self.0.to_vec()];
        let k = linalg::kernel(f, &m);
        let a = ProjPoint::new(f, [k[0][0], k[0][1], k[0][2]]).expect("kernel vector");
        let b = ProjPoint::new(f, [k[1][0], k[1][1], k[1][2]]).expect("kernel vector");
        (a, b)
    }

    /// Points of the line with coordinates in GF(2^d).
    pub fn rational_points(&self, f: &FieldCtx, d: u32) -> Result<Vec<ProjPoint>> {
        let sub = f.subfield_elements(d)?;
        if !self.0.iter().all(|&x| f.frob(x, d) == x) {
            return Ok(plane_points(f, d)?
                .into_iter()
                .filter(|p| self.contains(f, p))
                .collect());
        }
        let (a, b) = self.basis(f);
        let mut out = vec![b];
        for &t in &sub {
            let v = [0, 1, 2].map(|i| f.add(a.0[i], f.mul(t, b.0[i])));
            out.push(ProjPoint::new(f, v)?);
        }
        out.sort();
        Ok(out)
    }

    pub fn meet(&self, f: &FieldCtx, other: &ProjLine) -> Option<ProjPoint> {
        ProjPoint::new(f, linalg::cross(f, &self.0, &other.0)).ok()
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

/// The unique line through two distinct points.
pub fn line_through(f: &FieldCtx, p: &ProjPoint, r: &ProjPoint) -> Result<ProjLine> {
    if p == r {
        return Err(Error::SamePoint);
    }
    ProjLine::new(f, linalg::cross(f, &p.0, &r.0))
}

/// An element of PGL(3): an invertible 3x3 matrix up to scalars, row-major,
/// normalized so that the first nonzero entry is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMap(Mat3);

impl ProjMap {
    pub fn new(f: &FieldCtx, m: Mat3) -> Result<Self> {
        if linalg::det3(f, &m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ProjMap(normalize(f, m).expect("invertible matrix is nonzero")))
    }

    pub fn from_bits(f: &FieldCtx, m: [u64; 9]) -> Result<Self> {
        let mut out = [FieldElem::ZERO; 9];
        for (o, &b) in out.iter_mut().zip(m.iter()) {
            *o = f.elem(b)?;
        }
        Self::new(f, out)
    }

    pub fn identity() -> Self {
        let (o, z) = (FieldElem::ONE, FieldElem::ZERO);
        ProjMap([o, z, z, z, o, z, z, z, o])
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// self after other, i.e. the matrix product self * other.
    pub fn compose(&self, f: &FieldCtx, other: &ProjMap) -> ProjMap {
        let m = linalg::mat3_mul(f, &self.0, &other.0);
        ProjMap(normalize(f, m).expect("product of invertible matrices"))
    }

    pub fn inverse(&self, f: &FieldCtx) -> ProjMap {
        ProjMap(normalize(f, linalg::adj3(f, &self.0)).expect("adjugate of invertible matrix"))
    }

    pub fn apply(&self, f: &FieldCtx, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(f, linalg::mat3_apply(f, &self.0, &p.0)).expect("invertible map")
    }

    /// Image of a line: coefficients transform by the inverse transpose.
    pub fn apply_line(&self, f: &FieldCtx, l: &ProjLine) -> ProjLine {
        let adj = linalg::adj3(f, &self.0);
        let mut v = [FieldElem::ZERO; 3];
        for (j, vj) in v.iter_mut().enumerate() {
            *vj = FieldElem(
                f.mul(l.0[0], adj[j]).0 ^ f.mul(l.0[1], adj[3 + j]).0 ^ f.mul(l.0[2], adj[6 + j]).0,
            );
        }
        ProjLine::new(f, v).expect("invertible map")
    }

    pub fn is_defined_over(&self, f: &FieldCtx, d: u32) -> bool {
        self.0.iter().all(|&x| f.frob(x, d) == x)
    }

    /// Order in PGL(3).
    pub fn order(&self, f: &FieldCtx) -> u64 {
        let mut x = *self;
        let mut k = 1;
        while !x.is_identity() {
            x = x.compose(f, self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[{} {} {}; {} {} {}; {} {} {}]",
            m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8]
        )
    }
}

/// Fixed points of a projectivity over the ambient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedLocus {
    WholePlane,
    /// A pointwise-fixed line plus isolated fixed points off it.
    LineAndPoints { line: ProjLine, points: Vec<ProjPoint> },
    Points(Vec<ProjPoint>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocusReport {
    pub locus: FixedLocus,
    /// Set when the characteristic polynomial does not split over the ambient
    /// field, so further fixed points exist only over an extension.
    pub extension_points: bool,
}

impl FixedLocusReport {
    pub fn fixed_line(&self) -> Option<ProjLine> {
        match &self.locus {
            FixedLocus::LineAndPoints { line, .. } => Some(*line),
            _ => None,
        }
    }
}

pub fn fixed_locus(f: &FieldCtx, m: &ProjMap) -> FixedLocusReport {
    let a = m.0;
    let trace = FieldElem(a[0].0 ^ a[4].0 ^ a[8].0);
    let principal = [(0, 4, 1, 3), (0, 8, 2, 6), (4, 8, 5, 7)]
        .iter()
        .fold(FieldElem::ZERO, |acc, &(i, j, k, l)| {
            f.add(acc, f.add(f.mul(a[i], a[j]), f.mul(a[k], a[l])))
        });
    let det = linalg::det3(f, &a);
    let charpoly = UPoly::new(vec![det, principal, trace, FieldElem::ONE]);
    let eigen = charpoly.roots(f);
    let split_degree: u32 = eigen.iter().map(|&r| charpoly.multiplicity(f, r)).sum();

    let mut line = None;
    let mut points = Vec::new();
    for mu in eigen {
        let mut shifted = a;
        for i in 0..3 {
            shifted[4 * i] = f.add(shifted[4 * i], mu);
        }
        let rows: linalg::Mat = (0..3).map(|i| shifted[3 * i..3 * i + 3].to_vec()).collect();
        let k = linalg::kernel(f, &rows);
        match k.len() {
            3 => {
                return FixedLocusReport {
                    locus: FixedLocus::WholePlane,
                    extension_points: false,
                }
            }
            2 => {
                let u = [k[0][0], k[0][1], k[0][2]];
                let v = [k[1][0], k[1][1], k[1][2]];
                line = Some(ProjLine::new(f, linalg::cross(f, &u, &v)).expect("independent"));
            }
            1 => points.push(ProjPoint::new(f, [k[0][0], k[0][1], k[0][2]]).expect("nonzero")),
            _ => {}
        }
    }
    points.sort();
    let locus = match line {
        Some(line) => FixedLocus::LineAndPoints { line, points },
        None => FixedLocus::Points(points),
    };
    FixedLocusReport {
        locus,
        extension_points: split_degree < 3,
    }
}

/// All projectivities over GF(2^d) fixing every line through `center`: the maps
/// I + v a^T (v the center, a any covector with 1 + a.v != 0). Identity first,
/// then elations (a.v = 0), then homologies.
pub fn perspectivities_with_center(f: &FieldCtx, center: &ProjPoint, d: u32) -> Result<Vec<ProjMap>> {
    let sub = f.subfield_elements(d)?;
    if !center.is_rational(f, d) {
        return Ok(vec![ProjMap::identity()]);
    }
    let v = center.0;
    let mut elations = Vec::new();
    let mut homologies = Vec::new();
    for &a0 in &sub {
        for &a1 in &sub {
            for &a2 in &sub {
                let a = [a0, a1, a2];
                if a.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let av = linalg::dot(f, &a, &v);
                if av.is_one() {
                    continue;
                }
                let map = perspectivity(f, &v, &a);
                if av.is_zero() {
                    elations.push(map);
                } else {
                    homologies.push(map);
                }
            }
        }
    }
    elations.sort();
    homologies.sort();
    let mut out = vec![ProjMap::identity()];
    out.extend(elations);
    out.extend(homologies);
    Ok(out)
}

/// The matrix I + v a^T as a projectivity; panics if singular.
pub fn perspectivity(f: &FieldCtx, v: &[FieldElem; 3], a: &[FieldElem; 3]) -> ProjMap {
    let mut m = ProjMap::identity().0;
    for i in 0..3 {
        for j in 0..3 {
            m[3 * i + j] = f.add(m[3 * i + j], f.mul(v[i], a[j]));
        }
    }
    ProjMap::new(f, m).expect("1 + a.v is nonzero")
}

pub fn collinear(f: &FieldCtx, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    let m = [a.0, b.0, c.0].concat();
    let m: Mat3 = m.try_into().expect("nine entries");
    linalg::det3(f, &m).is_zero()
}

/// The projectivity sending (1:0:0), (0:1:0), (0:0:1), (1:1:1) to the targets in order.
pub fn frame_map(f: &FieldCtx, targets: &[ProjPoint; 4]) -> Result<ProjMap> {
    for skip in 0..4 {
        let t: Vec<&ProjPoint> = (0..4).filter(|&i| i != skip).map(|i| &targets[i]).collect();
        if collinear(f, t[0], t[1], t[2]) {
            return Err(Error::DegenerateFrame);
        }
    }
    // Columns p0, p1, p2 scaled so that their sum is p3.
    let mut cols: Mat3 = [FieldElem::ZERO; 9];
    for i in 0..3 {
        for j in 0..3 {
            cols[3 * i + j] = targets[j].0[i];
        }
    }
    let inv = linalg::adj3(f, &cols);
    let scale = linalg::mat3_apply(f, &inv, &targets[3].0);
    let mut m = cols;
    for i in 0..3 {
        for j in 0..3 {
            m[3 * i + j] = f.mul(m[3 * i + j], scale[j]);
        }
    }
    ProjMap::new(f, m)
}

/// All points of P^2(GF(2^d)) in canonical order.
pub fn plane_points(f: &FieldCtx, d: u32) -> Result<Vec<ProjPoint>> {
    let sub = f.subfield_elements(d)?;
    let (o, z) = (FieldElem::ONE, FieldElem::ZERO);
    let mut out = vec![ProjPoint([z, z, o])];
    for &a in &sub {
        out.push(ProjPoint([z, o, a]));
    }
    for &a in &sub {
        for &b in &sub {
            out.push(ProjPoint([o, a, b]));
        }
    }
    out.sort();
    Ok(out)
}

/// Lines through a GF(2^d)-rational point with coefficients in GF(2^d).
pub fn pencil(f: &FieldCtx, center: &ProjPoint, d: u32) -> Result<Vec<ProjLine>> {
    let sub = f.subfield_elements(d)?;
    if !center.is_rational(f, d) {
        return Err(Error::InvalidParameter(format!(
            "center {center} is not rational over GF(2^{d})"
        )));
    }
    let k = linalg::kernel(f, &vec![center.0.to_vec()]);
    let l1 = [k[0][0], k[0][1], k[0][2]];
    let l2 = [k[1][0], k[1][1], k[1][2]];
    let mut out = vec![ProjLine::new(f, l2)?];
    for &t in &sub {
        out.push(ProjLine::new(f, [0, 1, 2].map(|i| f.add(l1[i], f.mul(t, l2[i]))))?);
    }
    out.sort();
    Ok(out)
}

/// |PGL(3, q)| = q^3 (q^3 - 1)(q^2 - 1).
pub fn pgl3_order(q: u128) -> u128 {
    q * q * q * (q * q * q - 1) * (q * q - 1)
}

/// Every element of PGL(3, GF(2^d)) satisfying `keep`, sorted. Rows are
/// enumerated directly in normal form; parallel over the first row.
pub fn pgl3_filter<P>(f: &FieldCtx, d: u32, keep: P) -> Result<Vec<ProjMap>>
where
    P: Fn(&ProjMap) -> bool + Sync,
{
    let sub = f.subfield_elements(d)?;
    let first_rows = plane_points(f, d)?;
    let mut vectors: Vec<[FieldElem; 3]> = Vec::with_capacity(sub.len().pow(3));
    for &a in &sub {
        for &b in &sub {
            for &c in &sub {
                vectors.push([a, b, c]);
            }
        }
    }
    let mut out: Vec<ProjMap> = first_rows
        .par_iter()
        .flat_map_iter(|r0| {
            let r0 = r0.0;
            let mut found = Vec::new();
            for r1 in &vectors {
                let c = linalg::cross(f, &r0, r1);
                if c.iter().all(|x| x.is_zero()) {
                    continue;
                }
                for r2 in &vectors {
                    if linalg::dot(f, &c, r2).is_zero() {
                        continue;
                    }
                    let m = ProjMap([r0[0], r0[1], r0[2], r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]]);
                    if keep(&m) {
                        found.push(m);
                    }
                }
            }
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

/// An element of PGL(2) acting on coordinates (u:w) of a line, row-major,
/// normalized like [`ProjMap`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineMap([FieldElem; 4]);

impl LineMap {
    pub fn new(f: &FieldCtx, m: [FieldElem; 4]) -> Result<Self> {
        let det = f.add(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LineMap(normalize(f, m).expect("nonzero")))
    }

    pub fn identity() -> Self {
        LineMap([FieldElem::ONE, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE])
    }

    pub fn matrix(&self) -> [FieldElem; 4] {
        self.0
    }

    pub fn compose(&self, f: &FieldCtx, other: &LineMap) -> LineMap {
        let (a, b) = (self.0, other.0);
        let m = [
            f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
            f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
            f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
            f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
        ];
        LineMap(normalize(f, m).expect("invertible"))
    }

    pub fn inverse(&self, f: &FieldCtx) -> LineMap {
        let a = self.0;
        LineMap(normalize(f, [a[3], a[1], a[2], a[0]]).expect("invertible"))
    }

    pub fn apply(&self, f: &FieldCtx, p: [FieldElem; 2]) -> [FieldElem; 2] {
        let a = self.0;
        let v = [
            f.add(f.mul(a[0], p[0]), f.mul(a[1], p[1])),
            f.add(f.mul(a[2], p[0]), f.mul(a[3], p[1])),
        ];
        normalize(f, v).expect("invertible")
    }

    pub fn is_defined_over(&self, f: &FieldCtx, d: u32) -> bool {
        self.0.iter().all(|&x| f.frob(x, d) == x)
    }
}

impl fmt::Display for LineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// All of PGL(2, GF(2^d)), sorted.
pub fn pgl2_elements(f: &FieldCtx, d: u32) -> Result<Vec<LineMap>> {
    let sub = f.subfield_elements(d)?;
    let (o, z) = (FieldElem::ONE, FieldElem::ZERO);
    let mut first = vec![[z, o]];
    first.extend(sub.iter().map(|&a| [o, a]));
    let mut out = Vec::new();
    for r0 in first {
        for &c in &sub {
            for &e in &sub {
                let m = [r0[0], r0[1], c, e];
                if let Ok(l) = LineMap::new(f, m) {
                    out.push(l);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
