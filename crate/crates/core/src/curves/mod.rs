//! Plane curves F(X, Y, Z) = 0 and the two families studied here.

mod smooth;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use smooth::{SingularWitness, Smoothness};

use crate::error::{Error, Result};
use crate::form::Form;
use crate::gf2e::{FieldCtx, FieldElem};
use crate::projgeom::{ProjLine, ProjMap, ProjPoint};
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Degree q + 1, Galois points on the curve along Y = 0.
    Star { q: u64 },
    /// The quartic with three outer Galois points on Z = 0.
    DoubleStar,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    form: Form,
    lambda: Option<FieldElem>,
    family: Family,
}

/// C meets a line: rational points with multiplicities, plus the residual part of
/// the restriction that does not split over the ambient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineIntersection {
    pub points: Vec<(ProjPoint, u32)>,
    /// (irreducible factor degree, multiplicity, number of such factors)
    pub unresolved: Vec<(u32, u32, u32)>,
}

impl LineIntersection {
    /// Sum of multiplicities over the algebraic closure.
    pub fn total(&self) -> u32 {
        self.points.iter().map(|(_, m)| m).sum::<u32>()
            + self.unresolved.iter().map(|(d, m, c)| d * m * c).sum::<u32>()
    }

    pub fn multiplicity_at(&self, p: &ProjPoint) -> u32 {
        self.points
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, m)| *m)
    }
}

fn check_lambda(lambda: FieldElem) -> Result<()> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(Error::BadLambda);
    }
    Ok(())
}

impl PlaneCurve {
    pub fn from_form(form: Form) -> Self {
        PlaneCurve {
            form,
            lambda: None,
            family: Family::Custom,
        }
    }

    /// Z prod_{a in F_q} (X + aY + a^2 Z) + lambda Y^(q+1).
    pub fn build_star(f: &FieldCtx, lambda: FieldElem) -> Result<Self> {
        if f.q() < 4 {
            return Err(Error::SmallQ(f.q()));
        }
        check_lambda(lambda)?;
        Ok(Self::star_unchecked(f, lambda))
    }

    /// [`Self::build_star`] without the parameter checks, for degenerate test cases.
    pub fn star_unchecked(f: &FieldCtx, lambda: FieldElem) -> Self {
        let q = f.q();
        let mut prod = Form::monomial([0, 0, 1], FieldElem::ONE);
        for a in f.fq_elements() {
            prod = prod.mul(f, &Form::linear([FieldElem::ONE, a, f.square(a)]));
        }
        let form = prod.add(&Form::monomial([0, q as u32 + 1, 0], lambda));
        PlaneCurve {
            form,
            lambda: Some(lambda),
            family: Family::Star { q },
        }
    }

    /// (X^2+XZ)^2 + (X^2+XZ)(Y^2+YZ) + (Y^2+YZ)^2 + lambda Z^4.
    pub fn build_doublestar(f: &FieldCtx, lambda: FieldElem) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self::doublestar_unchecked(f, lambda))
    }

    pub fn doublestar_unchecked(f: &FieldCtx, lambda: FieldElem) -> Self {
        let one = FieldElem::ONE;
        let a = Form::from_terms(2, [([2, 0, 0], one), ([1, 0, 1], one)]);
        let b = Form::from_terms(2, [([0, 2, 0], one), ([0, 1, 1], one)]);
        let form = a
            .mul(f, &a)
            .add(&a.mul(f, &b))
            .add(&b.mul(f, &b))
            .add(&Form::monomial([0, 0, 4], lambda));
        PlaneCurve {
            form,
            lambda: Some(lambda),
            family: Family::DoubleStar,
        }
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn lambda(&self) -> Option<FieldElem> {
        self.lambda
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    /// (d - 1)(d - 2)/2, the genus of a smooth plane curve of degree d.
    pub fn genus(&self) -> u64 {
        let d = self.degree() as u64;
        if d == 0 {
            return 0;
        }
        (d - 1) * d.saturating_sub(2) / 2
    }

    pub fn eval(&self, f: &FieldCtx, p: &ProjPoint) -> FieldElem {
        self.form.eval(f, &p.coords())
    }

    pub fn contains(&self, f: &FieldCtx, p: &ProjPoint) -> bool {
        self.eval(f, p).is_zero()
    }

    pub fn is_smooth(&self, f: &FieldCtx) -> Smoothness {
        smooth::check(f, &self.form)
    }

    /// The gradient line at a smooth point of the curve.
    pub fn tangent_line(&self, f: &FieldCtx, p: &ProjPoint) -> Result<ProjLine> {
        if !self.contains(f, p) {
            return Err(Error::NotOnCurve);
        }
        let g = self.form.gradient().map(|d| d.eval(f, &p.coords()));
        ProjLine::new(f, g).map_err(|_| Error::SingularPoint)
    }

    /// Order of vanishing of F along the line at p; 0 when p is off the curve.
    pub fn intersection_mult(&self, f: &FieldCtx, line: &ProjLine, p: &ProjPoint) -> Result<u32> {
        if !line.contains(f, p) {
            return Err(Error::PointNotOnLine);
        }
        let (a, b) = line.basis(f);
        let other = if a != *p { a } else { b };
        let g = self.form.restrict(f, &p.coords(), &other.coords());
        g.valuation().map(|v| v as u32).ok_or(Error::LineInCurve)
    }

    /// All points of C on the line, with multiplicities.
    pub fn line_intersection(&self, f: &FieldCtx, line: &ProjLine) -> Result<LineIntersection> {
        let (a, b) = line.basis(f);
        let g = self.form.restrict(f, &a.coords(), &b.coords());
        let Some(deg) = g.degree() else {
            return Err(Error::LineInCurve);
        };
        let mut points = Vec::new();
        let mut rest = g.clone();
        for t in g.roots(f) {
            let m = g.multiplicity(f, t);
            let v = [0, 1, 2].map(|i| f.add(a.coords()[i], f.mul(t, b.coords()[i])));
            points.push((ProjPoint::new(f, v)?, m));
            rest = rest.div_exact(f, &UPoly::linear_root(t).pow(f, m as u64));
        }
        let at_infinity = self.degree() as usize - deg;
        if at_infinity > 0 {
            points.push((b, at_infinity as u32));
        }
        points.sort();
        Ok(LineIntersection {
            points,
            unresolved: rest.factor_degrees(f),
        })
    }

    /// Points with coordinates in GF(2^d), by chart enumeration.
    pub fn rational_points(&self, f: &FieldCtx, d: u32) -> Result<Vec<ProjPoint>> {
        let sub = f.subfield_elements(d)?;
        let (o, z) = (FieldElem::ONE, FieldElem::ZERO);
        let mut out: Vec<ProjPoint> = sub
            .par_iter()
            .flat_map_iter(|&x| {
                let g = self.form.restrict(f, &[x, z, o], &[z, o, z]);
                let ys = if g.is_zero() {
                    sub.clone()
                } else {
                    roots_in_subfield(f, &g, d)
                };
                ys.into_iter()
                    .map(move |y| ProjPoint::new(f, [x, y, o]).expect("Z = 1"))
            })
            .collect();
        let g = self.form.restrict(f, &[z, o, z], &[o, z, z]);
        let xs = if g.is_zero() {
            sub.clone()
        } else {
            roots_in_subfield(f, &g, d)
        };
        out.extend(xs.into_iter().map(|x| ProjPoint::new(f, [x, o, z]).expect("Y = 1")));
        let corner = ProjPoint::new(f, [o, z, z])?;
        if self.contains(f, &corner) {
            out.push(corner);
        }
        out.sort();
        Ok(out)
    }

    /// True iff F(Mx) is a scalar multiple of F.
    pub fn stabilized_by(&self, f: &FieldCtx, m: &ProjMap) -> bool {
        self.form
            .proportional(f, &self.form.substitute(f, m.matrix()))
            .is_some()
    }

    /// The image curve m(C), cut out by F(m^-1 x).
    pub fn transform(&self, f: &FieldCtx, m: &ProjMap) -> PlaneCurve {
        let inv = m.inverse(f);
        PlaneCurve {
            form: self.form.substitute(f, inv.matrix()).normalized(f),
            lambda: self.lambda,
            family: Family::Custom,
        }
    }

    /// Same zero set up to a nonzero scalar.
    pub fn same_curve(&self, f: &FieldCtx, other: &PlaneCurve) -> bool {
        self.form.proportional(f, &other.form).is_some()
    }
}

/// Roots of g lying in GF(2^d).
pub(crate) fn roots_in_subfield(f: &FieldCtx, g: &UPoly, d: u32) -> Vec<FieldElem> {
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    if d == f.n() {
        return g.roots(f);
    }
    let m = g.monic(f);
    let xq = UPoly::x().frob_mod(f, d, &m);
    let split = m.gcd(f, &xq.add(&UPoly::x()));
    split.roots(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldCtx {
        FieldCtx::new(2, 0b111, 2).unwrap()
    }

    #[test]
    fn star_shape_at_q4() {
        let f = gf4();
        let w = f.gen();
        let c = PlaneCurve::build_star(&f, w).unwrap();
        assert_eq!(c.degree(), 5);
        assert_eq!(c.genus(), 6);
        assert!(c.contains(&f, &ProjPoint::from_bits(&f, [1, 0, 0]).unwrap()));
        assert_eq!(c.form().coeff([0, 5, 0]), w);
        assert_eq!(PlaneCurve::build_star(&f, f.one()).unwrap_err(), Error::BadLambda);
        let f2 = FieldCtx::new(2, 0b111, 1).unwrap();
        assert_eq!(PlaneCurve::build_star(&f2, w).unwrap_err(), Error::SmallQ(2));
    }

    #[test]
    fn doublestar_shape() {
        let f = gf4();
        let w = f.gen();
        let c = PlaneCurve::build_doublestar(&f, w).unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.genus(), 3);
        assert_eq!(c.form().coeff([0, 0, 4]), w);
        assert_eq!(c.form().coeff([4, 0, 0]), f.one());
        let origin = ProjPoint::from_bits(&f, [0, 0, 1]).unwrap();
        assert_eq!(c.eval(&f, &origin), w);
        assert!(!c.rational_points(&f, 2).unwrap().contains(&origin));
    }

    #[test]
    fn tangent_lines_on_y_zero() {
        let f = FieldCtx::new(4, 0b10011, 2).unwrap();
        let w = f.fq_elements()[2];
        let c = PlaneCurve::build_star(&f, w).unwrap();
        for beta in f.fq_elements() {
            let p = ProjPoint::new(&f, [beta, f.zero(), f.one()]).unwrap();
            let want = ProjLine::new(&f, [f.one(), f.sqrt(beta), beta]).unwrap();
            assert_eq!(c.tangent_line(&f, &p).unwrap(), want);
        }
        let p1 = ProjPoint::from_bits(&f, [1, 0, 0]).unwrap();
        let t = c.tangent_line(&f, &p1).unwrap();
        assert!(t.contains(&f, &p1));
        assert_eq!(c.intersection_mult(&f, &t, &p1).unwrap(), 5);
        let off = ProjPoint::from_bits(&f, [0, 0, 1]).unwrap();
        assert!(!c.contains(&f, &off) || c.tangent_line(&f, &off).is_ok());
    }

    #[test]
    fn rational_points_satisfy_equation_and_match_brute_force() {
        let f = FieldCtx::new(4, 0b10011, 2).unwrap();
        let c = PlaneCurve::build_star(&f, f.fq_elements()[2]).unwrap();
        let pts = c.rational_points(&f, 4).unwrap();
        let brute: Vec<_> = crate::projgeom::plane_points(&f, 4)
            .unwrap()
            .into_iter()
            .filter(|p| c.contains(&f, p))
            .collect();
        assert_eq!(pts, brute);
        let y0 = ProjLine::from_bits(&f, [0, 1, 0]).unwrap();
        let on_line: Vec<_> = pts.iter().filter(|p| y0.contains(&f, p)).collect();
        assert_eq!(on_line.len(), 5);
        for p in on_line {
            assert!(p.is_rational(&f, 2));
        }
    }

    #[test]
    fn intersection_multiplicity_errors() {
        let f = gf4();
        let c = PlaneCurve::build_star(&f, f.gen()).unwrap();
        let l = ProjLine::from_bits(&f, [0, 1, 0]).unwrap();
        let off = ProjPoint::from_bits(&f, [0, 1, 0]).unwrap();
        assert_eq!(c.intersection_mult(&f, &l, &off).unwrap_err(), Error::PointNotOnLine);
        // Z = 0 meets C only in (1:0:0), with multiplicity q + 1.
        let z0 = ProjLine::from_bits(&f, [0, 0, 1]).unwrap();
        let meet = c.line_intersection(&f, &z0).unwrap();
        assert_eq!(meet.points, vec![(ProjPoint::from_bits(&f, [1, 0, 0]).unwrap(), 5)]);
        // Reducible curve containing a line.
        let lines = PlaneCurve::star_unchecked(&f, f.zero());
        assert_eq!(lines.line_intersection(&f, &z0).unwrap_err(), Error::LineInCurve);
    }
}
