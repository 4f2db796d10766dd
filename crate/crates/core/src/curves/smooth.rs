//! Smoothness by elimination: common zeros of F and its partials, chart by chart.

use serde::Serialize;

use crate::form::Form;
use crate::gf2e::{Embedding, FieldCtx, FieldElem, MAX_EXTENSION_DEGREE};
use crate::upoly::{interpolate, resultant, UPoly};

/// Where a singular point was located.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularWitness {
    /// Extension degree over GF(2) of the field holding the coordinates below.
    pub field_degree: u32,
    /// Coordinates (hex) if the point was pinned down, otherwise a description.
    pub coords: Option<[String; 3]>,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Smoothness {
    Smooth,
    Singular(SingularWitness),
    /// The elimination could not be completed within the supported field sizes.
    Undetermined { reason: String },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

fn witness(f: &FieldCtx, p: [FieldElem; 3], what: &str) -> Smoothness {
    Smoothness::Singular(SingularWitness {
        field_degree: f.n(),
        coords: Some(p.map(|a| a.to_hex())),
        description: what.to_string(),
    })
}

fn vague(field_degree: u32, what: String) -> Smoothness {
    Smoothness::Singular(SingularWitness {
        field_degree,
        coords: None,
        description: what,
    })
}

/// Polynomial in y whose coefficients are polynomials in x.
#[derive(Clone, Debug)]
struct Biv {
    rows: Vec<UPoly>,
    total_degree: usize,
}

impl Biv {
    fn chart_z(form: &Form) -> Biv {
        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        for (e, &c) in form.terms() {
            let (a, b) = (e[0] as usize, e[1] as usize);
            if rows.len() <= b {
                rows.resize(b + 1, Vec::new());
            }
            if rows[b].len() <= a {
                rows[b].resize(a + 1, FieldElem::ZERO);
            }
            rows[b][a] = c;
        }
        Biv {
            rows: rows.into_iter().map(UPoly::new).collect(),
            total_degree: form.degree() as usize,
        }
    }

    fn map(&self, emb: &Embedding) -> Biv {
        Biv {
            rows: self.rows.iter().map(|r| r.map_coeffs(|a| emb.map(a))).collect(),
            total_degree: self.total_degree,
        }
    }

    fn y_degree(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    fn at_x(&self, f: &FieldCtx, x: FieldElem) -> UPoly {
        UPoly::new(self.rows.iter().map(|r| r.eval(f, x)).collect())
    }
}

/// Decides whether the curve F = 0 is nonsingular over the algebraic closure.
pub(crate) fn check(f: &FieldCtx, form: &Form) -> Smoothness {
    let mut eqs: Vec<Form> = vec![form.clone()];
    eqs.extend(form.gradient());
    eqs.retain(|g| !g.is_zero());

    let (o, z) = (FieldElem::ONE, FieldElem::ZERO);
    let corner = [o, z, z];
    if eqs.iter().all(|g| g.eval(f, &corner).is_zero()) {
        return witness(f, corner, "singular at (1:0:0)");
    }

    // Points (t:1:0).
    let mut at_inf = UPoly::zero();
    for g in &eqs {
        at_inf = at_inf.gcd(f, &g.restrict(f, &[z, o, z], &[o, z, z]));
    }
    if at_inf.is_zero() {
        return witness(f, [z, o, z], "the line Z = 0 is singular");
    }
    if !at_inf.is_constant() {
        return match at_inf.roots(f).first() {
            Some(&t) => witness(f, [t, o, z], "singular on Z = 0"),
            None => vague(
                f.n(),
                format!("singular on Z = 0 at a root of a degree {} polynomial", at_inf.deg0()),
            ),
        };
    }

    affine(f, &eqs)
}

fn affine(f: &FieldCtx, eqs: &[Form]) -> Smoothness {
    let polys: Vec<Biv> = eqs.iter().map(Biv::chart_z).collect();
    if polys.len() < 2 {
        return vague(f.n(), "singular along a whole component".into());
    }
    let bound = polys
        .iter()
        .map(|p| p.total_degree)
        .max()
        .unwrap_or(0)
        .pow(2);
    // Pick an extension with more than bound + 1 elements so the resultants
    // can be interpolated from values.
    let mut k = 1;
    while (f.size() as u128).pow(k) <= bound as u128 + 1 {
        k += 1;
    }
    if f.n() * k > MAX_EXTENSION_DEGREE {
        return Smoothness::Undetermined {
            reason: format!("interpolation needs GF(2^{})", f.n() * k),
        };
    }
    let (big, emb) = match f.extend(k) {
        Ok(x) => x,
        Err(e) => return Smoothness::Undetermined { reason: e.to_string() },
    };
    let polys: Vec<Biv> = polys.iter().map(|p| p.map(&emb)).collect();
    let nodes: Vec<FieldElem> = big.elements().take(bound + 1).collect();

    let mut pairs: Vec<(usize, usize)> = (1..polys.len()).map(|j| (0, j)).collect();
    let mut g = gcd_of_resultants(&big, &polys, &pairs, &nodes);
    if g.is_zero() {
        pairs = (1..polys.len())
            .flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j)))
            .collect();
        g = gcd_of_resultants(&big, &polys, &pairs, &nodes);
    }
    if g.is_zero() {
        return Smoothness::Undetermined {
            reason: "the equations share a common factor".into(),
        };
    }
    if g.is_constant() {
        return Smoothness::Smooth;
    }
    find_affine_witness(&big, &polys, &g)
}

fn gcd_of_resultants(f: &FieldCtx, polys: &[Biv], pairs: &[(usize, usize)], nodes: &[FieldElem]) -> UPoly {
    let mut g = UPoly::zero();
    for &(i, j) in pairs {
        let (a, b) = (&polys[i], &polys[j]);
        let values: Vec<FieldElem> = nodes
            .iter()
            .map(|&x| resultant(f, &a.at_x(f, x), a.y_degree(), &b.at_x(f, x), b.y_degree()))
            .collect();
        let r = interpolate(f, nodes, &values);
        g = g.gcd(f, &r);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Roots of g are the candidate x-coordinates; check each for a common y.
fn find_affine_witness(f: &FieldCtx, polys: &[Biv], g: &UPoly) -> Smoothness {
    for x in g.roots(f) {
        let mut h = UPoly::zero();
        for p in polys {
            h = h.gcd(f, &p.at_x(f, x));
        }
        if h.is_zero() {
            return witness(f, [x, FieldElem::ZERO, FieldElem::ONE], "singular along X = xZ");
        }
        if !h.is_constant() {
            return match h.roots(f).first() {
                Some(&y) => witness(f, [x, y, FieldElem::ONE], "singular point"),
                None => vague(
                    f.n(),
                    format!("singular at x = {x}, y a root of a degree {} polynomial", h.deg0()),
                ),
            };
        }
    }
    // Remaining candidates need a larger field.
    let degs: Vec<u32> = g
        .factor_degrees(f)
        .into_iter()
        .map(|(d, _, _)| d)
        .filter(|&d| d > 1)
        .collect();
    if degs.is_empty() {
        return Smoothness::Smooth;
    }
    let k = degs.iter().fold(1u32, |acc, &d| lcm(acc, d));
    if f.n() * k > MAX_EXTENSION_DEGREE {
        return Smoothness::Undetermined {
            reason: format!("candidate points need GF(2^{})", f.n() * k),
        };
    }
    let (big, emb) = match f.extend(k) {
        Ok(x) => x,
        Err(e) => return Smoothness::Undetermined { reason: e.to_string() },
    };
    let polys: Vec<Biv> = polys.iter().map(|p| p.map(&emb)).collect();
    let g = g.map_coeffs(|a| emb.map(a));
    find_affine_witness(&big, &polys, &g)
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
