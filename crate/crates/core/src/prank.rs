//! p-ranks (p = 2) from ramification data and from the Hasse-Witt matrix, plus
//! Hurwitz-bound arithmetic.

use serde::Serialize;

use crate::curves::PlaneCurve;
use crate::error::{Error, Result};
use crate::form::Exp;
use crate::galois::RamProfile;
use crate::gf2e::{FieldCtx, FieldElem};
use crate::linalg::{self, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrankMethod {
    DeuringShafarevich,
    HasseWitt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrankReport {
    pub genus: u64,
    pub prank: u64,
    pub method: PrankMethod,
    pub ordinary: bool,
}

impl PrankReport {
    fn new(genus: u64, prank: u64, method: PrankMethod) -> Self {
        PrankReport {
            genus,
            prank,
            method,
            ordinary: prank == genus,
        }
    }
}

/// gamma from (gamma - 1)/|G| = quotient term + sum_b (1 - 1/e_b), for a Galois
/// cover by a 2-group of order `group_order` with branch indices `branches`.
pub fn deuring_shafarevich(group_order: u64, quotient_prank_minus_one: i64, branches: &[u64]) -> Result<u64> {
    if !group_order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "group order {group_order} is not a power of 2"
        )));
    }
    let n = group_order as i128;
    let mut acc = n * quotient_prank_minus_one as i128;
    for &e in branches {
        if e == 0 || group_order % e != 0 {
            return Err(Error::NonIntegerResult);
        }
        acc += n - n / e as i128;
    }
    let gamma = acc + 1;
    if gamma < 0 {
        return Err(Error::NegativePrank);
    }
    Ok(gamma as u64)
}

/// One ramification index per branch line of a Galois projection.
pub fn branch_indices(profile: &RamProfile) -> Result<Vec<u64>> {
    profile
        .branches
        .iter()
        .map(|b| {
            let idx = b.indices();
            match idx.first() {
                Some(&e) if idx.iter().all(|&x| x == e) => Ok(e as u64),
                _ => Err(Error::InvalidParameter(format!(
                    "fiber over {} has unequal ramification {:?}",
                    b.line, idx
                ))),
            }
        })
        .collect()
}

/// Deuring-Shafarevich for the projection from a Galois point with rational quotient.
pub fn ds_prank(c: &PlaneCurve, profile: &RamProfile) -> Result<PrankReport> {
    let gamma = deuring_shafarevich(profile.proj_degree as u64, -1, &branch_indices(profile)?)?;
    Ok(PrankReport::new(c.genus(), gamma, PrankMethod::DeuringShafarevich))
}

/// Exponent triples of degree k in descending lex order.
fn monomials(k: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

/// g x g matrix with entry (u, v) the coefficient of X^(2a'-a+1) Y^(2b'-b+1) Z^(2c'-c+1)
/// in F, where u = (a, b, c) and v = (a', b', c') run over monomials of degree d - 3.
pub fn hasse_witt_matrix(c: &PlaneCurve) -> Result<Mat> {
    let d = c.degree();
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let basis = monomials(d - 3);
    let form = c.form();
    Ok(basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|v| {
                    let e = [0, 1, 2].map(|i| 2 * v[i] as i64 - u[i] as i64 + 1);
                    if e.iter().any(|&x| x < 0) {
                        FieldElem::ZERO
                    } else {
                        form.coeff(e.map(|x| x as u32))
                    }
                })
                .collect()
        })
        .collect())
}

/// Order of the Frobenius-twisted factors in the stable product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistOrder {
    /// M M^(2) M^(4) ... (the Cartier operator iterated on the row basis)
    Ascending,
    /// ... M^(4) M^(2) M
    Descending,
}

/// Rank of the g-fold twisted product, stopping once the rank stabilizes.
pub fn stable_rank(f: &FieldCtx, m: &Mat, order: TwistOrder) -> usize {
    let g = m.len();
    let mut prod = m.clone();
    let mut r = linalg::rank(f, &prod);
    for k in 1..g.max(1) as u32 {
        if r == 0 {
            break;
        }
        let tw = linalg::frobenius_twist(f, m, k);
        prod = match order {
            TwistOrder::Ascending => linalg::mat_mul(f, &prod, &tw),
            TwistOrder::Descending => linalg::mat_mul(f, &tw, &prod),
        };
        let next = linalg::rank(f, &prod);
        if next == r {
            break;
        }
        r = next;
    }
    r
}

pub fn hasse_witt_prank(f: &FieldCtx, c: &PlaneCurve) -> Result<PrankReport> {
    hasse_witt_prank_with(f, c, TwistOrder::Ascending)
}

pub fn hasse_witt_prank_with(f: &FieldCtx, c: &PlaneCurve, order: TwistOrder) -> Result<PrankReport> {
    if !c.is_smooth(f).is_smooth() {
        return Err(Error::SingularCurve);
    }
    let m = hasse_witt_matrix(c)?;
    let gamma = stable_rank(f, &m, order) as u64;
    Ok(PrankReport::new(c.genus(), gamma, PrankMethod::HasseWitt))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzReport {
    pub order: u64,
    pub genus: u64,
    pub bound: u64,
    pub exceeds: bool,
}

/// Compares a group order with 84(g - 1).
pub fn hurwitz_check(order: u64, genus: u64) -> Result<HurwitzReport> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let bound = 84 * (genus - 1);
    Ok(HurwitzReport {
        order,
        genus,
        bound,
        exceeds: order > bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderIdentity {
    pub q: u64,
    pub genus: u64,
    /// The integer square root of 8g + 1.
    pub root: u64,
    /// g (3 + root).
    pub product: u64,
    pub holds: bool,
}

/// With g = q(q-1)/2: 8g + 1 = (2q-1)^2 and g (3 + 2q - 1) = q^3 - q.
pub fn order_identity_check(q: u64) -> Result<OrderIdentity> {
    if q < 4 {
        return Err(Error::SmallQ(q));
    }
    if !q.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("q = {q} is not a power of 2")));
    }
    let genus = q * (q - 1) / 2;
    let disc = 8 * genus + 1;
    let root = disc.isqrt();
    let product = genus * (3 + root);
    Ok(OrderIdentity {
        q,
        genus,
        root,
        product,
        holds: root * root == disc && root == 2 * q - 1 && product == q * q * q - q,
    })
}
