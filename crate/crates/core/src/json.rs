//! JSON encodings. Field elements are lowercase hex strings with a 0x prefix.

use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::curves::PlaneCurve;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::gf2e::{FieldCtx, FieldElem};
use crate::projgeom::{LineMap, ProjLine, ProjMap, ProjPoint};

pub fn parse_hex(s: &str) -> Result<u64> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .ok_or_else(|| Error::Parse(format!("expected 0x-prefixed hex, got {s:?}")))?;
    u64::from_str_radix(digits, 16).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

fn hex_seq<S: Serializer>(s: S, items: &[FieldElem]) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(items.len()))?;
    for x in items {
        seq.serialize_element(x)?;
    }
    seq.end()
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        hex_seq(s, &self.coords())
    }
}

impl Serialize for ProjLine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        hex_seq(s, &self.coeffs())
    }
}

impl Serialize for ProjMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        hex_seq(s, self.matrix())
    }
}

impl Serialize for LineMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        hex_seq(s, &self.matrix())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub n: u32,
    pub modulus: String,
    pub e: u32,
}

impl FieldSpec {
    pub fn of(f: &FieldCtx) -> Self {
        FieldSpec {
            n: f.n(),
            modulus: format!("{:#x}", f.modulus()),
            e: f.e(),
        }
    }

    pub fn build(&self) -> Result<FieldCtx> {
        FieldCtx::new(self.n, parse_hex(&self.modulus)?, self.e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSpec {
    pub exp: [u32; 3],
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub field: FieldSpec,
    pub degree: u32,
    pub monomials: Vec<MonomialSpec>,
}

impl CurveFile {
    /// Monomials in descending graded-lex order.
    pub fn of(f: &FieldCtx, c: &PlaneCurve) -> Self {
        CurveFile {
            field: FieldSpec::of(f),
            degree: c.degree(),
            monomials: c
                .form()
                .terms_desc()
                .map(|(e, a)| MonomialSpec {
                    exp: *e,
                    coef: a.to_hex(),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<(FieldCtx, PlaneCurve)> {
        let f = self.field.build()?;
        let mut terms = Vec::with_capacity(self.monomials.len());
        for m in &self.monomials {
            if m.exp.iter().sum::<u32>() != self.degree {
                return Err(Error::Parse(format!(
                    "monomial {:?} is not of degree {}",
                    m.exp, self.degree
                )));
            }
            terms.push((m.exp, f.elem(parse_hex(&m.coef)?)?));
        }
        let form = Form::from_terms(self.degree, terms);
        if form.is_zero() {
            return Err(Error::Parse("the zero polynomial is not a curve".into()));
        }
        Ok((f, PlaneCurve::from_form(form)))
    }
}

pub fn curve_to_json(f: &FieldCtx, c: &PlaneCurve) -> String {
    serde_json::to_string_pretty(&CurveFile::of(f, c)).expect("plain data serializes")
}

pub fn curve_from_json(s: &str) -> Result<(FieldCtx, PlaneCurve)> {
    let file: CurveFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}
