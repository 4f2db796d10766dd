use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use curveaut_core::autgroup::{self, AutGroup};
use curveaut_core::curves::Family;
use curveaut_core::galois::{self, ScanRegion};
use curveaut_core::json::{curve_from_json, curve_to_json, parse_hex};
use curveaut_core::{families, prank, FieldCtx, PlaneCurve, ProjPoint};

use crate::args::*;
use crate::report::Bundle;
use crate::setup;
use crate::theorem1::{self, Theorem1Args};
use crate::theorem2::{self, Theorem2Args};
use crate::CliError;

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn bundle_out(b: &Bundle, format: Format) -> (String, bool) {
    let text = match format {
        Format::Json => to_json(b),
        Format::Text => b.to_text(),
    };
    (text, b.pass)
}

/// Runs the parsed command; returns stdout and whether every claim passed.
pub fn dispatch(cli: &Cli) -> Result<(String, bool), CliError> {
    let fmt = cli.format;
    let plain = |v: Value| Ok((to_json(&v), true));
    match &cli.command {
        Command::Verify { which } => match which {
            Verify::Theorem1(t) => {
                let args = Theorem1Args {
                    q: t.q,
                    lambda: t.lambda.clone(),
                    ambient: t.ambient,
                    closure_only: t.closure_only,
                    brute_force: t.brute_force,
                    seed: cli.seed,
                    scan_degree: t.scan_degree,
                };
                Ok(bundle_out(&theorem1::verify(&args)?, fmt))
            }
            Verify::Theorem2(t) => {
                let args = Theorem2Args {
                    lambda: t.lambda.clone(),
                    ambient: t.ambient,
                    seed: cli.seed,
                    scan_degree: t.scan_degree,
                };
                Ok(bundle_out(&theorem2::verify(&args)?, fmt))
            }
        },
        Command::GaloisScan(a) => plain(galois_scan(a)?),
        Command::Aut(a) => plain(aut(a)?),
        Command::RamProfile(a) => plain(ram_profile(a)?),
        Command::Prank(a) => plain(prank_cmd(a)?),
        Command::Hurwitz(a) => plain(hurwitz(a)?),
        Command::Table(a) => {
            let qs = a.qs.clone().unwrap_or_else(|| vec![4, 8, 16]);
            let rows = table(&qs)?;
            let out = match fmt {
                Format::Json => to_json(&rows),
                Format::Text => table_text(&rows),
            };
            Ok((out, true))
        }
        Command::Curve(a) => {
            let w = Working::resolve(&a.curve)?;
            let s = curve_to_json(&w.field, &w.curve) + "\n";
            match &a.out {
                Some(path) => {
                    std::fs::write(path, &s).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    Ok((String::new(), true))
                }
                None => Ok((s, true)),
            }
        }
    }
}

/// A resolved curve together with its working field and default search degree.
pub struct Working {
    pub field: FieldCtx,
    pub curve: PlaneCurve,
    pub degree: u32,
    pub description: Value,
}

impl Working {
    pub fn resolve(sel: &CurveSel) -> Result<Self, CliError> {
        let extra: Vec<u32> = sel.degree.into_iter().collect();
        if let Some(path) = &sel.curve {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let (field, curve) = curve_from_json(&text).map_err(|e| CliError::Input(e.to_string()))?;
            let degree = sel.degree.unwrap_or(field.n());
            if degree == 0 || field.n() % degree != 0 {
                return Err(CliError::Input(format!(
                    "degree {degree} does not divide the field degree {}",
                    field.n()
                )));
            }
            return Ok(Working {
                description: json!({ "file": path.display().to_string(), "field_bits": field.n() }),
                field,
                curve,
                degree,
            });
        }
        let (s, family) = match sel.family {
            FamilyArg::Star => (setup::star(sel.q, &sel.lambda, sel.ambient, &extra)?, "star"),
            FamilyArg::Doublestar => (setup::doublestar(&sel.lambda, sel.ambient, &extra)?, "doublestar"),
        };
        let mut description = json!({
            "family": family,
            "lambda": s.lambda_spec,
            "lambda_hex": s.lambda_hex,
            "ambient": s.ambient_n,
            "field_bits": s.field.n(),
        });
        if sel.family == FamilyArg::Star {
            description["q"] = json!(sel.q);
        }
        Ok(Working {
            degree: sel.degree.unwrap_or(s.field.n()),
            field: s.field,
            curve: s.curve,
            description,
        })
    }

    /// The two points whose groups generate Aut(C), for the named families.
    fn generating_points(&self) -> Result<[ProjPoint; 2], CliError> {
        let f = &self.field;
        match self.curve.family() {
            Family::Star { .. } => {
                let p = families::star_points(f);
                Ok([p[0], p[1]])
            }
            Family::DoubleStar => {
                let p = families::doublestar_points(f);
                Ok([p[0], p[1]])
            }
            Family::Custom => Err(CliError::Input(
                "closure needs a named family; use --method brute for curve files".into(),
            )),
        }
    }
}

fn galois_scan(a: &ScanArgs) -> Result<Value, CliError> {
    let w = Working::resolve(&a.curve)?;
    let regions: &[(ScanRegion, &str)] = match a.region {
        RegionArg::On => &[(ScanRegion::OnCurve, "on_curve")],
        RegionArg::Off => &[(ScanRegion::OffCurve, "off_curve")],
        RegionArg::Both => &[(ScanRegion::OnCurve, "on_curve"), (ScanRegion::OffCurve, "off_curve")],
    };
    let mut out = json!({ "curve": w.description, "degree": w.degree });
    for (region, key) in regions {
        let pts = galois::galois_scan(&w.field, &w.curve, *region, w.degree)?;
        out[*key] = json!({ "count": pts.len(), "points": pts });
    }
    Ok(out)
}

fn aut(a: &AutArgs) -> Result<Value, CliError> {
    let w = Working::resolve(&a.curve)?;
    let (f, c) = (&w.field, &w.curve);
    let g: AutGroup = match a.method {
        AutMethod::Closure => {
            let [p1, p2] = w.generating_points()?;
            let g1 = galois::point_galois_group(f, c, &p1, w.degree)?;
            let g2 = galois::point_galois_group(f, c, &p2, w.degree)?;
            let exact = f.q() <= 16 || c.family() == Family::DoubleStar;
            match c.family() {
                Family::Star { .. } => theorem1::star_closure(f, c, &g1, &g2, exact)?,
                _ => {
                    let all: Vec<_> = g1.elements.iter().chain(&g2.elements).copied().collect();
                    let gens = autgroup::reduce_generators(f, &all, 1 << 20)?;
                    autgroup::closure(f, &gens, c, 1 << 20)?
                }
            }
        }
        AutMethod::Brute => autgroup::brute_force_stabilizer(f, c, w.degree)?,
        AutMethod::Frame => {
            if c.family() != Family::DoubleStar {
                return Err(CliError::Input("--method frame applies to the doublestar family".into()));
            }
            let frame = families::doublestar_frame(f);
            let maps = autgroup::frame_candidates(f, c, &frame)?
                .into_iter()
                .filter(|x| x.stabilizes)
                .map(|x| x.map)
                .collect();
            AutGroup::from_elements(maps, Vec::new(), autgroup::ElementCheck::Exact)
        }
    };
    let identification = match c.family() {
        Family::Star { .. } => {
            let line = families::line_y(f);
            json!(autgroup::identify_star(f, &g, &line, &families::star_points(f))?)
        }
        Family::DoubleStar => json!(autgroup::identify_s4(f, &g, &families::doublestar_frame(f))),
        Family::Custom => Value::Null,
    };
    let mut out = json!({
        "curve": w.description,
        "method": format!("{:?}", a.method).to_lowercase(),
        "order": g.order(),
        "generators": g.generators(),
        "element_check": g.check(),
        "order_census": g.order_census(f),
        "identification": identification,
    });
    if a.elements {
        out["elements"] = json!(g.elements());
    }
    Ok(out)
}

fn parse_point(s: &str, f: &FieldCtx) -> Result<ProjPoint, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!("expected three coordinates, got {s:?}")));
    }
    let mut v = [f.zero(); 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        let bits = parse_hex(part).map_err(|e| CliError::Input(e.to_string()))?;
        *slot = f.elem(bits).map_err(|e| CliError::Input(e.to_string()))?;
    }
    ProjPoint::new(f, v).map_err(|e| CliError::Input(e.to_string()))
}

fn ram_profile(a: &RamArgs) -> Result<Value, CliError> {
    let w = Working::resolve(&a.curve)?;
    let f = &w.field;
    let center = match &a.center {
        Some(s) => parse_point(s, f)?,
        None => ProjPoint::from_bits(f, [1, 0, 0])?,
    };
    let profile = galois::ramification_profile(f, &w.curve, &center, w.degree)?;
    Ok(json!({
        "curve": w.description,
        "constant_per_branch": profile.constant_per_branch(),
        "profile": profile,
    }))
}

fn prank_cmd(a: &PrankArgs) -> Result<Value, CliError> {
    let w = Working::resolve(&a.curve)?;
    let (f, c) = (&w.field, &w.curve);
    let mut out = json!({ "curve": w.description });
    if matches!(a.method, PrankArg::Ds | PrankArg::Both) {
        out["deuring_shafarevich"] = match c.family() {
            Family::Custom => json!({ "error": "needs a named family with a known Galois point" }),
            _ => {
                let center = ProjPoint::from_bits(f, [1, 0, 0])?;
                let profile = galois::ramification_profile(f, c, &center, w.degree)?;
                match prank::ds_prank(c, &profile) {
                    Ok(r) => json!(r),
                    Err(e) => json!({ "error": e.to_string() }),
                }
            }
        };
    }
    if matches!(a.method, PrankArg::Hw | PrankArg::Both) {
        out["hasse_witt"] = match prank::hasse_witt_prank(f, c) {
            Ok(r) => json!(r),
            Err(e) => json!({ "error": e.to_string() }),
        };
    }
    Ok(out)
}

fn hurwitz(a: &HurwitzArgs) -> Result<Value, CliError> {
    let (order, genus) = match (a.q, a.order, a.genus) {
        (Some(q), _, _) => {
            setup::log2_q(q)?;
            (q * q * q - q, q * (q - 1) / 2)
        }
        (None, Some(o), Some(g)) => (o, g),
        _ => return Err(CliError::Input("give --q or both --order and --genus".into())),
    };
    let r = prank::hurwitz_check(order, genus).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(json!(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub q: u64,
    pub degree: u64,
    pub genus: u64,
    pub aut_order: u64,
    pub prank: u64,
    pub hurwitz_bound: u64,
    pub exceeds: bool,
}

/// One row per q: |Aut| from the closure of two point groups, the p-rank by
/// Deuring-Shafarevich from the projection at (1:0:0), and the Hurwitz comparison.
pub fn table(qs: &[u64]) -> Result<Vec<TableRow>, CliError> {
    let mut rows = Vec::new();
    for &q in qs {
        let s = setup::star(q, "w", None, &[])?;
        let (f, c) = (&s.field, &s.curve);
        let pts = families::star_points(f);
        let g1 = galois::point_galois_group(f, c, &pts[0], s.e)?;
        let g2 = galois::point_galois_group(f, c, &pts[1], s.e)?;
        let g = theorem1::star_closure(f, c, &g1, &g2, q <= 16)?;
        let profile = galois::ramification_profile(f, c, &pts[0], s.e)?;
        let gamma = prank::ds_prank(c, &profile)?;
        let h = prank::hurwitz_check(g.order() as u64, c.genus())?;
        rows.push(TableRow {
            q,
            degree: q + 1,
            genus: c.genus(),
            aut_order: g.order() as u64,
            prank: gamma.prank,
            hurwitz_bound: h.bound,
            exceeds: h.exceeds,
        });
    }
    Ok(rows)
}

pub fn table_text(rows: &[TableRow]) -> String {
    let header = ["q", "d", "g", "|Aut|", "gamma", "84(g-1)", "exceeds"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.q.to_string(),
                r.degree.to_string(),
                r.genus.to_string(),
                r.aut_order.to_string(),
                r.prank.to_string(),
                r.hurwitz_bound.to_string(),
                r.exceeds.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..7)
        .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let line = |cols: Vec<&str>| -> String {
        cols.iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    for c in &cells {
        let _ = writeln!(out, "{}", line(c.iter().map(String::as_str).collect()));
    }
    out
}
