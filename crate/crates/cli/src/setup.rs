//! Parameter parsing and field/curve construction shared by the subcommands.

use curveaut_core::json::parse_hex;
use curveaut_core::{FieldCtx, FieldElem, PlaneCurve};

use crate::CliError;

/// Parses a field element: hex bits ("0x13") or a sum of powers of the
/// generator w ("w", "w+1", "w^3 + w").
pub fn parse_element(spec: &str, f: &FieldCtx) -> Result<FieldElem, CliError> {
    let spec = spec.trim();
    if spec.starts_with("0x") || spec.starts_with("0X") {
        let bits = parse_hex(spec).map_err(|e| CliError::Input(e.to_string()))?;
        return f.elem(bits).map_err(|e| CliError::Input(format!("{spec}: {e}")));
    }
    let mut acc = f.zero();
    for term in spec.split('+') {
        let term = term.trim();
        let value = match term {
            "0" => f.zero(),
            "1" => f.one(),
            "w" => f.gen(),
            _ => {
                let exp = term
                    .strip_prefix("w^")
                    .and_then(|k| k.trim().parse::<u64>().ok())
                    .ok_or_else(|| CliError::Input(format!("cannot parse term {term:?} in {spec:?}")))?;
                f.pow(f.gen(), exp)
            }
        };
        acc = f.add(acc, value);
    }
    Ok(acc)
}

pub fn log2_q(q: u64) -> Result<u32, CliError> {
    if q < 4 || !q.is_power_of_two() {
        return Err(CliError::Input(format!("q must be a power of 2 with q >= 4, got {q}")));
    }
    Ok(q.trailing_zeros())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// A curve from one of the two families over a working field large enough for
/// every requested search degree, with lambda given in a smaller ambient field.
#[derive(Clone, Debug)]
pub struct Setup {
    pub e: u32,
    pub ambient_n: u32,
    pub lambda_spec: String,
    /// lambda in the ambient field, as hex.
    pub lambda_hex: String,
    /// Smallest d with lambda in GF(2^d).
    pub lambda_degree: u32,
    pub field: FieldCtx,
    pub lambda: FieldElem,
    pub curve: PlaneCurve,
}

impl Setup {
    pub fn q(&self) -> u64 {
        1 << self.e
    }
}

fn build_field(n: u32, e: u32) -> Result<FieldCtx, CliError> {
    FieldCtx::with_default_modulus(n, e).map_err(|err| CliError::Input(format!("GF(2^{n}): {err}")))
}

fn working_field(
    e: u32,
    ambient_n: u32,
    lambda_spec: &str,
    degrees: &[u32],
) -> Result<(FieldCtx, FieldElem, String, u32), CliError> {
    if ambient_n == 0 || ambient_n % e != 0 {
        return Err(CliError::Input(format!(
            "ambient degree {ambient_n} must be a positive multiple of {e}"
        )));
    }
    let ambient = build_field(ambient_n, e)?;
    let lambda = parse_element(lambda_spec, &ambient)?;
    if lambda.is_zero() || lambda.is_one() {
        return Err(CliError::Input(format!("lambda must not be 0 or 1, got {lambda_spec:?}")));
    }
    let lambda_degree = (1..=ambient_n)
        .filter(|d| ambient_n % d == 0)
        .find(|&d| ambient.in_subfield(lambda, d).unwrap_or(false))
        .unwrap_or(ambient_n);
    let n = degrees.iter().fold(ambient_n, |acc, &d| lcm(acc, d));
    let field = build_field(n, e)?;
    let emb = ambient.embedding_into(&field).map_err(CliError::Core)?;
    Ok((field, emb.map(lambda), lambda.to_hex(), lambda_degree))
}

pub fn star(q: u64, lambda_spec: &str, ambient: Option<u32>, degrees: &[u32]) -> Result<Setup, CliError> {
    let e = log2_q(q)?;
    let ambient_n = ambient.unwrap_or(e);
    let (field, lambda, lambda_hex, lambda_degree) = working_field(e, ambient_n, lambda_spec, degrees)?;
    let curve = PlaneCurve::build_star(&field, lambda).map_err(|err| CliError::Input(err.to_string()))?;
    Ok(Setup {
        e,
        ambient_n,
        lambda_spec: lambda_spec.to_string(),
        lambda_hex,
        lambda_degree,
        field,
        lambda,
        curve,
    })
}

pub fn doublestar(lambda_spec: &str, ambient: Option<u32>, degrees: &[u32]) -> Result<Setup, CliError> {
    let ambient_n = ambient.unwrap_or(2);
    let (field, lambda, lambda_hex, lambda_degree) = working_field(1, ambient_n, lambda_spec, degrees)?;
    let curve = PlaneCurve::build_doublestar(&field, lambda).map_err(|err| CliError::Input(err.to_string()))?;
    Ok(Setup {
        e: 1,
        ambient_n,
        lambda_spec: lambda_spec.to_string(),
        lambda_hex,
        lambda_degree,
        field,
        lambda,
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lambda_forms() {
        let f = FieldCtx::with_default_modulus(4, 2).unwrap();
        let w = f.gen();
        assert_eq!(parse_element("w", &f).unwrap(), w);
        assert_eq!(parse_element("w+1", &f).unwrap(), f.add(w, f.one()));
        assert_eq!(parse_element("w^3", &f).unwrap(), f.pow(w, 3));
        assert_eq!(parse_element("w^2 + w", &f).unwrap(), f.add(f.square(w), w));
        assert_eq!(parse_element("0x6", &f).unwrap(), f.elem(6).unwrap());
        assert!(parse_element("0x10", &f).is_err());
        assert!(parse_element("v", &f).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(star(4, "1", Some(2), &[]), Err(CliError::Input(_))));
        assert!(matches!(star(6, "w", None, &[]), Err(CliError::Input(_))));
        assert!(matches!(star(4, "w", Some(3), &[]), Err(CliError::Input(_))));
        assert!(matches!(doublestar("0", None, &[]), Err(CliError::Input(_))));
    }

    #[test]
    fn lambda_is_embedded_into_the_working_field() {
        let s = star(4, "w", Some(2), &[4]).unwrap();
        assert_eq!(s.field.n(), 4);
        let f = &s.field;
        // w satisfies w^2 + w + 1 = 0 in every field containing it.
        assert!(f.add(f.add(f.square(s.lambda), s.lambda), f.one()).is_zero());
        assert_eq!(s.lambda_hex, "0x2");
        assert_eq!(s.lambda_degree, 2);
        assert_eq!(doublestar("w", Some(4), &[]).unwrap().lambda_degree, 4);
        assert_eq!(doublestar("w^5", Some(4), &[]).unwrap().lambda_degree, 2);
    }
}
