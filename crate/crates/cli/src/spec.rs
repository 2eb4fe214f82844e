//! Parsers for the function, operator, space and angle mini-languages used
//! on the command line.

use std::str::FromStr;

use korenblum_core::expr::{catalog, CATALOG_NAMES};
use korenblum_core::{AnalyticExpr, Function, OperatorSpec, TruncatedSeries};
use num_complex::Complex64;
use serde_json::Value;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    Complex64::from_str(t).map_err(|_| format!("not a complex number: {t:?}"))
}

fn series_from_json(v: &Value) -> Result<TruncatedSeries, String> {
    let bad = || format!("expected an array of coefficients or {{\"re\":[..],\"im\":[..]}}, got {v}");
    if v.is_object() {
        return serde_json::from_value(v.clone()).map_err(|e| e.to_string());
    }
    let items = v.as_array().ok_or_else(bad)?;
    if items.is_empty() {
        return Err("a series needs at least one coefficient".into());
    }
    let coeffs = items
        .iter()
        .map(|x| match x {
            Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)).ok_or_else(bad),
            Value::String(s) => parse_complex(s),
            Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    TruncatedSeries::new(coeffs).map_err(|e| e.to_string())
}

/// Accepted forms:
/// `series:[c0, c1, ..]`, `series:{"re":[..],"im":[..]}`, `const:c`,
/// `expr:<json expression>`, a bare JSON function, or a catalog name with
/// optional comma-separated parameters such as `e1_witness:1,-1`.
pub fn parse_function(spec: &str) -> Result<Function, String> {
    let spec = spec.trim();
    if spec.starts_with('[') || spec.starts_with('{') {
        return serde_json::from_str(spec).map_err(|e| format!("invalid function JSON: {e}"));
    }
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    match (head, rest) {
        ("series", Some(body)) => {
            let v: Value = serde_json::from_str(body).map_err(|e| format!("invalid series JSON: {e}"))?;
            Ok(Function::Series(series_from_json(&v)?))
        }
        ("const", Some(c)) => Ok(Function::Expr(AnalyticExpr::Const(parse_complex(c)?))),
        ("expr", Some(body)) => {
            let v: Value = serde_json::from_str(body).map_err(|e| format!("invalid expression JSON: {e}"))?;
            AnalyticExpr::from_json(&v).map(Function::Expr).map_err(|e| e.to_string())
        }
        (name, params) => {
            if !CATALOG_NAMES.contains(&name) {
                return Err(format!(
                    "unknown function {name:?}; expected series:, const:, expr:, JSON, or one of {}",
                    CATALOG_NAMES.join(", ")
                ));
            }
            let params = match params {
                Some(p) if !p.trim().is_empty() => p.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>()?,
                _ => Vec::new(),
            };
            catalog(name, &params).map(Function::Expr).map_err(|e| e.to_string())
        }
    }
}

/// `volterra:<g'>`, `averaged:<g'>`, `mult:<h>`, `cesaro`, `cesaro_inverse`,
/// `diff`, `integrate`, `shift`, `backshift`, or a JSON operator object.
///
/// The function after `volterra:` and `averaged:` is the symbol `g` itself;
/// it is differentiated before use.
pub fn parse_operator(spec: &str) -> Result<OperatorSpec, String> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return serde_json::from_str(spec).map_err(|e| format!("invalid operator JSON: {e}"));
    }
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    let with_fn = |r: Option<&str>| -> Result<Function, String> {
        parse_function(r.ok_or_else(|| format!("operator {head} needs a function, e.g. {head}:g0"))?)
    };
    let plain = |op: OperatorSpec| -> Result<OperatorSpec, String> {
        match rest {
            None => Ok(op),
            Some(_) => Err(format!("operator {head} takes no argument")),
        }
    };
    match head {
        "volterra" => Ok(OperatorSpec::Volterra { gprime: with_fn(rest)?.derivative() }),
        "averaged" => Ok(OperatorSpec::Averaged { gprime: with_fn(rest)?.derivative() }),
        "mult" => Ok(OperatorSpec::MultiplyBy { h: with_fn(rest)? }),
        "cesaro" => plain(OperatorSpec::Cesaro),
        "cesaro_inverse" => plain(OperatorSpec::CesaroInverse),
        "diff" | "differentiate" => plain(OperatorSpec::Differentiate),
        "integrate" => plain(OperatorSpec::Integrate),
        "shift" => plain(OperatorSpec::Shift),
        "backshift" => plain(OperatorSpec::BackShift),
        other => Err(format!(
            "unknown operator {other:?}; expected volterra:g, averaged:g, cesaro, cesaro_inverse, diff, integrate, \
             shift, backshift or mult:h"
        )),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Korenblum { gamma: f64 },
    Bloch,
    /// The optimal domain of `V_g` into `A^{-γ}`; holds `g'`.
    OptimalDomain { gamma: f64, gprime: Function },
}

fn parse_gamma(s: &str) -> Result<f64, String> {
    let g: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if g > 0.0 && g.is_finite() {
        Ok(g)
    } else {
        Err(format!("γ must be positive, got {g}"))
    }
}

/// `korenblum:γ`, `bloch`, or `odomain:γ:<g>`.
pub fn parse_space(spec: &str) -> Result<Space, String> {
    let spec = spec.trim();
    if spec == "bloch" {
        return Ok(Space::Bloch);
    }
    if let Some(g) = spec.strip_prefix("korenblum:") {
        return Ok(Space::Korenblum { gamma: parse_gamma(g)? });
    }
    if let Some(rest) = spec.strip_prefix("odomain:") {
        let (gamma, symbol) =
            rest.split_once(':').ok_or_else(|| "expected odomain:γ:<g>, e.g. odomain:1:g0".to_string())?;
        return Ok(Space::OptimalDomain { gamma: parse_gamma(gamma)?, gprime: parse_function(symbol)?.derivative() });
    }
    Err(format!("unknown space {spec:?}; expected korenblum:γ, bloch or odomain:γ:<g>"))
}

/// Angle in radians; accepts plain numbers and multiples of `pi` such as
/// `pi`, `-pi/2`, `0.5pi` or `3*pi/4`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || format!("not an angle: {s:?}");
    let Some((before, after)) = t.split_once("pi") else {
        return t.parse().map_err(|_| bad());
    };
    let before = before.trim_end_matches('*').trim();
    let factor = match before {
        "" | "+" => 1.0,
        "-" => -1.0,
        b => b.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match after.trim() {
        "" => 1.0,
        a => a.strip_prefix('/').ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?,
    };
    if divisor == 0.0 {
        return Err(bad());
    }
    Ok(factor * std::f64::consts::PI / divisor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn real_and_complex_series() {
        let Function::Series(s) = parse_function("series:[0,2,-2]").unwrap() else { panic!() };
        assert_eq!(s, TruncatedSeries::from_real(&[0.0, 2.0, -2.0]).unwrap());
        let Function::Series(s) = parse_function("series:[[1,2],\"3-1i\"]").unwrap() else { panic!() };
        assert_eq!(s.coeffs(), &[Complex64::new(1.0, 2.0), Complex64::new(3.0, -1.0)]);
        let Function::Series(s) = parse_function(r#"series:{"re":[1,0],"im":[0,1]}"#).unwrap() else { panic!() };
        assert_eq!(s.coeff(1), Complex64::i());
        assert!(parse_function("series:[]").is_err());
        assert!(parse_function("series:[1,").is_err());
    }

    #[test]
    fn catalog_shorthand() {
        assert!(matches!(parse_function("g0").unwrap(), Function::Expr(_)));
        assert!(parse_function("e1_witness:1").is_ok());
        assert!(parse_function("e1_witness:1,i").is_ok());
        assert!(parse_function("e1_witness:1,0.5").is_err());
        assert!(parse_function("no_such_fn").is_err());
        assert_eq!(
            parse_function("const:2-1i").unwrap(),
            Function::Expr(AnalyticExpr::Const(Complex64::new(2.0, -1.0)))
        );
    }

    #[test]
    fn expression_json() {
        let f = parse_function(r#"expr:["linpow",{"a":[1.0,0.0],"rho":-1.0}]"#).unwrap();
        assert_eq!(f, Function::Expr(korenblum_core::expr::g0_prime()));
    }

    #[test]
    fn operators() {
        assert_eq!(parse_operator("cesaro").unwrap(), OperatorSpec::Cesaro);
        assert_eq!(parse_operator("diff").unwrap(), OperatorSpec::Differentiate);
        assert!(parse_operator("cesaro:1").is_err());
        assert!(parse_operator("volterra").is_err());
        let OperatorSpec::Volterra { gprime } = parse_operator("volterra:g0").unwrap() else { panic!() };
        assert_eq!(gprime, Function::Expr(korenblum_core::expr::g0_prime()));
        let json = r#"{"op":"averaged","gprime":["const",[1.0,0.0]]}"#;
        assert!(matches!(parse_operator(json).unwrap(), OperatorSpec::Averaged { .. }));
        assert!(parse_operator("transpose").is_err());
    }

    #[test]
    fn spaces() {
        assert_eq!(parse_space("korenblum:1.5").unwrap(), Space::Korenblum { gamma: 1.5 });
        assert_eq!(parse_space("bloch").unwrap(), Space::Bloch);
        assert!(matches!(parse_space("odomain:1:monomial:2").unwrap(), Space::OptimalDomain { gamma, .. } if gamma == 1.0));
        assert!(parse_space("korenblum:0").is_err());
        assert!(parse_space("odomain:1").is_err());
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("0.5pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("tau").is_err());
    }
}
