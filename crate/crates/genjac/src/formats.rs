//! Line-oriented text formats for field elements, points and parameter files.
//!
//! A parameter file looks like
//!
//! ```text
//! # genjac parameters
//! p 11
//! reduction_poly 1,0,1
//! a 1
//! b 0
//! M 3,0;0,6
//! N 9,3;4,7
//! order_base 12 = 2^2*3
//! order_ext 144 = 2^4*3^2
//! order_gm 120 = 2^3*3*5
//! ```
//!
//! Blank lines and lines starting with `#` are ignored; keys may appear in any
//! order but each exactly once.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use genjac_core::arith::GroupOrder;
use genjac_core::curve::{Curve, Point};
use genjac_core::field::{ExtFieldParams, Fe, Field, MulCounter, PrimeFieldParams};
use genjac_core::genjac::{GenJacParams, Modulus};
use thiserror::Error;

const KEYS: [&str; 9] = ["p", "reduction_poly", "a", "b", "M", "N", "order_base", "order_ext", "order_gm"];

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("bad {what} `{text}`")]
    Value { what: &'static str, text: String },
    #[error(transparent)]
    Core(#[from] genjac_core::Error),
}

fn bad(what: &'static str, text: &str) -> FormatError {
    FormatError::Value { what, text: text.to_string() }
}

fn parse_u64(what: &'static str, s: &str) -> Result<u64, FormatError> {
    s.trim().parse().map_err(|_| bad(what, s))
}

fn parse_list(what: &'static str, s: &str) -> Result<Vec<u64>, FormatError> {
    s.split(',').map(|c| parse_u64(what, c)).collect()
}

/// `3,0` for `3 + 0u`; a lone `5` is the constant `5`.
pub fn parse_element(field: &Field, s: &str) -> Result<Fe, FormatError> {
    let coeffs = parse_list("field element", s)?;
    field.element(&coeffs).map_err(|_| bad("field element", s))
}

pub fn format_element(x: &Fe) -> String {
    x.to_string()
}

/// `inf` or `x;y`; the point must lie on `curve`.
pub fn parse_point(curve: &Curve, s: &str) -> Result<Point, FormatError> {
    let s = s.trim();
    if s == "inf" {
        return Ok(Point::Infinity);
    }
    let (x, y) = s.split_once(';').ok_or_else(|| bad("point", s))?;
    let field = curve.field();
    let (x, y) = (parse_element(field, x)?, parse_element(field, y)?);
    Ok(curve.point(x, y)?)
}

pub fn format_point(p: &Point) -> String {
    p.to_string()
}

/// `12 = 2^2*3`. The factorization is checked, not trusted.
pub fn parse_order(s: &str) -> Result<GroupOrder, FormatError> {
    let (n, rhs) = s.split_once('=').ok_or_else(|| bad("order", s))?;
    let n = parse_u64("order", n)?;
    let rhs = rhs.trim();
    let mut factors = Vec::new();
    if rhs != "1" {
        for term in rhs.split('*') {
            let (q, e) = match term.split_once('^') {
                Some((q, e)) => (q, e.trim().parse::<u32>().map_err(|_| bad("exponent", term))?),
                None => (term, 1),
            };
            factors.push((parse_u64("prime factor", q)?, e));
        }
    }
    Ok(GroupOrder::from_factors(n, factors)?)
}

pub fn format_order(order: &GroupOrder) -> String {
    order.to_string()
}

/// Serialize parameters; the output parses back to an equal value.
pub fn write_params(params: &GenJacParams) -> String {
    let base = params.base_curve();
    let ext = params.ext_curve();
    let poly: Vec<String> = ext.field().params().reduction_poly().iter().map(u64::to_string).collect();
    let mut out = String::from("# genjac parameters\n");
    let _ = writeln!(out, "p {}", base.field().characteristic());
    let _ = writeln!(out, "reduction_poly {}", poly.join(","));
    let _ = writeln!(out, "a {}", base.a());
    let _ = writeln!(out, "b {}", base.b());
    let _ = writeln!(out, "M {}", params.modulus().m());
    let _ = writeln!(out, "N {}", params.modulus().n());
    let _ = writeln!(out, "order_base {}", params.base_order());
    let _ = writeln!(out, "order_ext {}", params.ext_order());
    let _ = writeln!(out, "order_gm {}", params.gm_order());
    out
}

/// Parse a parameter file. Both fields share one fresh multiplication counter.
pub fn parse_params(text: &str) -> Result<GenJacParams, FormatError> {
    let mut entries: BTreeMap<&str, &str> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |msg: String| FormatError::Syntax { line: i + 1, msg };
        let (key, value) = line.split_once(char::is_whitespace).ok_or_else(|| syntax("expected `key value`".into()))?;
        let Some(&key) = KEYS.iter().find(|&&k| k == key) else {
            return Err(syntax(format!("unknown key `{key}`")));
        };
        if entries.insert(key, value.trim()).is_some() {
            return Err(syntax(format!("duplicate key `{key}`")));
        }
    }
    let get = |key: &'static str| entries.get(key).copied().ok_or(FormatError::Missing(key));

    let prime = PrimeFieldParams::new(parse_u64("prime", get("p")?)?)?;
    let ext_params = ExtFieldParams::new(prime, &parse_list("reduction polynomial", get("reduction_poly")?)?)?;
    let counter = MulCounter::new();
    let k = Field::with_counter(ExtFieldParams::prime(prime), counter.clone());
    let big = Field::with_counter(ext_params, counter);
    let base = Curve::new(k.clone(), parse_element(&k, get("a")?)?, parse_element(&k, get("b")?)?)?;
    let ext = base.base_change(big)?;
    let modulus = Modulus::new(parse_point(&ext, get("M")?)?, parse_point(&ext, get("N")?)?)?;
    Ok(GenJacParams::from_parts(
        base,
        ext,
        modulus,
        parse_order(get("order_base")?)?,
        parse_order(get("order_ext")?)?,
        parse_order(get("order_gm")?)?,
    )?)
}

pub fn read_params(path: &Path) -> Result<GenJacParams, FormatError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_params(&text)
}

pub fn save_params(path: &Path, params: &GenJacParams) -> Result<(), FormatError> {
    std::fs::write(path, write_params(params))
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    const TOY: &str = "# genjac parameters
p 11
reduction_poly 1,0,1
a 1
b 0
M 3,0;0,6
N 9,3;4,7
order_base 12 = 2^2*3
order_ext 144 = 2^4*3^2
order_gm 120 = 2^3*3*5
";

    #[test]
    fn toy_file_round_trips_verbatim() {
        let params = parse_params(TOY).unwrap();
        assert_eq!(params.base_order().order(), 12);
        assert_eq!(write_params(&params), TOY);
    }

    #[test]
    fn generated_params_round_trip() {
        for p in [7, 11, 19, 23, 47] {
            let params = GenJacParams::generate(p, &mut ChaCha20Rng::seed_from_u64(p)).unwrap();
            let text = write_params(&params);
            let back = parse_params(&text).unwrap();
            assert_eq!(write_params(&back), text);
            assert_eq!(back.modulus(), params.modulus());
            assert_eq!(back.jac_order().unwrap(), params.jac_order().unwrap());
        }
    }

    #[test]
    fn order_parsing() {
        assert_eq!(format_order(&parse_order("12 = 2^2*3").unwrap()), "12 = 2^2*3");
        assert_eq!(parse_order("1 = 1").unwrap().order(), 1);
        assert!(parse_order("12 = 2*3").is_err());
        assert!(parse_order("12 = 4*3").is_err());
        assert!(parse_order("12").is_err());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse_params(&TOY.replace("a 1\n", "")), Err(FormatError::Missing("a"))));
        assert!(matches!(parse_params(&format!("{TOY}p 11\n")), Err(FormatError::Syntax { line: 11, .. })));
        assert!(matches!(parse_params(&TOY.replace("a 1", "c 1")), Err(FormatError::Syntax { .. })));
        // M moved off the curve
        assert!(parse_params(&TOY.replace("M 3,0;0,6", "M 3,0;1,6")).is_err());
        // M = N
        assert!(parse_params(&TOY.replace("N 9,3;4,7", "N 3,0;0,6")).is_err());
        // wrong #E(k)
        assert!(parse_params(&TOY.replace("order_base 12 = 2^2*3", "order_base 6 = 2*3")).is_err());
        // reducible polynomial u^2 - 1
        assert!(parse_params(&TOY.replace("reduction_poly 1,0,1", "reduction_poly 10,0,1")).is_err());
    }

    #[test]
    fn points() {
        let params = parse_params(TOY).unwrap();
        let e = params.base_curve();
        let p = parse_point(e, "5;3").unwrap();
        assert_eq!(format_point(&p), "5;3");
        assert_eq!(parse_point(e, "inf").unwrap(), Point::Infinity);
        assert!(parse_point(e, "5;4").is_err());
        assert!(parse_point(e, "5").is_err());
        assert!(parse_point(e, "5,1;3").is_err());
    }
}
