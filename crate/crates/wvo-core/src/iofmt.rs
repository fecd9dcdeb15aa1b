//! JSON wire formats for problems, cones, point sets, queries, certificates,
//! and reports.
//!
//! Rationals travel as `"num/den"` strings, with bare integers allowed.
//! Decimal literals are rejected unless the caller opts into approximate
//! input, in which case the literal text is converted to an exact rational
//! verbatim (`0.5` becomes `1/2` via its decimal expansion, never through a
//! float). Parsing works over `serde_json::Value` so every error can carry
//! the offending field path.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde_json::{json, Map, Value};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::farkas::FarkasQuery;
use crate::linalg::{Matrix, Rat};
use crate::multiplier::Certificate;
use crate::order::PointSet;
use crate::problem::{Polyhedron, Problem, VectorAffineMap};

pub const SCHEMA_VERSION: u64 = 1;

/// Parsing options.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept decimal literals, converting their text exactly.
    pub approx: bool,
}

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

/// Exact rational from the text of a decimal literal (sign, digits, optional
/// fraction, optional exponent).
fn rational_from_decimal_text(s: &str) -> Option<Rat> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().ok()?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return None;
    }
    let numer: BigInt = digits.parse().ok()?;
    let scale = frac_part.len() as i64;
    let ten = BigInt::from(10);
    let net = exp - scale;
    let r = if net >= 0 {
        Rat::from_integer(numer * ten.pow(net as u64))
    } else {
        Rat::new(numer, ten.pow((-net) as u64))
    };
    Some(r)
}

/// Parse one JSON value as an exact rational.
pub fn parse_rat(v: &Value, opts: ParseOptions, path: &str) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            let text = n.to_string();
            let is_integral = !text.contains(['.', 'e', 'E']);
            if is_integral {
                let numer: BigInt = text
                    .parse()
                    .map_err(|e| err(path, format!("bad integer literal: {e}")))?;
                Ok(Rat::from_integer(numer))
            } else if opts.approx {
                rational_from_decimal_text(&text)
                    .ok_or_else(|| err(path, format!("bad decimal literal `{text}`")))
            } else {
                Err(err(
                    path,
                    format!("float literal `{text}` rejected; pass rationals as \"num/den\" strings or enable approximate input"),
                ))
            }
        }
        Value::String(s) => {
            let s = s.trim();
            if let Some((num, den)) = s.split_once('/') {
                let numer: BigInt = num
                    .trim()
                    .parse()
                    .map_err(|e| err(path, format!("bad numerator `{num}`: {e}")))?;
                let denom: BigInt = den
                    .trim()
                    .parse()
                    .map_err(|e| err(path, format!("bad denominator `{den}`: {e}")))?;
                if denom.is_zero() {
                    return Err(err(path, "zero denominator"));
                }
                Ok(Rat::new(numer, denom))
            } else if let Ok(numer) = s.parse::<BigInt>() {
                Ok(Rat::from_integer(numer))
            } else if opts.approx {
                rational_from_decimal_text(s)
                    .ok_or_else(|| err(path, format!("unrecognized rational `{s}`")))
            } else {
                Err(err(path, format!("unrecognized rational `{s}`")))
            }
        }
        other => Err(err(path, format!("expected a rational, found {other}"))),
    }
}

/// Canonical JSON form of a rational: bare integer when it fits, otherwise a
/// `"num/den"` string.
pub fn rat_to_value(r: &Rat) -> Value {
    if r.is_integer() {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return json!(i);
        }
        return json!(r.numer().to_string());
    }
    json!(format!("{}/{}", r.numer(), r.denom()))
}

pub fn parse_vector(v: &Value, opts: ParseOptions, path: &str) -> Result<Vec<Rat>> {
    let arr = v
        .as_array()
        .ok_or_else(|| err(path, "expected an array of rationals"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_rat(x, opts, &format!("{path}[{i}]")))
        .collect()
}

pub fn vector_to_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_value).collect())
}

pub fn parse_matrix(v: &Value, opts: ParseOptions, path: &str) -> Result<Matrix> {
    let arr = v
        .as_array()
        .ok_or_else(|| err(path, "expected an array of rows"))?;
    let rows: Result<Vec<Vec<Rat>>> = arr
        .iter()
        .enumerate()
        .map(|(i, row)| parse_vector(row, opts, &format!("{path}[{i}]")))
        .collect();
    Matrix::from_rows(rows?).map_err(|_| err(path, "ragged matrix rows"))
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| vector_to_value(m.row(i))).collect())
}

pub fn parse_cone(v: &Value, opts: ParseOptions, path: &str) -> Result<Cone> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected a cone object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| err(path, "missing positive integer field `dim`"))? as usize;
    let facets_v = obj
        .get("facets")
        .ok_or_else(|| err(path, "missing field `facets`"))?;
    let facets_arr = facets_v
        .as_array()
        .ok_or_else(|| err(&format!("{path}.facets"), "expected an array"))?;
    let facets: Result<Vec<Vec<Rat>>> = facets_arr
        .iter()
        .enumerate()
        .map(|(i, f)| parse_vector(f, opts, &format!("{path}.facets[{i}]")))
        .collect();
    let facets = facets?;
    match obj.get("generators") {
        None | Some(Value::Null) => Cone::from_facets(dim, facets),
        Some(g) => {
            let arr = g
                .as_array()
                .ok_or_else(|| err(&format!("{path}.generators"), "expected an array"))?;
            let gens: Result<Vec<Vec<Rat>>> = arr
                .iter()
                .enumerate()
                .map(|(i, x)| parse_vector(x, opts, &format!("{path}.generators[{i}]")))
                .collect();
            Cone::with_generators(dim, facets, gens?)
        }
    }
}

pub fn cone_to_value(c: &Cone) -> Value {
    json!({
        "dim": c.dim(),
        "facets": Value::Array(c.facets().iter().map(|f| vector_to_value(f)).collect()),
    })
}

pub fn parse_polyhedron(v: &Value, opts: ParseOptions, path: &str) -> Result<Polyhedron> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected a polyhedron object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| err(path, "missing positive integer field `dim`"))? as usize;
    let mut rows = Vec::new();
    if let Some(rows_v) = obj.get("rows") {
        let arr = rows_v
            .as_array()
            .ok_or_else(|| err(&format!("{path}.rows"), "expected an array"))?;
        for (i, row) in arr.iter().enumerate() {
            let rpath = format!("{path}.rows[{i}]");
            let robj = row
                .as_object()
                .ok_or_else(|| err(&rpath, "expected {normal, rhs}"))?;
            let normal = parse_vector(
                robj.get("normal").ok_or_else(|| err(&rpath, "missing `normal`"))?,
                opts,
                &format!("{rpath}.normal"),
            )?;
            let rhs = parse_rat(
                robj.get("rhs").ok_or_else(|| err(&rpath, "missing `rhs`"))?,
                opts,
                &format!("{rpath}.rhs"),
            )?;
            rows.push((normal, rhs));
        }
    }
    Polyhedron::from_rows(dim, rows)
}

pub fn polyhedron_to_value(p: &Polyhedron) -> Value {
    json!({
        "dim": p.dim(),
        "rows": Value::Array(
            p.rows()
                .iter()
                .map(|(a, b)| json!({"normal": vector_to_value(a), "rhs": rat_to_value(b)}))
                .collect(),
        ),
    })
}

fn parse_map(
    v: &Value,
    opts: ParseOptions,
    path: &str,
    out_dim: usize,
    in_dim: usize,
) -> Result<VectorAffineMap> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected a map object"))?;
    let matrix = parse_matrix(
        obj.get("matrix").ok_or_else(|| err(path, "missing `matrix`"))?,
        opts,
        &format!("{path}.matrix"),
    )?;
    if matrix.nrows() != out_dim || matrix.ncols() != in_dim {
        return Err(err(
            &format!("{path}.matrix"),
            format!(
                "expected {out_dim}x{in_dim}, found {}x{}",
                matrix.nrows(),
                matrix.ncols()
            ),
        ));
    }
    let offset = match obj.get("offset") {
        Some(o) => parse_vector(o, opts, &format!("{path}.offset"))?,
        None => crate::linalg::zeros(out_dim),
    };
    if offset.len() != out_dim {
        return Err(err(
            &format!("{path}.offset"),
            format!("expected length {out_dim}, found {}", offset.len()),
        ));
    }
    let domain = match obj.get("domain") {
        Some(d) if !d.is_null() => parse_polyhedron(d, opts, &format!("{path}.domain"))?,
        _ => Polyhedron::full_space(in_dim),
    };
    VectorAffineMap::new(matrix, offset, domain)
        .map_err(|e| err(path, format!("invalid map: {e}")))
}

fn map_to_value(m: &VectorAffineMap) -> Value {
    let mut obj = Map::new();
    obj.insert("matrix".into(), matrix_to_value(m.matrix()));
    obj.insert("offset".into(), vector_to_value(m.offset()));
    if !m.domain().is_full_space() {
        obj.insert("domain".into(), polyhedron_to_value(m.domain()));
    }
    Value::Object(obj)
}

/// Parse a problem document.
pub fn parse_problem(text: &str, opts: ParseOptions) -> Result<Problem> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    problem_from_value(&v, opts)
}

pub fn problem_from_value(v: &Value, opts: ParseOptions) -> Result<Problem> {
    let obj = v
        .as_object()
        .ok_or_else(|| err("$", "expected a problem object"))?;
    match obj.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        Some(other) => {
            return Err(err(
                "$.schema_version",
                format!("unsupported version {other}, expected {SCHEMA_VERSION}"),
            ))
        }
        None => return Err(err("$.schema_version", "missing integer field")),
    }
    let dims = obj
        .get("dims")
        .and_then(Value::as_object)
        .ok_or_else(|| err("$.dims", "missing object with fields n, m, p"))?;
    let get_dim = |k: &str| -> Result<usize> {
        dims.get(k)
            .and_then(Value::as_u64)
            .map(|d| d as usize)
            .ok_or_else(|| err(&format!("$.dims.{k}"), "missing positive integer"))
    };
    let n = get_dim("n")?;
    let m = get_dim("m")?;
    let p = get_dim("p")?;
    let cones = obj
        .get("cones")
        .and_then(Value::as_object)
        .ok_or_else(|| err("$.cones", "missing object with fields K, S"))?;
    let k = parse_cone(
        cones.get("K").ok_or_else(|| err("$.cones.K", "missing"))?,
        opts,
        "$.cones.K",
    )?;
    let s = parse_cone(
        cones.get("S").ok_or_else(|| err("$.cones.S", "missing"))?,
        opts,
        "$.cones.S",
    )?;
    if k.dim() != m {
        return Err(err("$.cones.K", format!("dimension {} != dims.m = {m}", k.dim())));
    }
    if s.dim() != p {
        return Err(err("$.cones.S", format!("dimension {} != dims.p = {p}", s.dim())));
    }
    let maps = obj
        .get("maps")
        .and_then(Value::as_object)
        .ok_or_else(|| err("$.maps", "missing object with fields F, G"))?;
    let f = parse_map(
        maps.get("F").ok_or_else(|| err("$.maps.F", "missing"))?,
        opts,
        "$.maps.F",
        m,
        n,
    )?;
    let g = parse_map(
        maps.get("G").ok_or_else(|| err("$.maps.G", "missing"))?,
        opts,
        "$.maps.G",
        p,
        n,
    )?;
    let c = match obj.get("C") {
        Some(cv) if !cv.is_null() => parse_polyhedron(cv, opts, "$.C")?,
        _ => Polyhedron::full_space(n),
    };
    if c.dim() != n {
        return Err(err("$.C", format!("dimension {} != dims.n = {n}", c.dim())));
    }
    if c.is_empty() {
        return Err(Error::InfeasibleConstraintSet);
    }
    Problem::new(k, s, f, g, c)
}

pub fn problem_to_value(prob: &Problem) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "dims": {
            "n": prob.decision_dim(),
            "m": prob.objective_dim(),
            "p": prob.constraint_dim(),
        },
        "cones": {
            "K": cone_to_value(prob.ordering_cone()),
            "S": cone_to_value(prob.constraint_cone()),
        },
        "maps": {
            "F": map_to_value(prob.objective()),
            "G": map_to_value(prob.constraint_map()),
        },
        "C": polyhedron_to_value(prob.constraint_set()),
    })
}

/// Parse a batch of `(L, y)` queries: `{"queries": [{"L": rows, "y": vec}]}`.
pub fn parse_queries(text: &str, opts: ParseOptions, prob: &Problem) -> Result<Vec<FarkasQuery>> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let arr = v
        .get("queries")
        .and_then(Value::as_array)
        .ok_or_else(|| err("$.queries", "missing array"))?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, q) in arr.iter().enumerate() {
        let path = format!("$.queries[{i}]");
        let obj = q
            .as_object()
            .ok_or_else(|| err(&path, "expected {L, y}"))?;
        let l = parse_matrix(
            obj.get("L").ok_or_else(|| err(&path, "missing `L`"))?,
            opts,
            &format!("{path}.L"),
        )?;
        let y = parse_vector(
            obj.get("y").ok_or_else(|| err(&path, "missing `y`"))?,
            opts,
            &format!("{path}.y"),
        )?;
        if l.nrows() != prob.objective_dim() || l.ncols() != prob.decision_dim() {
            return Err(err(
                &format!("{path}.L"),
                format!(
                    "expected {}x{}, found {}x{}",
                    prob.objective_dim(),
                    prob.decision_dim(),
                    l.nrows(),
                    l.ncols()
                ),
            ));
        }
        if y.len() != prob.objective_dim() {
            return Err(err(
                &format!("{path}.y"),
                format!("expected length {}, found {}", prob.objective_dim(), y.len()),
            ));
        }
        out.push(FarkasQuery { l, y });
    }
    Ok(out)
}

/// Point sets travel as bare arrays of rational vectors; an object wrapper
/// with an explicit `dim` is also accepted (needed for the empty set).
pub fn parse_point_set(text: &str, opts: ParseOptions) -> Result<PointSet> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let (dim_hint, arr) = match &v {
        Value::Array(a) => (None, a.clone()),
        Value::Object(o) => {
            let dim = o.get("dim").and_then(Value::as_u64).map(|d| d as usize);
            let a = o
                .get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| err("$.points", "missing array"))?;
            (dim, a.clone())
        }
        _ => return Err(err("$", "expected an array of points")),
    };
    let points: Result<Vec<Vec<Rat>>> = arr
        .iter()
        .enumerate()
        .map(|(i, p)| parse_vector(p, opts, &format!("$[{i}]")))
        .collect();
    let points = points?;
    let dim = dim_hint
        .or_else(|| points.first().map(Vec::len))
        .ok_or_else(|| err("$", "cannot infer dimension of an empty point set"))?;
    PointSet::new(dim, points)
}

pub fn point_set_to_value(ps: &PointSet) -> Value {
    Value::Array(ps.points().iter().map(|p| vector_to_value(p)).collect())
}

pub fn parse_certificate(text: &str, opts: ParseOptions) -> Result<Certificate> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| err("$", "expected a certificate object"))?;
    let t = parse_matrix(
        obj.get("T").ok_or_else(|| err("$.T", "missing"))?,
        opts,
        "$.T",
    )?;
    let y_star = parse_vector(
        obj.get("y_star").ok_or_else(|| err("$.y_star", "missing"))?,
        opts,
        "$.y_star",
    )?;
    let z_star = parse_vector(
        obj.get("z_star").ok_or_else(|| err("$.z_star", "missing"))?,
        opts,
        "$.z_star",
    )?;
    let k0 = parse_vector(
        obj.get("k0").ok_or_else(|| err("$.k0", "missing"))?,
        opts,
        "$.k0",
    )?;
    Ok(Certificate { t, y_star, z_star, k0 })
}

pub fn certificate_to_value(cert: &Certificate) -> Value {
    json!({
        "T": matrix_to_value(&cert.t),
        "y_star": vector_to_value(&cert.y_star),
        "z_star": vector_to_value(&cert.z_star),
        "k0": vector_to_value(&cert.k0),
    })
}

/// A vector from a comma-separated command-line argument like `1,-1/2,3`.
pub fn parse_scalar_list(s: &str, opts: ParseOptions) -> Result<Vec<Rat>> {
    s.split(',')
        .enumerate()
        .map(|(i, part)| parse_rat(&Value::String(part.trim().into()), opts, &format!("arg[{i}]")))
        .collect()
}
