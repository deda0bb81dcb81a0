//! JSON codecs. Rationals are strings `"p/q"`; top-level documents carry
//! `"format": 1`. Decoding errors name the JSON path of the offending value.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::couple::{certify_couple, YangBaxterCouple};
use crate::cyclo::{euler_phi, format_rational, parse_rational, CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupData, Irrep};
use crate::hirai::{validate_params, HiraiParams, RawParams};
use crate::matrix::ExactMatrix;
use crate::perm::Perm;
use crate::rmatrix::{verify_rmatrix, RMatrix};
use crate::wreath::WreathElement;

pub const FORMAT_VERSION: u64 = 1;

fn join(path: &str, key: impl std::fmt::Display) -> String {
    format!("{path}.{key}")
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| Error::schema(join(path, key), "missing field"))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

fn uint(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::schema(path, "expected a non-negative integer"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::schema(path, "expected a string"))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    let s = string(v, path)?;
    parse_rational(s).ok_or_else(|| Error::schema(path, format!("{s:?} is not a rational \"p/q\"")))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// A missing `format` is read as version 1.
pub fn check_format(m: &Map<String, Value>, path: &str) -> Result<()> {
    match m.get("format") {
        None => Ok(()),
        Some(v) if v.as_u64() == Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(Error::schema(join(path, "format"), format!("unsupported format {v}"))),
    }
}

fn scalar_conductor(s: &CycloScalar) -> u32 {
    if s.is_rational() {
        1
    } else {
        s.conductor()
    }
}

pub fn scalar_to_json(s: &CycloScalar) -> Value {
    match s.as_rational() {
        Some(r) => rational_to_json(&r),
        None => json!({
            "N": s.conductor(),
            "c": s.coeffs().iter().map(rational_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn scalar_from_json(v: &Value, path: &str) -> Result<CycloScalar> {
    if v.is_string() {
        return Ok(CycloScalar::rational(rational_from_json(v, path)?));
    }
    let m = obj(v, path)?;
    let n = uint(field(m, "N", path)?, &join(path, "N"))?;
    let n = u32::try_from(n)
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::schema(join(path, "N"), "conductor must be a positive 32-bit integer"))?;
    let cp = join(path, "c");
    let coeffs = arr(field(m, "c", path)?, &cp)?
        .iter()
        .enumerate()
        .map(|(k, x)| rational_from_json(x, &format!("{cp}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != euler_phi(n) {
        return Err(Error::schema(cp, format!("expected {} coefficients for N = {n}, got {}", euler_phi(n), coeffs.len())));
    }
    CycloScalar::from_basis_coeffs(n, coeffs)
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    let conductor = m.nonzeros().fold(1u32, |acc, (_, _, s)| num_integer::lcm(acc, scalar_conductor(s)));
    let entries: Vec<Value> = m.nonzeros().map(|(i, j, s)| json!([i, j, scalar_to_json(s)])).collect();
    json!({
        "dim_rows": m.rows(),
        "dim_cols": m.cols(),
        "conductor": conductor,
        "entries": entries,
    })
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<ExactMatrix> {
    let m = obj(v, path)?;
    let rows = uint(field(m, "dim_rows", path)?, &join(path, "dim_rows"))?;
    let cols = uint(field(m, "dim_cols", path)?, &join(path, "dim_cols"))?;
    let conductor = uint(field(m, "conductor", path)?, &join(path, "conductor"))?;
    if conductor == 0 || conductor > u32::MAX as usize {
        return Err(Error::schema(join(path, "conductor"), "conductor must be a positive 32-bit integer"));
    }
    let ep = join(path, "entries");
    let mut out = ExactMatrix::zeros(rows, cols);
    let mut seen = BTreeSet::new();
    for (k, e) in arr(field(m, "entries", path)?, &ep)?.iter().enumerate() {
        let p = format!("{ep}[{k}]");
        let triple = arr(e, &p)?;
        if triple.len() != 3 {
            return Err(Error::schema(p, "expected [i, j, scalar]"));
        }
        let i = uint(&triple[0], &format!("{p}[0]"))?;
        let j = uint(&triple[1], &format!("{p}[1]"))?;
        if i >= rows || j >= cols {
            return Err(Error::schema(p, format!("index ({i}, {j}) outside {rows}x{cols}")));
        }
        if !seen.insert((i, j)) {
            return Err(Error::schema(p, format!("duplicate entry ({i}, {j})")));
        }
        let s = scalar_from_json(&triple[2], &format!("{p}[2]"))?;
        if conductor % scalar_conductor(&s) as usize != 0 {
            return Err(Error::schema(
                format!("{p}[2]"),
                format!("scalar conductor {} does not divide {conductor}", s.conductor()),
            ));
        }
        out.set(i, j, s);
    }
    Ok(out)
}

/// R-matrix file: matrix JSON plus `"d"`.
pub fn rmatrix_to_json(r: &RMatrix) -> Value {
    let mut v = json!({ "format": FORMAT_VERSION, "d": r.dim() });
    let body = matrix_to_json(r.matrix());
    v.as_object_mut().unwrap().extend(body.as_object().unwrap().clone());
    v
}

/// Decodes without certifying.
pub fn rmatrix_from_json(v: &Value, path: &str) -> Result<(ExactMatrix, usize)> {
    let m = obj(v, path)?;
    check_format(m, path)?;
    let d = uint(field(m, "d", path)?, &join(path, "d"))?;
    Ok((matrix_from_json(v, path)?, d))
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({ "name": g.name(), "order": g.order(), "table": g.table() })
}

pub fn group_from_json(v: &Value, path: &str) -> Result<FiniteGroup> {
    let m = obj(v, path)?;
    let name = string(field(m, "name", path)?, &join(path, "name"))?;
    let order = uint(field(m, "order", path)?, &join(path, "order"))?;
    let tp = join(path, "table");
    let rows = arr(field(m, "table", path)?, &tp)?;
    if rows.len() != order {
        return Err(Error::schema(tp, format!("{} rows for order {order}", rows.len())));
    }
    let mut table = Vec::with_capacity(order);
    for (a, row) in rows.iter().enumerate() {
        let rp = format!("{tp}[{a}]");
        let row = arr(row, &rp)?;
        if row.len() != order {
            return Err(Error::schema(rp, format!("{} columns for order {order}", row.len())));
        }
        let row = row
            .iter()
            .enumerate()
            .map(|(b, x)| uint(x, &format!("{rp}[{b}]")))
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    FiniteGroup::from_table(name, table)
}

pub fn irrep_to_json(r: &Irrep) -> Value {
    json!({
        "label": r.label,
        "dim": r.dim,
        "conductor": r.conductor(),
        "images": r.images.iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// Decodes without verifying irreducibility.
pub fn irrep_from_json(v: &Value, path: &str) -> Result<Irrep> {
    let m = obj(v, path)?;
    let label = string(field(m, "label", path)?, &join(path, "label"))?.to_string();
    let dim = uint(field(m, "dim", path)?, &join(path, "dim"))?;
    uint(field(m, "conductor", path)?, &join(path, "conductor"))?;
    let ip = join(path, "images");
    let images = arr(field(m, "images", path)?, &ip)?
        .iter()
        .enumerate()
        .map(|(k, x)| matrix_from_json(x, &format!("{ip}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Irrep { label, dim, images })
}

pub fn element_to_json(g: &WreathElement) -> Value {
    let colors: Map<String, Value> = g.colors().iter().map(|(p, t)| (p.to_string(), json!(t))).collect();
    json!({ "format": FORMAT_VERSION, "colors": colors, "cycles": g.perm().cycles() })
}

pub fn element_from_json(v: &Value, group: Arc<FiniteGroup>, path: &str) -> Result<WreathElement> {
    let m = obj(v, path)?;
    check_format(m, path)?;
    let cp = join(path, "colors");
    let mut colors = BTreeMap::new();
    if let Some(c) = m.get("colors") {
        for (k, x) in obj(c, &cp)? {
            let kp = join(&cp, k);
            let pos: usize = k
                .parse()
                .ok()
                .filter(|&p| p >= 1)
                .ok_or_else(|| Error::schema(&kp, "position keys are positive integers"))?;
            let t = uint(x, &kp)?;
            if t >= group.order() {
                return Err(Error::schema(kp, format!("element index {t} outside a group of order {}", group.order())));
            }
            colors.insert(pos, t);
        }
    }
    let yp = join(path, "cycles");
    let mut cycles = Vec::new();
    if let Some(c) = m.get("cycles") {
        for (k, cyc) in arr(c, &yp)?.iter().enumerate() {
            let p = format!("{yp}[{k}]");
            let cyc = arr(cyc, &p)?
                .iter()
                .enumerate()
                .map(|(i, x)| uint(x, &format!("{p}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cyc);
        }
    }
    let perm = Perm::from_cycles(&cycles).map_err(|e| Error::schema(&yp, e.to_string()))?;
    WreathElement::new(group, colors, perm).map_err(|e| Error::schema(path, e.to_string()))
}

pub fn params_to_json(p: &HiraiParams) -> Value {
    let raw = p.to_raw();
    let mut a = Map::new();
    for (label, eps, list) in &raw.a {
        let entry = a.entry(label.clone()).or_insert_with(|| json!({}));
        entry
            .as_object_mut()
            .unwrap()
            .insert(eps.to_string(), list.iter().map(rational_to_json).collect());
    }
    let mu: Map<String, Value> = raw.mu.iter().map(|(l, m)| (l.clone(), rational_to_json(m))).collect();
    json!({ "format": FORMAT_VERSION, "group": p.group().name(), "a": a, "mu": mu })
}

/// Group name plus label-keyed parameters, before validation.
pub fn raw_params_from_json(v: &Value, path: &str) -> Result<(String, RawParams)> {
    let m = obj(v, path)?;
    check_format(m, path)?;
    let group = string(field(m, "group", path)?, &join(path, "group"))?.to_string();
    let mut raw = RawParams::default();
    let ap = join(path, "a");
    if let Some(a) = m.get("a") {
        for (label, by_eps) in obj(a, &ap)? {
            let lp = join(&ap, label);
            for (eps, list) in obj(by_eps, &lp)? {
                let ep = join(&lp, eps);
                let e: u8 = match eps.as_str() {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(Error::schema(ep, "epsilon keys are \"0\" or \"1\"")),
                };
                let values = arr(list, &ep)?
                    .iter()
                    .enumerate()
                    .map(|(k, x)| rational_from_json(x, &format!("{ep}[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                raw.a.push((label.clone(), e, values));
            }
        }
    }
    let mp = join(path, "mu");
    if let Some(mu) = m.get("mu") {
        for (label, x) in obj(mu, &mp)? {
            raw.mu.push((label.clone(), rational_from_json(x, &join(&mp, label))?));
        }
    }
    Ok((group, raw))
}

/// Decodes and validates against the catalog group named in the file.
pub fn params_from_json(v: &Value, path: &str) -> Result<HiraiParams> {
    let (group, raw) = raw_params_from_json(v, path)?;
    validate_params(GroupData::catalog(&group)?, &raw)
}

pub fn couple_to_json(c: &YangBaxterCouple) -> Value {
    let mut r = rmatrix_to_json(c.r());
    r.as_object_mut().unwrap().remove("format");
    json!({
        "format": FORMAT_VERSION,
        "group": group_to_json(c.group()),
        "rmatrix": r,
        "w": c.w(),
        "pi": c.pi().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// Uncertified parts of a couple bundle.
#[derive(Clone, Debug)]
pub struct CoupleParts {
    pub group: FiniteGroup,
    pub r: ExactMatrix,
    pub d: usize,
    pub w: usize,
    pub pi: Vec<ExactMatrix>,
}

pub fn couple_parts_from_json(v: &Value, path: &str) -> Result<CoupleParts> {
    let m = obj(v, path)?;
    check_format(m, path)?;
    let group = group_from_json(field(m, "group", path)?, &join(path, "group"))?;
    let (r, d) = rmatrix_from_json(field(m, "rmatrix", path)?, &join(path, "rmatrix"))?;
    let w = uint(field(m, "w", path)?, &join(path, "w"))?;
    let pp = join(path, "pi");
    let pi = arr(field(m, "pi", path)?, &pp)?
        .iter()
        .enumerate()
        .map(|(k, x)| matrix_from_json(x, &format!("{pp}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoupleParts { group, r, d, w, pi })
}

impl CoupleParts {
    pub fn certify(self) -> Result<YangBaxterCouple> {
        let r = verify_rmatrix(self.r, self.d)?;
        certify_couple(Arc::new(self.group), r, self.pi, self.w)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Parses text; syntax errors become schema errors located at `origin:line:column`.
pub fn parse_json(text: &str, origin: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::schema(
            format!("{origin}:{}:{}", e.line(), e.column()),
            e.to_string(),
        )
    })
}
