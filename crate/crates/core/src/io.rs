//! JSON input for representations and complexes; CSV and JSON output for
//! bars, Jordan blocks, configurations and polynomials.

use serde_json::{json, Map, Value};

use crate::complex::{CircleMap, IntervalMap, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::invariants::{polynomial, ConfigPoint, Configuration, Space};
use crate::pipeline::MapKind;
use crate::quiver::{Decomposition, GRep};

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    Rep(GRep),
    Complex { complex: SimplicialComplex, map: MapKind, field: Field },
}

fn bad(field: &str, what: impl std::fmt::Display) -> Error {
    Error::Input(format!("{field}: {what}"))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(key, "missing"))
}

fn nat(v: &Value, name: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad(name, "expected a non-negative integer"))
}

fn array<'a>(v: &'a Value, name: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(name, "expected an array"))
}

fn nat_list(v: &Value, name: &str) -> Result<Vec<usize>> {
    array(v, name)?.iter().enumerate().map(|(i, x)| nat(x, &format!("{name}[{i}]"))).collect()
}

fn real(v: &Value, name: &str) -> Result<f64> {
    let x = match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    };
    x.filter(|x: &f64| x.is_finite()).ok_or_else(|| bad(name, "expected a decimal number"))
}

fn real_list(v: &Value, name: &str) -> Result<Vec<f64>> {
    array(v, name)?.iter().enumerate().map(|(i, x)| real(x, &format!("{name}[{i}]"))).collect()
}

/// `{"prime": p}` or `"rational"`.
pub fn parse_field(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => Field::parse(s),
        Value::Object(o) => {
            let p = o.get("prime").and_then(Value::as_u64).ok_or_else(|| bad("field", "expected {\"prime\": p}"))?;
            Field::prime(p as u32)
        }
        _ => Err(bad("field", "expected {\"prime\": p} or \"rational\"")),
    }
}

fn scalar(field: Field, v: &Value, name: &str) -> Result<Scalar> {
    match v {
        Value::Number(n) => n.as_i64().map(|k| field.from_i64(k)).ok_or_else(|| bad(name, "expected an integer")),
        Value::String(s) => Scalar::parse(field, s).map_err(|_| bad(name, format!("cannot parse {s:?}"))),
        _ => Err(bad(name, "expected an integer or an \"a/b\" string")),
    }
}

fn matrix(field: Field, v: &Value, rows: usize, cols: usize, name: &str) -> Result<Matrix> {
    let entries = array(v, name)?;
    if entries.len() != rows * cols {
        return Err(bad(name, format!("expected {rows}×{cols} = {} row-major entries, got {}", rows * cols, entries.len())));
    }
    let data = entries.iter().enumerate().map(|(i, x)| scalar(field, x, &format!("{name}[{i}]"))).collect::<Result<_>>()?;
    Matrix::from_entries(field, rows, cols, data)
}

fn resolve_field(obj: &Map<String, Value>, flag: Option<Field>) -> Result<Field> {
    match (flag, obj.get("field")) {
        (Some(f), _) => Ok(f),
        (None, Some(v)) => parse_field(v),
        (None, None) => Err(bad("field", "missing (give it in the file or with --field)")),
    }
}

fn parse_rep(obj: &Map<String, Value>, field: Field) -> Result<GRep> {
    let m = nat(get(obj, "m")?, "m")?;
    if m == 0 {
        return Err(bad("m", "must be positive"));
    }
    let degree = obj.get("degree").map_or(Ok(0), |v| nat(v, "degree"))?;
    let dims = nat_list(get(obj, "dims")?, "dims")?;
    if dims.len() != 2 * m {
        return Err(bad("dims", format!("expected 2m = {} entries, got {}", 2 * m, dims.len())));
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let (a, b) = (array(get(obj, "alpha")?, "alpha")?, array(get(obj, "beta")?, "beta")?);
    for (name, list) in [("alpha", a), ("beta", b)] {
        if list.len() != m {
            return Err(bad(name, format!("expected m = {m} matrices, got {}", list.len())));
        }
    }
    for i in 0..m {
        // α_i: V_{2i−1} → V_{2i}, β_i: V_{2i+1} → V_{2i}
        let (src_a, dst, src_b) = (dims[2 * i], dims[2 * i + 1], dims[(2 * i + 2) % (2 * m)]);
        alpha.push(matrix(field, &a[i], dst, src_a, &format!("alpha[{i}]"))?);
        beta.push(matrix(field, &b[i], dst, src_b, &format!("beta[{i}]"))?);
    }
    let angles = obj.get("angles").map(|v| real_list(v, "angles")).transpose()?;
    GRep::new(field, m, degree, dims, alpha, beta, angles)
}

fn parse_complex(obj: &Map<String, Value>) -> Result<(SimplicialComplex, MapKind)> {
    let n = nat(get(obj, "vertices")?, "vertices")?;
    let simplices = array(get(obj, "simplices")?, "simplices")?;
    let mut gens = Vec::new();
    for (i, s) in simplices.iter().enumerate() {
        let name = format!("simplices[{i}]");
        let s = nat_list(s, &name)?;
        if let Some(v) = s.iter().find(|&&v| v >= n) {
            return Err(bad(&name, format!("vertex {v} is not below vertices = {n}")));
        }
        gens.push(s);
    }
    gens.extend((0..n).map(|v| vec![v]));
    let complex = SimplicialComplex::new(gens).map_err(|e| bad("simplices", e))?;
    let image = nat_list(get(obj, "vertex_image")?, "vertex_image")?;
    if image.len() != n {
        return Err(bad("vertex_image", format!("expected {n} entries, got {}", image.len())));
    }
    let map = match (obj.get("circle_m"), obj.get("interval_k")) {
        (Some(m), None) => {
            let angles = obj.get("angles").map(|v| real_list(v, "angles")).transpose()?;
            MapKind::Circle(CircleMap::new(nat(m, "circle_m")?, angles, image)?)
        }
        (None, Some(k)) => {
            let values = obj.get("values").map(|v| real_list(v, "values")).transpose()?;
            MapKind::Real(IntervalMap::new(nat(k, "interval_k")?, values, image)?)
        }
        _ => return Err(bad("circle_m", "give exactly one of circle_m and interval_k")),
    };
    Ok((complex, map))
}

/// Parses a representation or complex JSON document. `flag` overrides the
/// field named in the file.
pub fn parse_input(text: &str, flag: Option<Field>) -> Result<Input> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("not valid JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| Error::Input("top level: expected an object".into()))?;
    let field = resolve_field(obj, flag)?;
    if obj.contains_key("simplices") {
        let (complex, map) = parse_complex(obj)?;
        Ok(Input::Complex { complex, map, field })
    } else if obj.contains_key("alpha") {
        Ok(Input::Rep(parse_rep(obj, field)?))
    } else {
        Err(Error::Input("top level: expected \"alpha\" (representation) or \"simplices\" (complex)".into()))
    }
}

fn field_json(field: Field) -> Value {
    match field {
        Field::Prime(p) => json!({ "prime": p }),
        Field::Rational => json!("rational"),
    }
}

/// The complex JSON document read by [`parse_input`]. The complex must be
/// labelled `0..n`.
pub fn complex_json(complex: &SimplicialComplex, map: &MapKind, field: Field) -> Value {
    let simplices: Vec<Vec<usize>> = complex.facets();
    let mut doc = json!({
        "field": field_json(field),
        "vertices": complex.n_vertices(),
        "simplices": simplices,
    });
    let obj = doc.as_object_mut().unwrap();
    match map {
        MapKind::Circle(f) => {
            obj.insert("circle_m".into(), json!(f.m));
            obj.insert("angles".into(), json!(f.angles.iter().map(|&x| decimal(x)).collect::<Vec<_>>()));
            obj.insert("vertex_image".into(), json!(f.vertex_image));
        }
        MapKind::Real(g) => {
            obj.insert("interval_k".into(), json!(g.k));
            obj.insert("values".into(), json!(g.values.iter().map(|&x| decimal(x)).collect::<Vec<_>>()));
            obj.insert("vertex_image".into(), json!(g.vertex_image));
        }
    }
    doc
}

/// The representation JSON document read by [`parse_input`].
pub fn rep_json(rho: &GRep) -> Value {
    let flat = |a: &Matrix| a.entries().iter().map(|s| Value::String(s.to_string())).collect::<Vec<_>>();
    json!({
        "field": field_json(rho.field),
        "m": rho.m,
        "degree": rho.degree,
        "dims": rho.dims,
        "alpha": rho.alpha.iter().map(flat).collect::<Vec<_>>(),
        "beta": rho.beta.iter().map(flat).collect::<Vec<_>>(),
        "angles": rho.angles.iter().map(|&x| decimal(x)).collect::<Vec<_>>(),
    })
}

/// Decimal with 15 significant digits and no trailing zeros.
pub fn decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let s = format!("{:.*}", (14 - mag).max(0) as usize, x);
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn bars_csv(decomps: &[&Decomposition]) -> String {
    let mut out = String::from("degree,left,right,left_closed,right_closed,wraps,mult\n");
    for d in decomps {
        for b in &d.bars {
            out += &format!(
                "{},{},{},{},{},{},{}\n",
                b.degree,
                decimal(b.left),
                decimal(b.right),
                b.left_closed(),
                b.right_closed(),
                b.wraps,
                b.multiplicity
            );
        }
    }
    out
}

pub fn jordans_csv(decomps: &[&Decomposition]) -> String {
    let mut out = String::from("degree,poly,power,mult\n");
    for d in decomps {
        for j in &d.jordans {
            out += &format!("{},{},{},{}\n", j.degree, j.block.poly.pretty(), j.block.power, j.multiplicity);
        }
    }
    out
}

fn space_name(s: Space) -> &'static str {
    match s {
        Space::Torus => "torus",
        Space::Plane => "plane",
    }
}

pub fn configurations_csv(configs: &[&Configuration]) -> String {
    let mut out = String::from("degree,a,b,mult,space\n");
    for c in configs {
        for p in &c.points {
            out += &format!("{},{},{},{},{}\n", c.degree, decimal(p.a), decimal(p.b), p.mult, space_name(c.space));
        }
    }
    out
}

/// Reads a configuration CSV; returns one configuration per degree present.
pub fn parse_configurations(text: &str) -> Result<Vec<Configuration>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Input("configuration CSV: empty".into()))?;
    if header.trim() != "degree,a,b,mult,space" {
        return Err(Error::Input(format!("configuration CSV header: expected degree,a,b,mult,space, got {header:?}")));
    }
    let mut out: Vec<Configuration> = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2;
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 5 {
            return Err(Error::Input(format!("line {row}: expected 5 fields")));
        }
        let num = |s: &str, what: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Input(format!("line {row}: {what} {s:?} is not a number")))
        };
        let degree: usize = f[0].parse().map_err(|_| Error::Input(format!("line {row}: bad degree {:?}", f[0])))?;
        let mult: usize = f[3].parse().map_err(|_| Error::Input(format!("line {row}: bad mult {:?}", f[3])))?;
        let space = match f[4] {
            "torus" => Space::Torus,
            "plane" => Space::Plane,
            s => return Err(Error::Input(format!("line {row}: unknown space {s:?}"))),
        };
        let point = ConfigPoint { ia: 0, ib: 0, a: num(f[1], "a")?, b: num(f[2], "b")?, mult };
        match out.iter_mut().find(|c| c.degree == degree) {
            Some(c) if c.space != space => return Err(Error::Input(format!("line {row}: mixed spaces in degree {degree}"))),
            Some(c) => c.points.push(point),
            None => out.push(Configuration { degree, space, points: vec![point] }),
        }
    }
    Ok(out)
}

/// `{"degree": n, "coeffs": [[re, im], …]}`, constant term first.
pub fn polynomial_json(c: &Configuration) -> Value {
    let coeffs: Vec<[f64; 2]> = polynomial(c).iter().map(|z| [clean(z.re), clean(z.im)]).collect();
    json!({ "degree": coeffs.len() - 1, "coeffs": coeffs })
}

/// Rounds away float noise below `1e-12` relative to one.
fn clean(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_formatting() {
        assert_eq!(decimal(0.0), "0");
        assert_eq!(decimal(-0.0), "0");
        assert_eq!(decimal(1.0), "1");
        assert_eq!(decimal(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(decimal(-0.25), "-0.25");
    }

    #[test]
    fn rep_errors_name_the_field() {
        let doc = r#"{"field":{"prime":5},"m":1,"dims":[1,1],"alpha":[[1]],"beta":[[1,2]]}"#;
        let err = parse_input(doc, None).unwrap_err().to_string();
        assert!(err.contains("beta[0]"), "{err}");
        let err = parse_input(r#"{"m":1}"#, None).unwrap_err().to_string();
        assert!(err.contains("field"), "{err}");
    }

    #[test]
    fn complex_round_trip() {
        let doc = r#"{"field":"rational","vertices":3,"simplices":[[0,1],[1,2],[0,2]],"circle_m":3,"vertex_image":[0,1,2]}"#;
        match parse_input(doc, None).unwrap() {
            Input::Complex { complex, field, .. } => {
                assert_eq!(complex.count(1), 3);
                assert_eq!(field, Field::Rational);
            }
            Input::Rep(_) => panic!("parsed as a representation"),
        }
    }

    #[test]
    fn configuration_csv_round_trip() {
        let c = Configuration {
            degree: 1,
            space: Space::Torus,
            points: vec![ConfigPoint { ia: 1, ib: 2, a: 0.5, b: 1.25, mult: 2 }],
        };
        let back = parse_configurations(&configurations_csv(&[&c])).unwrap();
        assert_eq!(back[0].expanded(), c.expanded());
    }
}
