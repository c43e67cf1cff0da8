//! JSON forms of specs, points, descriptors, types, medians and group
//! elements. Scalars are written as decimal strings (`p/q` when the decimal
//! does not terminate) and read from strings or plain JSON numbers.

use serde_json::{json, Value};

use crate::conelab::GroupElement;
use crate::geom::{Median, PiecePlacement};
use crate::pieces::{CanonicalPair, Norm, PieceError, PiecePoint, PieceSpec, PlaneSpec, TreeWord};
use crate::qtypes::{QType, QTypeError, TypeInterval, TypeOf};
use crate::scalar::Scalar;
use crate::treeprod::{Alpha, Descriptor, Step, Violation, ViolationKind};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    /// Well-formed input describing an invalid object.
    #[error("{0}")]
    Invalid(Violation),
    #[error("invalid type: {0}")]
    Type(#[from] QTypeError),
}

impl JsonError {
    pub fn is_validation(&self) -> bool {
        matches!(self, JsonError::Invalid(_) | JsonError::Type(_))
    }
}

fn shape(msg: impl Into<String>) -> JsonError {
    JsonError::Shape(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| shape(format!("missing field `{key}`")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, JsonError> {
    field(v, key)?.as_str().ok_or_else(|| shape(format!("`{key}` must be a string")))
}

pub fn scalar_to_json<S: Scalar>(s: &S) -> Value {
    Value::String(s.to_decimal_string())
}

pub fn scalar_from_json<S: Scalar>(v: &Value) -> Result<S, JsonError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(shape("scalars are strings or numbers")),
    };
    S::parse_decimal(&text).map_err(|e| shape(e.to_string()))
}

pub fn spec_to_json(spec: &PieceSpec) -> Value {
    match spec {
        PieceSpec::Plane(p) => json!({"model": "plane", "dim": p.dim, "norm": p.norm.to_string()}),
        PieceSpec::Tree => json!({"model": "tree"}),
    }
}

pub fn spec_from_json(v: &Value) -> Result<PieceSpec, JsonError> {
    match str_field(v, "model")? {
        "tree" => Ok(PieceSpec::Tree),
        "plane" => {
            let dim = field(v, "dim")?.as_u64().ok_or_else(|| shape("`dim` must be a positive integer"))?;
            let norm: Norm = str_field(v, "norm")?.parse().map_err(shape)?;
            Ok(PieceSpec::Plane(PlaneSpec::new(dim as usize, norm)))
        }
        other => Err(shape(format!("unknown model `{other}`"))),
    }
}

fn plane_spec_from_json(v: &Value) -> Result<PlaneSpec, JsonError> {
    match spec_from_json(v)? {
        PieceSpec::Plane(p) => Ok(p),
        PieceSpec::Tree => Err(shape("piece steps need a plane spec")),
    }
}

pub fn point_to_json<S: Scalar>(p: &PiecePoint<S>) -> Value {
    match p {
        PiecePoint::Plane(c) => Value::Array(c.iter().map(scalar_to_json).collect()),
        PiecePoint::Tree(w) => Value::Array(
            w.letters().iter().map(|(l, len)| json!([l, scalar_to_json(len)])).collect(),
        ),
    }
}

/// Reads a point of `spec`. Tree words must already be reduced; the error
/// is returned separately so callers can report it as a validation failure.
pub fn point_from_json<S: Scalar>(
    spec: &PieceSpec,
    v: &Value,
) -> Result<Result<PiecePoint<S>, PieceError>, JsonError> {
    let items = v.as_array().ok_or_else(|| shape("points are arrays"))?;
    match spec {
        PieceSpec::Plane(_) => {
            let coords = items.iter().map(scalar_from_json).collect::<Result<Vec<S>, _>>()?;
            Ok(Ok(PiecePoint::Plane(coords)))
        }
        PieceSpec::Tree => {
            let mut letters = Vec::with_capacity(items.len());
            for item in items {
                let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| shape("tree letters are [label, length]"))?;
                let label = pair[0].as_str().ok_or_else(|| shape("tree labels are strings"))?;
                letters.push((label.to_owned(), scalar_from_json(&pair[1])?));
            }
            Ok(TreeWord::new(letters).map(PiecePoint::Tree))
        }
    }
}

fn strict_point<S: Scalar>(spec: &PieceSpec, v: &Value) -> Result<PiecePoint<S>, JsonError> {
    point_from_json(spec, v)?.map_err(|e| shape(e.to_string()))
}

pub fn alpha_to_json(alpha: &Alpha) -> Value {
    match alpha {
        Alpha::Tree => json!({"kind": "tree"}),
        Alpha::Piece { spec, copy } => {
            json!({"kind": "piece", "spec": spec_to_json(&PieceSpec::Plane(*spec)), "copy": copy})
        }
    }
}

pub fn alpha_from_json(v: &Value) -> Result<Alpha, JsonError> {
    match str_field(v, "kind")? {
        "tree" => Ok(Alpha::Tree),
        "piece" => Ok(Alpha::piece(plane_spec_from_json(field(v, "spec")?)?, str_field(v, "copy")?)),
        other => Err(shape(format!("unknown step kind `{other}`"))),
    }
}

pub fn step_to_json<S: Scalar>(step: &Step<S>) -> Value {
    let mut m = match alpha_to_json(step.alpha()) {
        Value::Object(m) => m,
        _ => unreachable!("alphas are objects"),
    };
    m.insert("entry".into(), point_to_json(step.entry()));
    m.insert("exit".into(), point_to_json(step.exit()));
    Value::Object(m)
}

pub fn descriptor_to_json<S: Scalar>(f: &Descriptor<S>) -> Value {
    json!({"steps": f.steps().iter().map(step_to_json).collect::<Vec<_>>()})
}

pub fn descriptor_from_json<S: Scalar>(v: &Value) -> Result<Descriptor<S>, JsonError> {
    let items = field(v, "steps")?.as_array().ok_or_else(|| shape("`steps` must be an array"))?;
    let mut steps = Vec::with_capacity(items.len());
    for (index, item) in items.iter().enumerate() {
        let invalid = |e: PieceError| JsonError::Invalid(Violation { index, kind: ViolationKind::InvalidStep(e) });
        let alpha = alpha_from_json(item)?;
        let spec = alpha.spec();
        let entry = point_from_json(&spec, field(item, "entry")?)?.map_err(invalid)?;
        let exit = point_from_json(&spec, field(item, "exit")?)?.map_err(invalid)?;
        steps.push(Step::new(alpha, entry, exit).map_err(invalid)?);
    }
    Descriptor::new(steps).map_err(JsonError::Invalid)
}

pub fn parse_descriptor<S: Scalar>(text: &str) -> Result<Descriptor<S>, JsonError> {
    descriptor_from_json(&serde_json::from_str::<Value>(text)?)
}

pub fn cpair_to_json<S: Scalar>(c: &CanonicalPair<S>) -> Value {
    json!({"spec": spec_to_json(&c.spec), "from": point_to_json(&c.from), "to": point_to_json(&c.to)})
}

pub fn cpair_from_json<S: Scalar>(v: &Value) -> Result<CanonicalPair<S>, JsonError> {
    let spec = spec_from_json(field(v, "spec")?)?;
    Ok(CanonicalPair {
        spec,
        from: strict_point(&spec, field(v, "from")?)?,
        to: strict_point(&spec, field(v, "to")?)?,
    })
}

pub fn qtype_to_json<S: Scalar>(t: &QType<S>) -> Value {
    let intervals: Vec<Value> = t
        .intervals
        .iter()
        .map(|iv| json!({"a": scalar_to_json(&iv.a), "b": scalar_to_json(&iv.b), "cpair": cpair_to_json(&iv.cpair)}))
        .collect();
    json!({"total": scalar_to_json(&t.total), "intervals": intervals})
}

pub fn qtype_from_json<S: Scalar>(v: &Value) -> Result<QType<S>, JsonError> {
    let total = scalar_from_json(field(v, "total")?)?;
    let items = field(v, "intervals")?.as_array().ok_or_else(|| shape("`intervals` must be an array"))?;
    let intervals = items
        .iter()
        .map(|iv| {
            Ok(TypeInterval {
                a: scalar_from_json(field(iv, "a")?)?,
                b: scalar_from_json(field(iv, "b")?)?,
                cpair: cpair_from_json(field(iv, "cpair")?)?,
            })
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(QType::new(total, intervals)?)
}

pub fn type_of_to_json<S: Scalar>(t: &TypeOf<S>) -> Value {
    match t {
        TypeOf::Trivial => json!({"kind": "trivial"}),
        TypeOf::NonLimit => json!({"kind": "nonlimit"}),
        TypeOf::Limit(q) => json!({"kind": "limit", "type": qtype_to_json(q)}),
    }
}

pub fn median_to_json<S: Scalar>(m: &Median<S>) -> Value {
    match m {
        Median::Point(p) => json!({"kind": "point", "at": descriptor_to_json(p)}),
        Median::Gates { placement, gates } => json!({
            "kind": "gates",
            "prefix": descriptor_to_json(&placement.prefix),
            "alpha": alpha_to_json(&placement.alpha),
            "entry": point_to_json(&placement.entry),
            "gates": gates.iter().map(point_to_json).collect::<Vec<_>>(),
        }),
    }
}

/// `entry` is the point where the piece is attached to `prefix`. It may
/// be omitted, in which case the first gate is used.
pub fn median_from_json<S: Scalar>(v: &Value) -> Result<Median<S>, JsonError> {
    match str_field(v, "kind")? {
        "point" => Ok(Median::Point(descriptor_from_json(field(v, "at")?)?)),
        "gates" => {
            let prefix = descriptor_from_json(field(v, "prefix")?)?;
            let alpha = alpha_from_json(field(v, "alpha")?)?;
            let spec = alpha.spec();
            let items = field(v, "gates")?.as_array().filter(|a| a.len() == 3).ok_or_else(|| shape("three gates"))?;
            let g = |i: usize| strict_point::<S>(&spec, &items[i]);
            let gates = [g(0)?, g(1)?, g(2)?];
            let entry = match v.get("entry") {
                Some(e) => strict_point(&spec, e)?,
                None => gates[0].clone(),
            };
            let placement = PiecePlacement { prefix, alpha, entry };
            Ok(Median::Gates { placement, gates })
        }
        other => Err(shape(format!("unknown median kind `{other}`"))),
    }
}

pub fn group_element_to_json(g: &GroupElement) -> Value {
    Value::String(g.to_string())
}

pub fn group_element_from_json(v: &Value) -> Result<GroupElement, JsonError> {
    let s = v.as_str().ok_or_else(|| shape("group elements are strings"))?;
    s.parse().map_err(|e: crate::conelab::group::WordParseError| shape(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::median;
    use crate::sample::{SampleConfig, Sampler};
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn parses_the_documented_layout() {
        let text = r#"{"steps":[
            {"kind":"tree","entry":[],"exit":[["A","2"]]},
            {"kind":"piece","spec":{"model":"plane","dim":2,"norm":"L1"},"copy":"p","entry":["0","0"],"exit":["1",1]}
        ]}"#;
        let f: Descriptor<Q> = parse_descriptor(text).unwrap();
        assert_eq!(f.total_length(), Q::from_int(4));
        let back: Descriptor<Q> = descriptor_from_json(&descriptor_to_json(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn separates_syntax_from_validity() {
        assert!(matches!(parse_descriptor::<Q>("{"), Err(JsonError::Syntax(_))));
        assert!(matches!(parse_descriptor::<Q>(r#"{"steps":[{"kind":"x"}]}"#), Err(JsonError::Shape(_))));
        let p4 = r#"{"steps":[
            {"kind":"piece","spec":{"model":"plane","dim":2,"norm":"L1"},"copy":"c","entry":["0","0"],"exit":["1","0"]},
            {"kind":"piece","spec":{"model":"plane","dim":2,"norm":"L1"},"copy":"c","entry":["1","0"],"exit":["2","0"]}
        ]}"#;
        match parse_descriptor::<Q>(p4) {
            Err(JsonError::Invalid(v)) => assert_eq!(v.index, 1),
            other => panic!("{other:?}"),
        }
        let unreduced = r#"{"steps":[{"kind":"tree","entry":[],"exit":[["A","1"],["A","1"]]}]}"#;
        assert!(parse_descriptor::<Q>(unreduced).unwrap_err().is_validation());
    }

    #[test]
    fn round_trips() {
        let mut s = Sampler::<Q>::new(3, SampleConfig::exact());
        for _ in 0..200 {
            let (f, g, h) = s.triple();
            let back: Descriptor<Q> = descriptor_from_json(&descriptor_to_json(&f)).unwrap();
            assert_eq!(back, f);
            let m = median(&f, &g, &h);
            assert_eq!(median_from_json::<Q>(&median_to_json(&m)).unwrap(), m);
            let t = s.qtype();
            assert_eq!(qtype_from_json::<Q>(&qtype_to_json(&t)).unwrap(), t);
        }
        let mut s = Sampler::<f64>::new(4, SampleConfig::float());
        for _ in 0..200 {
            let f = s.descriptor();
            let back: Descriptor<f64> = descriptor_from_json(&descriptor_to_json(&f)).unwrap();
            assert_eq!(back, f);
        }
        let g: GroupElement = "a^3 b^-2 t^5 a".parse().unwrap();
        assert_eq!(group_element_from_json(&group_element_to_json(&g)).unwrap(), g);
    }
}
