//! JSON configuration documents with exact rational entries.
//!
//! ```json
//! {
//!   "lines": [
//!     {"point": ["1", "0", "0", "0"], "point2": ["0", "1", "0", "1"]},
//!     {"plucker": ["0", "0", "0", "1", "0", "0"]}
//!   ],
//!   "spheres": [{"center": ["0", "0", "1"], "r2": "1"}],
//!   "quadric": {"symmetric": ["1", "0", "0", "0", "1", "0", "0", "1", "0", "-1"]},
//!   "mode": "affine"
//! }
//! ```
//!
//! Numbers are decimal or fraction strings; integer literals are accepted too.

use serde_json::{Map, Value};

use crate::configurations::Configuration;
use crate::projgeom::{FrameMode, LinePair, PluckerLine, ProjPoint};
use crate::quadrics::{sphere_to_quadric, Quadric, Sphere};
use crate::scalar::{parse_rational, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum LineInput {
    Points(ProjPoint, ProjPoint),
    Plucker(PluckerLine),
}

impl LineInput {
    pub fn plucker(&self) -> Result<PluckerLine> {
        match self {
            LineInput::Points(p, q) => crate::projgeom::plucker_from_points(p, q),
            LineInput::Plucker(l) => Ok(l.clone()),
        }
    }

    pub fn points(&self) -> (ProjPoint, ProjPoint) {
        match self {
            LineInput::Points(p, q) => (p.clone(), q.clone()),
            LineInput::Plucker(l) => l.spanning_points(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub name: Option<String>,
    pub lines: Vec<LineInput>,
    pub spheres: Vec<Sphere>,
    pub quadric: Option<Quadric>,
    pub mode: Option<FrameMode>,
}

fn bad(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{path}: {msg}"))
}

fn number(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_rational(s).map(Scalar::from_rational).map_err(|e| bad(path, e)),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().unwrap())),
        Value::Number(n) => Err(bad(path, format!("{n} is not exact; write it as a string such as \"{n}\""))),
        other => Err(bad(path, format!("expected a rational string, found {}", kind(other)))),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn numbers<const N: usize>(v: &Value, path: &str) -> Result<[Scalar; N]> {
    let arr = v.as_array().ok_or_else(|| bad(path, format!("expected an array, found {}", kind(v))))?;
    if arr.len() != N {
        return Err(bad(path, format!("expected {N} entries, found {}", arr.len())));
    }
    let out: Vec<Scalar> = arr.iter().enumerate().map(|(i, x)| number(x, &format!("{path}[{i}]"))).collect::<Result<_>>()?;
    Ok(out.try_into().expect("length checked"))
}

fn object<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v.as_object().ok_or_else(|| bad(path, format!("expected an object, found {}", kind(v))))?;
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(bad(path, format!("unknown field `{k}`, expected one of {}", allowed.join(", "))));
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(path, format!("missing field `{key}`")))
}

fn line(v: &Value, path: &str) -> Result<LineInput> {
    let obj = object(v, path, &["point", "point2", "plucker"])?;
    if let Some(p) = obj.get("plucker") {
        if obj.contains_key("point") || obj.contains_key("point2") {
            return Err(bad(path, "give either `plucker` or `point` and `point2`"));
        }
        let l = PluckerLine::new(numbers::<6>(p, &format!("{path}.plucker"))?)
            .map_err(|e| bad(&format!("{path}.plucker"), e))?;
        return Ok(LineInput::Plucker(l));
    }
    let pt = |key: &str| -> Result<ProjPoint> {
        let p = format!("{path}.{key}");
        ProjPoint::new(numbers::<4>(field(obj, key, path)?, &p)?).map_err(|e| bad(&p, e))
    };
    let (p, q) = (pt("point")?, pt("point2")?);
    if crate::scalar::proportional(&p.0, &q.0) {
        return Err(Error::PointsCoincide);
    }
    Ok(LineInput::Points(p, q))
}

fn sphere(v: &Value, path: &str) -> Result<Sphere> {
    let obj = object(v, path, &["center", "r2"])?;
    let c = numbers::<3>(field(obj, "center", path)?, &format!("{path}.center"))?;
    let r2 = number(field(obj, "r2", path)?, &format!("{path}.r2"))?;
    Sphere::new(c, r2).map_err(|e| bad(&format!("{path}.r2"), e))
}

fn quadric(v: &Value, path: &str) -> Result<Quadric> {
    let obj = object(v, path, &["symmetric"])?;
    let labels = numbers::<10>(field(obj, "symmetric", path)?, &format!("{path}.symmetric"))?;
    Quadric::from_labels(&labels).map_err(|e| bad(&format!("{path}.symmetric"), e))
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("JSON: {e}")))?;
        let obj = object(&v, "document", &["name", "lines", "spheres", "quadric", "mode"])?;
        let mut doc = Document::default();
        if let Some(n) = obj.get("name") {
            doc.name = Some(n.as_str().ok_or_else(|| bad("name", "expected a string"))?.to_string());
        }
        if let Some(ls) = obj.get("lines") {
            let arr = ls.as_array().ok_or_else(|| bad("lines", "expected an array"))?;
            doc.lines = arr.iter().enumerate().map(|(i, l)| line(l, &format!("lines[{i}]"))).collect::<Result<_>>()?;
        }
        if let Some(ss) = obj.get("spheres") {
            let arr = ss.as_array().ok_or_else(|| bad("spheres", "expected an array"))?;
            doc.spheres =
                arr.iter().enumerate().map(|(i, s)| sphere(s, &format!("spheres[{i}]"))).collect::<Result<_>>()?;
        }
        if let Some(q) = obj.get("quadric") {
            doc.quadric = Some(quadric(q, "quadric")?);
        }
        if let Some(m) = obj.get("mode") {
            doc.mode = Some(parse_mode(m.as_str().ok_or_else(|| bad("mode", "expected a string"))?)?);
        }
        Ok(doc)
    }

    pub fn line_pair(&self) -> Result<LinePair> {
        let [l1, l2] = self.lines.as_slice() else {
            return Err(bad("lines", format!("expected 2 lines, found {}", self.lines.len())));
        };
        let (a, b) = l1.points();
        let (c, d) = l2.points();
        LinePair::from_points(a, b, c, d)
    }

    pub fn configuration(&self) -> Result<Configuration> {
        let [s1, s2] = self.spheres.as_slice() else {
            return Err(bad("spheres", format!("expected 2 spheres, found {}", self.spheres.len())));
        };
        Configuration::new(self.line_pair()?, s1.clone(), s2.clone(), self.mode)
    }

    /// The quadric, or the matrix of the only sphere.
    pub fn single_quadric(&self) -> Result<Quadric> {
        match (&self.quadric, self.spheres.as_slice()) {
            (Some(q), []) => Ok(q.clone()),
            (None, [s]) => Ok(sphere_to_quadric(s)),
            _ => Err(bad("document", "expected one `quadric` or exactly one sphere")),
        }
    }
}

pub fn parse_mode(s: &str) -> Result<FrameMode> {
    match s {
        "affine" => Ok(FrameMode::Affine),
        "projective" => Ok(FrameMode::Projective),
        other => Err(bad("mode", format!("expected `affine` or `projective`, found `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_configuration() {
        let doc = Document::parse(
            r#"{"lines": [{"point": ["1","0","0","0"], "point2": ["0","1","0","1"]},
                          {"point": ["1","0","1","0"], "point2": ["0","1","0","0"]}],
                "spheres": [{"center": ["0","0","1"], "r2": "1"}, {"center": ["0","0","-1"], "r2": "1"}]}"#,
        )
        .unwrap();
        let cfg = doc.configuration().unwrap();
        assert_eq!(cfg.mode, FrameMode::Affine);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let e = Document::parse(r#"{"spheres": [{"center": ["0","x","1"], "r2": "1"}]}"#).unwrap_err();
        assert!(e.to_string().contains("spheres[0].center[1]"), "{e}");
        let e = Document::parse(r#"{"spheres": [{"center": [0, 0.5, 1], "r2": "1"}]}"#).unwrap_err();
        assert!(e.to_string().contains("not exact"), "{e}");
        let e = Document::parse(r#"{"lines": [{"point": ["1","0","0"]}]}"#).unwrap_err();
        assert!(e.to_string().contains("expected 4 entries"), "{e}");
        assert!(Document::parse("{").unwrap_err().to_string().contains("line 1"));
    }

    #[test]
    fn plucker_lines_and_quadrics() {
        let doc = Document::parse(
            r#"{"lines": [{"plucker": ["1","0","0","0","0","0"]}, {"plucker": ["0","0","0","0","0","1"]}],
                "quadric": {"symmetric": ["1","0","0","0","1","0","0","1","0","-1"]}}"#,
        )
        .unwrap();
        assert_eq!(doc.line_pair().unwrap().l1, LinePair::canonical().l1);
        assert!(doc.single_quadric().is_ok());
    }
}
