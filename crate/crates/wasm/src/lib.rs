//! Browser bindings: every entry point takes and returns JSON text.

use serde_json::{json, Value};
use transtan_core::classify22::{classify, normal_form, NormalFormKind};
use transtan_core::configurations::classify_configuration;
use transtan_core::envelope::phi;
use transtan_core::input::Document;
use transtan_core::plot::plot_data;
use transtan_core::projgeom::LinePair;
use transtan_core::quadrics::Quadric;
use transtan_core::report::{classification_json, fiber_json, num};
use transtan_core::{parse_rational, Scalar};
use wasm_bindgen::prelude::*;

const DIGITS: usize = 8;

fn rational(name: &str, v: &str) -> Result<Scalar, String> {
    parse_rational(v.trim()).map(Scalar::from_rational).map_err(|e| format!("{name}: {e}"))
}

pub fn classify_document(text: &str) -> Result<String, String> {
    let doc = Document::parse(text).map_err(|e| e.to_string())?;
    let cfg = doc.configuration().map_err(|e| e.to_string())?;
    let rep = classify_configuration(&cfg).map_err(|e| e.to_string())?;
    Ok(classification_json(&cfg, &rep, DIGITS).to_string())
}

/// `x² + (y - y0)² ± z² = 1` against the x-axis and the yz-line at infinity.
pub fn quadric_family(y0: &Scalar, sign: i64) -> Result<Quadric, String> {
    let z = Scalar::zero;
    let m = [
        [&(y0 * y0) - &Scalar::one(), z(), -y0, z()],
        [z(), Scalar::one(), z(), z()],
        [-y0, z(), Scalar::one(), z()],
        [z(), z(), z(), Scalar::from_int(sign)],
    ];
    Quadric::from_matrix(m).map_err(|e| e.to_string())
}

pub fn envelope_family(y0: &str, sign: i64, samples: usize) -> Result<String, String> {
    let y0 = rational("y0", y0)?;
    let q = quadric_family(&y0, sign)?;
    let pair = LinePair::canonical();
    let f = phi(&pair, &q).map_err(|e| e.to_string())?.ok_or("the envelope vanishes")?;
    let class = classify(&f);
    let nf = if class.class == 1 {
        match normal_form(&f) {
            Ok(nf) => match nf.kind {
                NormalFormKind::Symmetric { s2, sign, .. } => json!({ "symmetric": true, "s2": s2.to_string(), "sign": sign }),
                NormalFormKind::Asymmetric { s, t } => json!({ "symmetric": false, "s": s.to_string(), "t": t.to_string() }),
            },
            Err(e) => json!({ "error": e.to_string() }),
        }
    } else {
        Value::Null
    };
    let data = plot_data(&pair, &[q], samples).map_err(|e| e.to_string())?;
    let pts = |v: Vec<(f64, f64)>| v.into_iter().map(|(x, z)| json!([num(x, DIGITS), num(z, DIGITS)])).collect::<Vec<_>>();
    Ok(json!({
        "curve": f.to_string(),
        "class": class.class,
        "description": class.description(),
        "normal_form": nf,
        "points": pts(data.curves.iter().map(|r| (r.x, r.z)).collect()),
        "ramification": pts(data.ramification.iter().map(|r| (r.x, r.z)).collect()),
    })
    .to_string())
}

pub fn fiber_check(s: &str, t: &str, samples: usize) -> Result<String, String> {
    let v = fiber_json(&rational("s", s)?, &rational("t", t)?, samples).map_err(|e| e.to_string())?;
    Ok(v.to_string())
}

#[wasm_bindgen(js_name = classifyConfiguration)]
pub fn classify_configuration_js(text: &str) -> Result<String, JsValue> {
    classify_document(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = envelopeFamily)]
pub fn envelope_family_js(y0: &str, sign: i32, samples: usize) -> Result<String, JsValue> {
    envelope_family(y0, sign.signum() as i64, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fiberVerify)]
pub fn fiber_verify_js(s: &str, t: &str, samples: usize) -> Result<String, JsValue> {
    fiber_check(s, t, samples).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_family_is_symmetric() {
        let v: Value = serde_json::from_str(&envelope_family("2", 1, 50).unwrap()).unwrap();
        assert_eq!(v["normal_form"]["s2"], "-3");
        assert_eq!(v["ramification"].as_array().unwrap().len(), 2);
        let v: Value = serde_json::from_str(&envelope_family("1/2", -1, 50).unwrap()).unwrap();
        assert_eq!(v["normal_form"]["sign"], -1);
    }

    #[test]
    fn tangent_at_the_axis_is_singular() {
        let v: Value = serde_json::from_str(&envelope_family("1", 1, 10).unwrap()).unwrap();
        assert_ne!(v["class"], 1);
        assert!(v["normal_form"].is_null());
    }

    #[test]
    fn errors_are_messages() {
        assert!(envelope_family("x", 1, 10).unwrap_err().starts_with("y0"));
        assert!(fiber_check("1", "9", 5).unwrap_err().contains("s-1"));
        assert!(classify_document("{").unwrap_err().contains("JSON"));
    }

    #[test]
    fn fiber_check_reports_both_branches() {
        let v: Value = serde_json::from_str(&fiber_check("4", "9", 5).unwrap()).unwrap();
        assert_eq!(v["branches"].as_array().unwrap().len(), 2);
    }
}
