//! Structured reports for classification, normal forms and fiber checks, as
//! JSON values with exact entries rendered as strings.

use serde_json::{json, Map, Value};

use crate::classify22::{classify, normal_form, ramification, CurveClass, NormalFormKind};
use crate::configurations::{ClassificationReport, Configuration, Coord, TangentEnumeration};
use crate::envelope::{is_e1, phi};
use crate::fiberfamilies::{f2_generators, kl_quadratic_table, Branch, ConicF2};
use crate::poly::{BiForm22, P1};
use crate::projgeom::{FrameMode, LinePair};
use crate::quadrics::{quadric_rank, Quadric};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// `x` rounded to `digits` significant digits.
pub fn num(x: f64, digits: usize) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{:.*e}", digits.max(1) - 1, x).parse().expect("float");
    json!(if r == 0.0 { 0.0 } else { r })
}

pub fn num_str(x: f64, digits: usize) -> String {
    match num(x, digits) {
        Value::Null => "nan".into(),
        v => v.to_string(),
    }
}

fn s(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn p1(p: &P1) -> Value {
    json!([s(&p[0]), s(&p[1])])
}

fn mode_name(m: FrameMode) -> &'static str {
    match m {
        FrameMode::Affine => "affine",
        FrameMode::Projective => "projective",
    }
}

pub fn curve_class_json(c: &CurveClass) -> Value {
    json!({
        "class": c.class,
        "description": c.description(),
        "transposed": c.transposed,
        "perfect_square": matches!(c.class, 5 | 9),
        "factors": c.factors.iter().map(|f| json!({
            "form": f.form.to_string(),
            "bidegree": [f.bidegree.0, f.bidegree.1],
            "multiplicity": f.multiplicity,
            "real": f.real,
        })).collect::<Vec<_>>(),
    })
}

fn coord_json(c: &Coord, digits: usize) -> Value {
    match c {
        Coord::Exact(p) => json!({ "exact": p1(p) }),
        Coord::Isolated { poly, interval, approx } => json!({
            "root_of": poly.to_string(),
            "interval": [interval.lo.to_string(), interval.hi.to_string()],
            "approx": [num(1.0, digits), num(*approx, digits)],
        }),
        Coord::Image { y, z, approx } => json!({
            "polynomial_in_first": [y.to_string(), z.to_string()],
            "approx": [num(approx[0], digits), num(approx[1], digits)],
        }),
        Coord::Approx(a) => json!({ "approx": [num(a[0], digits), num(a[1], digits)] }),
    }
}

pub fn tangents_json(t: &TangentEnumeration, digits: usize) -> Value {
    let real = t.solutions.iter().filter(|x| x.real).map(|x| x.multiplicity).sum::<u32>();
    json!({
        "total_multiplicity": t.total_multiplicity(),
        "real_solutions": t.real_count(),
        "real_multiplicity": real,
        "complex_multiplicity": t.total_multiplicity() - real,
        "resultant": t.resultant.to_string(),
        "solutions": t.solutions.iter().map(|x| json!({
            "first": coord_json(&x.first, digits),
            "second": coord_json(&x.second, digits),
            "multiplicity": x.multiplicity,
            "real": x.real,
            "certified": x.certified,
            "plucker": x.line.as_ref().map(|l| l.0.iter().map(s).collect::<Vec<_>>()),
            "plucker_approx": x.line_approx.map(|l| l.iter().map(|v| num(*v, digits)).collect::<Vec<_>>()),
        })).collect::<Vec<_>>(),
    })
}

pub fn classification_json(cfg: &Configuration, rep: &ClassificationReport, digits: usize) -> Value {
    json!({
        "mode": mode_name(rep.mode),
        "verdict": rep.verdict.to_string(),
        "lines": [cfg.pair.l1.to_string(), cfg.pair.l2.to_string()],
        "spheres": cfg.spheres.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "cases": rep.cases().iter().map(|c| json!({ "tag": c.name(), "description": c.description() })).collect::<Vec<_>>(),
        "common_component": rep.common.to_string(),
        "components": rep.components.iter().map(|c| json!({
            "form": c.form.to_string(),
            "bidegree": [c.form.bidegree().0, c.form.bidegree().1],
            "multiplicity": c.multiplicity,
            "real": c.real,
            "case": c.case.map(|t| t.name()),
            "point": c.point.as_ref().map(|p| p.0.iter().map(s).collect::<Vec<_>>()),
        })).collect::<Vec<_>>(),
        "curves": rep.curves.iter().zip(&rep.curve_classes).map(|(f, c)| json!({
            "form": f.to_string(),
            "class": curve_class_json(c),
        })).collect::<Vec<_>>(),
        "tangents": rep.tangents.as_ref().map(|t| tangents_json(t, digits)),
    })
}

/// The envelope of one quadric: vanishing reason, class, ramification and
/// normal form.
pub fn envelope_json(pair: &LinePair, q: &Quadric, digits: usize) -> Result<Value> {
    let mut out = Map::new();
    out.insert("quadric".into(), Value::String(q.to_string()));
    out.insert("rank".into(), json!(quadric_rank(q)));
    let Some(f) = phi(pair, q)? else {
        let why = if is_e1(q) {
            "rank 1 quadric"
        } else {
            match q.singular_line() {
                Some(l) if l == pair.l1 => "rank 2 quadric singular along the first line",
                Some(l) if l == pair.l2 => "rank 2 quadric singular along the second line",
                _ => "excess quadric",
            }
        };
        out.insert("curve".into(), Value::Null);
        out.insert("vanishes".into(), json!(why));
        return Ok(Value::Object(out));
    };
    out.insert("curve".into(), Value::String(f.to_string()));
    let class = classify(&f);
    out.insert("class".into(), curve_class_json(&class));
    if class.class != 1 {
        out.insert("singular".into(), json!(format!("class {}", class.class)));
        return Ok(Value::Object(out));
    }
    out.insert("ramification".into(), ramification_json(&f, digits)?);
    let nf = match normal_form(&f) {
        Ok(nf) => {
            let kind = match &nf.kind {
                NormalFormKind::Asymmetric { s: a, t } => json!({ "kind": "asymmetric", "s": s(a), "t": s(t) }),
                NormalFormKind::Symmetric { s: a, s2, sign } => {
                    json!({ "kind": "symmetric", "s": s(a), "s2": s(s2), "sign": sign })
                }
            };
            json!({
                "symmetric": nf.is_symmetric(),
                "form": kind,
                "gamma1": s(&nf.gamma1),
                "gamma2": nf.gamma2.as_ref().map(s),
                "model": nf.model().to_string(),
                "scale": s(&nf.scale),
            })
        }
        Err(e) => json!({ "error": e.to_string() }),
    };
    out.insert("normal_form".into(), nf);
    Ok(Value::Object(out))
}

fn ramification_json(f: &BiForm22, digits: usize) -> Result<Value> {
    let r = ramification(f)?;
    Ok(json!({
        "points": r.points.iter().map(|p| json!({ "point": p1(&p.point), "double_point": p1(&p.double_point) })).collect::<Vec<_>>(),
        "algebraic": r.unresolved.iter().map(|a| json!({
            "min_poly": a.min_poly.to_string(),
            "real_roots": a.real_roots.iter().map(|iv| num(iv.midpoint_f64(), digits)).collect::<Vec<_>>(),
            "complex_roots": a.complex_roots,
        })).collect::<Vec<_>>(),
    }))
}

/// The three `(k, l)` quadratics as printed by the factorization.
pub const KL_TEMPLATES: [&str; 3] = [
    "(-s^2+2*s-1)*k^2+(2*s-2)*k*l+(s*t-1)*l^2",
    "(s-1)*k^2-2*k*l-l^2",
    "(s^2-2*s+1)*k^2+(-2*s+2)*k*l+(-t+1)*l^2",
];

pub fn fiber_json(s_: &Scalar, t: &Scalar, samples: usize) -> Result<Value> {
    let table = kl_quadratic_table(s_, t);
    if let Some(e) = &table.excluded {
        return Err(Error::Excluded(e.clone()));
    }
    let pair = LinePair::canonical();
    let mut branches = Vec::new();
    for branch in [Branch::Plus, Branch::Minus] {
        let conic = ConicF2::build(s_, t, branch).map_err(|e| match e {
            Error::ExtensionRequired(_) => Error::ExtensionRequired(format!(
                "s = {s_} is not a rational square; exact conic sampling needs √s, e.g. s = 4 or s = 9/4"
            )),
            other => other,
        })?;
        let target = conic.target();
        let rep = conic.sample_and_verify(&pair, &target, samples);
        let p = conic.witness_point();
        let gens = f2_generators(s_, t, &p);
        let q = Quadric::from_labels(&p)?;
        let coeff = phi(&pair, &q)?.map(|f| f.c[2][0].clone()).unwrap_or_else(Scalar::zero);
        let one = Scalar::one();
        let sq = &conic.sigma * &conic.sigma;
        let expected = &(&Scalar::from_int(-4) * &sq) * &(&(&conic.sigma - &one).pow(2) * &(&conic.sigma + &one).pow(2));
        let non_degenerate = rep.samples.len() - rep.degenerate().len();
        branches.push(json!({
            "branch": match branch { Branch::Plus => "plus", Branch::Minus => "minus" },
            "sigma": s(&conic.sigma),
            "linear_rank": conic.constraint_rank(),
            "samples": rep.samples.len(),
            "on_conic": rep.all_on_conic(),
            "witnesses": rep.witnesses(),
            "non_degenerate": non_degenerate,
            "degenerate_samples": rep.samples.iter().filter(|x| x.lambda.is_none()).map(|x| p1(&x.param)).collect::<Vec<_>>(),
            "verified": rep.all_on_conic() && rep.witnesses() == non_degenerate,
            "point_p": p.iter().map(s).collect::<Vec<_>>(),
            "point_p_generators_vanish": gens.iter().all(Scalar::is_zero),
            "w2z2_coefficient": s(&coeff),
            "w2z2_expected": s(&expected),
        }));
    }
    Ok(json!({
        "s": s(s_),
        "t": s(t),
        "curve": crate::classify22::asymmetric_model(s_, t).to_string(),
        "branches": branches,
        "kl_table": table.quadratics.iter().zip(KL_TEMPLATES).map(|(k, tpl)| json!({
            "printed": tpl,
            "coefficients": k.coeffs.iter().map(s).collect::<Vec<_>>(),
            "discriminant": s(&k.discriminant),
            "factors": k.roots.as_ref().map(|r| r.iter().map(|x| format!("l - ({x})*k")).collect::<Vec<_>>()),
            "real_factors": k.real_factors(),
        })).collect::<Vec<_>>(),
    }))
}

/// Indented `key: value` rendering of a JSON value.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar_text(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar_text(x) {
                    Some(t) => out.push_str(&format!("{pad}{k}: {t}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar_text(x) {
                    Some(t) => out.push_str(&format!("{pad}- {t}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).unwrap())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(num_str(std::f64::consts::PI, 4), "3.142");
        assert_eq!(num_str(-0.000123456, 2), "-0.00012");
        assert_eq!(num_str(0.0, 12), "0.0");
    }

    #[test]
    fn fiber_report_at_four_nine() {
        let v = fiber_json(&Scalar::from_int(4), &Scalar::from_int(9), 25).unwrap();
        for b in v["branches"].as_array().unwrap() {
            assert_eq!(b["verified"], json!(true));
            assert_eq!(b["w2z2_coefficient"], json!("-144"));
            assert_eq!(b["w2z2_coefficient"], b["w2z2_expected"]);
        }
        let e = fiber_json(&Scalar::from_int(1), &Scalar::from_int(9), 5).unwrap_err();
        assert_eq!(e.to_string(), "excluded parameters: s-1 = 0");
    }

    #[test]
    fn text_rendering() {
        let t = to_text(&json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": null}]}));
        assert_eq!(t, "a: 1\nb:\n  c: [1, 2]\nd:\n  - [0]\n    e: -\n");
    }
}
