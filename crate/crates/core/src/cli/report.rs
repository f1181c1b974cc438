//! JSON rendering of analysis results. Objects are `serde_json::Map`s, which
//! keep their keys sorted, so identical results print identically.

use serde_json::{json, Map, Value};

use crate::algebra::{ValidationReport, Vector};
use crate::families::{Classification, Discriminants, Normalization, Params4D, ResidualSet};
use crate::foliation::{FoliationReport, Split};
use crate::geometry::RicciTensor;
use crate::scalar::Scalar;

pub fn scalar<T: Scalar>(x: &T) -> Value {
    x.to_json()
}

pub fn vector<T: Scalar>(v: &Vector<T>) -> Value {
    Value::Array(v.coords().iter().map(scalar).collect())
}

pub fn matrix<T: Scalar>(rows: &[Vec<T>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(scalar).collect()))
            .collect(),
    )
}

/// `[{"label": ..., "value": ...}, ...]` in frame order.
pub fn labelled<T: Scalar>(labels: &[String], values: &[T]) -> Value {
    Value::Array(
        labels
            .iter()
            .zip(values)
            .map(|(l, v)| json!({ "label": l, "value": scalar(v) }))
            .collect(),
    )
}

pub fn validation<T: Scalar>(r: &ValidationReport<T>, labels: &[String]) -> Value {
    let mut m = Map::new();
    m.insert("valid".into(), json!(r.valid));
    m.insert("max_residual".into(), scalar(&r.max_residual));
    if let Some(w) = &r.worst {
        let (i, j, k) = w.triple;
        m.insert(
            "worst_triple".into(),
            json!([labels[i], labels[j], labels[k]]),
        );
        m.insert("worst_residual".into(), vector(&w.residual));
    }
    if !r.antisymmetry_violations.is_empty() {
        m.insert(
            "antisymmetry_violations".into(),
            json!(r.antisymmetry_violations),
        );
    }
    Value::Object(m)
}

pub fn split(s: &Split, labels: &[String]) -> Value {
    let names = |idx: &[usize]| idx.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>();
    json!({
        "horizontal": names(s.horizontal()),
        "vertical": names(s.vertical()),
    })
}

pub fn foliation<T: Scalar>(r: &FoliationReport<T>) -> Value {
    json!({
        "conformal": r.conformal,
        "conformal_vector": r.conformal_vector.as_ref().map(vector),
        "horizontal_integrable": r.horizontal_integrable,
        "minimal": r.minimal,
        "riemannian": r.riemannian,
        "totally_geodesic": r.totally_geodesic,
        "vertical_integrable": r.vertical_integrable,
    })
}

pub fn ricci<T: Scalar>(r: &RicciTensor<T>, labels: &[String], tol: f64) -> Value {
    json!({
        "diagonal": labelled(labels, &r.diagonal()),
        "is_diagonal": r.is_diagonal(tol),
        "matrix": matrix(&r.rows()),
    })
}

pub fn params<T: Scalar>(p: &Params4D<T>) -> Value {
    Value::Object(p.iter().map(|(n, v)| (n.to_string(), scalar(v))).collect())
}

pub fn residuals<T: Scalar>(r: &ResidualSet<T>) -> Value {
    Value::Object(
        r.systems
            .iter()
            .map(|s| {
                (
                    s.name.to_string(),
                    Value::Array(s.values.iter().map(scalar).collect()),
                )
            })
            .collect(),
    )
}

pub fn discriminants<T: Scalar>(d: &Discriminants<T>) -> Value {
    let [alpha, a, beta, b] = d.pattern;
    json!({
        "case_ab": scalar(&d.case_ab),
        "det": scalar(&d.det),
        "lambda": scalar(&d.lambda),
        "pattern": { "a": a, "alpha": alpha, "b": b, "beta": beta },
        "r": scalar(&d.r),
    })
}

pub fn classification<T: Scalar>(c: &Classification<T>) -> Value {
    let named: Map<String, Value> = c
        .family
        .named_params()
        .map(|(n, v)| (n.to_string(), scalar(v)))
        .collect();
    json!({
        "case": c.tag.case.to_string(),
        "discriminants": discriminants(&c.tag.discriminants),
        "family": c.family.id.to_string(),
        "params": named,
        "swapped": c.family.swapped,
    })
}

pub fn normalization<T: Scalar>(n: &Normalization<T>, labels: &[String]) -> Value {
    let frame: Map<String, Value> = ["X", "Y", "Z", "W"]
        .iter()
        .zip(&n.frame)
        .map(|(name, v)| (name.to_string(), labelled(labels, v.coords())))
        .collect();
    json!({
        "frame": frame,
        "params": params(&n.params),
    })
}

/// Serialized report followed by a newline. In pretty mode with colour,
/// boolean values are highlighted.
pub fn render(value: &Value, pretty: bool, color: bool) -> String {
    let mut out = if pretty {
        let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
        if color {
            text.replace(": true", ": \x1b[32mtrue\x1b[0m")
                .replace(": false", ": \x1b[31mfalse\x1b[0m")
        } else {
            text
        }
    } else {
        serde_json::to_string(value).expect("JSON values serialize")
    };
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn keys_are_sorted_and_rationals_are_strings() {
        let mut p = Params4D::<Rational>::zero();
        p.theta2 = rat(-3, 6);
        let text = render(&params(&p), false, false);
        assert!(text.starts_with("{\"a\":\"0\",\"alpha\":\"0\""));
        assert!(text.contains("\"theta2\":\"-1/2\""));
    }

    #[test]
    fn colour_only_in_pretty_mode() {
        let v = json!({ "ok": true });
        assert_eq!(render(&v, false, true), "{\"ok\":true}\n");
        assert!(render(&v, true, true).contains("\x1b[32m"));
        assert!(!render(&v, true, false).contains('\x1b'));
    }
}
