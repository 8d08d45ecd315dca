//! Canonical report documents: sorted keys, exact rationals as strings.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::arcsearch::{NegativeArcCertificate, SearchVerdict};
use crate::jet::{ArcHom, Jet};
use crate::poly::{Monomial, Polynomial};
use crate::rational::{self, Rational};
use crate::sdp::DualWitness;
use crate::sos::{SosCertificate, SosVerdict};
use crate::theta::ThetaVerdict;

use super::problem::ProblemFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn rat(r: &Rational) -> Value {
    Value::String(rational::fmt(r))
}

pub fn point(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rat).collect())
}

pub fn matrix(m: &[Vec<Rational>]) -> Value {
    Value::Array(m.iter().map(|r| point(r)).collect())
}

pub fn poly(pf: &ProblemFile, p: &Polynomial) -> Value {
    Value::String(pf.poly_text(p))
}

pub fn monomial(pf: &ProblemFile, m: &Monomial) -> Value {
    Value::String(m.to_string_with(&pf.vars))
}

/// Positional coefficients `[a_0, ..., a_{m-1}]`.
pub fn jet(j: &Jet) -> Value {
    point(j.coeffs())
}

pub fn arc(pf: &ProblemFile, a: &ArcHom) -> Value {
    json!({
        "order": a.order(),
        "basepoint": point(a.basepoint()),
        "images": Value::Array(a.images().iter().map(jet).collect()),
        "text": a.to_lines(&pf.vars),
    })
}

pub fn sos_certificate(pf: &ProblemFile, c: &SosCertificate) -> Value {
    json!({
        "k": c.k,
        "basis": c.basis.iter().map(|m| monomial(pf, m)).collect::<Vec<_>>(),
        "gram": matrix(&c.gram),
        "ldl": { "l": matrix(&c.l), "d": point(&c.d) },
        "summands": c.summands.iter().map(|(w, g)| json!({ "weight": rat(w), "square_of": poly(pf, g) })).collect::<Vec<_>>(),
    })
}

pub fn dual_witness(w: &DualWitness) -> Value {
    json!({
        "margin": w.margin,
        "min_eigenvalue": w.min_eigenvalue,
        "multipliers": w.multipliers,
        "face": w.face,
        "face_steps": w.face_steps.iter().map(|s| json!({ "constraint": s.constraint, "removed": s.removed })).collect::<Vec<_>>(),
    })
}

pub fn sos_verdict(pf: &ProblemFile, v: &SosVerdict) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), v.label().into());
    match v {
        SosVerdict::ExactCertificate(c) => {
            m.insert("certificate".into(), sos_certificate(pf, c));
        }
        SosVerdict::NumericallyInfeasible(w) => {
            m.insert("dual_witness".into(), dual_witness(w));
            m.insert("note".into(), "numerical evidence only; not a proof that no certificate exists".into());
        }
        SosVerdict::Undetermined { gap, iterations, reason } => {
            m.insert("gap".into(), json!(gap));
            m.insert("iterations".into(), json!(iterations));
            m.insert("reason".into(), reason.clone().into());
        }
    }
    Value::Object(m)
}

pub fn arc_certificate(pf: &ProblemFile, c: &NegativeArcCertificate) -> Value {
    let (idx, coeff) = c.leading();
    json!({
        "arc": arc(pf, c.arc()),
        "leading": { "index": idx, "coeff": rat(coeff) },
    })
}

pub fn search_verdict(pf: &ProblemFile, v: &SearchVerdict) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), v.label().into());
    match v {
        SearchVerdict::NegativeArc(c) => {
            m.insert("certificate".into(), arc_certificate(pf, c));
        }
        SearchVerdict::NoArcUpToOrder(order, r) => {
            m.insert("max_order".into(), json!(order));
            m.insert("orders_tried".into(), json!(r.orders_tried));
            m.insert("branches_per_order".into(), json!(r.branches_per_order));
            m.insert("branches_explored".into(), json!(r.branches_explored));
            m.insert("budget_exhausted".into(), json!(r.budget_exhausted));
            if let Some(n) = &r.note {
                m.insert("note".into(), n.clone().into());
            }
        }
        SearchVerdict::EmptyVariety => {}
    }
    Value::Object(m)
}

pub fn theta_verdict(pf: &ProblemFile, v: &ThetaVerdict) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), v.label().into());
    match v {
        ThetaVerdict::Inside(w) => {
            m.insert("moment_matrix".into(), json!(w.moment_matrix.rows()));
            m.insert("residual".into(), json!(w.residual));
            m.insert("min_eigenvalue".into(), json!(w.min_eigenvalue));
            m.insert("dirac".into(), json!(w.dirac));
        }
        ThetaVerdict::Outside { f, certificate, value } => {
            m.insert("separator".into(), poly(pf, f));
            m.insert("value_at_point".into(), rat(value));
            m.insert("certificate".into(), sos_certificate(pf, certificate));
        }
        ThetaVerdict::Undetermined { reason } => {
            m.insert("reason".into(), reason.clone().into());
        }
    }
    Value::Object(m)
}

/// Stable serialization of a report.
pub fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            text(v, 0, &mut s);
            s
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "[{}]",
            a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match (k.as_str(), scalar(x)) {
                    ("problem", Some(s)) if s.contains('\n') => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for line in s.lines() {
                            out.push_str(&format!("{pad}  | {line}\n"));
                        }
                    }
                    (_, Some(s)) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    (_, None) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn rationals_and_jets_serialize_exactly() {
        assert_eq!(rat(&frac(1, 2)), json!("1/2"));
        let j = Jet::new(4, vec![int(0), int(0), int(0), int(-1)]).unwrap();
        assert_eq!(jet(&j), json!(["0", "0", "0", "-1"]));
    }

    #[test]
    fn keys_are_sorted_and_text_is_stable() {
        let v = json!({ "b": 1, "a": { "z": [1, 2], "y": "s" } });
        let s = emit(&v, Format::Json);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert_eq!(emit(&v, Format::Text), "a:\n  y: s\n  z: [1, 2]\nb: 1\n");
    }
}
