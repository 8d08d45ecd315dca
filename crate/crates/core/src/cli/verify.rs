//! Exact re-verification of the certificates embedded in a report.
//!
//! Everything here works on the rational data in the document: the ring, the
//! polynomials, Gram summands and jets. No floating-point value is read.

use num_traits::Signed;
use serde_json::{json, Value};

use crate::arcsearch::{verify_certificate_detailed, NegativeArcCertificate};
use crate::error::{Error, Result};
use crate::ideal::GroebnerContext;
use crate::jet::{ArcHom, Jet};
use crate::parse::parse_polynomial;
use crate::poly::{Monomial, Polynomial, TermOrder};
use crate::rational::{self, Rational};
use crate::sos::{verify_sos_detailed, SosCertificate};

use super::report::digest;

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(format!("malformed report: {}", msg.into()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing `{key}`")))
}

fn string<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| bad(format!("`{key}` is not a string")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?.as_array().ok_or_else(|| bad(format!("`{key}` is not an array")))
}

fn integer(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?.as_u64().ok_or_else(|| bad(format!("`{key}` is not an integer")))
}

fn rat(v: &Value) -> Result<Rational> {
    v.as_str()
        .and_then(rational::parse)
        .ok_or_else(|| bad(format!("`{v}` is not an exact rational")))
}

fn rats(v: &Value) -> Result<Vec<Rational>> {
    v.as_array().ok_or_else(|| bad("expected an array"))?.iter().map(rat).collect()
}

struct Ring {
    vars: Vec<String>,
    ctx: GroebnerContext,
}

impl Ring {
    fn from_report(doc: &Value) -> Result<Ring> {
        let ring = field(doc, "ring")?;
        let vars: Vec<String> = array(ring, "vars")?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad("variable name")))
            .collect::<Result<_>>()?;
        let order = match string(ring, "order")? {
            "lex" => TermOrder::lex(vars.len()),
            "grevlex" => TermOrder::grevlex(vars.len()),
            o => return Err(bad(format!("unknown order `{o}`"))),
        };
        let gens = array(ring, "ideal")?
            .iter()
            .map(|g| parse_polynomial(g.as_str().ok_or_else(|| bad("generator"))?, &vars))
            .collect::<Result<Vec<_>>>()?;
        let ctx = GroebnerContext::new(gens, order)?;
        Ok(Ring { vars, ctx })
    }

    fn poly(&self, v: &Value) -> Result<Polynomial> {
        parse_polynomial(v.as_str().ok_or_else(|| bad("polynomial"))?, &self.vars)
    }

    fn monomial(&self, v: &Value) -> Result<Monomial> {
        let p = self.poly(v)?;
        match p.terms().collect::<Vec<_>>().as_slice() {
            [(m, _)] => Ok((*m).clone()),
            _ => Err(bad("basis entry is not a monomial")),
        }
    }

    fn sos_certificate(&self, v: &Value) -> Result<SosCertificate> {
        let k = integer(v, "k")? as u32;
        let basis = array(v, "basis")?.iter().map(|m| self.monomial(m)).collect::<Result<_>>()?;
        let gram = array(v, "gram")?.iter().map(rats).collect::<Result<Vec<_>>>()?;
        let summands = array(v, "summands")?
            .iter()
            .map(|s| Ok((rat(field(s, "weight")?)?, self.poly(field(s, "square_of")?)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SosCertificate {
            k,
            basis,
            gram,
            l: Vec::new(),
            d: Vec::new(),
            summands,
        })
    }

    fn arc(&self, v: &Value) -> Result<ArcHom> {
        let order = integer(v, "order")? as usize;
        let images = array(v, "images")?
            .iter()
            .map(|j| Jet::new(order, rats(j)?))
            .collect::<Result<Vec<_>>>()?;
        let basepoint = rats(field(v, "basepoint")?)?;
        ArcHom::new(basepoint, images)
    }
}

/// Gram matrix and summands describe the same form `vᵀ G v = Σ w g²`.
fn gram_matches(cert: &SosCertificate, nvars: usize) -> bool {
    let b = &cert.basis;
    if cert.gram.len() != b.len() || cert.gram.iter().any(|r| r.len() != b.len()) {
        return false;
    }
    let mut form = Polynomial::zero(nvars);
    for (i, row) in cert.gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            form = form
                .add(&Polynomial::term(g.clone(), b[i].mul(&b[j])))
                .expect("same ring");
        }
    }
    form == cert.sum(nvars)
}

fn check_one(ring: &Ring, c: &Value) -> Result<std::result::Result<&'static str, String>> {
    let n = ring.ctx.nvars();
    let kind = string(c, "kind")?;
    Ok(match kind {
        "sos" => {
            let f = ring.poly(field(c, "f")?)?;
            let cert = ring.sos_certificate(field(c, "certificate")?)?;
            if !gram_matches(&cert, n) {
                Err("gram matrix and summands disagree".into())
            } else {
                verify_sos_detailed(&cert, &f, &ring.ctx)
                    .map(|_| "ExactCertificate")
                    .map_err(|e| format!("{e:?}"))
            }
        }
        "negative_arc" => {
            let f = ring.poly(field(c, "f")?)?;
            let p = rats(field(c, "point")?)?;
            let arc = ring.arc(field(c, "arc")?)?;
            let leading = field(c, "leading")?;
            let idx = integer(leading, "index")? as usize;
            let coeff = rat(field(leading, "coeff")?)?;
            match NegativeArcCertificate::new(arc, &ring.ctx, &p, &f) {
                Err(e) => Err(e.to_string()),
                Ok(cert) => match verify_certificate_detailed(&cert, &ring.ctx, &p, &f) {
                    Err(e) => Err(e.code().to_string()),
                    Ok(()) if cert.leading() != (idx, &coeff) => Err("leading term differs from the recorded one".into()),
                    Ok(()) => Ok("NegativeArc"),
                },
            }
        }
        "theta_separator" => {
            let f = ring.poly(field(c, "f")?)?;
            let p = rats(field(c, "point")?)?;
            let value = f.eval(&p)?;
            let cert = ring.sos_certificate(field(c, "certificate")?)?;
            if !f.is_linear() {
                Err("separator is not linear".into())
            } else if !value.is_negative() {
                Err(format!("separator is {} at the point", rational::fmt(&value)))
            } else if value != rat(field(c, "value_at_point")?)? {
                Err("recorded value at the point is wrong".into())
            } else if integer(c, "k")? as u32 != cert.k {
                Err("level differs from the certificate".into())
            } else if !gram_matches(&cert, n) {
                Err("gram matrix and summands disagree".into())
            } else {
                verify_sos_detailed(&cert, &f, &ring.ctx)
                    .map(|_| "Outside")
                    .map_err(|e| format!("{e:?}"))
            }
        }
        other => Err(format!("unknown certificate kind `{other}`")),
    })
}

/// Verification document and whether every check passed.
pub fn verify_report(doc: &Value) -> Result<(Value, bool)> {
    let problem = string(doc, "problem")?;
    let digest_ok = digest(problem) == string(doc, "digest")?;
    let ring = Ring::from_report(doc)?;
    let mut checks = Vec::new();
    let mut all_ok = digest_ok;
    for (i, c) in array(doc, "certificates")?.iter().enumerate() {
        let mut entry = json!({ "index": i, "kind": string(c, "kind")? });
        match check_one(&ring, c)? {
            Ok(verdict) => {
                entry["ok"] = json!(true);
                entry["verdict"] = json!(verdict);
            }
            Err(reason) => {
                all_ok = false;
                entry["ok"] = json!(false);
                entry["reason"] = json!(reason);
            }
        }
        checks.push(entry);
    }
    let out = json!({
        "command": "verify",
        "digest": string(doc, "digest")?,
        "digest_ok": digest_ok,
        "source_command": string(doc, "command")?,
        "checks": checks,
        "all_ok": all_ok,
    });
    Ok((out, all_ok))
}
