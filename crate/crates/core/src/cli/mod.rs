//! Problem files, subcommands, and report documents.

pub mod problem;
pub mod report;
pub mod verify;

use serde_json::{json, Map, Value};

use crate::arcsearch::{first_order_obstruction, hensel_lift, search_negative_arc, SearchBudget, SearchVerdict};
use crate::error::{Error, Result};
use crate::geometry::{
    convex_singular_witness, is_singular, nonneg_on_cloud, sample_variety, tangent_space, SampleCloud, SampleParams,
};
use crate::ideal::GroebnerContext;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::sos::{check_k_sos, dk_sos_scan, ScanOptions, SosOptions, SosVerdict};
use crate::theta::{theta_hierarchy_probe, ThetaOptions, ThetaVerdict};

pub use problem::{parse_problem, Params, ProblemFile};
pub use report::{emit, Format};
pub use verify::verify_report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Gb,
    Nf,
    Sos,
    Arc,
    Lift,
    Singular,
    Witness,
    Theta,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Nf => "nf",
            Command::Sos => "sos",
            Command::Arc => "arc",
            Command::Lift => "lift",
            Command::Singular => "singular",
            Command::Witness => "witness",
            Command::Theta => "theta",
            Command::Report => "report",
        }
    }
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const OFF_VARIETY: u8 = 3;
    pub const BUDGET_EXHAUSTED: u8 = 4;
    pub const VERIFY_FAILED: u8 = 5;
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => exit::PARSE,
        Error::NotOnVariety { .. } => exit::OFF_VARIETY,
        _ => exit::OTHER,
    }
}

/// A finished subcommand: the report document and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit: u8,
}

struct Run<'a> {
    pf: &'a ProblemFile,
    ctx: GroebnerContext,
    certificates: Vec<Value>,
    notes: Vec<String>,
    budget_exhausted: bool,
}

impl<'a> Run<'a> {
    fn new(pf: &'a ProblemFile) -> Result<Self> {
        Ok(Run {
            pf,
            ctx: GroebnerContext::new(pf.ideal.clone(), pf.term_order())?,
            certificates: Vec::new(),
            notes: Vec::new(),
            budget_exhausted: false,
        })
    }

    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_branches_per_order: self.pf.params.budget,
            ..SearchBudget::default()
        }
    }

    fn f(&self) -> Result<&'a Polynomial> {
        self.pf
            .f
            .as_ref()
            .ok_or_else(|| Error::Invalid("this command needs an `f:` section".into()))
    }

    fn points(&self) -> Result<&'a [Vec<Rational>]> {
        if self.pf.points.is_empty() {
            return Err(Error::Invalid("this command needs at least one `point:`".into()));
        }
        Ok(&self.pf.points)
    }

    /// Sampled cloud plus the declared points that lie on the variety.
    fn cloud(&self) -> Result<SampleCloud> {
        let p = &self.pf.params;
        let mut cloud = sample_variety(
            &self.ctx,
            &SampleParams::cube(self.pf.nvars(), p.half_width, p.resolution, p.tol),
        )?;
        for q in &self.pf.points {
            if self.ctx.check_point(q).is_ok() {
                cloud.points.push(q.iter().map(rational::to_f64).collect());
            }
        }
        Ok(cloud)
    }

    fn params_json(&self) -> Value {
        let p = &self.pf.params;
        let sos = SosOptions::default();
        let budget = self.budget();
        json!({
            "order": problem::order_name(p.order),
            "k": p.k,
            "d": p.d,
            "k_max": p.k_max,
            "max_order": p.max_order,
            "budget": {
                "max_branches_per_order": budget.max_branches_per_order,
                "grid": report::point(&budget.grid),
                "root_isolation": budget.root_isolation,
            },
            "sampling": { "box": p.half_width, "resolution": p.resolution, "tol": p.tol },
            "lift_to": p.lift_to,
            "assert_real_radical": p.assert_real_radical,
            "sdp": {
                "tol": sos.sdp.tol,
                "max_iters": sos.sdp.max_iters,
                "stall_window": sos.sdp.stall_window,
                "facial_reduction": sos.sdp.facial_reduction,
            },
            "rounding": {
                "denominator_cap": sos.denominator_cap,
                "retries": sos.retries,
                "retry_factor": sos.retry_factor,
            },
        })
    }

    fn sos(&mut self, f: &Polynomial, k: u32) -> Result<Value> {
        let v = check_k_sos(f, &self.ctx, k, &SosOptions::default())?;
        if let SosVerdict::ExactCertificate(c) = &v {
            self.certificates.push(json!({
                "kind": "sos",
                "f": report::poly(self.pf, f),
                "certificate": report::sos_certificate(self.pf, c),
            }));
        }
        let mut out = report::sos_verdict(self.pf, &v);
        out["k"] = json!(k);
        Ok(out)
    }

    fn arc_search(&mut self, f: &Polynomial, p: &[Rational]) -> Result<Value> {
        let v = search_negative_arc(&self.ctx, p, f, self.pf.params.max_order, &self.budget())?;
        match &v {
            SearchVerdict::NegativeArc(c) => {
                let mut cert = report::arc_certificate(self.pf, c);
                cert["kind"] = json!("negative_arc");
                cert["f"] = report::poly(self.pf, f);
                cert["point"] = report::point(p);
                self.certificates.push(cert);
            }
            SearchVerdict::NoArcUpToOrder(_, r) if r.budget_exhausted => self.budget_exhausted = true,
            _ => {}
        }
        let mut out = report::search_verdict(self.pf, &v);
        out["point"] = report::point(p);
        Ok(out)
    }

    fn singular(&mut self, p: &[Rational]) -> Result<Value> {
        let s = is_singular(&self.ctx, p)?;
        let t = tangent_space(&self.ctx, p)?;
        let mut out = json!({
            "point": report::point(p),
            "singular": s.singular,
            "tangent_dimension": s.tangent_dimension,
            "jacobian_rank": s.jacobian_rank,
            "variety_dimension": s.variety_dimension,
            "tangent_basis": report::matrix(&t.basis),
            "note": s.note,
        });
        if let Some(f) = &self.pf.f {
            out["first_order_obstruction"] = match first_order_obstruction(&self.ctx, p, f)? {
                Some(v) => report::point(&v),
                None => Value::Null,
            };
        }
        Ok(out)
    }

    fn witness(&mut self, p: &[Rational], cloud: &SampleCloud) -> Result<Value> {
        let mut out = json!({ "point": report::point(p) });
        match convex_singular_witness(&self.ctx, p, cloud, self.pf.params.tol) {
            Ok(Some(w)) => {
                out["witness"] = json!({
                    "f": report::poly(self.pf, &w.f),
                    "tangent": report::point(&w.tangent),
                });
            }
            Ok(None) => out["witness"] = Value::Null,
            Err(Error::NotSingular(_)) => out["note"] = json!("not a singular point"),
            Err(e) => return Err(e),
        }
        Ok(out)
    }

    fn theta(&mut self, cloud: &SampleCloud) -> Result<Value> {
        let p = &self.pf.params;
        let r = theta_hierarchy_probe(
            &self.ctx,
            p.k_max,
            cloud,
            self.points()?,
            p.assert_real_radical,
            &ThetaOptions::default(),
        )?;
        let mut rows = Vec::new();
        for row in &r.rows {
            if let ThetaVerdict::Outside { f, certificate, value } = &row.verdict {
                self.certificates.push(json!({
                    "kind": "theta_separator",
                    "k": row.k,
                    "point": report::point(&row.point),
                    "f": report::poly(self.pf, f),
                    "value_at_point": report::rat(value),
                    "certificate": report::sos_certificate(self.pf, certificate),
                }));
            }
            let mut v = report::theta_verdict(self.pf, &row.verdict);
            v["point"] = report::point(&row.point);
            v["k"] = json!(row.k);
            v["hull_margin"] = report::rat(&row.hull_margin);
            v["gap_evidence"] = json!(row.gap_evidence);
            rows.push(v);
        }
        if !p.assert_real_radical {
            self.notes.push(
                "the ideal is not asserted to be real radical: theta verdicts carry no exactness interpretation".into(),
            );
        }
        Ok(json!({
            "k_max": r.k_max,
            "rows": rows,
            "monotonicity_violations": r.monotonicity_violations.iter().map(|q| report::point(q)).collect::<Vec<_>>(),
            "containment_violations": r.containment_violations.iter().map(|(q, k)| json!({ "point": report::point(q), "k": k })).collect::<Vec<_>>(),
            "csv": r.to_csv(),
        }))
    }

    fn gb(&self) -> Result<Value> {
        let ctx = &self.ctx;
        Ok(json!({
            "groebner_basis": ctx.basis().iter().map(|g| report::poly(self.pf, g)).collect::<Vec<_>>(),
            "leading_monomials": ctx.leading_monomials().iter().map(|m| report::monomial(self.pf, m)).collect::<Vec<_>>(),
            "is_unit": ctx.is_unit(),
            "dimension": ctx.dimension().ok(),
        }))
    }

    fn nf(&self) -> Result<Value> {
        if self.pf.f.is_none() && self.pf.candidates.is_empty() {
            return Err(Error::Invalid("nf needs `f:` or `candidates:`".into()));
        }
        let entry = |p: &Polynomial| {
            let nf = self.ctx.normal_form(p);
            json!({ "input": report::poly(self.pf, p), "normal_form": report::poly(self.pf, &nf), "in_ideal": nf.is_zero() })
        };
        Ok(json!({
            "f": self.pf.f.as_ref().map(entry),
            "candidates": self.pf.candidates.iter().map(entry).collect::<Vec<_>>(),
        }))
    }

    fn lift(&self) -> Result<Value> {
        let arc = self
            .pf
            .arc
            .as_ref()
            .ok_or_else(|| Error::Invalid("lift needs an `arc:` section".into()))?;
        let target = self.pf.params.lift_to.unwrap_or(self.pf.params.max_order);
        let valid = arc.is_valid(&self.ctx);
        let lifted = hensel_lift(&self.ctx, arc, target);
        Ok(json!({
            "input": report::arc(self.pf, arc),
            "input_valid": valid,
            "target_order": target,
            "lifted": lifted.as_ref().map(|a| report::arc(self.pf, a)),
        }))
    }

    fn full(&mut self) -> Result<Value> {
        let cloud = self.cloud()?;
        let mut out = Map::new();
        out.insert(
            "sampling".into(),
            json!({ "points": cloud.len(), "includes_declared_points": true }),
        );
        // Off-variety points only enter the theta probe.
        let (points, off): (Vec<_>, Vec<_>) = self
            .pf
            .points
            .iter()
            .cloned()
            .partition(|q| self.ctx.check_point(q).is_ok());
        if !off.is_empty() {
            out.insert("off_variety_points".into(), off.iter().map(|q| report::point(q)).collect());
        }
        let mut cross = Vec::new();
        if let Some(f) = self.pf.f.clone() {
            let m = nonneg_on_cloud(&f, &cloud, self.pf.params.tol);
            out.insert(
                "cloud_minimum".into(),
                json!({ "nonneg": m.nonneg, "min": m.min, "at": m.at }),
            );
            let mut sos = Vec::new();
            let mut exact_k = None;
            for k in 1..=self.pf.params.k {
                let v = self.sos(&f, k)?;
                if v["verdict"] == "ExactCertificate" && exact_k.is_none() {
                    exact_k = Some(k);
                }
                sos.push(v);
            }
            out.insert("sos".into(), Value::Array(sos));
            let mut per_point = Vec::new();
            for q in &points {
                let mut entry = self.singular(q)?;
                let arc = self.arc_search(&f, q)?;
                if arc["verdict"] == "NegativeArc" {
                    cross.push(format!(
                        "negative arc at {}: f is not strongly nonnegative, so it is not k-sos for any k",
                        rational::fmt_point(q)
                    ));
                    if let Some(k) = exact_k {
                        cross.push(format!("CONTRADICTION: exact {k}-sos certificate alongside a negative arc"));
                    }
                }
                if entry["first_order_obstruction"].is_array() {
                    cross.push(format!(
                        "first-order obstruction at {}: a tangent direction along which f decreases",
                        rational::fmt_point(q)
                    ));
                }
                entry["arc_search"] = arc;
                entry["convex_singular"] = self.witness(q, &cloud)?;
                per_point.push(entry);
            }
            out.insert("points".into(), Value::Array(per_point));
            if let Some(k) = exact_k {
                cross.push(format!("exact {k}-sos certificate: f is nonnegative on the real variety"));
            }
        } else {
            let mut per_point = Vec::new();
            for q in &points {
                let mut entry = self.singular(q)?;
                entry["convex_singular"] = self.witness(q, &cloud)?;
                per_point.push(entry);
            }
            out.insert("points".into(), Value::Array(per_point));
        }
        if let (Some(d), false) = (self.pf.params.d, self.pf.candidates.is_empty()) {
            let opts = ScanOptions {
                max_order: self.pf.params.max_order,
                budget: self.budget(),
                nonneg_tol: self.pf.params.tol,
                ..ScanOptions::default()
            };
            let scan = dk_sos_scan(&self.ctx, d, self.pf.params.k, &self.pf.candidates, &points, &cloud, &opts)?;
            let mut rows = Vec::new();
            for row in &scan.rows {
                let sos = self.sos_row(&row.candidate, &row.sos);
                rows.push(json!({
                    "candidate": report::poly(self.pf, &row.candidate),
                    "class": row.class.label(),
                    "cloud_min": row.cloud_min.min,
                    "sos": sos,
                    "arcs": row.arcs.iter().map(|(q, v)| {
                        let mut a = report::search_verdict(self.pf, v);
                        a["point"] = report::point(q);
                        a
                    }).collect::<Vec<_>>(),
                }));
                for (q, v) in &row.arcs {
                    if let SearchVerdict::NegativeArc(c) = v {
                        let mut cert = report::arc_certificate(self.pf, c);
                        cert["kind"] = json!("negative_arc");
                        cert["f"] = report::poly(self.pf, &row.candidate);
                        cert["point"] = report::point(q);
                        self.certificates.push(cert);
                    }
                }
            }
            out.insert("scan".into(), json!({ "d": d, "k": scan.k, "rows": rows }));
        }
        if !self.pf.points.is_empty() {
            out.insert("theta".into(), self.theta(&cloud)?);
        }
        out.insert("cross_references".into(), json!(cross));
        Ok(Value::Object(out))
    }

    fn sos_row(&mut self, f: &Polynomial, v: &SosVerdict) -> Value {
        if let SosVerdict::ExactCertificate(c) = v {
            self.certificates.push(json!({
                "kind": "sos",
                "f": report::poly(self.pf, f),
                "certificate": report::sos_certificate(self.pf, c),
            }));
        }
        report::sos_verdict(self.pf, v)
    }
}

pub fn run_subcommand(cmd: Command, pf: &ProblemFile) -> Result<Outcome> {
    let mut run = Run::new(pf)?;
    let result = match cmd {
        Command::Gb => run.gb()?,
        Command::Nf => run.nf()?,
        Command::Sos => {
            let f = run.f()?;
            run.sos(f, pf.params.k)?
        }
        Command::Arc => {
            let f = run.f()?;
            let mut rows = Vec::new();
            for p in run.points()? {
                rows.push(run.arc_search(f, p)?);
            }
            json!({ "searches": rows })
        }
        Command::Lift => run.lift()?,
        Command::Singular => {
            let mut rows = Vec::new();
            for p in run.points()? {
                rows.push(run.singular(p)?);
            }
            json!({ "points": rows })
        }
        Command::Witness => {
            let cloud = run.cloud()?;
            let mut rows = Vec::new();
            for p in run.points()? {
                rows.push(run.witness(p, &cloud)?);
            }
            json!({ "sampled_points": cloud.len(), "points": rows })
        }
        Command::Theta => {
            let cloud = run.cloud()?;
            run.theta(&cloud)?
        }
        Command::Report => run.full()?,
    };
    let text = pf.to_text();
    let ring = json!({
        "vars": pf.vars,
        "order": problem::order_name(pf.params.order),
        "ideal": pf.ideal.iter().map(|g| report::poly(pf, g)).collect::<Vec<_>>(),
        "groebner_basis": run.ctx.basis().iter().map(|g| report::poly(pf, g)).collect::<Vec<_>>(),
    });
    let report = json!({
        "tool": { "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") },
        "command": cmd.name(),
        "digest": report::digest(&text),
        "problem": text,
        "ring": ring,
        "params": run.params_json(),
        "result": result,
        "certificates": run.certificates,
        "notes": run.notes,
    });
    let exit = if run.budget_exhausted {
        exit::BUDGET_EXHAUSTED
    } else {
        exit::OK
    };
    Ok(Outcome { report, exit })
}

/// Flag overrides applied on top of a problem file's `params:`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub order: Option<crate::poly::OrderKind>,
    pub k: Option<u32>,
    pub max_order: Option<usize>,
    pub budget: Option<usize>,
    pub half_width: Option<f64>,
    pub resolution: Option<f64>,
    pub tol: Option<f64>,
    pub assert_real_radical: bool,
}

impl Overrides {
    pub fn apply(&self, p: &mut Params) {
        if let Some(o) = self.order {
            p.order = o;
        }
        if let Some(k) = self.k {
            p.k = k;
        }
        if let Some(m) = self.max_order {
            p.max_order = m;
        }
        if let Some(b) = self.budget {
            p.budget = b;
        }
        if let Some(h) = self.half_width {
            p.half_width = h;
        }
        if let Some(r) = self.resolution {
            p.resolution = r;
        }
        if let Some(t) = self.tol {
            p.tol = t;
        }
        p.assert_real_radical |= self.assert_real_radical;
    }
}

/// Parse, apply overrides, run. Errors map to exit codes via [`exit_code`].
pub fn run_text(cmd: Command, text: &str, overrides: &Overrides) -> Result<Outcome> {
    let mut pf = parse_problem(text)?;
    overrides.apply(&mut pf.params);
    run_subcommand(cmd, &pf)
}

/// Re-verify a report document given as JSON text.
pub fn run_verify(text: &str) -> Result<Outcome> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let (report, ok) = verify_report(&doc)?;
    Ok(Outcome {
        report,
        exit: if ok { exit::OK } else { exit::VERIFY_FAILED },
    })
}
