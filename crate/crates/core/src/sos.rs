//! Sums of squares modulo an ideal via Gram matrices over standard monomials,
//! with exact rational certificates.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use rayon::prelude::*;

use crate::arcsearch::{strong_nonneg_report, NegativeArcCertificate, SearchBudget, SearchVerdict};
use crate::error::{Error, Result};
use crate::geometry::{nonneg_on_cloud, snap_to_variety, CloudMinimum, SampleCloud};
use crate::ideal::GroebnerContext;
use crate::linalg::{self, RatMatrix};
use crate::poly::{Degree, Monomial, Polynomial};
use crate::rational::{self, Rational};
use crate::sdp::{self, DualWitness, SdpConstraint, SdpFeasibilityProblem, SdpOptions, SdpOutcome, SymMatrix};

/// Gram-matrix feasibility problem for `f ≡ vᵀ G v (mod I)` where `v` lists the
/// standard monomials of degree at most `k`.
#[derive(Clone, Debug)]
pub struct GramProblem {
    pub basis: Vec<Monomial>,
    /// Monomial indexing each constraint of `sdp`.
    pub monomials: Vec<Monomial>,
    pub sdp: SdpFeasibilityProblem,
    pub target: Polynomial,
}

/// Per-monomial linear constraints on `G` so that `NF(vᵀ G v)` has coefficient
/// `target_coeff(m)` at each monomial `m`. Shared with the theta module.
pub fn gram_constraints(
    ctx: &GroebnerContext,
    basis: &[Monomial],
) -> BTreeMap<Monomial, SdpConstraint> {
    let n = ctx.nvars();
    let mut cons: BTreeMap<Monomial, SdpConstraint> = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let prod = Polynomial::term(Rational::one(), basis[i].mul(&basis[j]));
            let nf = ctx.normal_form(&prod);
            debug_assert_eq!(nf.nvars(), n);
            let mult = if i == j { Rational::one() } else { rational::int(2) };
            for (m, c) in nf.terms() {
                cons.entry(m.clone())
                    .or_insert_with(|| SdpConstraint::new(Rational::zero()))
                    .add(i, j, c * &mult);
            }
        }
    }
    cons
}

pub fn sorted_monomials(ctx: &GroebnerContext, it: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = it.into_iter().collect();
    v.sort_by(|a, b| a.degree().cmp(&b.degree()).then(ctx.order().cmp(a, b)));
    v.dedup();
    v
}

pub fn gram_problem(f: &Polynomial, ctx: &GroebnerContext, k: u32) -> Result<GramProblem> {
    if k < 1 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    if f.nvars() != ctx.nvars() {
        return Err(Error::RingMismatch {
            left: f.nvars(),
            right: ctx.nvars(),
        });
    }
    let basis = ctx.standard_monomials(k);
    let target = ctx.normal_form(f);
    let mut cons = gram_constraints(ctx, &basis);
    for (m, c) in target.terms() {
        cons.entry(m.clone())
            .or_insert_with(|| SdpConstraint::new(Rational::zero()))
            .rhs = c.clone();
    }
    let monomials = sorted_monomials(ctx, cons.keys().cloned());
    let constraints = monomials.iter().map(|m| cons[m].clone()).collect();
    Ok(GramProblem {
        sdp: SdpFeasibilityProblem {
            dim: basis.len(),
            constraints,
        },
        basis,
        monomials,
        target,
    })
}

/// `f ≡ Σ λ_i g_i² (mod I)` with rational `λ_i ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SosCertificate {
    pub k: u32,
    /// Standard monomials indexing the Gram matrix.
    pub basis: Vec<Monomial>,
    pub gram: RatMatrix,
    pub l: RatMatrix,
    pub d: Vec<Rational>,
    pub summands: Vec<(Rational, Polynomial)>,
}

impl SosCertificate {
    /// Build from an exact PSD Gram matrix; `None` if it is not PSD.
    pub fn from_gram(k: u32, basis: Vec<Monomial>, gram: RatMatrix) -> Option<Self> {
        let ldl = linalg::ldl_psd(&gram)?;
        let nvars = basis.first().map_or(0, Monomial::nvars);
        let mut summands = Vec::new();
        for (j, dj) in ldl.d.iter().enumerate() {
            if dj.is_zero() {
                continue;
            }
            let g = Polynomial::from_terms(
                nvars,
                (j..basis.len()).map(|i| (basis[i].clone(), ldl.l[i][j].clone())),
            );
            summands.push((dj.clone(), g));
        }
        Some(SosCertificate {
            k,
            basis,
            gram,
            l: ldl.l,
            d: ldl.d,
            summands,
        })
    }

    pub fn sum(&self, nvars: usize) -> Polynomial {
        self.summands
            .iter()
            .fold(Polynomial::zero(nvars), |acc, (w, g)| {
                acc.add(&g.pow(2).scale(w)).expect("same ring")
            })
    }

    pub fn scaled(&self, c: &Rational) -> SosCertificate {
        SosCertificate {
            k: self.k,
            basis: self.basis.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
            l: self.l.clone(),
            d: self.d.iter().map(|v| v * c).collect(),
            summands: self
                .summands
                .iter()
                .map(|(w, g)| (w * c, g.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SosCheckFailure {
    NegativeWeight,
    DegreeTooHigh,
    ResidualNotInIdeal,
    RingMismatch,
}

/// Exact check of weights, degrees, and the identity modulo the ideal.
pub fn verify_sos_detailed(
    cert: &SosCertificate,
    f: &Polynomial,
    ctx: &GroebnerContext,
) -> std::result::Result<(), SosCheckFailure> {
    let n = ctx.nvars();
    if f.nvars() != n || cert.summands.iter().any(|(_, g)| g.nvars() != n) {
        return Err(SosCheckFailure::RingMismatch);
    }
    if cert.summands.iter().any(|(w, _)| w.is_negative()) {
        return Err(SosCheckFailure::NegativeWeight);
    }
    if cert
        .summands
        .iter()
        .any(|(_, g)| g.total_degree() > Degree::Finite(cert.k))
    {
        return Err(SosCheckFailure::DegreeTooHigh);
    }
    let diff = f.sub(&cert.sum(n)).expect("same ring");
    if !ctx.is_member(&diff) {
        return Err(SosCheckFailure::ResidualNotInIdeal);
    }
    Ok(())
}

pub fn verify_sos(cert: &SosCertificate, f: &Polynomial, ctx: &GroebnerContext) -> bool {
    verify_sos_detailed(cert, f, ctx).is_ok()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SosOptions {
    pub sdp: SdpOptions,
    pub denominator_cap: u64,
    pub retries: u32,
    pub retry_factor: u64,
}

impl Default for SosOptions {
    fn default() -> Self {
        SosOptions {
            sdp: SdpOptions::default(),
            denominator_cap: 1_000_000,
            retries: 2,
            retry_factor: 1_000,
        }
    }
}

impl SosOptions {
    /// Denominator caps tried in order: powers of ten up to the cap, then the retries.
    pub fn cap_ladder(&self) -> Vec<u64> {
        let mut caps = Vec::new();
        let mut c = 1u64;
        while c < self.denominator_cap {
            caps.push(c);
            c = c.saturating_mul(10);
        }
        caps.push(self.denominator_cap);
        let mut c = self.denominator_cap;
        for _ in 0..self.retries {
            c = c.saturating_mul(self.retry_factor);
            caps.push(c);
        }
        caps
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SosVerdict {
    ExactCertificate(SosCertificate),
    /// The Gram problem has a numerical dual witness; not a proof of non-sos-ness.
    NumericallyInfeasible(DualWitness),
    Undetermined { gap: f64, iterations: usize, reason: String },
}

impl SosVerdict {
    pub fn certificate(&self) -> Option<&SosCertificate> {
        match self {
            SosVerdict::ExactCertificate(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SosVerdict::ExactCertificate(_) => "ExactCertificate",
            SosVerdict::NumericallyInfeasible(_) => "NumericallyInfeasible",
            SosVerdict::Undetermined { .. } => "Undetermined",
        }
    }
}

/// Round a numerical Gram matrix on the reduced face, project exactly onto the
/// affine constraints, and keep it if the exact LDLᵀ is PSD.
pub(crate) fn round_to_exact(
    problem: &SdpFeasibilityProblem,
    x: &SymMatrix,
    caps: &[u64],
    facial_reduction: bool,
) -> Option<RatMatrix> {
    let red = problem.reduce(facial_reduction);
    if red.contradiction.is_some() {
        return None;
    }
    let face = &red.face;
    let m = face.len();
    let cols = m * (m + 1) / 2;
    let idx = |i: usize, j: usize| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * m - i * (i + 1) / 2 + j
    };
    let a: RatMatrix = red
        .restricted
        .iter()
        .map(|(_, c)| {
            let mut row = vec![Rational::zero(); cols];
            for (&(i, j), v) in &c.terms {
                row[idx(i, j)] = v.clone();
            }
            row
        })
        .collect();
    let b: Vec<Rational> = red.restricted.iter().map(|(_, c)| c.rhs.clone()).collect();
    let aat: RatMatrix = a
        .iter()
        .map(|ri| a.iter().map(|rj| linalg::dot(ri, rj)).collect())
        .collect();

    for &cap in caps {
        let mut v = vec![Rational::zero(); cols];
        for i in 0..m {
            for j in i..m {
                v[idx(i, j)] = rational::approximate(x.get(face[i], face[j]), cap);
            }
        }
        let r: Vec<Rational> = linalg::mat_vec(&a, &v)
            .into_iter()
            .zip(&b)
            .map(|(av, bi)| av - bi)
            .collect();
        if r.iter().any(|ri| !ri.is_zero()) {
            let Some(mu) = linalg::solve(&aat, &r, a.len()) else {
                continue;
            };
            for (row, mi) in a.iter().zip(&mu) {
                if mi.is_zero() {
                    continue;
                }
                for (vk, ak) in v.iter_mut().zip(row) {
                    if !ak.is_zero() {
                        *vk -= ak * mi;
                    }
                }
            }
        }
        let mut g = linalg::zeros(problem.dim, problem.dim);
        for i in 0..m {
            for j in i..m {
                let val = v[idx(i, j)].clone();
                g[face[i]][face[j]] = val.clone();
                g[face[j]][face[i]] = val;
            }
        }
        if linalg::ldl_psd(&g).is_some()
            && problem
                .constraints
                .iter()
                .all(|c| c.eval_exact(&g) == c.rhs)
        {
            return Some(g);
        }
    }
    None
}

pub fn check_k_sos(f: &Polynomial, ctx: &GroebnerContext, k: u32, opts: &SosOptions) -> Result<SosVerdict> {
    let gp = gram_problem(f, ctx, k)?;
    let outcome = sdp::solve_feasibility(&gp.sdp, &opts.sdp)?;
    let (gap, iterations) = match &outcome {
        SdpOutcome::Infeasible(w) => return Ok(SosVerdict::NumericallyInfeasible(w.clone())),
        SdpOutcome::Feasible { iterations, .. } => (0.0, *iterations),
        SdpOutcome::Undetermined(d) => (d.gap, d.iterations),
    };
    let x = outcome.primal().expect("primal iterate");
    if let Some(g) = round_to_exact(&gp.sdp, x, &opts.cap_ladder(), opts.sdp.facial_reduction) {
        if let Some(cert) = SosCertificate::from_gram(k, gp.basis.clone(), g) {
            if verify_sos(&cert, f, ctx) {
                return Ok(SosVerdict::ExactCertificate(cert));
            }
        }
    }
    let reason = if outcome.is_feasible() {
        "numerically feasible but rounding did not produce an exact certificate"
    } else {
        "solver did not converge and the best iterate did not round to a certificate"
    };
    Ok(SosVerdict::Undetermined {
        gap,
        iterations,
        reason: reason.into(),
    })
}

/// Settings shared by the candidate scans.
#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub sos: SosOptions,
    pub max_order: usize,
    pub budget: SearchBudget,
    /// `f ≥ -tol` on the cloud counts as nonnegative.
    pub nonneg_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            sos: SosOptions::default(),
            max_order: 4,
            budget: SearchBudget::default(),
            nonneg_tol: 1e-9,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowClass {
    /// Exact k-sos certificate.
    KSos,
    /// Nonnegative on samples with a negative arc: rigorously not k-sos for any k.
    CertifiedObstruction,
    /// Nonnegative on samples, Gram problem numerically infeasible, no arc found.
    NumericalObstruction,
    NegativeOnSamples,
    /// A negative arc exists, so the candidate is irrelevant to weak sos-ness.
    NotStronglyNonneg,
    /// No arc within bounds and no certificate.
    PotentialWeakViolation,
    Undetermined,
}

impl RowClass {
    pub fn label(self) -> &'static str {
        match self {
            RowClass::KSos => "k-sos",
            RowClass::CertifiedObstruction => "obstruction witness (negative arc)",
            RowClass::NumericalObstruction => "obstruction witness (numerical only)",
            RowClass::NegativeOnSamples => "negative on samples",
            RowClass::NotStronglyNonneg => "not strongly nonnegative",
            RowClass::PotentialWeakViolation => "potential weak-sos violation (bounded evidence)",
            RowClass::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub candidate: Polynomial,
    pub cloud_min: CloudMinimum,
    pub sos: SosVerdict,
    pub arcs: Vec<(Vec<Rational>, SearchVerdict)>,
    pub class: RowClass,
}

impl ScanRow {
    pub fn negative_arc(&self) -> Option<(&[Rational], &NegativeArcCertificate)> {
        self.arcs
            .iter()
            .find_map(|(p, v)| v.certificate().map(|c| (p.as_slice(), c)))
    }
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub d: u32,
    pub k: u32,
    pub rows: Vec<ScanRow>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ScanMode {
    DkSos,
    WeaklySos,
}

fn scan_row(
    ctx: &GroebnerContext,
    k: u32,
    f: &Polynomial,
    points: &[Vec<Rational>],
    cloud: &SampleCloud,
    opts: &ScanOptions,
    mode: ScanMode,
) -> Result<ScanRow> {
    let cloud_min = nonneg_on_cloud(f, cloud, opts.nonneg_tol);
    let mut pts: Vec<Vec<Rational>> = points.to_vec();
    if let Some(q) = cloud_min.at.as_ref().and_then(|q| snap_to_variety(ctx, q, 1000)) {
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    let arcs = strong_nonneg_report(ctx, f, &pts, opts.max_order, &opts.budget)?.rows;
    let sos = check_k_sos(f, ctx, k, &opts.sos)?;
    let has_arc = arcs.iter().any(|(_, v)| v.certificate().is_some());
    let class = match (&sos, mode) {
        (SosVerdict::ExactCertificate(_), _) => RowClass::KSos,
        _ if !cloud_min.nonneg => RowClass::NegativeOnSamples,
        (_, ScanMode::DkSos) if has_arc => RowClass::CertifiedObstruction,
        (SosVerdict::NumericallyInfeasible(_), ScanMode::DkSos) => RowClass::NumericalObstruction,
        (_, ScanMode::DkSos) => RowClass::Undetermined,
        (_, ScanMode::WeaklySos) if has_arc => RowClass::NotStronglyNonneg,
        (_, ScanMode::WeaklySos) => RowClass::PotentialWeakViolation,
    };
    Ok(ScanRow {
        candidate: f.clone(),
        cloud_min,
        sos,
        arcs,
        class,
    })
}

fn scan(
    ctx: &GroebnerContext,
    d: u32,
    k: u32,
    candidates: &[Polynomial],
    points: &[Vec<Rational>],
    cloud: &SampleCloud,
    opts: &ScanOptions,
    mode: ScanMode,
) -> Result<ScanReport> {
    for c in candidates {
        if c.total_degree() > Degree::Finite(d) {
            return Err(Error::DegreeViolation {
                candidate: c.to_string(),
                degree: c.total_degree().as_i64(),
                bound: d as usize,
            });
        }
    }
    let rows = candidates
        .par_iter()
        .map(|f| scan_row(ctx, k, f, points, cloud, opts, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { d, k, rows })
}

/// Candidate-level evidence about (d,k)-sos-ness: each nonnegative candidate that
/// is refuted by an arc or has an infeasible Gram problem is an obstruction row.
pub fn dk_sos_scan(
    ctx: &GroebnerContext,
    d: u32,
    k: u32,
    candidates: &[Polynomial],
    points: &[Vec<Rational>],
    cloud: &SampleCloud,
    opts: &ScanOptions,
) -> Result<ScanReport> {
    scan(ctx, d, k, candidates, points, cloud, opts, ScanMode::DkSos)
}

/// Like [`dk_sos_scan`], but a candidate only counts against weak (d,k)-sos-ness
/// when no negative arc is found within bounds and it is not k-sos.
pub fn weakly_sos_scan(
    ctx: &GroebnerContext,
    d: u32,
    k: u32,
    candidates: &[Polynomial],
    points: &[Vec<Rational>],
    cloud: &SampleCloud,
    opts: &ScanOptions,
) -> Result<ScanReport> {
    scan(ctx, d, k, candidates, points, cloud, opts, ScanMode::WeaklySos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::{OrderKind, TermOrder};
    use crate::rational::{frac, int};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ctx(gens: &[&str], vars: &[&str], order: TermOrder) -> GroebnerContext {
        let n = names(vars);
        GroebnerContext::new(
            gens.iter().map(|g| parse_polynomial(g, &n).unwrap()).collect(),
            order,
        )
        .unwrap()
    }

    fn p(s: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(s, &names(vars)).unwrap()
    }

    #[test]
    fn gram_constraints_for_double_point() {
        let c = ctx(&["x^2"], &["x"], TermOrder::grevlex(1));
        let gp = gram_problem(&p("x", &["x"]), &c, 1).unwrap();
        assert_eq!(gp.basis.len(), 2);
        // constant: G11 = 0; x: 2 G12 = 1; x^2 vanishes modulo the ideal
        assert_eq!(gp.monomials.len(), 2);
        let cst = &gp.sdp.constraints[0];
        assert_eq!(cst.rhs, int(0));
        assert_eq!(cst.terms.get(&(0, 0)), Some(&int(1)));
        let lin = &gp.sdp.constraints[1];
        assert_eq!(lin.rhs, int(1));
        assert_eq!(lin.terms.get(&(0, 1)), Some(&int(2)));
        assert_eq!(lin.terms.len(), 1);
    }

    #[test]
    fn double_point_is_numerically_infeasible() {
        let c = ctx(&["x^2"], &["x"], TermOrder::grevlex(1));
        for k in 1..=3 {
            match check_k_sos(&p("x", &["x"]), &c, k, &SosOptions::default()).unwrap() {
                SosVerdict::NumericallyInfeasible(w) => assert!(w.margin >= 1e-6),
                v => panic!("k={k}: {v:?}"),
            }
        }
    }

    #[test]
    fn constant_one_is_sos() {
        let c = ctx(&["y^2 - x^3"], &["x", "y"], TermOrder::grevlex(2));
        let v = check_k_sos(&p("1", &["x", "y"]), &c, 1, &SosOptions::default()).unwrap();
        let cert = v.certificate().expect("certificate");
        assert!(verify_sos(cert, &p("1", &["x", "y"]), &c));
    }

    #[test]
    fn fat_point_y_is_x_squared() {
        let vars = ["x", "y"];
        let lex = TermOrder::with_ranking(OrderKind::Lex, vec![1, 0]);
        for order in [lex, TermOrder::grevlex(2)] {
            let c = ctx(&["y - x^2", "y^2"], &vars, order);
            let v = check_k_sos(&p("y", &vars), &c, 1, &SosOptions::default()).unwrap();
            let cert = v.certificate().expect("certificate");
            assert!(verify_sos(cert, &p("y", &vars), &c));
            assert!(cert
                .summands
                .iter()
                .any(|(w, g)| *w == int(1) && *g == p("x", &vars)));
        }
    }

    #[test]
    fn circle_certificate() {
        let vars = ["x", "y"];
        let c = ctx(&["x^2 + y^2 - 1"], &vars, TermOrder::grevlex(2));
        let f = p("1 - x", &vars);
        let v = check_k_sos(&f, &c, 1, &SosOptions::default()).unwrap();
        let cert = v.certificate().expect("certificate");
        assert!(verify_sos(cert, &f, &c));
        let half = frac(1, 2);
        let expect = p("1/2 (1 - x)^2 + 1/2 y^2", &vars);
        assert!(c.is_member(&cert.sum(2).sub(&expect).unwrap()));
        assert!(cert.summands.iter().all(|(w, _)| *w == half));
    }

    #[test]
    fn tampered_certificates_fail() {
        let vars = ["x"];
        let zero_ideal = GroebnerContext::new(vec![], TermOrder::grevlex(1)).unwrap();
        let f = p("x^2 + 2x + 1", &vars);
        let cert = SosCertificate {
            k: 1,
            basis: vec![],
            gram: vec![],
            l: vec![],
            d: vec![],
            summands: vec![(int(1), p("x + 1", &vars))],
        };
        assert!(verify_sos(&cert, &f, &zero_ideal));
        let mut bad = cert.clone();
        bad.summands[0].0 = int(-1);
        assert_eq!(
            verify_sos_detailed(&bad, &f, &zero_ideal),
            Err(SosCheckFailure::NegativeWeight)
        );
        let mut wrong = cert.clone();
        wrong.summands[0].1 = p("x - 1", &vars);
        assert_eq!(
            verify_sos_detailed(&wrong, &f, &zero_ideal),
            Err(SosCheckFailure::ResidualNotInIdeal)
        );
        let mut deep = cert;
        deep.k = 0;
        assert_eq!(
            verify_sos_detailed(&deep, &f, &zero_ideal),
            Err(SosCheckFailure::DegreeTooHigh)
        );
    }

    #[test]
    fn cusp_x_is_not_sos_numerically() {
        let vars = ["x", "y"];
        for g in ["y^2 - x^3", "y^2 - x^3 + x^4"] {
            let c = ctx(&[g], &vars, TermOrder::grevlex(2));
            for k in 1..=3 {
                let v = check_k_sos(&p("x", &vars), &c, k, &SosOptions::default()).unwrap();
                assert!(matches!(v, SosVerdict::NumericallyInfeasible(_)), "{g} k={k}: {v:?}");
            }
        }
    }

    #[test]
    fn cap_ladder_includes_retries() {
        let caps = SosOptions::default().cap_ladder();
        assert_eq!(caps.first(), Some(&1));
        assert!(caps.contains(&1_000_000));
        assert_eq!(caps.last(), Some(&1_000_000_000_000));
    }

    fn cloud(c: &GroebnerContext, lower: &[f64], upper: &[f64]) -> SampleCloud {
        crate::geometry::sample_variety(
            c,
            &crate::geometry::SampleParams {
                lower: lower.to_vec(),
                upper: upper.to_vec(),
                resolution: 0.2,
                tol: 1e-9,
                max_newton_iters: 200,
            },
        )
        .unwrap()
    }

    #[test]
    fn cusp_scan_rows() {
        let vars = ["x", "y"];
        let c = ctx(&["y^2 - x^3"], &vars, TermOrder::grevlex(2));
        let cl = cloud(&c, &[0.0, -3.0], &[2.0, 3.0]);
        let o = vec![int(0), int(0)];
        let opts = ScanOptions::default();
        let cands = [p("x", &vars), p("1", &vars)];
        let r = dk_sos_scan(&c, 1, 2, &cands, &[o.clone()], &cl, &opts).unwrap();
        assert_eq!(r.rows[0].class, RowClass::CertifiedObstruction);
        assert!(r.rows[0].cloud_min.nonneg);
        assert!(matches!(r.rows[0].sos, SosVerdict::NumericallyInfeasible(_)));
        assert!(r.rows[0].negative_arc().is_some());
        assert_eq!(r.rows[1].class, RowClass::KSos);

        let w = weakly_sos_scan(&c, 1, 2, &[p("x + 1", &vars), p("1", &vars)], &[o.clone()], &cl, &opts)
            .unwrap();
        assert_eq!(w.rows[0].class, RowClass::PotentialWeakViolation);
        assert!(w.rows[0].negative_arc().is_none());
        assert_eq!(w.rows[1].class, RowClass::KSos);

        let err = dk_sos_scan(&c, 1, 2, &[p("x^2", &vars)], &[o], &cl, &opts).unwrap_err();
        assert!(matches!(err, Error::DegreeViolation { degree: 2, .. }));
    }

    #[test]
    fn consistent_rows_for_sos_candidates() {
        let vars = ["x", "y"];
        let fat = ctx(&["y - x^2", "y^2"], &vars, TermOrder::grevlex(2));
        let cl = cloud(&fat, &[-1.0, -1.0], &[1.0, 1.0]);
        let r = dk_sos_scan(&fat, 1, 1, &[p("y", &vars)], &[vec![int(0), int(0)]], &cl, &ScanOptions::default())
            .unwrap();
        assert_eq!(r.rows[0].class, RowClass::KSos);
        let circle = ctx(&["x^2 + y^2 - 1"], &vars, TermOrder::grevlex(2));
        let cl = cloud(&circle, &[-2.0, -2.0], &[2.0, 2.0]);
        let w = weakly_sos_scan(
            &circle,
            1,
            1,
            &[p("1 - x", &vars)],
            &[vec![int(1), int(0)]],
            &cl,
            &ScanOptions::default(),
        )
        .unwrap();
        assert_eq!(w.rows[0].class, RowClass::KSos);
    }
}
