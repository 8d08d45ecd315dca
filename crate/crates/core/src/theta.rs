//! Theta-body membership through truncated moment matrices in the quotient ring.
//!
//! `P ∈ TH_k(I)` is tested by looking for pseudo-moments `y` on the standard
//! monomials with `y_1 = 1`, `L(x_i) = P_i`, and a PSD moment matrix
//! `M_ij = L(NF(B_i B_j))`. A feasible moment matrix gives a numerical Inside
//! verdict. Outside verdicts always carry a linear `f` with an exact k-sos
//! certificate and `f(P) < 0`, checked in rational arithmetic.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hull_margin, SampleCloud};
use crate::ideal::GroebnerContext;
use crate::linalg::{self, RatMatrix};
use crate::poly::{Monomial, Polynomial};
use crate::rational::{self, Rational};
use crate::sdp::{self, SdpConstraint, SdpFeasibilityProblem, SdpOptions, SdpOutcome, SymMatrix};
use crate::sos::{self, gram_constraints, verify_sos, SosCertificate, SosOptions};

#[derive(Clone, Debug, Default)]
pub struct ThetaOptions {
    pub sos: SosOptions,
}

impl ThetaOptions {
    fn sdp(&self) -> &SdpOptions {
        &self.sos.sdp
    }
}

/// Pseudo-moment feasibility problem stated directly on the moment matrix.
#[derive(Clone, Debug)]
pub struct MomentProblem {
    pub k: u32,
    pub basis: Vec<Monomial>,
    /// Monomials indexing the pseudo-moments.
    pub monomials: Vec<Monomial>,
    /// `None` when `y_1 = 1, L(x_i) = P_i` is already inconsistent.
    pub sdp: Option<SdpFeasibilityProblem>,
}

fn upper_index(m: usize, i: usize, j: usize) -> usize {
    i * m - i * (i + 1) / 2 + j
}

pub fn moment_problem(ctx: &GroebnerContext, k: u32, point: &[Rational]) -> Result<MomentProblem> {
    let n = ctx.nvars();
    let basis = ctx.standard_monomials(k);
    let m = basis.len();
    let mut entries: Vec<Polynomial> = Vec::with_capacity(m * (m + 1) / 2);
    for i in 0..m {
        for j in i..m {
            entries.push(ctx.normal_form(&Polynomial::term(Rational::one(), basis[i].mul(&basis[j]))));
        }
    }
    let var_nf: Vec<Polynomial> = (0..n).map(|i| ctx.normal_form(&Polynomial::var(n, i))).collect();
    let one_nf = ctx.normal_form(&Polynomial::one(n));
    let monomials = sos::sorted_monomials(
        ctx,
        entries
            .iter()
            .chain(&var_nf)
            .chain(std::iter::once(&one_nf))
            .flat_map(|p| p.terms().map(|(mono, _)| mono.clone()).collect::<Vec<_>>()),
    );
    let coords = |p: &Polynomial| -> Vec<Rational> { monomials.iter().map(|mono| p.coeff(mono)).collect() };
    // y_1 = 1 and L(x_i) = P_i
    let mut c: RatMatrix = vec![coords(&one_nf)];
    let mut d = vec![Rational::one()];
    for (nf, p) in var_nf.iter().zip(point) {
        c.push(coords(nf));
        d.push(p.clone());
    }
    let ny = monomials.len();
    let Some(y0) = linalg::solve(&c, &d, ny) else {
        return Ok(MomentProblem {
            k,
            basis,
            monomials,
            sdp: None,
        });
    };
    let null = linalg::nullspace(&c, ny);
    let t: RatMatrix = entries.iter().map(|e| coords(e)).collect();
    let tn: RatMatrix = t
        .iter()
        .map(|row| null.iter().map(|z| linalg::dot(row, z)).collect())
        .collect();
    let ty0 = linalg::mat_vec(&t, &y0);
    let mut problem = SdpFeasibilityProblem::new(m);
    for u in linalg::left_nullspace(&tn, null.len()) {
        let mut con = SdpConstraint::new(linalg::dot(&u, &ty0));
        for i in 0..m {
            for j in i..m {
                let w = &u[upper_index(m, i, j)];
                if !w.is_zero() {
                    con.add(i, j, w.clone());
                }
            }
        }
        problem.constraints.push(con);
    }
    Ok(MomentProblem {
        k,
        basis,
        monomials,
        sdp: Some(problem),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentWitness {
    pub moment_matrix: SymMatrix,
    pub residual: f64,
    pub min_eigenvalue: f64,
    /// Point evaluations at a point of the variety: exact moments.
    pub dirac: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ThetaVerdict {
    /// Numerical (tolerance-qualified) unless the witness is a Dirac moment vector.
    Inside(MomentWitness),
    /// `f` is linear, exactly k-sos modulo the ideal, and `f(P) < 0`.
    Outside {
        f: Polynomial,
        certificate: SosCertificate,
        value: Rational,
    },
    Undetermined { reason: String },
}

impl ThetaVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ThetaVerdict::Inside(_) => "Inside",
            ThetaVerdict::Outside { .. } => "Outside",
            ThetaVerdict::Undetermined { .. } => "Undetermined",
        }
    }

    pub fn is_inside(&self) -> bool {
        matches!(self, ThetaVerdict::Inside(_))
    }

    pub fn is_outside(&self) -> bool {
        matches!(self, ThetaVerdict::Outside { .. })
    }
}

fn dirac_witness(ctx: &GroebnerContext, k: u32, point: &[Rational]) -> Result<MomentWitness> {
    let basis = ctx.standard_monomials(k);
    let vals: Vec<f64> = basis
        .iter()
        .map(|b| Polynomial::term(Rational::one(), b.clone()).eval(point).map(|v| rational::to_f64(&v)))
        .collect::<Result<_>>()?;
    let m = basis.len();
    let mut x = SymMatrix::zeros(m);
    for i in 0..m {
        for j in i..m {
            x.set(i, j, vals[i] * vals[j]);
        }
    }
    let min_eigenvalue = if m == 0 { 0.0 } else { sdp::min_eigenvalue(&x) };
    Ok(MomentWitness {
        moment_matrix: x,
        residual: 0.0,
        min_eigenvalue,
        dirac: true,
    })
}

pub fn theta_membership(
    ctx: &GroebnerContext,
    k: u32,
    point: &[Rational],
    opts: &ThetaOptions,
) -> Result<ThetaVerdict> {
    if k < 1 {
        return Err(Error::Invalid("theta level k must be at least 1".into()));
    }
    if point.len() != ctx.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ctx.nvars(),
            found: point.len(),
        });
    }
    if !ctx.is_unit() {
        if ctx.check_point(point).is_ok() {
            return Ok(ThetaVerdict::Inside(dirac_witness(ctx, k, point)?));
        }
        let mp = moment_problem(ctx, k, point)?;
        if let Some(problem) = &mp.sdp {
            if let SdpOutcome::Feasible {
                x,
                min_eigenvalue,
                residual,
                ..
            } = sdp::solve_feasibility(problem, opts.sdp())?
            {
                return Ok(ThetaVerdict::Inside(MomentWitness {
                    moment_matrix: x,
                    residual,
                    min_eigenvalue,
                    dirac: false,
                }));
            }
        }
    }
    Ok(match find_separator(ctx, k, point, opts)? {
        Some((f, certificate, value)) => ThetaVerdict::Outside {
            f,
            certificate,
            value,
        },
        None => ThetaVerdict::Undetermined {
            reason: "no feasible moment matrix and no exactly validated separator".into(),
        },
    })
}

/// The validated separating linear functional, scaled to integer coefficients
/// with content 1.
pub fn separating_functional(
    ctx: &GroebnerContext,
    k: u32,
    point: &[Rational],
    opts: &ThetaOptions,
) -> Result<Option<Polynomial>> {
    Ok(match theta_membership(ctx, k, point, opts)? {
        ThetaVerdict::Outside { f, .. } => Some(f),
        _ => None,
    })
}

fn linear_poly(n: usize, c: &[Rational]) -> Polynomial {
    let mut f = Polynomial::constant(n, c[0].clone());
    for i in 0..n {
        f = f.add(&Polynomial::var(n, i).scale(&c[i + 1])).expect("same ring");
    }
    f
}

/// Scale by a positive rational so the coefficients are coprime integers.
fn normalize(f: &Polynomial, cert: &SosCertificate) -> (Polynomial, SosCertificate) {
    let coeffs: Vec<Rational> = f.terms().map(|(_, c)| c.clone()).collect();
    if coeffs.is_empty() {
        return (f.clone(), cert.clone());
    }
    let l = Rational::from_integer(rational::lcm_of_denominators(coeffs.iter()));
    let g = Rational::from_integer(rational::gcd_of_numerators(coeffs.iter().map(|c| c * &l).collect::<Vec<_>>().iter()));
    let s = l / g;
    (f.scale(&s), cert.scaled(&s))
}

fn combine(parts: &[(Rational, &SdpConstraint)], rhs: Rational) -> SdpConstraint {
    let mut out = SdpConstraint::new(rhs);
    for (w, c) in parts {
        if w.is_zero() {
            continue;
        }
        for (&(i, j), v) in &c.terms {
            out.add(i, j, w * v);
        }
    }
    out
}

/// Linear `f` with an exact k-sos certificate and `f(P) < 0`.
fn find_separator(
    ctx: &GroebnerContext,
    k: u32,
    point: &[Rational],
    opts: &ThetaOptions,
) -> Result<Option<(Polynomial, SosCertificate, Rational)>> {
    let n = ctx.nvars();
    let basis = ctx.standard_monomials(k);
    let cons = gram_constraints(ctx, &basis);
    let lin_nf: Vec<Polynomial> = std::iter::once(Polynomial::one(n))
        .chain((0..n).map(|i| Polynomial::var(n, i)))
        .map(|p| ctx.normal_form(&p))
        .collect();
    let monos = sos::sorted_monomials(
        ctx,
        cons.keys()
            .cloned()
            .chain(lin_nf.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())),
    );
    // s[m][c]: coefficient of monomial m in NF of the c-th linear basis element
    let s: RatMatrix = monos
        .iter()
        .map(|m| lin_nf.iter().map(|p| p.coeff(m)).collect())
        .collect();
    let mut p1 = vec![Rational::one()];
    p1.extend(point.iter().cloned());

    // A linear polynomial in the ideal that is nonzero at P separates on its own.
    if let Some(kv) = linalg::nullspace(&s, n + 1)
        .into_iter()
        .find(|kv| !linalg::dot(kv, &p1).is_zero())
    {
        let val = linalg::dot(&kv, &p1);
        let c: Vec<Rational> = kv.iter().map(|x| -x / &val).collect();
        let f = linear_poly(n, &c);
        let cert = SosCertificate::from_gram(k, basis.clone(), linalg::zeros(basis.len(), basis.len()))
            .expect("zero matrix is PSD");
        return Ok(validate(ctx, f, cert, point));
    }
    if basis.is_empty() {
        return Ok(None);
    }
    let empty = SdpConstraint::new(Rational::zero());
    let con_of = |m: &Monomial| cons.get(m).unwrap_or(&empty);
    let mut problem = SdpFeasibilityProblem::new(basis.len());
    for u in linalg::left_nullspace(&s, n + 1) {
        let parts: Vec<(Rational, &SdpConstraint)> =
            u.iter().cloned().zip(monos.iter().map(con_of)).collect();
        problem.constraints.push(combine(&parts, Rational::zero()));
    }
    // f(P) = rho · w(G) with rho = S (SᵀS)⁻¹ (1, P)
    let st = linalg::transpose(&s, n + 1);
    let sts: RatMatrix = st
        .iter()
        .map(|a| st.iter().map(|b| linalg::dot(a, b)).collect())
        .collect();
    let z = linalg::solve(&sts, &p1, n + 1).expect("SᵀS is invertible");
    let rho = linalg::mat_vec(&s, &z);
    let parts: Vec<(Rational, &SdpConstraint)> = rho.iter().cloned().zip(monos.iter().map(con_of)).collect();
    problem.constraints.push(combine(&parts, -Rational::one()));

    let coefficients = |g: &RatMatrix| -> Vec<Rational> {
        let w: Vec<Rational> = monos.iter().map(|m| con_of(m).eval_exact(g)).collect();
        let stw = linalg::mat_vec(&st, &w);
        linalg::solve(&sts, &stw, n + 1).expect("SᵀS is invertible")
    };
    for x in min_trace_candidates(&problem, opts)? {
        let caps = opts.sos.cap_ladder();
        let Some(g) = sos::round_to_exact(&problem, &x, &caps, opts.sdp().facial_reduction) else {
            continue;
        };
        let Some(cert) = SosCertificate::from_gram(k, basis.clone(), g.clone()) else {
            continue;
        };
        let f = linear_poly(n, &coefficients(&g));
        if let Some(found) = validate(ctx, f, cert, point) {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn validate(
    ctx: &GroebnerContext,
    f: Polynomial,
    cert: SosCertificate,
    point: &[Rational],
) -> Option<(Polynomial, SosCertificate, Rational)> {
    let (f, cert) = normalize(&f, &cert);
    let value = f.eval(point).ok()?;
    (value.is_negative() && verify_sos(&cert, &f, ctx)).then_some((f, cert, value))
}

/// Feasible Gram matrices for increasing trace bounds, starting near the smallest
/// feasible trace found by bisection; low-trace solutions tend to be the extreme,
/// small-denominator separators.
fn min_trace_candidates(problem: &SdpFeasibilityProblem, opts: &ThetaOptions) -> Result<Vec<SymMatrix>> {
    let m = problem.dim;
    let bisect_opts = SdpOptions {
        max_iters: opts.sdp().max_iters.min(5_000),
        ..opts.sdp().clone()
    };
    let with_trace = |t: f64| -> Result<Option<SymMatrix>> {
        let mut p = problem.clone();
        let mut tr = SdpConstraint::new(rational::approximate(t, 1 << 20));
        for i in 0..m {
            tr.add(i, i, Rational::one());
        }
        p.constraints.push(tr);
        Ok(match sdp::solve_feasibility(&p, &bisect_opts)? {
            SdpOutcome::Feasible { x, .. } => Some(x),
            _ => None,
        })
    };
    let mut hi = 1.0;
    let mut best = None;
    for _ in 0..24 {
        if let Some(x) = with_trace(hi)? {
            best = Some(x);
            break;
        }
        hi *= 2.0;
    }
    let Some(mut x_hi) = best else {
        // Fall back to the plain feasibility problem.
        return Ok(sdp::solve_feasibility(problem, opts.sdp())?
            .primal()
            .cloned()
            .into_iter()
            .collect());
    };
    let mut lo = 0.0;
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        match with_trace(mid)? {
            Some(x) => {
                hi = mid;
                x_hi = x;
            }
            None => lo = mid,
        }
    }
    let mut out = vec![x_hi];
    for factor in [1.01, 1.5, 4.0] {
        if let Some(x) = with_trace(hi * factor)? {
            out.push(x);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub point: Vec<Rational>,
    pub k: u32,
    pub verdict: ThetaVerdict,
    /// Separation margin of the point from the sampled hull (0 if not separated).
    pub hull_margin: Rational,
    /// Inside at this level while outside the sampled hull by more than ten times
    /// the sampling tolerance.
    pub gap_evidence: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub k_max: u32,
    pub rows: Vec<ProbeRow>,
    /// Points Outside at some level but Inside at a higher one.
    pub monotonicity_violations: Vec<Vec<Rational>>,
    /// Points inside the sampled hull that were not found Inside.
    pub containment_violations: Vec<(Vec<Rational>, u32)>,
    pub real_radical_asserted: bool,
}

impl ProbeReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("point,k,verdict,hull_margin,gap_evidence\n");
        for r in &self.rows {
            out.push_str(&format!(
                "\"{}\",{},{},{},{}\n",
                rational::fmt_point(&r.point),
                r.k,
                r.verdict.label(),
                rational::fmt(&r.hull_margin),
                r.gap_evidence
            ));
        }
        out
    }
}

pub fn theta_hierarchy_probe(
    ctx: &GroebnerContext,
    k_max: u32,
    cloud: &SampleCloud,
    points: &[Vec<Rational>],
    real_radical_asserted: bool,
    opts: &ThetaOptions,
) -> Result<ProbeReport> {
    if k_max < 1 {
        return Err(Error::Invalid("kMax must be at least 1".into()));
    }
    let gap_threshold = rational::approximate(10.0 * cloud.params.tol, 1_000_000_000_000);
    // Real points of the variety lie in the hull by definition.
    let margins: Vec<Rational> = points
        .par_iter()
        .map(|p| {
            if ctx.check_point(p).is_ok() {
                Rational::zero()
            } else {
                hull_margin(cloud, p)
            }
        })
        .collect();
    let jobs: Vec<(usize, u32)> = (0..points.len())
        .flat_map(|i| (1..=k_max).map(move |k| (i, k)))
        .collect();
    let verdicts = jobs
        .par_iter()
        .map(|&(i, k)| theta_membership(ctx, k, &points[i], opts))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(jobs.len());
    let mut by_point: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
    let mut containment_violations = Vec::new();
    for (&(i, k), verdict) in jobs.iter().zip(verdicts) {
        let margin = margins[i].clone();
        let inside = verdict.is_inside();
        if margin.is_zero() && !inside {
            containment_violations.push((points[i].clone(), k));
        }
        by_point.entry(i).or_default().push(verdict.is_outside());
        rows.push(ProbeRow {
            point: points[i].clone(),
            k,
            gap_evidence: inside && margin > gap_threshold,
            hull_margin: margin,
            verdict,
        });
    }
    let monotonicity_violations = by_point
        .into_iter()
        .filter(|(i, outs)| {
            let first_out = outs.iter().position(|&o| o);
            let _ = i;
            first_out.is_some_and(|f| {
                rows.iter()
                    .filter(|r| r.point == points[*i] && r.k as usize > f + 1)
                    .any(|r| r.verdict.is_inside())
            })
        })
        .map(|(i, _)| points[i].clone())
        .collect();
    Ok(ProbeReport {
        k_max,
        rows,
        monotonicity_violations,
        containment_violations,
        real_radical_asserted,
    })
}
