//! Negative-arc certificates: arcs `φ` at a point with `φ(f)` a negative jet.
//!
//! The search translates the point to the origin and lifts arcs one order at a
//! time. Given the coefficients of `ε¹..ε^{j-1}`, validity modulo `ε^{j+1}` is a
//! linear system `J a_j = -R_j` in the new coefficient vector, where `J` is the
//! Jacobian of the generators at the point. Solutions are enumerated as a
//! particular solution plus grid combinations of a kernel basis; with all but
//! the last kernel coordinate fixed, exact rational roots of the next order's
//! consistency condition are added as well. A verdict of "no arc" is only ever a statement about the bounded
//! search.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::GroebnerContext;
use crate::jet::{ArcHom, Leading};
use crate::linalg::{self, RatMatrix};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::univariate::{self, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct SearchBudget {
    pub max_branches_per_order: usize,
    /// Values tried for each kernel coordinate, in order.
    pub grid: Vec<Rational>,
    pub root_isolation: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_branches_per_order: 20_000,
            grid: [(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1)]
                .iter()
                .map(|&(n, d)| rational::frac(n, d))
                .collect(),
            root_isolation: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeArcCertificate {
    arc: ArcHom,
    leading_index: usize,
    leading_coeff: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcCheckFailure {
    RingMismatch,
    InvalidArc,
    WrongBasepoint,
    NonnegativeImage,
}

impl ArcCheckFailure {
    pub fn code(self) -> &'static str {
        match self {
            ArcCheckFailure::RingMismatch => "ring-mismatch",
            ArcCheckFailure::InvalidArc => "arc-not-in-kernel",
            ArcCheckFailure::WrongBasepoint => "wrong-basepoint",
            ArcCheckFailure::NonnegativeImage => "image-nonnegative",
        }
    }
}

fn check_arc(
    arc: &ArcHom,
    ctx: &GroebnerContext,
    point: &[Rational],
    f: &Polynomial,
) -> std::result::Result<(usize, Rational), ArcCheckFailure> {
    if f.nvars() != ctx.nvars() || arc.images().len() != ctx.nvars() {
        return Err(ArcCheckFailure::RingMismatch);
    }
    if arc.basepoint() != point {
        return Err(ArcCheckFailure::WrongBasepoint);
    }
    if !arc.is_valid(ctx) {
        return Err(ArcCheckFailure::InvalidArc);
    }
    match arc.apply(f).map_err(|_| ArcCheckFailure::RingMismatch)?.leading() {
        Leading::Term { index, coeff } if coeff.is_negative() => Ok((index, coeff)),
        _ => Err(ArcCheckFailure::NonnegativeImage),
    }
}

impl NegativeArcCertificate {
    /// Re-checks validity, basepoint and negativity exactly.
    pub fn new(arc: ArcHom, ctx: &GroebnerContext, point: &[Rational], f: &Polynomial) -> Result<Self> {
        let (leading_index, leading_coeff) = check_arc(&arc, ctx, point, f)
            .map_err(|e| Error::Invalid(format!("not a negative-arc certificate: {}", e.code())))?;
        Ok(NegativeArcCertificate {
            arc,
            leading_index,
            leading_coeff,
        })
    }

    pub fn arc(&self) -> &ArcHom {
        &self.arc
    }

    pub fn order(&self) -> usize {
        self.arc.order()
    }

    /// `(N, a_N)` with `a_N < 0` the lowest nonzero coefficient of `φ(f)`.
    pub fn leading(&self) -> (usize, &Rational) {
        (self.leading_index, &self.leading_coeff)
    }
}

pub fn verify_certificate_detailed(
    cert: &NegativeArcCertificate,
    ctx: &GroebnerContext,
    point: &[Rational],
    f: &Polynomial,
) -> std::result::Result<(), ArcCheckFailure> {
    let (i, c) = check_arc(&cert.arc, ctx, point, f)?;
    if i != cert.leading_index || c != cert.leading_coeff {
        return Err(ArcCheckFailure::NonnegativeImage);
    }
    Ok(())
}

pub fn verify_certificate(
    cert: &NegativeArcCertificate,
    ctx: &GroebnerContext,
    point: &[Rational],
    f: &Polynomial,
) -> bool {
    verify_certificate_detailed(cert, ctx, point, f).is_ok()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub max_order: usize,
    /// Arc orders fully or partially explored.
    pub orders_tried: Vec<usize>,
    pub branches_per_order: Vec<usize>,
    pub branches_explored: usize,
    pub budget_exhausted: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    NegativeArc(NegativeArcCertificate),
    /// Exhaustion of the bounded search only; never a claim of strong nonnegativity.
    NoArcUpToOrder(usize, SearchReport),
    EmptyVariety,
}

impl SearchVerdict {
    pub fn certificate(&self) -> Option<&NegativeArcCertificate> {
        match self {
            SearchVerdict::NegativeArc(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchVerdict::NegativeArc(_) => "NegativeArc",
            SearchVerdict::NoArcUpToOrder(..) => "NoArcUpToOrder",
            SearchVerdict::EmptyVariety => "EmptyVariety",
        }
    }
}

/// Generators and `f` moved to the origin, plus the linear data there.
struct Local {
    point: Vec<Rational>,
    gens: Vec<Polynomial>,
    f: Polynomial,
    jac: RatMatrix,
    kernel: Vec<Vec<Rational>>,
    cokernel: Vec<Vec<Rational>>,
    max_degree: u32,
}

impl Local {
    fn new(ctx: &GroebnerContext, point: &[Rational], f: &Polynomial) -> Result<Local> {
        let n = ctx.nvars();
        let gens: Vec<Polynomial> = ctx
            .generators()
            .iter()
            .map(|g| g.translate(point))
            .collect::<Result<_>>()?;
        let jac = jacobian_at_origin(&gens, n);
        let kernel = linalg::nullspace(&jac, n);
        let cokernel = linalg::left_nullspace(&jac, n);
        let max_degree = gens
            .iter()
            .map(|g| g.total_degree().as_i64().max(0) as u32)
            .max()
            .unwrap_or(0);
        Ok(Local {
            point: point.to_vec(),
            gens,
            f: f.translate(point)?,
            jac,
            kernel,
            cokernel,
            max_degree,
        })
    }

    fn n(&self) -> usize {
        self.point.len()
    }

    /// Coefficient of `ε^j` in each generator at the arc with offsets `a` (length `j`).
    fn residual(&self, offsets: &[Vec<Rational>]) -> Vec<Rational> {
        let j = offsets.len();
        let arc = origin_arc(self.n(), offsets, j + 1);
        self.gens
            .iter()
            .map(|g| arc.apply(g).expect("same ring").coeff(j).clone())
            .collect()
    }
}

fn jacobian_at_origin(gens: &[Polynomial], n: usize) -> RatMatrix {
    let zero = vec![Rational::zero(); n];
    gens.iter()
        .map(|g| {
            (0..n)
                .map(|i| g.derivative(i).eval(&zero).expect("same ring"))
                .collect()
        })
        .collect()
}

/// Arc at the origin of the given order from per-level coefficient vectors
/// (`levels[k]` holds the `ε^{k+1}` coefficients); missing levels are zero.
fn origin_arc(n: usize, levels: &[Vec<Rational>], order: usize) -> ArcHom {
    let zero = vec![Rational::zero(); n];
    let offsets: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..order - 1)
                .map(|k| levels.get(k).map_or(Rational::zero(), |l| l[i].clone()))
                .collect()
        })
        .collect();
    ArcHom::from_offsets(&zero, order, &offsets).expect("well-formed arc")
}

fn lift_levels(levels: &[Vec<Rational>], point: &[Rational], order: usize) -> ArcHom {
    let n = point.len();
    let offsets: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..order - 1)
                .map(|k| levels.get(k).map_or(Rational::zero(), |l| l[i].clone()))
                .collect()
        })
        .collect();
    ArcHom::from_offsets(point, order, &offsets).expect("well-formed arc")
}

/// Tangent vector along which `f` decreases to first order, if the differential of
/// `f` at `P` is nonzero on the tangent space. Requires `f(P) = 0`.
pub fn first_order_obstruction(
    ctx: &GroebnerContext,
    point: &[Rational],
    f: &Polynomial,
) -> Result<Option<Vec<Rational>>> {
    ctx.check_point(point)?;
    if !f.eval(point)?.is_zero() {
        return Ok(None);
    }
    let n = ctx.nvars();
    let jac: RatMatrix = ctx
        .generators()
        .iter()
        .map(|g| (0..n).map(|i| g.derivative(i).eval(point)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let df: Vec<Rational> = (0..n)
        .map(|i| f.derivative(i).eval(point))
        .collect::<Result<_>>()?;
    for k in linalg::nullspace(&jac, n) {
        let s = linalg::dot(&df, &k);
        if s.is_zero() {
            continue;
        }
        let sign = if s.is_positive() { -Rational::one() } else { Rational::one() };
        let v: Vec<Rational> = k.iter().map(|x| x * &sign).collect();
        return Ok(Some(primitive_integer_vector(&v)));
    }
    Ok(None)
}

/// Positive rescaling to coprime integers.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let l = rational::lcm_of_denominators(v.iter());
    let scaled: Vec<Rational> = v.iter().map(|x| x * Rational::from_integer(l.clone())).collect();
    let g = rational::gcd_of_numerators(scaled.iter());
    if g.is_zero() {
        return scaled;
    }
    scaled.iter().map(|x| x / Rational::from_integer(g.clone())).collect()
}

enum ChildOutcome {
    Certificate(ArcHom),
    /// Still zero modulo the current order: keep lifting.
    Open(Vec<Vec<Rational>>),
    /// Leading term positive at an even index: no extension can turn it negative.
    Closed,
}

/// Candidate coefficient vectors for the next level at one node.
fn children(local: &Local, node: &[Vec<Rational>], budget: &SearchBudget) -> Vec<Vec<Rational>> {
    let n = local.n();
    let mut levels = node.to_vec();
    levels.push(vec![Rational::zero(); n]);
    let r = local.residual(&levels);
    let neg: Vec<Rational> = r.iter().map(|v| -v).collect();
    let Some(part) = linalg::solve(&local.jac, &neg, n) else {
        return Vec::new();
    };
    let node_is_zero = node.iter().all(|l| l.iter().all(Zero::is_zero));
    let dim = local.kernel.len();
    let mut combos: Vec<Vec<Rational>> = vec![vec![]];
    for _ in 0..dim {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                budget.grid.iter().map(move |g| {
                    let mut c = c.clone();
                    c.push(g.clone());
                    c
                })
            })
            .collect();
    }
    let combine = |c: &[Rational]| -> Vec<Rational> {
        let mut a = part.clone();
        for (ck, k) in c.iter().zip(&local.kernel) {
            if ck.is_zero() {
                continue;
            }
            for (ai, ki) in a.iter_mut().zip(k) {
                *ai += ck * ki;
            }
        }
        a
    };
    let mut keyed: Vec<((usize, Rational), Vec<Rational>)> = combos
        .iter()
        .map(|c| {
            let nnz = c.iter().filter(|x| !x.is_zero()).count();
            (nnz, height(c))
        })
        .zip(combos.iter().map(|c| combine(c)))
        .filter(|(_, a)| !node_is_zero || normalized(a))
        .collect();
    if budget.root_isolation && dim >= 1 && !local.cokernel.is_empty() {
        // Fix all kernel coordinates but the last from the grid and solve the
        // next-order consistency condition for the last one exactly.
        let last = &local.kernel[dim - 1];
        let mut heads: Vec<Vec<Rational>> = combos.iter().map(|c| c[..dim - 1].to_vec()).collect();
        heads.dedup();
        for head in heads {
            let base = combine(&head);
            for t in consistency_roots(local, node, &base, last) {
                if budget.grid.contains(&t) {
                    continue;
                }
                let a: Vec<Rational> = base.iter().zip(last).map(|(b, k)| b + &t * k).collect();
                if node_is_zero && !normalized(&a) {
                    continue;
                }
                let mut c = head.clone();
                c.push(t);
                let nnz = c.iter().filter(|x| !x.is_zero()).count();
                keyed.push(((nnz, height(&c)), a));
            }
        }
    }
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    let mut seen = std::collections::BTreeSet::new();
    keyed
        .into_iter()
        .map(|(_, a)| a)
        .filter(|a| seen.insert(a.clone()))
        .collect()
}

fn height(c: &[Rational]) -> Rational {
    c.iter()
        .map(|x| {
            let num = Rational::from_integer(x.numer().abs());
            let den = Rational::from_integer(x.denom().clone());
            if num > den {
                num
            } else {
                den
            }
        })
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
}

/// First nonzero coordinate equal to ±1 (or the zero vector).
fn normalized(a: &[Rational]) -> bool {
    match a.iter().find(|x| !x.is_zero()) {
        None => true,
        Some(x) => x.abs().is_one(),
    }
}

/// Rational values `t` for which the arc with next coefficients `base + t k` keeps
/// the following order's linear system consistent.
fn consistency_roots(local: &Local, node: &[Vec<Rational>], base: &[Rational], k: &[Rational]) -> Vec<Rational> {
    let samples = local.max_degree as i64 + 1;
    let xs: Vec<Rational> = (0..samples).map(rational::int).collect();
    let mut values: Vec<Vec<Rational>> = vec![Vec::new(); local.cokernel.len()];
    for t in &xs {
        let a: Vec<Rational> = base.iter().zip(k).map(|(p, ki)| p + t * ki).collect();
        let mut levels = node.to_vec();
        levels.push(a);
        levels.push(vec![Rational::zero(); local.n()]);
        let r = local.residual(&levels);
        for (u, vals) in local.cokernel.iter().zip(values.iter_mut()) {
            vals.push(linalg::dot(u, &r));
        }
    }
    let mut g: Option<UniPoly> = None;
    for ys in &values {
        let p = univariate::interpolate(&xs, ys);
        g = Some(match g {
            None => p,
            Some(q) => q.gcd(&p),
        });
    }
    match g {
        Some(p) if !p.is_zero() => p.rational_roots(),
        _ => Vec::new(),
    }
}

fn classify(local: &Local, levels: Vec<Vec<Rational>>) -> ChildOutcome {
    let order = levels.len() + 1;
    let arc = origin_arc(local.n(), &levels, order);
    match arc.apply(&local.f).expect("same ring").leading() {
        Leading::Zero => ChildOutcome::Open(levels),
        Leading::Term { coeff, .. } if coeff.is_negative() => {
            ChildOutcome::Certificate(lift_levels(&levels, &local.point, order))
        }
        Leading::Term { index, .. } if index % 2 == 1 => {
            ChildOutcome::Certificate(lift_levels(&levels, &local.point, order).negate_parameter())
        }
        Leading::Term { .. } => ChildOutcome::Closed,
    }
}

const CHUNK: usize = 64;

pub fn search_negative_arc(
    ctx: &GroebnerContext,
    point: &[Rational],
    f: &Polynomial,
    max_order: usize,
    budget: &SearchBudget,
) -> Result<SearchVerdict> {
    if max_order < 1 {
        return Err(Error::BadOrder {
            order: max_order,
            reason: "search needs an order of at least 1".into(),
        });
    }
    if ctx.is_unit() {
        return Ok(SearchVerdict::EmptyVariety);
    }
    ctx.check_point(point)?;
    if f.nvars() != ctx.nvars() {
        return Err(Error::RingMismatch {
            left: f.nvars(),
            right: ctx.nvars(),
        });
    }
    let mut report = SearchReport {
        max_order,
        ..SearchReport::default()
    };
    let fp = f.eval(point)?;
    report.orders_tried.push(1);
    report.branches_per_order.push(1);
    report.branches_explored = 1;
    if fp.is_negative() {
        let arc = ArcHom::constant(point, 1);
        return Ok(SearchVerdict::NegativeArc(NegativeArcCertificate::new(arc, ctx, point, f)?));
    }
    if fp.is_positive() {
        report.note = Some("f(P) > 0, so every arc image has a positive constant term".into());
        return Ok(SearchVerdict::NoArcUpToOrder(max_order, report));
    }
    let local = Local::new(ctx, point, f)?;
    let mut frontier: Vec<Vec<Vec<Rational>>> = vec![vec![]];
    for order in 2..=max_order {
        let mut next = Vec::new();
        let mut explored = 0usize;
        'level: for chunk in frontier.chunks(CHUNK) {
            let outcomes: Vec<Vec<ChildOutcome>> = chunk
                .par_iter()
                .map(|node| {
                    children(&local, node, budget)
                        .into_iter()
                        .map(|a| {
                            let mut levels = node.clone();
                            levels.push(a);
                            classify(&local, levels)
                        })
                        .collect()
                })
                .collect();
            for outcome in outcomes.into_iter().flatten() {
                if explored == budget.max_branches_per_order {
                    report.budget_exhausted = true;
                    break 'level;
                }
                explored += 1;
                match outcome {
                    ChildOutcome::Certificate(arc) => {
                        report.orders_tried.push(order);
                        report.branches_per_order.push(explored);
                        report.branches_explored += explored;
                        return Ok(SearchVerdict::NegativeArc(NegativeArcCertificate::new(
                            arc, ctx, point, f,
                        )?));
                    }
                    ChildOutcome::Open(levels) => next.push(levels),
                    ChildOutcome::Closed => {}
                }
            }
        }
        report.orders_tried.push(order);
        report.branches_per_order.push(explored);
        report.branches_explored += explored;
        frontier = next;
        if frontier.is_empty() {
            report.note = Some(format!(
                "every branch closed by order {order}: no arc of any order under this grid"
            ));
            break;
        }
    }
    Ok(SearchVerdict::NoArcUpToOrder(max_order, report))
}

/// Extend an arc valid at its order to a valid arc of order `target` by solving
/// the successive linear systems (free coordinates set to zero).
pub fn hensel_lift(ctx: &GroebnerContext, arc: &ArcHom, target: usize) -> Option<ArcHom> {
    let m = arc.order();
    if target < m || !arc.is_valid(ctx) {
        return None;
    }
    if target == m {
        return Some(arc.clone());
    }
    let point = arc.basepoint().to_vec();
    let n = point.len();
    let local = Local::new(ctx, &point, &Polynomial::zero(n)).ok()?;
    let offsets = arc.offsets();
    let mut levels: Vec<Vec<Rational>> = (0..m - 1)
        .map(|k| (0..n).map(|i| offsets[i][k].clone()).collect())
        .collect();
    for _ in m..target {
        let mut probe = levels.clone();
        probe.push(vec![Rational::zero(); n]);
        let neg: Vec<Rational> = local.residual(&probe).iter().map(|v| -v).collect();
        levels.push(linalg::solve(&local.jac, &neg, n)?);
    }
    let lifted = lift_levels(&levels, &point, target);
    debug_assert!(lifted.is_valid(ctx));
    Some(lifted)
}

/// Per-point search results, in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongNonnegReport {
    pub rows: Vec<(Vec<Rational>, SearchVerdict)>,
}

impl StrongNonnegReport {
    /// First certificate among the rows, if any.
    pub fn negative_arc(&self) -> Option<(&[Rational], &NegativeArcCertificate)> {
        self.rows
            .iter()
            .find_map(|(p, v)| v.certificate().map(|c| (p.as_slice(), c)))
    }
}

pub fn strong_nonneg_report(
    ctx: &GroebnerContext,
    f: &Polynomial,
    points: &[Vec<Rational>],
    max_order: usize,
    budget: &SearchBudget,
) -> Result<StrongNonnegReport> {
    let rows = points
        .par_iter()
        .map(|p| Ok((p.clone(), search_negative_arc(ctx, p, f, max_order, budget)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(StrongNonnegReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use crate::parse::parse_polynomial;
    use crate::poly::TermOrder;
    use crate::rational::{frac, int};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ctx(gens: &[&str], vars: &[&str]) -> GroebnerContext {
        let n = names(vars);
        GroebnerContext::new(
            gens.iter().map(|g| parse_polynomial(g, &n).unwrap()).collect(),
            TermOrder::grevlex(vars.len()),
        )
        .unwrap()
    }

    fn p(s: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(s, &names(vars)).unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn lines(c: &NegativeArcCertificate, vars: &[&str]) -> Vec<String> {
        c.arc().to_lines(&names(vars))
    }

    #[test]
    fn first_order_obstructions() {
        let cusp = ctx(&["y^2 - x^3"], &["x", "y"]);
        assert_eq!(
            first_order_obstruction(&cusp, &pt(&[0, 0]), &p("x", &["x", "y"])).unwrap(),
            Some(pt(&[-1, 0]))
        );
        let dbl = ctx(&["x^2"], &["x"]);
        assert_eq!(
            first_order_obstruction(&dbl, &pt(&[0]), &p("x", &["x"])).unwrap(),
            Some(pt(&[-1]))
        );
        let v = ["x", "y", "z"];
        let sq = ctx(&["y^2 - x^5", "z - x^3"], &v);
        assert_eq!(first_order_obstruction(&sq, &pt(&[0, 0, 0]), &p("z", &v)).unwrap(), None);
        assert!(matches!(
            first_order_obstruction(&cusp, &pt(&[1, 0]), &p("x", &["x", "y"])),
            Err(Error::NotOnVariety { .. })
        ));
    }

    #[test]
    fn double_point_arc() {
        let c = ctx(&["x^2"], &["x"]);
        let f = p("x", &["x"]);
        let v = search_negative_arc(&c, &pt(&[0]), &f, 2, &SearchBudget::default()).unwrap();
        let cert = v.certificate().expect("certificate");
        assert_eq!(lines(cert, &["x"]), vec!["x -> -e"]);
        assert_eq!(cert.leading(), (1, &int(-1)));
        assert!(verify_certificate(cert, &c, &pt(&[0]), &f));
        assert!(!verify_certificate(cert, &c, &pt(&[0]), &p("x^2", &["x"])));
    }

    #[test]
    fn fat_point_arcs() {
        let vars = ["x", "y"];
        let c = ctx(&["y - x^2", "y^2"], &vars);
        let o = pt(&[0, 0]);
        let b = SearchBudget::default();
        let v = search_negative_arc(&c, &o, &p("-y", &vars), 3, &b).unwrap();
        let cert = v.certificate().expect("certificate");
        assert_eq!(cert.order(), 3);
        assert_eq!(lines(cert, &vars), vec!["x -> e", "y -> e^2"]);
        let r = strong_nonneg_report(&c, &p("y", &vars), &[o.clone()], 3, &b).unwrap();
        assert!(r.negative_arc().is_none());
        assert!(matches!(r.rows[0].1, SearchVerdict::NoArcUpToOrder(3, _)));
        assert!(strong_nonneg_report(&c, &p("y", &vars), &[], 3, &b).unwrap().rows.is_empty());
    }

    #[test]
    fn cusp_arc_and_its_verification() {
        let vars = ["x", "y"];
        let c = ctx(&["y^2 - x^3"], &vars);
        let f = p("x", &vars);
        let v = search_negative_arc(&c, &pt(&[0, 0]), &f, 2, &SearchBudget::default()).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(lines(cert, &vars), vec!["x -> -e", "y -> 0"]);
        assert!(verify_certificate(cert, &c, &pt(&[0, 0]), &f));
        assert_eq!(
            verify_certificate_detailed(cert, &c, &pt(&[1, 1]), &f),
            Err(ArcCheckFailure::WrongBasepoint)
        );
    }

    #[test]
    fn squiggly_needs_order_four() {
        let vars = ["x", "y", "z"];
        let c = ctx(&["y^2 - x^5", "z - x^3"], &vars);
        let f = p("z", &vars);
        let o = pt(&[0, 0, 0]);
        let b = SearchBudget::default();
        let v3 = search_negative_arc(&c, &o, &f, 3, &b).unwrap();
        assert!(matches!(v3, SearchVerdict::NoArcUpToOrder(3, _)));
        let v = search_negative_arc(&c, &o, &f, 4, &b).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(lines(cert, &vars), vec!["x -> -e", "y -> 0", "z -> -e^3"]);
        assert_eq!(cert.leading(), (3, &int(-1)));
    }

    #[test]
    fn circle_has_no_arc() {
        let vars = ["x", "y"];
        let c = ctx(&["x^2 + y^2 - 1"], &vars);
        let v = search_negative_arc(&c, &pt(&[1, 0]), &p("1 - x", &vars), 6, &SearchBudget::default())
            .unwrap();
        match v {
            SearchVerdict::NoArcUpToOrder(6, r) => assert!(!r.budget_exhausted),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sign_of_value_decides_immediately() {
        let vars = ["x", "y"];
        let c = ctx(&["x^2 + y^2 - 1"], &vars);
        let b = SearchBudget::default();
        let neg = search_negative_arc(&c, &pt(&[1, 0]), &p("x - 2", &vars), 5, &b).unwrap();
        assert_eq!(neg.certificate().unwrap().order(), 1);
        let pos = search_negative_arc(&c, &pt(&[1, 0]), &p("x + 2", &vars), 5, &b).unwrap();
        assert!(matches!(pos, SearchVerdict::NoArcUpToOrder(5, _)));
        let unit = ctx(&["1"], &vars);
        assert_eq!(
            search_negative_arc(&unit, &pt(&[0, 0]), &p("x", &vars), 3, &b).unwrap(),
            SearchVerdict::EmptyVariety
        );
    }

    #[test]
    fn root_isolation_finds_off_grid_tangent_directions() {
        // The tangent cone x = ±3y has no nonzero point on the default grid.
        let vars = ["x", "y"];
        let c = ctx(&["x^2 - 9y^2"], &vars);
        let f = p("-y^2", &vars);
        let o = pt(&[0, 0]);
        let v = search_negative_arc(&c, &o, &f, 3, &SearchBudget::default()).unwrap();
        let cert = v.certificate().expect("certificate");
        assert_eq!(lines(cert, &vars), vec!["x -> e", "y -> -1/3*e"]);
        let no_roots = SearchBudget {
            root_isolation: false,
            ..SearchBudget::default()
        };
        let v = search_negative_arc(&c, &o, &f, 3, &no_roots).unwrap();
        assert!(matches!(v, SearchVerdict::NoArcUpToOrder(3, _)));
    }

    #[test]
    fn hensel_lifting() {
        let vars = ["x", "y"];
        let circle = ctx(&["x^2 + y^2 - 1"], &vars);
        let base = ArcHom::new(
            pt(&[1, 0]),
            vec![Jet::constant(2, int(1)), Jet::new(2, vec![int(0), int(1)]).unwrap()],
        )
        .unwrap();
        let lifted = hensel_lift(&circle, &base, 3).unwrap();
        assert_eq!(lifted.to_lines(&names(&vars)), vec!["x -> 1 - 1/2*e^2", "y -> e"]);
        assert_eq!(hensel_lift(&circle, &base, 2).unwrap(), base);
        let six = hensel_lift(&circle, &base, 6).unwrap();
        assert!(six.is_valid(&circle));
        assert_eq!(six.truncate(2).unwrap(), base);
        assert_eq!(six.images()[0].coeff(4), &frac(-1, 8));

        let cusp = ctx(&["y^2 - x^3"], &vars);
        let arc = ArcHom::from_offsets(&pt(&[0, 0]), 2, &[vec![int(-1)], vec![int(0)]]).unwrap();
        assert!(arc.is_valid(&cusp));
        assert_eq!(hensel_lift(&cusp, &arc, 4), None);
    }
}
