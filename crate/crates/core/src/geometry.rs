//! Jacobians, tangent spaces, singularity checks, sampled real points, and
//! convex-singularity witnesses.

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcsearch::primitive_integer_vector;
use crate::error::{Error, Result};
use crate::ideal::GroebnerContext;
use crate::linalg::{self, RatMatrix};
use crate::lp::{Cmp, LinearProgram, LpResult};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

pub fn jacobian_at(ctx: &GroebnerContext, point: &[Rational]) -> Result<RatMatrix> {
    ctx.check_point(point)?;
    let n = ctx.nvars();
    ctx.generators()
        .iter()
        .map(|g| (0..n).map(|i| g.derivative(i).eval(point)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentSpace {
    pub basepoint: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

impl TangentSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn tangent_space(ctx: &GroebnerContext, point: &[Rational]) -> Result<TangentSpace> {
    let jac = jacobian_at(ctx, point)?;
    Ok(TangentSpace {
        basepoint: point.to_vec(),
        basis: linalg::nullspace(&jac, ctx.nvars()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub singular: bool,
    pub tangent_dimension: usize,
    pub jacobian_rank: usize,
    /// Global Krull dimension of the quotient ring.
    pub variety_dimension: usize,
    pub note: String,
}

/// Compares the tangent dimension at `P` with the global dimension. On inputs
/// that are not equidimensional the local dimension can be smaller; both numbers
/// are reported.
pub fn is_singular(ctx: &GroebnerContext, point: &[Rational]) -> Result<SingularityReport> {
    let jac = jacobian_at(ctx, point)?;
    let n = ctx.nvars();
    let rank = linalg::rank(&jac, n);
    let dim = ctx.dimension()?;
    let tdim = n - rank;
    Ok(SingularityReport {
        singular: tdim != dim,
        tangent_dimension: tdim,
        jacobian_rank: rank,
        variety_dimension: dim,
        note: "dimension is the global Krull dimension; local dimension may differ on non-equidimensional inputs"
            .into(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleParams {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub resolution: f64,
    pub tol: f64,
    pub max_newton_iters: usize,
}

impl SampleParams {
    pub fn cube(n: usize, half_width: f64, resolution: f64, tol: f64) -> Self {
        SampleParams {
            lower: vec![-half_width; n],
            upper: vec![half_width; n],
            resolution,
            tol,
            max_newton_iters: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleCloud {
    pub points: Vec<Vec<f64>>,
    pub params: SampleParams,
}

impl SampleCloud {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn to_csv(&self, names: &[String]) -> String {
        let mut out = names.join(",");
        out.push('\n');
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|v| format!("{v:.17e}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

struct FloatSystem {
    gens: Vec<Polynomial>,
    jac: Vec<Vec<Polynomial>>,
}

impl FloatSystem {
    fn new(ctx: &GroebnerContext) -> Self {
        let n = ctx.nvars();
        let gens = ctx.generators().to_vec();
        let jac = gens
            .iter()
            .map(|g| (0..n).map(|i| g.derivative(i)).collect())
            .collect();
        FloatSystem { gens, jac }
    }

    fn values(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.gens.len(), self.gens.iter().map(|g| g.eval_f64(x)))
    }

    fn residual(&self, x: &[f64]) -> f64 {
        self.values(x).amax()
    }

    /// Damped minimum-norm Newton iteration.
    fn refine(&self, start: &[f64], max_iters: usize) -> Vec<f64> {
        let n = start.len();
        let mut x = start.to_vec();
        let m = self.gens.len();
        if m == 0 {
            return x;
        }
        for _ in 0..max_iters {
            let g = self.values(&x);
            let norm = g.norm();
            if norm == 0.0 {
                break;
            }
            let j = DMatrix::from_fn(m, n, |r, c| self.jac[r][c].eval_f64(&x));
            let Ok(pinv) = j.pseudo_inverse(1e-13) else {
                break;
            };
            let step = pinv * &g;
            let mut t = 1.0;
            let mut moved = false;
            for _ in 0..30 {
                let cand: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a - t * s).collect();
                if self.values(&cand).norm() < norm {
                    x = cand;
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            if !moved || t * step.norm() < 1e-14 {
                break;
            }
        }
        x
    }
}

/// Grid scan of the box: Newton refinement from every cell center, keeping points
/// with all generators below `tol` in absolute value, deduplicated at a quarter
/// of the resolution.
pub fn sample_variety(ctx: &GroebnerContext, params: &SampleParams) -> Result<SampleCloud> {
    let n = ctx.nvars();
    if params.lower.len() != n || params.upper.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: params.lower.len().min(params.upper.len()),
        });
    }
    if !(params.resolution > 0.0) {
        return Err(Error::Invalid("resolution must be positive".into()));
    }
    let counts: Vec<usize> = (0..n)
        .map(|i| (((params.upper[i] - params.lower[i]) / params.resolution).ceil().max(1.0)) as usize)
        .collect();
    let total: usize = counts.iter().product();
    let sys = FloatSystem::new(ctx);
    let inside = |x: &[f64]| {
        x.iter()
            .enumerate()
            .all(|(i, v)| *v >= params.lower[i] - 1e-12 && *v <= params.upper[i] + 1e-12)
    };
    let refined: Vec<Option<Vec<f64>>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut c = vec![0.0; n];
            for i in (0..n).rev() {
                let k = idx % counts[i];
                idx /= counts[i];
                c[i] = params.lower[i] + (k as f64 + 0.5) * params.resolution;
            }
            let x = sys.refine(&c, params.max_newton_iters);
            (x.iter().all(|v| v.is_finite()) && inside(&x) && sys.residual(&x) <= params.tol)
                .then_some(x)
        })
        .collect();
    let spacing = params.resolution / 4.0;
    let mut kept: Vec<Vec<f64>> = Vec::new();
    let mut buckets: std::collections::HashMap<Vec<i64>, Vec<usize>> = Default::default();
    for x in refined.into_iter().flatten() {
        let key: Vec<i64> = x.iter().map(|v| (v / spacing).floor() as i64).collect();
        let mut near = false;
        'outer: for delta in 0..3usize.pow(n as u32) {
            let mut d = delta;
            let nb: Vec<i64> = key
                .iter()
                .map(|k| {
                    let off = (d % 3) as i64 - 1;
                    d /= 3;
                    k + off
                })
                .collect();
            if let Some(ids) = buckets.get(&nb) {
                for &id in ids {
                    let dist = kept[id]
                        .iter()
                        .zip(&x)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    if dist < spacing {
                        near = true;
                        break 'outer;
                    }
                }
            }
        }
        if !near {
            buckets.entry(key).or_default().push(kept.len());
            kept.push(x);
        }
    }
    Ok(SampleCloud {
        points: kept,
        params: params.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudMinimum {
    pub nonneg: bool,
    pub min: f64,
    pub at: Option<Vec<f64>>,
}

pub fn nonneg_on_cloud(f: &Polynomial, cloud: &SampleCloud, tol: f64) -> CloudMinimum {
    let mut best: Option<(f64, &Vec<f64>)> = None;
    for p in &cloud.points {
        let v = f.eval_f64(p);
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, p));
        }
    }
    match best {
        None => CloudMinimum {
            nonneg: true,
            min: f64::INFINITY,
            at: None,
        },
        Some((v, p)) => CloudMinimum {
            nonneg: v >= -tol,
            min: v,
            at: Some(p.clone()),
        },
    }
}

/// Nearest small-denominator rational point, kept only if it lies exactly on the variety.
pub fn snap_to_variety(ctx: &GroebnerContext, x: &[f64], max_den: u64) -> Option<Vec<Rational>> {
    let p: Vec<Rational> = x.iter().map(|v| rational::approximate(*v, max_den)).collect();
    ctx.check_point(&p).ok().map(|_| p)
}

/// Exact dyadic rounding (2^-40 grid) used to feed cloud points to the exact LP.
fn dyadic(x: f64) -> Rational {
    rational::from_f64((x * 1_099_511_627_776.0).round() / 1_099_511_627_776.0)
}

fn diffs(cloud: &SampleCloud, point: &[Rational]) -> Vec<Vec<Rational>> {
    cloud
        .points
        .iter()
        .map(|q| q.iter().zip(point).map(|(a, p)| dyadic(*a) - p).collect())
        .collect()
}

/// Solve `lp` with the extra family `row(d) · x ≥ rhs` for every `d`, adding the
/// rows lazily (most violated first) until the solution satisfies all of them.
fn solve_with_cuts(
    base: &LinearProgram,
    ds: &[Vec<Rational>],
    row: impl Fn(&[Rational]) -> Vec<Rational>,
    rhs: &Rational,
) -> LpResult {
    let rows: Vec<Vec<Rational>> = ds.iter().map(|d| row(d)).collect();
    let mut active: Vec<bool> = vec![false; rows.len()];
    let step = (rows.len() / 16).max(1);
    for i in (0..rows.len()).step_by(step) {
        active[i] = true;
    }
    loop {
        let mut lp = base.clone();
        for (r, a) in rows.iter().zip(&active) {
            if *a {
                lp.push(r.clone(), Cmp::Ge, rhs.clone());
            }
        }
        let res = lp.solve();
        let LpResult::Optimal { x, .. } = &res else {
            return res;
        };
        let mut violated: Vec<(Rational, usize)> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| !active[*i])
            .filter_map(|(i, r)| {
                let slack = linalg::dot(r, x) - rhs;
                slack.is_negative().then_some((slack, i))
            })
            .collect();
        if violated.is_empty() {
            return res;
        }
        violated.sort();
        for (_, i) in violated.into_iter().take(8) {
            active[i] = true;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexSingularWitness {
    /// Linear, vanishing at `P`, nonnegative on the cloud up to the tolerance.
    pub f: Polynomial,
    /// Tangent vector with `df · v < 0`.
    pub tangent: Vec<Rational>,
}

/// Linear `f` with `f(P) = 0`, `f ≥ -tol` on the cloud and `df` nonzero on the
/// tangent space at the singular point `P`. Returns `None` when no such `f`
/// exists, and also when the tangent space lies inside a supporting hyperplane
/// of the sampled hull (so it misses the relative interior).
pub fn convex_singular_witness(
    ctx: &GroebnerContext,
    point: &[Rational],
    cloud: &SampleCloud,
    tol: f64,
) -> Result<Option<ConvexSingularWitness>> {
    let sing = is_singular(ctx, point)?;
    if !sing.singular {
        return Err(Error::NotSingular(rational::fmt_point(point)));
    }
    let n = ctx.nvars();
    let tangent = tangent_space(ctx, point)?.basis;
    let ds = diffs(cloud, point);
    let neg_tol = -rational::approximate(tol, 1_000_000_000_000).abs();
    let dot_row = |d: &[Rational]| d.to_vec();

    // Blocker: a nonzero functional vanishing on the tangent space and supporting the hull at P.
    let mut block = LinearProgram::all_free(n);
    for v in &tangent {
        block.push(v.clone(), Cmp::Eq, Rational::zero());
    }
    let total: Vec<Rational> = (0..n)
        .map(|i| ds.iter().map(|d| d[i].clone()).sum())
        .collect();
    block.push(total, Cmp::Eq, rational::int(1));
    if let LpResult::Optimal { .. } = solve_with_cuts(&block, &ds, dot_row, &neg_tol) {
        return Ok(None);
    }

    // Witness: normalized on the tangent basis, smallest l1 norm.
    let mut best: Option<(Rational, Vec<Rational>, Vec<Rational>)> = None;
    for (i, vi) in tangent.iter().enumerate() {
        for sign in [rational::int(1), rational::int(-1)] {
            let mut lp = LinearProgram::new(2 * n);
            for k in 0..n {
                lp.free[k] = true;
                lp.objective[n + k] = rational::int(1);
                let mut up = vec![Rational::zero(); 2 * n];
                up[n + k] = rational::int(1);
                up[k] = rational::int(-1);
                lp.push(up.clone(), Cmp::Ge, Rational::zero());
                up[k] = rational::int(1);
                lp.push(up, Cmp::Ge, Rational::zero());
            }
            let pad = |v: &[Rational]| {
                let mut r = v.to_vec();
                r.resize(2 * n, Rational::zero());
                r
            };
            lp.push(pad(vi), Cmp::Eq, sign.clone());
            for (k, vk) in tangent.iter().enumerate() {
                if k != i {
                    lp.push(pad(vk), Cmp::Le, rational::int(1));
                    lp.push(pad(vk), Cmp::Ge, rational::int(-1));
                }
            }
            if let LpResult::Optimal { x, value } = solve_with_cuts(&lp, &ds, pad, &neg_tol) {
                if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
                    let v: Vec<Rational> = vi.iter().map(|t| -(t * &sign)).collect();
                    best = Some((value, x[..n].to_vec(), v));
                }
            }
        }
    }
    let Some((_, c, v)) = best else {
        return Ok(None);
    };
    let c = primitive_integer_vector(&c);
    let mut f = Polynomial::constant(n, -linalg::dot(&c, point));
    for (k, ck) in c.iter().enumerate() {
        f = f
            .add(&Polynomial::var(n, k).scale(ck))
            .expect("same ring");
    }
    Ok(Some(ConvexSingularWitness {
        f,
        tangent: primitive_integer_vector(&v),
    }))
}

/// Largest `t` with `c · (q - P) ≥ t` on the cloud over `‖c‖∞ ≤ 1`: a positive value
/// is a separation margin of `P` from the sampled hull.
pub fn hull_margin(cloud: &SampleCloud, point: &[Rational]) -> Rational {
    let n = point.len();
    if cloud.is_empty() {
        return Rational::zero();
    }
    // variables: c (n, free), t (free); maximize t
    let mut lp = LinearProgram::all_free(n + 1);
    lp.objective[n] = rational::int(-1);
    for k in 0..n {
        let mut r = vec![Rational::zero(); n + 1];
        r[k] = rational::int(1);
        lp.push(r.clone(), Cmp::Le, rational::int(1));
        lp.push(r, Cmp::Ge, rational::int(-1));
    }
    let ds = diffs(cloud, point);
    let row = |d: &[Rational]| {
        let mut r = d.to_vec();
        r.push(rational::int(-1));
        r
    };
    match solve_with_cuts(&lp, &ds, row, &Rational::zero()) {
        LpResult::Optimal { x, .. } => x[n].clone().max(Rational::zero()),
        _ => Rational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcsearch::first_order_obstruction;
    use crate::parse::parse_polynomial;
    use crate::poly::TermOrder;
    use crate::rational::int;

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

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn p(s: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(s, &names(vars)).unwrap()
    }

    #[test]
    fn jacobians() {
        let cusp = ctx(&["y^2 - x^3"], &["x", "y"]);
        assert_eq!(jacobian_at(&cusp, &pt(&[0, 0])).unwrap(), vec![pt(&[0, 0])]);
        assert_eq!(jacobian_at(&cusp, &pt(&[1, 1])).unwrap(), vec![pt(&[-3, 2])]);
        let circle = ctx(&["x^2 + y^2 - 1"], &["x", "y"]);
        assert_eq!(jacobian_at(&circle, &pt(&[1, 0])).unwrap(), vec![pt(&[2, 0])]);
        assert!(jacobian_at(&circle, &pt(&[0, 0])).is_err());
    }

    #[test]
    fn tangent_spaces_and_singularity() {
        let cusp = ctx(&["y^2 - x^3"], &["x", "y"]);
        let t = tangent_space(&cusp, &pt(&[0, 0])).unwrap();
        assert_eq!(t.dimension(), 2);
        assert!(is_singular(&cusp, &pt(&[0, 0])).unwrap().singular);
        assert!(!is_singular(&cusp, &pt(&[1, 1])).unwrap().singular);
        let v = ["x", "y", "z"];
        let sq = ctx(&["y^2 - x^5", "z - x^3"], &v);
        let t = tangent_space(&sq, &pt(&[0, 0, 0])).unwrap();
        assert_eq!(t.basis, vec![pt(&[1, 0, 0]), pt(&[0, 1, 0])]);
        let circle = ctx(&["x^2 + y^2 - 1"], &["x", "y"]);
        assert_eq!(tangent_space(&circle, &pt(&[1, 0])).unwrap().basis, vec![pt(&[0, 1])]);
        let dbl = ctx(&["x^2"], &["x"]);
        let r = is_singular(&dbl, &pt(&[0])).unwrap();
        assert!(r.singular);
        assert_eq!((r.tangent_dimension, r.variety_dimension), (1, 0));
    }

    #[test]
    fn circle_sampling() {
        let circle = ctx(&["x^2 + y^2 - 1"], &["x", "y"]);
        let cloud = sample_variety(&circle, &SampleParams::cube(2, 2.0, 0.1, 1e-9)).unwrap();
        assert!(cloud.len() >= 100, "{}", cloud.len());
        for q in &cloud.points {
            assert!((q[0] * q[0] + q[1] * q[1] - 1.0).abs() <= 1e-9);
        }
        let m = nonneg_on_cloud(&p("1 - x", &["x", "y"]), &cloud, 1e-9);
        assert!(m.nonneg);
        // cell centers sit off the axes, so the closest sample to (1, 0) is about 0.05 away
        assert!(m.min < 5e-3);
        assert!(m.at.as_ref().unwrap()[0] > 0.99);
        assert!(!nonneg_on_cloud(&p("-1", &["x", "y"]), &cloud, 1e-9).nonneg);
        let csv = cloud.to_csv(&names(&["x", "y"]));
        assert_eq!(csv.lines().count(), cloud.len() + 1);
    }

    #[test]
    fn double_point_cloud_clusters_at_origin() {
        let dbl = ctx(&["x^2"], &["x"]);
        let cloud = sample_variety(&dbl, &SampleParams::cube(1, 1.0, 0.1, 1e-9)).unwrap();
        assert!(!cloud.is_empty());
        assert!(cloud.points.iter().all(|q| q[0].abs() < 1e-4));
    }

    #[test]
    fn cusp_witness_is_x() {
        let vars = ["x", "y"];
        let cusp = ctx(&["y^2 - x^3"], &vars);
        let params = SampleParams {
            lower: vec![0.0, -3.0],
            upper: vec![2.0, 3.0],
            resolution: 0.1,
            tol: 1e-9,
            max_newton_iters: 200,
        };
        let cloud = sample_variety(&cusp, &params).unwrap();
        assert!(cloud.points.iter().any(|q| q[1] > 0.5));
        assert!(cloud.points.iter().any(|q| q[1] < -0.5));
        let m = nonneg_on_cloud(&p("x", &vars), &cloud, 1e-9);
        assert!(m.nonneg && m.min < 0.1, "{m:?}");
        let w = convex_singular_witness(&cusp, &pt(&[0, 0]), &cloud, 1e-9).unwrap().unwrap();
        assert_eq!(w.f, p("x", &vars));
        assert_eq!(w.tangent, pt(&[-1, 0]));
        assert!(first_order_obstruction(&cusp, &pt(&[0, 0]), &w.f).unwrap().is_some());

        let circle = ctx(&["x^2 + y^2 - 1"], &vars);
        let cc = sample_variety(&circle, &SampleParams::cube(2, 2.0, 0.2, 1e-9)).unwrap();
        assert!(matches!(
            convex_singular_witness(&circle, &pt(&[1, 0]), &cc, 1e-9),
            Err(Error::NotSingular(_))
        ));
    }

    #[test]
    fn squiggly_origin_is_not_convex_singular() {
        let vars = ["x", "y", "z"];
        let sq = ctx(&["y^2 - x^5", "z - x^3"], &vars);
        let params = SampleParams {
            lower: vec![0.0, -2.0, -1.0],
            upper: vec![1.2, 2.0, 2.0],
            resolution: 0.1,
            tol: 1e-9,
            max_newton_iters: 200,
        };
        let cloud = sample_variety(&sq, &params).unwrap();
        assert!(cloud.len() > 10);
        assert_eq!(convex_singular_witness(&sq, &pt(&[0, 0, 0]), &cloud, 1e-9).unwrap(), None);
    }

    #[test]
    fn hull_margins() {
        let vars = ["x", "y"];
        let circle = ctx(&["x^2 + y^2 - 1"], &vars);
        let cloud = sample_variety(&circle, &SampleParams::cube(2, 2.0, 0.2, 1e-9)).unwrap();
        assert!(hull_margin(&cloud, &pt(&[0, 0])).is_zero());
        let m = rational::to_f64(&hull_margin(&cloud, &pt(&[2, 0])));
        assert!((m - 1.0).abs() < 1e-2, "{m}");
        let _ = snap_to_variety(&circle, &[0.6, 0.8], 100).unwrap();
        assert!(snap_to_variety(&circle, &[0.6, 0.81], 100).is_none());
    }
}
