//! Small dense semidefinite feasibility: find `X ⪰ 0` with `<A_i, X> = b_i`.
//!
//! Constraint data is exact (rational). Solving runs in three stages:
//!
//! 1. exact facial reduction: a constraint touching only diagonal entries with
//!    one-signed coefficients either proves infeasibility (`b` of the opposite
//!    sign) or, with `b = 0`, forces those rows and columns of `X` to vanish;
//! 2. an exact consistency check of the remaining linear system;
//! 3. alternating projections between the affine set (least-squares projection)
//!    and the PSD cone (eigenvalue clipping), in double precision.
//!
//! When the two sets are disjoint the iterates converge to a closest pair, and
//! the difference `Π_K(X) − X` lies in the span of the constraint matrices: the
//! resulting multipliers form the dual witness.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

/// Dense symmetric matrix stored as its upper triangle, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    n: usize,
    upper: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            upper: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, rows[i][j]);
            }
        }
        m
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.n - i * (i + 1) / 2 + j
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.upper[k] = v;
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn from_dmatrix(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let mut s = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                s.set(i, j, 0.5 * (m[(i, j)] + m[(j, i)]));
            }
        }
        s
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn frobenius_dot(&self, other: &SymMatrix) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += self.get(i, j) * other.get(i, j);
            }
        }
        s
    }
}

pub fn min_eigenvalue(m: &SymMatrix) -> f64 {
    if m.dim() == 0 {
        return 0.0;
    }
    SymmetricEigen::new(m.to_dmatrix())
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// One linear constraint `sum c_ij X_ij = rhs` over upper-triangle entries
/// (`i <= j`). For `i < j` the coefficient already accounts for both `X_ij` and
/// `X_ji`, so the symmetric matrix `A` of `<A, X>` has `A_ij = c_ij / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdpConstraint {
    pub terms: BTreeMap<(usize, usize), Rational>,
    pub rhs: Rational,
}

impl SdpConstraint {
    pub fn new(rhs: Rational) -> Self {
        SdpConstraint {
            terms: BTreeMap::new(),
            rhs,
        }
    }

    pub fn add(&mut self, i: usize, j: usize, c: Rational) {
        let key = if i <= j { (i, j) } else { (j, i) };
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn matrix(&self, n: usize) -> SymMatrix {
        let mut m = SymMatrix::zeros(n);
        for (&(i, j), c) in &self.terms {
            let v = rational::to_f64(c);
            m.set(i, j, if i == j { v } else { v / 2.0 });
        }
        m
    }

    pub fn eval(&self, x: &SymMatrix) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| rational::to_f64(c) * x.get(i, j))
            .sum()
    }

    pub fn eval_exact(&self, x: &[Vec<Rational>]) -> Rational {
        self.terms.iter().map(|(&(i, j), c)| c * &x[i][j]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdpFeasibilityProblem {
    pub dim: usize,
    pub constraints: Vec<SdpConstraint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdpOptions {
    pub tol: f64,
    pub max_iters: usize,
    /// Iterations between stall checks of the set-to-set gap.
    pub stall_window: usize,
    pub facial_reduction: bool,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions {
            tol: 1e-8,
            max_iters: 50_000,
            stall_window: 500,
            facial_reduction: true,
        }
    }
}

/// A constraint whose left side is a nonnegative combination of diagonal entries
/// and whose right side is zero: those entries, and their rows and columns, vanish.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceStep {
    pub constraint: usize,
    pub removed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualWitness {
    /// Facial-reduction steps preceding the final multipliers.
    pub face_steps: Vec<FaceStep>,
    /// Indices of `X` still free on the final face.
    pub face: Vec<usize>,
    /// One multiplier per original constraint.
    pub multipliers: Vec<f64>,
    /// `-sum y_i b_i` with the multipliers scaled so `||sum y_i A_i||_F = 1`
    /// on the face (or `||y|| = 1` when that combination vanishes).
    pub margin: f64,
    /// Smallest eigenvalue of `sum y_i A_i` restricted to the face.
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub iterations: usize,
    pub gap: f64,
    pub residual: f64,
    pub min_eigenvalue: f64,
    pub face: Vec<usize>,
    /// Best iterate (on the affine set), embedded at full size.
    pub best: SymMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SdpOutcome {
    Feasible {
        x: SymMatrix,
        min_eigenvalue: f64,
        residual: f64,
        iterations: usize,
        face: Vec<usize>,
    },
    Infeasible(DualWitness),
    Undetermined(Diagnostics),
}

impl SdpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SdpOutcome::Feasible { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, SdpOutcome::Infeasible(_))
    }

    /// The most useful primal matrix: the feasible point or the best iterate.
    pub fn primal(&self) -> Option<&SymMatrix> {
        match self {
            SdpOutcome::Feasible { x, .. } => Some(x),
            SdpOutcome::Undetermined(d) => Some(&d.best),
            SdpOutcome::Infeasible(_) => None,
        }
    }
}

/// Result of exact facial reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub steps: Vec<FaceStep>,
    pub face: Vec<usize>,
    /// Constraints restricted to the face, re-indexed into `0..face.len()`,
    /// paired with their original index. Trivial `0 = 0` rows are dropped.
    pub restricted: Vec<(usize, SdpConstraint)>,
    /// A constraint that became `0 = b` or `(nonneg diag) = negative`.
    pub contradiction: Option<(usize, Rational)>,
}

impl SdpFeasibilityProblem {
    pub fn new(dim: usize) -> Self {
        SdpFeasibilityProblem {
            dim,
            constraints: Vec::new(),
        }
    }

    fn check(&self) -> Result<()> {
        for c in &self.constraints {
            if let Some(&(i, j)) = c.terms.keys().find(|&&(i, j)| i >= self.dim || j >= self.dim) {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: i.max(j) + 1,
                });
            }
        }
        Ok(())
    }

    pub fn max_residual(&self, x: &SymMatrix) -> f64 {
        self.constraints
            .iter()
            .map(|c| (c.eval(x) - rational::to_f64(&c.rhs)).abs())
            .fold(0.0, f64::max)
    }

    pub fn reduce(&self, enabled: bool) -> Reduction {
        let mut alive = vec![true; self.dim];
        let mut steps = Vec::new();
        let restrict = |c: &SdpConstraint, alive: &[bool]| -> SdpConstraint {
            SdpConstraint {
                terms: c
                    .terms
                    .iter()
                    .filter(|(&(i, j), _)| alive[i] && alive[j])
                    .map(|(k, v)| (*k, v.clone()))
                    .collect(),
                rhs: c.rhs.clone(),
            }
        };
        let mut contradiction = None;
        'outer: loop {
            for (ci, c) in self.constraints.iter().enumerate() {
                let r = restrict(c, &alive);
                if r.terms.is_empty() {
                    if !r.rhs.is_zero() {
                        contradiction = Some((ci, r.rhs.clone()));
                        break 'outer;
                    }
                    continue;
                }
                if !enabled || !r.terms.keys().all(|&(i, j)| i == j) {
                    continue;
                }
                let all_pos = r.terms.values().all(Signed::is_positive);
                let all_neg = r.terms.values().all(Signed::is_negative);
                if !(all_pos || all_neg) {
                    continue;
                }
                let rhs = if all_pos { r.rhs.clone() } else { -r.rhs.clone() };
                if rhs.is_negative() {
                    contradiction = Some((ci, r.rhs.clone()));
                    break 'outer;
                }
                if rhs.is_zero() {
                    let removed: Vec<usize> = r.terms.keys().map(|&(i, _)| i).collect();
                    for &i in &removed {
                        alive[i] = false;
                    }
                    steps.push(FaceStep {
                        constraint: ci,
                        removed,
                    });
                    continue 'outer;
                }
            }
            break;
        }
        let face: Vec<usize> = (0..self.dim).filter(|&i| alive[i]).collect();
        let mut pos = vec![usize::MAX; self.dim];
        for (k, &i) in face.iter().enumerate() {
            pos[i] = k;
        }
        let restricted = self
            .constraints
            .iter()
            .enumerate()
            .filter_map(|(ci, c)| {
                let r = restrict(c, &alive);
                if r.terms.is_empty() && r.rhs.is_zero() {
                    return None;
                }
                Some((
                    ci,
                    SdpConstraint {
                        terms: r
                            .terms
                            .into_iter()
                            .map(|((i, j), v)| ((pos[i], pos[j]), v))
                            .collect(),
                        rhs: r.rhs,
                    },
                ))
            })
            .collect();
        Reduction {
            steps,
            face,
            restricted,
            contradiction,
        }
    }
}

/// Index of upper-triangle pair `(i, j)` in svec order.
fn svec_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + j
}

/// Constraint rows in orthonormal svec coordinates (off-diagonals scaled by √2).
fn svec_rows(n: usize, cons: &[(usize, SdpConstraint)]) -> (DMatrix<f64>, DVector<f64>) {
    let dim = n * (n + 1) / 2;
    let mut a = DMatrix::zeros(cons.len(), dim);
    let mut b = DVector::zeros(cons.len());
    let s2 = std::f64::consts::SQRT_2;
    for (r, (_, c)) in cons.iter().enumerate() {
        for (&(i, j), v) in &c.terms {
            let v = rational::to_f64(v);
            a[(r, svec_index(n, i, j))] = if i == j { v } else { v / s2 };
        }
        b[r] = rational::to_f64(&c.rhs);
    }
    (a, b)
}

fn to_svec(m: &DMatrix<f64>) -> DVector<f64> {
    let n = m.nrows();
    let s2 = std::f64::consts::SQRT_2;
    let mut v = DVector::zeros(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            v[svec_index(n, i, j)] = if i == j { m[(i, i)] } else { s2 * m[(i, j)] };
        }
    }
    v
}

fn from_svec(v: &DVector<f64>, n: usize) -> DMatrix<f64> {
    let s2 = std::f64::consts::SQRT_2;
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = v[svec_index(n, i, j)];
            let x = if i == j { x } else { x / s2 };
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

fn psd_split(m: &DMatrix<f64>) -> (DMatrix<f64>, f64) {
    let eig = SymmetricEigen::new(m.clone());
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let clipped = eig.eigenvalues.map(|l| l.max(0.0));
    let q = &eig.eigenvectors;
    let p = q * DMatrix::from_diagonal(&clipped) * q.transpose();
    (p, if m.nrows() == 0 { 0.0 } else { min })
}

fn embed(x: &DMatrix<f64>, face: &[usize], n: usize) -> SymMatrix {
    let mut full = SymMatrix::zeros(n);
    for (a, &i) in face.iter().enumerate() {
        for (b, &j) in face.iter().enumerate() {
            if i <= j {
                full.set(i, j, x[(a, b)]);
            }
        }
    }
    full
}

fn exact_inconsistency(n: usize, cons: &[(usize, SdpConstraint)]) -> Option<Vec<Rational>> {
    let cols = n * (n + 1) / 2;
    let a: linalg::RatMatrix = cons
        .iter()
        .map(|(_, c)| {
            let mut row = vec![Rational::zero(); cols];
            for (&(i, j), v) in &c.terms {
                row[svec_index(n, i, j)] = v.clone();
            }
            row
        })
        .collect();
    let b: Vec<Rational> = cons.iter().map(|(_, c)| c.rhs.clone()).collect();
    if linalg::solve(&a, &b, cols).is_some() {
        return None;
    }
    linalg::left_nullspace(&a, cols)
        .into_iter()
        .find(|u| !linalg::dot(u, &b).is_zero())
}

pub fn solve_feasibility(p: &SdpFeasibilityProblem, opts: &SdpOptions) -> Result<SdpOutcome> {
    p.check()?;
    let m_total = p.constraints.len();
    let red = p.reduce(opts.facial_reduction);

    if let Some((ci, rhs)) = red.contradiction {
        // y = -sign(b) e_ci; on the face the combination is zero or a nonnegative
        // diagonal, and y·b = -|b|.
        let sign = if rhs.is_positive() { -1.0 } else { 1.0 };
        let mut multipliers = vec![0.0; m_total];
        multipliers[ci] = sign;
        let restricted_matrix_nonzero = red
            .restricted
            .iter()
            .find(|(i, _)| *i == ci)
            .map(|(_, c)| !c.terms.is_empty())
            .unwrap_or(false);
        let w = if restricted_matrix_nonzero {
            let c = &red.restricted.iter().find(|(i, _)| *i == ci).unwrap().1;
            let mut m = c.matrix(red.face.len());
            for v in m.upper.iter_mut() {
                *v *= sign;
            }
            m
        } else {
            SymMatrix::zeros(red.face.len())
        };
        let norm = w.frobenius_dot(&w).sqrt();
        let scale = if norm > 0.0 { norm } else { 1.0 };
        for v in multipliers.iter_mut() {
            *v /= scale;
        }
        return Ok(SdpOutcome::Infeasible(DualWitness {
            face_steps: red.steps,
            face: red.face,
            multipliers,
            margin: rational::to_f64(&rhs.abs()) / scale,
            min_eigenvalue: min_eigenvalue(&w) / scale,
        }));
    }

    let n = red.face.len();
    if let Some(u) = exact_inconsistency(n, &red.restricted) {
        let b: Vec<Rational> = red.restricted.iter().map(|(_, c)| c.rhs.clone()).collect();
        let ub = linalg::dot(&u, &b);
        let norm: f64 = u.iter().map(|v| rational::to_f64(v).powi(2)).sum::<f64>().sqrt();
        let sign = if ub.is_positive() { -1.0 } else { 1.0 };
        let mut multipliers = vec![0.0; m_total];
        for ((ci, _), v) in red.restricted.iter().zip(&u) {
            multipliers[*ci] = sign * rational::to_f64(v) / norm;
        }
        return Ok(SdpOutcome::Infeasible(DualWitness {
            face_steps: red.steps,
            face: red.face,
            multipliers,
            margin: rational::to_f64(&ub.abs()) / norm,
            min_eigenvalue: 0.0,
        }));
    }

    if n == 0 {
        let x = SymMatrix::zeros(p.dim);
        return Ok(SdpOutcome::Feasible {
            residual: p.max_residual(&x),
            x,
            min_eigenvalue: 0.0,
            iterations: 0,
            face: red.face,
        });
    }

    let (a, b) = svec_rows(n, &red.restricted);
    let a_pinv = if a.nrows() == 0 {
        DMatrix::zeros(a.ncols(), 0)
    } else {
        a.clone()
            .pseudo_inverse(1e-12)
            .map_err(|e| Error::Invalid(format!("pseudo-inverse failed: {e}")))?
    };
    let project_affine = |v: &DVector<f64>| -> DVector<f64> {
        if a.nrows() == 0 {
            return v.clone();
        }
        v - &a_pinv * (&a * v - &b)
    };

    let mut x = project_affine(&DVector::zeros(n * (n + 1) / 2));
    let mut gap_history: Vec<f64> = Vec::new();
    let mut best = (f64::INFINITY, x.clone());
    let mut last_min = f64::NEG_INFINITY;
    let mut iterations = 0;
    for it in 0..opts.max_iters {
        iterations = it + 1;
        let xm = from_svec(&x, n);
        let (z, min_eig) = psd_split(&xm);
        last_min = min_eig;
        if min_eig >= -opts.tol {
            let full = embed(&xm, &red.face, p.dim);
            return Ok(SdpOutcome::Feasible {
                residual: p.max_residual(&full),
                min_eigenvalue: min_eig,
                x: full,
                iterations,
                face: red.face,
            });
        }
        let zs = to_svec(&z);
        let gap = (&x - &zs).norm();
        if gap < best.0 {
            best = (gap, x.clone());
        }
        gap_history.push(gap);
        if it > 0 && it % opts.stall_window == 0 {
            let prev = gap_history[it - opts.stall_window];
            let stalled = (prev - gap).abs() <= 1e-7 * prev.max(1e-300);
            if stalled && gap > 10.0 * opts.tol {
                // W = Π_K(X) - X; solve Aᵀ y = w in least squares.
                let w = &zs - &x;
                let y = a_pinv.transpose() * &w;
                if let Some(witness) = check_witness(&red, n, &y, m_total, opts.tol) {
                    return Ok(SdpOutcome::Infeasible(witness));
                }
            }
        }
        x = project_affine(&zs);
    }
    let bestm = from_svec(&best.1, n);
    let full = embed(&bestm, &red.face, p.dim);
    Ok(SdpOutcome::Undetermined(Diagnostics {
        iterations,
        gap: best.0,
        residual: p.max_residual(&full),
        min_eigenvalue: last_min,
        face: red.face,
        best: full,
    }))
}

fn check_witness(
    red: &Reduction,
    n: usize,
    y: &DVector<f64>,
    m_total: usize,
    tol: f64,
) -> Option<DualWitness> {
    let mut w = DMatrix::zeros(n, n);
    let mut yb = 0.0;
    for ((_, c), &yi) in red.restricted.iter().zip(y.iter()) {
        let am = c.matrix(n).to_dmatrix();
        w += am * yi;
        yb += yi * rational::to_f64(&c.rhs);
    }
    let norm = w.norm();
    if norm <= 0.0 {
        return None;
    }
    let min_eig = psd_split(&w).1 / norm;
    let margin = -yb / norm;
    if min_eig < -tol.sqrt() || margin <= tol {
        return None;
    }
    let mut multipliers = vec![0.0; m_total];
    for ((ci, _), &yi) in red.restricted.iter().zip(y.iter()) {
        multipliers[*ci] = yi / norm;
    }
    Some(DualWitness {
        face_steps: red.steps.clone(),
        face: red.face.clone(),
        multipliers,
        margin,
        min_eigenvalue: min_eig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn scalar(rhs: i64) -> SdpFeasibilityProblem {
        let mut c = SdpConstraint::new(int(rhs));
        c.add(0, 0, int(1));
        SdpFeasibilityProblem {
            dim: 1,
            constraints: vec![c],
        }
    }

    #[test]
    fn scalar_feasible_and_infeasible() {
        let opts = SdpOptions::default();
        match solve_feasibility(&scalar(1), &opts).unwrap() {
            SdpOutcome::Feasible { x, .. } => assert!((x.get(0, 0) - 1.0).abs() < 1e-12),
            o => panic!("{o:?}"),
        }
        match solve_feasibility(&scalar(-1), &opts).unwrap() {
            SdpOutcome::Infeasible(w) => {
                assert!(w.margin > 0.5);
                assert!(w.min_eigenvalue >= 0.0);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn forced_indefinite_matrix_is_infeasible() {
        // X11 = 0, X22 = 0, X12 = 1 ⇒ X = [[0,1],[1,0]], eigenvalues ±1.
        let mut p = SdpFeasibilityProblem::new(2);
        for (i, j, b) in [(0, 0, 0), (1, 1, 0)] {
            let mut c = SdpConstraint::new(int(b));
            c.add(i, j, int(1));
            p.constraints.push(c);
        }
        let mut c = SdpConstraint::new(int(2));
        c.add(0, 1, int(2));
        p.constraints.push(c);
        let out = solve_feasibility(&p, &SdpOptions::default()).unwrap();
        assert!(out.is_infeasible(), "{out:?}");

        // Same answer from the projection stage alone.
        let opts = SdpOptions {
            facial_reduction: false,
            ..SdpOptions::default()
        };
        let out = solve_feasibility(&p, &opts).unwrap();
        match out {
            SdpOutcome::Infeasible(w) => {
                let ysum = w.multipliers.iter().zip(&p.constraints).map(|(y, c)| {
                    y * rational::to_f64(&c.rhs)
                });
                assert!(ysum.sum::<f64>() < 0.0);
                assert!(w.min_eigenvalue > -1e-4);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn strictly_infeasible_by_projection() {
        // X11 = 1, X22 = 1, X12 = 2: closest PSD matrix is at positive distance.
        let mut p = SdpFeasibilityProblem::new(2);
        for (i, j, b) in [(0, 0, 1), (1, 1, 1), (0, 1, 4)] {
            let mut c = SdpConstraint::new(int(b));
            c.add(i, j, int(if i == j { 1 } else { 2 }));
            p.constraints.push(c);
        }
        match solve_feasibility(&p, &SdpOptions::default()).unwrap() {
            SdpOutcome::Infeasible(w) => assert!(w.margin > 1e-3),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn feasible_outcomes_satisfy_constraints() {
        // X11 + X22 = 2, X12 = 1/2
        let mut p = SdpFeasibilityProblem::new(2);
        let mut c = SdpConstraint::new(int(2));
        c.add(0, 0, int(1));
        c.add(1, 1, int(1));
        p.constraints.push(c);
        let mut c = SdpConstraint::new(int(1));
        c.add(0, 1, int(2));
        p.constraints.push(c);
        let opts = SdpOptions::default();
        match solve_feasibility(&p, &opts).unwrap() {
            SdpOutcome::Feasible { x, residual, .. } => {
                assert!(residual <= opts.tol);
                assert!(min_eigenvalue(&x) >= -opts.tol);
            }
            o => panic!("{o:?}"),
        }
        assert_eq!(
            solve_feasibility(&p, &opts).unwrap(),
            solve_feasibility(&p, &opts).unwrap()
        );
    }

    #[test]
    fn min_eigenvalue_examples() {
        assert!((min_eigenvalue(&SymMatrix::identity(3)) - 1.0).abs() < 1e-12);
        let d = SymMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, -3.0]]);
        assert!((min_eigenvalue(&d) + 3.0).abs() < 1e-12);
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!((min_eigenvalue(&m) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_constraint_is_rejected() {
        let mut p = SdpFeasibilityProblem::new(1);
        let mut c = SdpConstraint::new(int(0));
        c.add(0, 3, int(1));
        p.constraints.push(c);
        assert!(solve_feasibility(&p, &SdpOptions::default()).is_err());
    }
}
