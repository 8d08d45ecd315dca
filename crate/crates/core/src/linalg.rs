//! Exact rational linear algebra on small dense matrices.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn transpose(a: &RatMatrix, cols: usize) -> RatMatrix {
    let mut t = zeros(cols, a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = v.clone();
        }
    }
    t
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut RatMatrix, cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let d = &factor * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &RatMatrix, cols: usize) -> usize {
    let mut m = a.clone();
    rref(&mut m, cols).len()
}

/// Basis of `{v : a v = 0}`, one vector per free column, with that free entry equal to 1.
pub fn nullspace(a: &RatMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{u : uᵀ a = 0}`.
pub fn left_nullspace(a: &RatMatrix, cols: usize) -> Vec<Vec<Rational>> {
    nullspace(&transpose(a, cols), a.len())
}

/// A particular solution of `a x = b` with free variables set to zero, or `None`
/// if the system is inconsistent.
pub fn solve(a: &RatMatrix, b: &[Rational], cols: usize) -> Option<Vec<Rational>> {
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

pub fn mat_vec(a: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact LDLᵀ of a symmetric matrix, succeeding only if the matrix is positive
/// semidefinite. `l` is unit lower triangular; zero pivots force zero columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Ldl {
    pub l: RatMatrix,
    pub d: Vec<Rational>,
}

pub fn ldl_psd(g: &RatMatrix) -> Option<Ldl> {
    let n = g.len();
    let mut l = zeros(n, n);
    let mut d = vec![Rational::zero(); n];
    for j in 0..n {
        let mut dj = g[j][j].clone();
        for k in 0..j {
            if !d[k].is_zero() {
                dj -= &l[j][k] * &l[j][k] * &d[k];
            }
        }
        if dj.is_negative() {
            return None;
        }
        l[j][j] = Rational::one();
        for i in (j + 1)..n {
            let mut s = g[i][j].clone();
            for k in 0..j {
                if !d[k].is_zero() {
                    s -= &l[i][k] * &l[j][k] * &d[k];
                }
            }
            if dj.is_zero() {
                if !s.is_zero() {
                    return None;
                }
            } else {
                l[i][j] = s / &dj;
            }
        }
        d[j] = dj;
    }
    Some(Ldl { l, d })
}
