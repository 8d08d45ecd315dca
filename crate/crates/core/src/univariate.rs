//! Exact univariate polynomials: interpolation, Sturm sequences, real-root
//! isolation, and rational-root extraction.

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

/// Ascending coefficients; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let c = r.last().unwrap() / d.lead();
            for (i, dc) in d.0.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().clone();
        UniPoly::new(a.0.iter().map(|c| c / &l).collect())
    }

    /// Same roots, each simple.
    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Sturm sequence of the square-free part.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let p = self.square_free();
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(UniPoly::new(r.0.iter().map(|c| -c).collect()));
        }
        seq
    }

    /// Bound `B` with every real root in `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let l = self.lead().abs();
        let m = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| c.abs() / &l)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }

    /// Disjoint intervals `(lo, hi]` each containing exactly one distinct real root,
    /// in increasing order.
    pub fn isolate_real_roots(&self) -> Vec<(Rational, Rational)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = self.sturm_sequence();
        let b = self.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
            match count {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / rational::int(2);
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort();
        out
    }

    /// All rational roots, exact, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = self.square_free();
        // With integer coefficients, any rational root p/q has q dividing the leading coefficient.
        let den = rational::lcm_of_denominators(p.0.iter());
        let lead = (p.lead() * Rational::from_integer(den)).abs().to_integer();
        let q2 = Rational::from_integer(&lead * &lead);
        let seq = p.sturm_sequence();
        let mut roots = Vec::new();
        for (mut lo, mut hi) in p.isolate_real_roots() {
            if p.eval(&hi).is_zero() {
                roots.push(hi);
                continue;
            }
            while (&hi - &lo) * &q2 >= Rational::one() {
                let mid = (&lo + &hi) / rational::int(2);
                if p.eval(&mid).is_zero() {
                    lo = mid.clone();
                    hi = mid;
                    break;
                }
                if sign_changes(&seq, &lo) > sign_changes(&seq, &mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let cand = if lo == hi { lo } else { rational::simplest_in(&lo, &hi) };
            if p.eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
        roots
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| sign(&p.eval(x))).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Exact interpolation through distinct nodes (Newton divided differences).
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UniPoly::new(vec![]);
    for i in (0..n).rev() {
        // acc = acc * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); acc.0.len() + 1];
        for (k, c) in acc.0.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        acc = UniPoly::new(next);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) = x^2 + x - 2
        let p = up(&[-2, 1, 1]);
        let (q, r) = p.div_rem(&up(&[-1, 1]));
        assert_eq!(q, up(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&up(&[-1, 1])), up(&[-1, 1]));
    }

    #[test]
    fn isolates_roots_of_x2_minus_2() {
        let p = up(&[-2, 0, 1]);
        let iv = p.isolate_real_roots();
        assert_eq!(iv.len(), 2);
        for (lo, hi) in &iv {
            assert!(lo < hi);
        }
        assert!(p.rational_roots().is_empty());
    }

    #[test]
    fn rational_roots_with_multiplicity_and_fractions() {
        // (2x - 1)^2 (x + 3) (x^2 + 1)
        let a = up(&[-1, 2]);
        let p = UniPoly::new(
            mul(&mul(&mul(&a, &a), &up(&[3, 1])), &up(&[1, 0, 1])).0,
        );
        assert_eq!(p.rational_roots(), vec![int(-3), frac(1, 2)]);
        assert_eq!(p.isolate_real_roots().len(), 2);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = up(&[1, -3, 0, 2]);
        let xs: Vec<Rational> = (0..4).map(int).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(up(&[5]).rational_roots().is_empty());
        assert!(up(&[]).isolate_real_roots().is_empty());
    }

    fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut out = vec![Rational::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UniPoly::new(out)
    }
}
