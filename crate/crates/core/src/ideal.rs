//! Ideals and quotient rings through reduced Gröbner bases.
//!
//! Buchberger's algorithm with the normal selection strategy (smallest lcm
//! first), the coprime-leading-monomial criterion, and full auto-reduction at
//! the end. Intended for desk-scale ideals: a handful of variables, modest
//! degrees.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, TermOrder};
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub struct GroebnerContext {
    nvars: usize,
    generators: Vec<Polynomial>,
    order: TermOrder,
    basis: Vec<Polynomial>,
    leading: Vec<Monomial>,
}

impl GroebnerContext {
    pub fn new(generators: Vec<Polynomial>, order: TermOrder) -> Result<Self> {
        groebner(generators, order)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(f, &self.basis, &self.leading, &self.order)
    }

    pub fn is_member(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Error unless every generator vanishes exactly at `p`.
    pub fn check_point(&self, p: &[Rational]) -> Result<()> {
        if p.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: p.len(),
            });
        }
        for (i, g) in self.generators.iter().enumerate() {
            let v = g.eval(p)?;
            if !v.is_zero() {
                return Err(Error::NotOnVariety {
                    point: rational::fmt_point(p),
                    generator: i + 1,
                    value: rational::fmt(&v),
                });
            }
        }
        Ok(())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading.iter().any(|l| l.divides(m))
    }

    /// Standard monomials of total degree at most `d`, sorted by degree and then by
    /// the term order.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = monomials_up_to(self.nvars, d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect();
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(self.order.cmp(a, b)));
        out
    }

    /// Krull dimension of the quotient ring, read off the leading-term ideal as
    /// the size of a largest variable set containing no leading monomial's support.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::EmptyScheme);
        }
        let n = self.nvars;
        let mut best = 0;
        for mask in 0u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = self.leading.iter().all(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
            });
            if independent {
                best = size;
            }
        }
        Ok(best)
    }
}

/// All exponent vectors of total degree `<= d` in `n` variables, grouped by degree.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = vec![0u32; n];
        fill(&mut cur, 0, deg, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, remaining: u32, out: &mut Vec<Monomial>) {
    let n = cur.len();
    if n == 0 {
        if remaining == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    if i == n - 1 {
        cur[i] = remaining;
        out.push(Monomial::new(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        cur[i] = e;
        fill(cur, i + 1, remaining - e, out);
    }
    cur[i] = 0;
}

fn reduce(
    f: &Polynomial,
    basis: &[Polynomial],
    leading: &[Monomial],
    order: &TermOrder,
) -> Polynomial {
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.nvars());
    while let Some((lm, lc)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leading.iter().position(|l| l.divides(&lm)) {
            Some(i) => {
                let g = &basis[i];
                let gc = g.leading_term(order).expect("nonzero basis element").1.clone();
                let q = leading[i].quotient_of(&lm);
                let sub = g.mul_term(&(lc / gc), &q);
                p = p.sub(&sub).expect("same ring");
            }
            None => {
                rem.add_term(lm.clone(), lc.clone());
                p.add_term(lm, -lc);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.recip(), &fm.quotient_of(&l));
    let b = g.mul_term(&gc.recip(), &gm.quotient_of(&l));
    a.sub(&b).expect("same ring")
}

pub fn groebner(generators: Vec<Polynomial>, order: TermOrder) -> Result<GroebnerContext> {
    let nvars = order.nvars();
    for g in &generators {
        if g.nvars() != nvars {
            return Err(Error::RingMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
    }
    let mut basis: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic(&order))
        .collect();
    let mut leading: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_term(&order).unwrap().0.clone())
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties by index for determinism
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(a, b)), (_, &(c, d))| {
                let l1 = leading[a].lcm(&leading[b]);
                let l2 = leading[c].lcm(&leading[d]);
                order.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        let (i, j) = pairs.remove(pos);
        if leading[i].is_coprime(&leading[j]) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], &order);
        let r = reduce(&s, &basis, &leading, &order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(&order);
        let lm = r.leading_term(&order).unwrap().0.clone();
        let k = basis.len();
        basis.push(r);
        leading.push(lm.clone());
        if lm.is_one() {
            break;
        }
        for i in 0..k {
            pairs.push((i, k));
        }
    }

    let (basis, leading) = auto_reduce(basis, leading, &order);
    Ok(GroebnerContext {
        nvars,
        generators,
        order,
        basis,
        leading,
    })
}

fn auto_reduce(
    basis: Vec<Polynomial>,
    leading: Vec<Monomial>,
    order: &TermOrder,
) -> (Vec<Polynomial>, Vec<Monomial>) {
    if let Some(i) = leading.iter().position(Monomial::is_one) {
        let n = basis[i].nvars();
        return (vec![Polynomial::one(n)], vec![Monomial::one(n)]);
    }
    // keep only elements whose leading monomial is minimal
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i
                && leading[j].divides(&leading[i])
                && (leading[j] != leading[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let mut basis: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut leading: Vec<Monomial> = keep.iter().map(|&i| leading[i].clone()).collect();
    for i in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let other_lm: Vec<Monomial> = leading
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, m)| m.clone())
            .collect();
        let lead = Polynomial::term(Rational::one(), leading[i].clone());
        let tail = basis[i].sub(&lead).expect("same ring");
        let tail = reduce(&tail, &others, &other_lm, order);
        basis[i] = lead.add(&tail).expect("same ring");
        leading[i] = basis[i].leading_term(order).unwrap().0.clone();
    }
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| order.cmp(&leading[a], &leading[b]));
    let basis = idx.iter().map(|&i| basis[i].clone()).collect();
    let leading = idx.iter().map(|&i| leading[i].clone()).collect();
    (basis, leading)
}

/// Coefficient vector of `p` against an indexed monomial list; monomials not in
/// the list are returned separately.
pub fn coefficients_in(p: &Polynomial, monomials: &[Monomial]) -> (Vec<Rational>, bool) {
    let mut out = vec![Rational::zero(); monomials.len()];
    let mut complete = true;
    for (m, c) in p.terms() {
        match monomials.iter().position(|x| x == m) {
            Some(i) => out[i] = c.clone(),
            None => complete = false,
        }
    }
    (out, complete)
}
