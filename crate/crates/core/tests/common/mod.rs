#![allow(dead_code)]

use std::path::PathBuf;

use arcsos::parse::parse_polynomial;
use arcsos::rational::frac;
use arcsos::{GroebnerContext, Polynomial, Rational, TermOrder};
use rand::Rng;

pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

pub fn poly(s: &str, vars: &[&str]) -> Polynomial {
    parse_polynomial(s, &names(vars)).unwrap()
}

pub fn ctx(gens: &[&str], vars: &[&str]) -> GroebnerContext {
    GroebnerContext::new(gens.iter().map(|g| poly(g, vars)).collect(), TermOrder::grevlex(vars.len())).unwrap()
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// A test ideal with a recipe for exact real points on it.
pub struct Family {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub gens: &'static [&'static str],
    /// Rational parametrization of (part of) the real points.
    pub point: fn(&Rational) -> Vec<Rational>,
}

fn sq(t: &Rational) -> Rational {
    t * t
}

pub fn families() -> Vec<Family> {
    vec![
        Family {
            name: "circle",
            vars: &["x", "y"],
            gens: &["x^2 + y^2 - 1"],
            point: |t| {
                let d = Rational::from_integer(1.into()) + sq(t);
                vec![(Rational::from_integer(1.into()) - sq(t)) / &d, (t * Rational::from_integer(2.into())) / d]
            },
        },
        Family {
            name: "cusp",
            vars: &["x", "y"],
            gens: &["y^2 - x^3"],
            point: |t| vec![sq(t), sq(t) * t],
        },
        Family {
            name: "cusp_compact",
            vars: &["x", "y"],
            gens: &["y^2 - x^3 + x^4"],
            // x = 1/(1+t^2), y = t x^2
            point: |t| {
                let x = Rational::from_integer(1.into()) / (Rational::from_integer(1.into()) + sq(t));
                vec![x.clone(), t * sq(&x)]
            },
        },
        Family {
            name: "squiggly",
            vars: &["x", "y", "z"],
            gens: &["y^2 - x^5", "z - x^3"],
            point: |t| {
                let x = sq(t);
                vec![x.clone(), sq(&x) * t, sq(&x) * &x]
            },
        },
        Family {
            name: "sphere",
            vars: &["x", "y", "z"],
            gens: &["x^2 + y^2 + z^2 - 1"],
            // stereographic image of (t, 1 - t)
            point: |t| {
                let one = Rational::from_integer(1.into());
                let u = t.clone();
                let v = &one - t;
                let d = &one + sq(&u) + sq(&v);
                let two = Rational::from_integer(2.into());
                vec![&two * &u / &d, &two * &v / &d, (sq(&u) + sq(&v) - &one) / d]
            },
        },
        Family {
            name: "double_point",
            vars: &["x"],
            gens: &["x^2"],
            point: |_| vec![Rational::from_integer(0.into())],
        },
        Family {
            name: "fat_point",
            vars: &["x", "y"],
            gens: &["y - x^2", "y^2"],
            point: |_| vec![Rational::from_integer(0.into()), Rational::from_integer(0.into())],
        },
    ]
}

impl Family {
    pub fn ctx(&self) -> GroebnerContext {
        ctx(self.gens, self.vars)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn random_point(&self, rng: &mut impl Rng) -> Vec<Rational> {
        let t = frac(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        (self.point)(&t)
    }
}

/// Random polynomial of total degree at most `deg` with small integer coefficients.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, deg: u32, terms: usize) -> Polynomial {
    let monos = arcsos::ideal::monomials_up_to(nvars, deg);
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let c = frac(rng.gen_range(-3..=3), 1);
        p = p.add(&Polynomial::term(c, m)).unwrap();
    }
    p
}
