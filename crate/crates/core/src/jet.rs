//! Truncated power series `a_0 + a_1 e + ... + a_{m-1} e^{m-1}` and arc
//! homomorphisms from the quotient ring into them.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::GroebnerContext;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// An element of `R[e]/(e^m)` with exactly `m` stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet {
    coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leading {
    Zero,
    Term { index: usize, coeff: Rational },
}

impl Jet {
    pub fn new(order: usize, mut coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::BadOrder {
                order,
                reason: "jet order must be at least 1".into(),
            });
        }
        if coeffs.len() > order && coeffs[order..].iter().any(|c| !c.is_zero()) {
            return Err(Error::BadOrder {
                order,
                reason: format!("{} coefficients do not fit", coeffs.len()),
            });
        }
        coeffs.resize(order, Rational::zero());
        Ok(Jet { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Jet {
            coeffs: vec![Rational::zero(); order.max(1)],
        }
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut j = Jet::zero(order);
        j.coeffs[0] = c;
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Jet) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        Ok(Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let m = self.order();
        let mut out = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..m - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Jet { coeffs: out })
    }

    pub fn leading(&self) -> Leading {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(index) => Leading::Term {
                index,
                coeff: self.coeffs[index].clone(),
            },
            None => Leading::Zero,
        }
    }

    /// Zero, or the first nonzero coefficient is strictly positive.
    pub fn is_nonneg(&self) -> bool {
        match self.leading() {
            Leading::Zero => true,
            Leading::Term { coeff, .. } => coeff.is_positive(),
        }
    }

    pub fn truncate(&self, order: usize) -> Result<Jet> {
        if order == 0 || order > self.order() {
            return Err(Error::BadOrder {
                order,
                reason: format!("cannot truncate an order-{} jet", self.order()),
            });
        }
        Ok(Jet {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    /// Image under the automorphism `e -> -e`.
    pub fn negate_parameter(&self) -> Jet {
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    /// Text form in the parameter `e` with ascending powers, e.g. `1 - 1/2*e^2`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let power = match i {
                0 => String::new(),
                1 => "e".to_string(),
                _ => format!("e^{i}"),
            };
            if i == 0 {
                s.push_str(&rational::fmt(&abs));
            } else if abs.is_one() {
                s.push_str(&power);
            } else {
                s.push_str(&format!("{}*{power}", rational::fmt(&abs)));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Parse the text form produced by [`Jet::to_text`] (any polynomial in `e`).
    pub fn parse(text: &str, order: usize) -> Result<Jet> {
        let p = parse_polynomial(text, &["e".to_string()])?;
        let mut coeffs = vec![Rational::zero(); order];
        for (m, c) in p.terms() {
            let i = m.exponents()[0] as usize;
            if i >= order {
                if !c.is_zero() {
                    return Err(Error::BadOrder {
                        order,
                        reason: format!("term e^{i} exceeds the order"),
                    });
                }
                continue;
            }
            coeffs[i] = c.clone();
        }
        Jet::new(order, coeffs)
    }
}

/// A ring map `R[x]/I -> R[e]/(e^m)` given by the images of the variables, at the
/// point read off the constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcHom {
    order: usize,
    images: Vec<Jet>,
    basepoint: Vec<Rational>,
}

impl ArcHom {
    pub fn new(basepoint: Vec<Rational>, images: Vec<Jet>) -> Result<Self> {
        if images.len() != basepoint.len() {
            return Err(Error::DimensionMismatch {
                expected: basepoint.len(),
                found: images.len(),
            });
        }
        let order = images.first().map_or(1, Jet::order);
        for (j, p) in images.iter().zip(&basepoint) {
            if j.order() != order {
                return Err(Error::OrderMismatch {
                    left: order,
                    right: j.order(),
                });
            }
            if j.coeff(0) != p {
                return Err(Error::Invalid(format!(
                    "image constant term {} does not match basepoint coordinate {}",
                    rational::fmt(j.coeff(0)),
                    rational::fmt(p)
                )));
            }
        }
        Ok(ArcHom {
            order,
            images,
            basepoint,
        })
    }

    /// Arc `x_i -> P_i + sum_j offsets[i][j-1] e^j`.
    pub fn from_offsets(basepoint: &[Rational], order: usize, offsets: &[Vec<Rational>]) -> Result<Self> {
        let images = basepoint
            .iter()
            .zip(offsets)
            .map(|(p, off)| {
                let mut c = vec![p.clone()];
                c.extend(off.iter().cloned());
                Jet::new(order, c)
            })
            .collect::<Result<Vec<_>>>()?;
        ArcHom::new(basepoint.to_vec(), images)
    }

    pub fn constant(basepoint: &[Rational], order: usize) -> Self {
        ArcHom {
            order,
            images: basepoint
                .iter()
                .map(|p| Jet::constant(order, p.clone()))
                .collect(),
            basepoint: basepoint.to_vec(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn images(&self) -> &[Jet] {
        &self.images
    }

    pub fn basepoint(&self) -> &[Rational] {
        &self.basepoint
    }

    /// `phi(f)`, by substituting each variable's jet into `f`.
    pub fn apply(&self, f: &Polynomial) -> Result<Jet> {
        if f.nvars() != self.images.len() {
            return Err(Error::DimensionMismatch {
                expected: self.images.len(),
                found: f.nvars(),
            });
        }
        let m = self.order;
        let mut powers: Vec<Vec<Jet>> = self
            .images
            .iter()
            .map(|j| vec![Jet::constant(m, Rational::one()), j.clone()])
            .collect();
        let mut acc = Jet::zero(m);
        for (mono, c) in f.terms() {
            let mut t = Jet::constant(m, c.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&self.images[i])?;
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e])?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// The map kills every generator of the ideal.
    pub fn is_valid(&self, ctx: &GroebnerContext) -> bool {
        ctx.generators()
            .iter()
            .all(|g| self.apply(g).map(|j| j.is_zero()).unwrap_or(false))
    }

    pub fn negate_parameter(&self) -> ArcHom {
        ArcHom {
            order: self.order,
            images: self.images.iter().map(Jet::negate_parameter).collect(),
            basepoint: self.basepoint.clone(),
        }
    }

    pub fn truncate(&self, order: usize) -> Result<ArcHom> {
        if order == 0 || order > self.order {
            return Err(Error::BadOrder {
                order,
                reason: format!("cannot truncate an order-{} arc", self.order),
            });
        }
        Ok(ArcHom {
            order,
            images: self
                .images
                .iter()
                .map(|j| j.truncate(order))
                .collect::<Result<_>>()?,
            basepoint: self.basepoint.clone(),
        })
    }

    /// Coefficients of `e^1 .. e^{m-1}` per variable.
    pub fn offsets(&self) -> Vec<Vec<Rational>> {
        self.images.iter().map(|j| j.coeffs()[1..].to_vec()).collect()
    }

    /// Text lines `x -> -e`, one per variable.
    pub fn to_lines(&self, names: &[String]) -> Vec<String> {
        names
            .iter()
            .zip(&self.images)
            .map(|(n, j)| format!("{n} -> {}", j.to_text()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TermOrder;
    use crate::rational::{frac, int};

    fn jet(c: &[i64]) -> Jet {
        Jet::new(c.len(), c.iter().map(|&v| int(v)).collect()).unwrap()
    }

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

    #[test]
    fn multiplication_examples() {
        assert!(jet(&[0, -1]).mul(&jet(&[0, -1])).unwrap().is_zero());
        assert_eq!(jet(&[0, 1, 0]).mul(&jet(&[0, 1, 0])).unwrap(), jet(&[0, 0, 1]));
        assert_eq!(jet(&[1, 1, 0]).mul(&jet(&[1, -1, 0])).unwrap(), jet(&[1, 0, -1]));
        assert!(matches!(
            jet(&[1, 1]).mul(&jet(&[1, 1, 1])),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn leading_and_nonnegativity() {
        assert_eq!(Jet::zero(4).leading(), Leading::Zero);
        assert_eq!(
            jet(&[0, 3, -5]).leading(),
            Leading::Term { index: 1, coeff: int(3) }
        );
        assert_eq!(
            jet(&[0, 0, -1]).leading(),
            Leading::Term { index: 2, coeff: int(-1) }
        );
        assert!(Jet::zero(3).is_nonneg());
        assert!(!jet(&[0, 0, -1]).is_nonneg());
        assert!(jet(&[2, -7]).is_nonneg());
    }

    #[test]
    fn apply_examples() {
        let x = ArcHom::from_offsets(&[int(0)], 2, &[vec![int(-1)]]).unwrap();
        assert_eq!(x.apply(&Polynomial::var(1, 0)).unwrap(), jet(&[0, -1]));

        let v = names(&["x", "y"]);
        let phi = ArcHom::from_offsets(&[int(0), int(0)], 3, &[vec![int(1), int(0)], vec![int(0), int(1)]])
            .unwrap();
        assert_eq!(
            phi.apply(&parse_polynomial("-y", &v).unwrap()).unwrap(),
            jet(&[0, 0, -1])
        );

        let v3 = names(&["x", "y", "z"]);
        let psi = ArcHom::from_offsets(
            &[int(0), int(0), int(0)],
            4,
            &[vec![int(-1), int(0), int(0)], vec![int(0); 3], vec![int(0), int(0), int(-1)]],
        )
        .unwrap();
        assert_eq!(
            psi.apply(&parse_polynomial("z", &v3).unwrap()).unwrap(),
            jet(&[0, 0, 0, -1])
        );
    }

    #[test]
    fn validity_examples() {
        let c = ctx(&["x^2"], &["x"]);
        let phi = ArcHom::from_offsets(&[int(0)], 2, &[vec![int(-1)]]).unwrap();
        assert!(phi.is_valid(&c));

        let c = ctx(&["y^2 - x^5", "z - x^3"], &["x", "y", "z"]);
        let psi = ArcHom::from_offsets(
            &[int(0), int(0), int(0)],
            4,
            &[vec![int(-1), int(0), int(0)], vec![int(0); 3], vec![int(0), int(0), int(-1)]],
        )
        .unwrap();
        assert!(psi.is_valid(&c));

        let c = ctx(&["y^2 - x^3"], &["x", "y"]);
        let at = |m: usize| {
            let mut xo = vec![int(0); m - 1];
            xo[0] = int(-1);
            ArcHom::from_offsets(&[int(0), int(0)], m, &[xo, vec![int(0); m - 1]]).unwrap()
        };
        assert!(at(2).is_valid(&c));
        assert!(at(3).is_valid(&c));
        assert!(!at(4).is_valid(&c));
    }

    #[test]
    fn negation_and_truncation() {
        let phi = ArcHom::from_offsets(&[int(0)], 2, &[vec![int(1)]]).unwrap();
        assert_eq!(
            phi.negate_parameter(),
            ArcHom::from_offsets(&[int(0)], 2, &[vec![int(-1)]]).unwrap()
        );
        let even = ArcHom::from_offsets(&[int(1)], 3, &[vec![int(0), int(1)]]).unwrap();
        assert_eq!(even.negate_parameter(), even);
        let two = ArcHom::from_offsets(
            &[int(0), int(0)],
            4,
            &[vec![int(-1), int(0), int(0)], vec![int(0), int(0), int(-1)]],
        )
        .unwrap();
        assert_eq!(
            two.negate_parameter(),
            ArcHom::from_offsets(
                &[int(0), int(0)],
                4,
                &[vec![int(1), int(0), int(0)], vec![int(0), int(0), int(1)]],
            )
            .unwrap()
        );

        let a = ArcHom::from_offsets(&[int(0)], 4, &[vec![int(-1), int(0), int(1)]]).unwrap();
        assert_eq!(
            a.truncate(2).unwrap(),
            ArcHom::from_offsets(&[int(0)], 2, &[vec![int(-1)]]).unwrap()
        );
        assert_eq!(a.truncate(4).unwrap(), a);
        assert!(a.truncate(5).is_err());
        let b = ArcHom::from_offsets(&[int(0), int(0)], 3, &[vec![int(1), int(0)], vec![int(0), int(1)]])
            .unwrap();
        assert_eq!(
            b.truncate(2).unwrap(),
            ArcHom::from_offsets(&[int(0), int(0)], 2, &[vec![int(1)], vec![int(0)]]).unwrap()
        );
    }

    #[test]
    fn text_round_trip() {
        let j = Jet::new(4, vec![int(1), int(0), frac(-1, 2), int(0)]).unwrap();
        assert_eq!(j.to_text(), "1 - 1/2*e^2");
        assert_eq!(Jet::parse(&j.to_text(), 4).unwrap(), j);
        assert_eq!(Jet::parse("-e + 0e^2", 2).unwrap(), jet(&[0, -1]));
        assert!(Jet::parse("e^3", 2).is_err());
    }
}
