//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `(a, b, c)` with exact coordinates.
pub fn fmt_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(fmt).collect();
    format!("({})", parts.join(", "))
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            // Accept plain decimals like 0.25 as exact decimal fractions.
            if let Some((whole, fracpart)) = s.split_once('.') {
                let neg = whole.starts_with('-');
                let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), fracpart);
                let n: BigInt = digits.parse().ok()?;
                let d = num_traits::pow(BigInt::from(10), fracpart.len());
                let r = Rational::new(n, d);
                return Some(if neg { -r } else { r });
            }
            Some(Rational::from_integer(s.parse().ok()?))
        }
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: scale down through the integer parts.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Exact binary value of a finite float.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Best rational approximation of `x` whose denominator does not exceed `max_den`,
/// via the continued-fraction expansion with a final semiconvergent check.
pub fn approximate(x: f64, max_den: u64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let target = from_f64(x);
    let max_den = BigInt::from(max_den.max(1));
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            // semiconvergent with the largest admissible partial quotient
            let k = (&max_den - &q0) / &q1;
            let cand_semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let cand_conv = Rational::new(p1.clone(), q1.clone());
            let d_semi = (&cand_semi - &target).abs();
            let d_conv = (&cand_conv - &target).abs();
            return if d_semi < d_conv { cand_semi } else { cand_conv };
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac_part = &rest - Rational::from_integer(a);
        if frac_part.is_zero() {
            return Rational::new(p1, q1);
        }
        rest = frac_part.recip();
    }
}

/// Simplest rational (smallest denominator, then smallest |numerator|) in the closed
/// interval `[lo, hi]`.
pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if lo.is_positive() {
        simplest_pos(lo, hi)
    } else if hi.is_negative() {
        -simplest_pos(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

fn simplest_pos(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // lo and hi share the integer part; recurse on reciprocals of fractional parts.
    let lo_f = lo - &fl;
    let hi_f = hi - &fl;
    let inner = simplest_pos(&hi_f.recip(), &lo_f.recip());
    fl + inner.recip()
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn gcd_of_numerators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, r| acc.gcd(r.numer()))
}
