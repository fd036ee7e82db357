//! Exact scalar field.
//!
//! Scalars are arbitrary precision rationals, always kept in lowest terms
//! with a positive denominator.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"`, `"a"` or `"-a/b"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats as `a` for integers and `a/b` otherwise.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn pow_u32(x: &Rational, k: u32) -> Rational {
    num::pow::pow(x.clone(), k as usize)
}

fn exact_nth_root_int(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    if num::pow::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

/// Exact `n`-th root of a nonnegative rational, if it is rational.
pub fn exact_nth_root(x: &Rational, n: u32) -> Option<Rational> {
    if n == 0 || x.is_negative() {
        return None;
    }
    let num = exact_nth_root_int(x.numer(), n)?;
    let den = exact_nth_root_int(x.denom(), n)?;
    Some(Rational::new(num, den))
}

/// Splits a positive rational exponent into `(numerator, denominator)` as
/// machine integers.
pub fn exponent_parts(p: &Rational) -> Result<(u32, u32)> {
    if !p.is_positive() {
        return Err(Error::InvalidExponent(format!(
            "{} is not positive",
            fmt_rational(p)
        )));
    }
    let a = p.numer().to_u32();
    let b = p.denom().to_u32();
    match (a, b) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::InvalidExponent(format!(
            "{} is too large",
            fmt_rational(p)
        ))),
    }
}

/// `x^p` for a positive rational exponent `p`, exactly.
///
/// `point` is only used to label a [`Error::NegativeBase`] failure.
pub fn exact_power(x: &Rational, p: &Rational, point: usize) -> Result<Rational> {
    let (a, b) = exponent_parts(p)?;
    if b == 1 {
        return Ok(pow_u32(x, a));
    }
    if x.is_negative() {
        return Err(Error::NegativeBase { point });
    }
    let raised = pow_u32(x, a);
    exact_nth_root(&raised, b).ok_or_else(|| Error::NonRationalRoot {
        value: fmt_rational(&raised),
    })
}

/// `⌊x⌋` as a rational.
pub fn floor(x: &Rational) -> Rational {
    Rational::from_integer(x.floor().to_integer())
}

pub fn two_pow(j: u32) -> Rational {
    Rational::from_integer(num::pow::pow(BigInt::from(2), j as usize))
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn sign(x: &Rational) -> Rational {
    x.signum()
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}
