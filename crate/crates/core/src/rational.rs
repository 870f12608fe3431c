//! Exact rational numbers and their textual form.
//!
//! Rationals are written as `"p/q"`, or `"p"` when the denominator is one.
//! Parsing accepts unreduced input (`"2/4"`) and normalizes it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::input(format!("not a rational number: {text:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::input(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_all(rs: &[Rational]) -> Vec<String> {
    rs.iter().map(format).collect()
}

pub fn parse_all<S: AsRef<str>>(texts: &[S]) -> Result<Vec<Rational>> {
    texts.iter().map(|t| parse(t.as_ref())).collect()
}
