//! Exact rationals and the `"p/q"` text form used by every file format.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Reduced `p/q` with `q > 0`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational {text:?}")))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Scales a rational vector to coprime integers with the same direction.
/// Returns `None` for the zero vector.
pub fn primitive_integer_vector(values: &[Rational]) -> Option<Vec<BigInt>> {
    if values.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    Some(primitive_bigint_vector(ints))
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive_bigint_vector(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in ints.iter_mut() {
            *v /= &g;
        }
    }
    ints
}

pub fn gcd_of(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5/1");
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![ratio(1, 2), ratio(3, 4), int(0)];
        let p = primitive_integer_vector(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(3), BigInt::from(0)]);
        assert!(primitive_integer_vector(&[int(0)]).is_none());
    }
}

/// Serde adapters writing integers as decimal strings.
pub mod serde_int {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn bigint_map<S: Serializer>(v: &BTreeMap<BigInt, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(v.iter().map(|(k, c)| (k.to_string(), c)))
    }
}
