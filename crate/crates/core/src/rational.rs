//! Exact rational scalars.
//!
//! Every coefficient in this crate is a `num_rational::BigRational`:
//! arbitrary-precision, kept reduced with positive denominator by
//! construction. No floating point enters any rank or kernel computation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator. Panics on zero denominator.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p`, `-p`, or `p/q` with arbitrary-precision parts.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".to_string());
    }
    let (num_str, den_str) = match t.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (t, None),
    };
    let numer: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| format!("bad integer `{}`", num_str.trim()))?;
    let denom: BigInt = match den_str {
        Some(b) => b
            .trim()
            .parse()
            .map_err(|_| format!("bad integer `{}`", b.trim()))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{t}`"));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("-1/3").unwrap(), frac(-1, 3));
        assert_eq!(parse_rational(" 2 / 6 ").unwrap(), frac(1, 3));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(-7)), "-7");
        assert_eq!(format_rational(&frac(2, 4)), "1/2");
        assert_eq!(format_rational(&frac(1, -2)), "-1/2");
    }
}
