//! Exact rational scalars and their canonical `p/q` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational from a numerator/denominator pair of machine integers.
///
/// Panics on zero denominator; reduction and sign normalization are handled
/// by the underlying `Ratio::new`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// 1/n! as a rational.
pub fn inv_factorial(n: usize) -> Rat {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    Rat::new(BigInt::one(), f)
}

/// Canonical rendering: `p/q` in lowest terms, `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatParseError {
    Empty,
    BadInteger(String),
    ZeroDenominator,
}

impl std::fmt::Display for RatParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RatParseError::Empty => write!(f, "empty rational"),
            RatParseError::BadInteger(s) => write!(f, "bad integer `{s}`"),
            RatParseError::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

impl std::error::Error for RatParseError {}

/// Parse the canonical `p/q` (or bare `p`) form.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let parse_int = |t: &str| -> Result<BigInt, RatParseError> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| RatParseError::BadInteger(t.trim().to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(RatParseError::ZeroDenominator);
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// True when `r` is a (possibly negative) integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Absolute value.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(2, -4);
        assert_eq!(format_rat(&r), "-1/2");
        assert_eq!(format_rat(&rat(-1, 720)), "-1/720");
        assert_eq!(format_rat(&rint(3)), "3");
        assert_eq!(format_rat(&rat(6, 3)), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["-1/720", "3", "0", "22/7", "-5"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat(" 2/4 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("1/0"), Err(RatParseError::ZeroDenominator));
        assert!(matches!(parse_rat("x"), Err(RatParseError::BadInteger(_))));
        assert_eq!(parse_rat(""), Err(RatParseError::Empty));
    }

    #[test]
    fn factorials() {
        assert_eq!(inv_factorial(0), rint(1));
        assert_eq!(inv_factorial(4), rat(1, 24));
    }
}
