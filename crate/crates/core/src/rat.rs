//! Exact rational scalars: arbitrary-precision, always in lowest terms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision rational, stored in lowest terms with positive
/// denominator (guaranteed by the underlying representation).
pub type Rat = num_rational::BigRational;

/// `n/d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rat`].
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q` (lowest terms are restored on construction).
pub fn parse_rat(token: &str, line: usize) -> Result<Rat, Error> {
    let bad = || Error::parse(line, format!("expected a rational `p` or `p/q`, got {token:?}"));
    let parse_int = |s: &str| s.parse::<BigInt>().map_err(|_| bad());
    match token.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::parse(line, format!("zero denominator in {token:?}")));
            }
            Ok(Rat::new(num, den))
        }
        None => Ok(Rat::from_integer(parse_int(token)?)),
    }
}

/// True when `value` is a nonnegative integer multiple of `unit` (`unit > 0`).
pub fn is_multiple_of(value: &Rat, unit: &Rat) -> bool {
    if unit.is_zero() {
        return value.is_zero();
    }
    let q = value / unit;
    !q.is_negative() && q.is_integer()
}

/// True when the rational equals `1/m` for some positive integer `m`.
pub fn is_unit_fraction(value: &Rat) -> bool {
    value.is_positive() && value.numer().is_one()
}
