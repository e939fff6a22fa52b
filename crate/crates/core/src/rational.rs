//! Exact rational arithmetic used for densities, guarantees and bound factors.
//!
//! All comparisons in this crate that decide a test or an acceptance criterion
//! are made on [`Rational`] values; floating point appears only when reports
//! are emitted.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always stored in reduced form with a
/// positive denominator.
pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n/d` from unsigned counts. Panics if `d == 0`.
pub fn ratio_u(n: u128, d: u128) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An unsigned count as a rational.
pub fn int_u(n: u128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Ceiling of a non-negative rational as a usize.
///
/// Panics if the value is negative or does not fit.
pub fn ceil_to_usize(r: &Rational) -> usize {
    assert!(!r.is_negative(), "ceil_to_usize on negative rational");
    r.ceil()
        .to_integer()
        .to_usize()
        .expect("ceiling does not fit in usize")
}

/// Nearest f64 for report emission. Never used in comparisons.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"a/b"` or `"a"` into a rational. Denominator must be positive.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d <= BigInt::zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Renders as `a/b`, or just `a` for integers.
pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let r = ratio(2, 4);
        assert_eq!(r, ratio(1, 2));
        assert_eq!(display(&r), "1/2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "0", "-7/3", "12"] {
            let r = parse(s).unwrap();
            assert_eq!(parse(&display(&r)).unwrap(), r);
        }
        assert!(parse("1/0").is_none());
        assert!(parse("1/-2").is_none());
        assert!(parse("x").is_none());
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil_to_usize(&ratio(27, 2)), 14);
        assert_eq!(ceil_to_usize(&ratio(0, 5)), 0);
        assert_eq!(ceil_to_usize(&ratio(6, 3)), 2);
    }
}
