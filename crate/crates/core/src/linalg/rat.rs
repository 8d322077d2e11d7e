//! Exact rationals.
//!
//! `Rat` is `num_rational::BigRational`: always stored in lowest terms with a
//! positive denominator. The helpers here cover the textual form used by every
//! input and output format (`"a"` or `"a/b"`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

#[inline]
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
#[inline]
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Integers print bare, everything else as `a/b`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scale a rational vector to a primitive integer vector with the same span.
/// Returns the integer entries (zero vector stays zero).
pub(crate) fn to_primitive_integers(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = num_integer::Integer::lcm(&lcm, x.denom());
        }
    }
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &out {
        g = num_integer::Integer::gcd(&g, x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut out {
            *x = &*x / &g;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat(" -6/4 ").unwrap(), ratio(-3, 2));
        assert_eq!(format_rat(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_rat(&ratio(4, 2)), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![ratio(1, 2), ratio(-1, 3), rat(0)];
        let w = to_primitive_integers(&v);
        assert_eq!(w, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }
}
