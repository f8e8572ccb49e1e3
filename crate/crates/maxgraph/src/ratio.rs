//! Exact rational helpers. All pass/fail arithmetic in this crate is done on
//! `BigRational`; floating point appears only in divergence-exponent fits and
//! the theorem-bound evaluator, where the contract says so.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_u64(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// 2^e for possibly negative e.
pub fn pow2(e: i64) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    if e >= 0 {
        two.pow(e as i32)
    } else {
        BigRational::one() / two.pow((-e) as i32)
    }
}

/// Parses "p/q", "p", or "-p/q".
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse { line: 0, msg: format!("bad rational '{s}'") };
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(p))
    }
}

/// Canonical "p/q" text (integers render without the denominator).
pub fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer >= r, clamped into u64; r must be nonnegative.
pub fn ceil_to_u64(r: &BigRational) -> u64 {
    debug_assert!(!r.is_negative());
    let c = r.ceil();
    c.to_integer().to_u64().unwrap_or(u64::MAX)
}

/// r >= n, comparing exactly.
pub fn ge_u64(r: &BigRational, n: u64) -> bool {
    *r >= from_u64(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(ratio_string(&parse_ratio("3/6").unwrap()), "1/2");
        assert_eq!(ratio_string(&parse_ratio("7").unwrap()), "7");
        assert_eq!(ratio_string(&parse_ratio("-2/4").unwrap()), "-1/2");
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn ceil_values() {
        assert_eq!(ceil_to_u64(&frac(7, 2)), 4);
        assert_eq!(ceil_to_u64(&int(4)), 4);
        assert_eq!(ceil_to_u64(&frac(1, 3)), 1);
    }

    #[test]
    fn pow2_negative() {
        assert_eq!(pow2(-3), frac(1, 8));
        assert_eq!(pow2(4), int(16));
    }
}
