//! Exact scalar types for the engine's threshold arithmetic.
//!
//! Every comparison the engine makes (`|X| <= rho |Y|`, `|I_M(X)| > mu |X|`,
//! the per-class cap `U`) goes through [`Scalar`]. Only exact types implement
//! it, so there is no rounding anywhere in the control flow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone + Ord + fmt::Debug + fmt::Display + Num + Signed + Send + Sync + 'static
{
    fn from_count(n: usize) -> Self;

    fn to_big_rational(&self) -> BigRational;

    /// `None` when the value does not fit the representation.
    fn from_big_rational(q: &BigRational) -> Option<Self>;

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_big_rational(&BigRational::new(numer.into(), denom.into()))
            .expect("small ratio fits every scalar")
    }
}

impl Scalar for BigRational {
    fn from_count(n: usize) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_big_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

macro_rules! impl_machine_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_count(n: usize) -> Self {
                Ratio::from_integer(<$int>::try_from(n).expect("count overflows scalar"))
            }

            fn to_big_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_big_rational(q: &BigRational) -> Option<Self> {
                let n = <$int>::try_from(q.numer()).ok()?;
                let d = <$int>::try_from(q.denom()).ok()?;
                Some(Ratio::new(n, d))
            }
        }
    };
}

impl_machine_ratio!(i64);
impl_machine_ratio!(i128);

/// Parses `p/q` (or a bare integer `p`). Decimal notation is rejected.
pub fn parse_rational<S: Scalar>(s: &str) -> Result<S> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("`{s}` is not a rational of the form p/q"));
    if s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str_radix(p, 10).map_err(|_| bad())?;
    let q = BigInt::from_str_radix(q, 10).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::InvalidParameter(format!("`{s}` has a zero denominator")));
    }
    S::from_big_rational(&BigRational::new(p, q))
        .ok_or_else(|| Error::InvalidParameter(format!("`{s}` does not fit the scalar type")))
}

/// Always `p/q`, also for integers (`40/1`).
pub fn format_rational<S: Scalar>(x: &S) -> String {
    let q = x.to_big_rational();
    format!("{}/{}", q.numer(), q.denom())
}

/// `ceil(x)` for a nonnegative scalar, saturating at `usize::MAX`.
pub fn ceil_count<S: Scalar>(x: &S) -> usize {
    let q = x.to_big_rational();
    let c = q.numer().div_ceil(q.denom());
    c.to_usize().unwrap_or(if c.is_negative() { 0 } else { usize::MAX })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn parses_fractions_and_integers() {
        let x: BigRational = parse_rational("3/12").unwrap();
        assert_eq!(x, BigRational::new(1.into(), 4.into()));
        let y: Rational64 = parse_rational(" 7 ").unwrap();
        assert_eq!(y, Rational64::from_integer(7));
        let z: Rational64 = parse_rational("-1/2").unwrap();
        assert_eq!(z, Rational64::new(-1, 2));
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        assert!(parse_rational::<BigRational>("0.5").is_err());
        assert!(parse_rational::<BigRational>("1e3").is_err());
        assert!(parse_rational::<BigRational>("1/0").is_err());
        assert!(parse_rational::<BigRational>("a/b").is_err());
    }

    #[test]
    fn formats_with_explicit_denominator() {
        assert_eq!(format_rational(&Rational64::from_integer(40)), "40/1");
        assert_eq!(format_rational(&Rational64::new(2, 80)), "1/40");
    }

    #[test]
    fn narrowing_fails_when_out_of_range() {
        let huge = BigRational::from_integer(BigInt::from(u64::MAX) * 4);
        assert!(Rational64::from_big_rational(&huge).is_none());
        assert!(<Ratio<i128>>::from_big_rational(&huge).is_some());
    }

    #[test]
    fn ceil_count_rounds_up() {
        assert_eq!(ceil_count(&Rational64::new(7, 2)), 4);
        assert_eq!(ceil_count(&Rational64::from_integer(40)), 40);
    }
}
