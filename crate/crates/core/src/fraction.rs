//! Exact fractional parts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// A rational in `[0, 1)`, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedFraction(BigRational);

impl ReducedFraction {
    pub fn zero() -> Self {
        ReducedFraction(BigRational::zero())
    }

    /// `x - floor(x)`.
    pub fn fract_of(x: &BigRational) -> Self {
        let n = x.numer().mod_floor(x.denom());
        ReducedFraction(BigRational::new(n, x.denom().clone()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Fractional part of `self + other`.
    pub fn add_mod_one(&self, other: &ReducedFraction) -> Self {
        Self::fract_of(&(&self.0 + &other.0))
    }
}

/// `Frac(numerator / denominator)` with a true floor for negative values.
pub fn frac(
    numerator: impl Into<BigInt>,
    denominator: impl Into<BigInt>,
) -> Result<ReducedFraction> {
    let den: BigInt = denominator.into();
    if !den.is_positive() {
        return domain(format!("denominator must be at least 1, got {den}"));
    }
    let num: BigInt = numerator.into();
    let r = num.mod_floor(&den);
    Ok(ReducedFraction(BigRational::new(r, den)))
}

impl fmt::Display for ReducedFraction {
    /// Always `num/den`, including `0/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for ReducedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("malformed fraction {s:?}"));
        let (n, d) = s.split_once('/').ok_or_else(bad)?;
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if n.is_negative() || d <= n || !n.gcd(&d).is_one() {
            return Err(bad());
        }
        frac(n, d)
    }
}

impl Serialize for ReducedFraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ReducedFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(n: i64, d: i64) -> ReducedFraction {
        frac(n, d).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(f(15, 6).to_string(), "1/2");
        assert_eq!(f(-1, 3).to_string(), "2/3");
        assert_eq!(f(7, 1).to_string(), "0/1");
        assert!(f(7, 1).is_zero());
        assert!(frac(1, 0).is_err());
        assert!(frac(1, -3).is_err());
    }

    #[test]
    fn addition_wraps() {
        assert_eq!(f(2, 3).add_mod_one(&f(1, 2)), f(1, 6));
        assert_eq!(f(1, 2).add_mod_one(&f(1, 2)), ReducedFraction::zero());
    }

    #[test]
    fn parse_round_trip() {
        let x: ReducedFraction = "5/6".parse().unwrap();
        assert_eq!(x, f(5, 6));
        assert!("2/4".parse::<ReducedFraction>().is_err());
        assert!("7/6".parse::<ReducedFraction>().is_err());
        assert!("-1/6".parse::<ReducedFraction>().is_err());
        assert!("x".parse::<ReducedFraction>().is_err());
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"5/6\"");
        assert_eq!(serde_json::from_str::<ReducedFraction>(&json).unwrap(), x);
    }

    proptest! {
        #[test]
        fn floor_plus_frac_reconstructs(a in any::<i64>(), b in 1i64..1_000_000) {
            let r = f(a, b);
            let floor = BigInt::from(a).div_floor(&BigInt::from(b));
            let back = r.as_rational() + BigRational::from_integer(floor);
            prop_assert_eq!(back, BigRational::new(a.into(), b.into()));
            prop_assert!(!r.numer().is_negative());
            prop_assert!(r.numer() < r.denom());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
        }
    }
}
