use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PkpError;

/// Exact signed objective value. Products of `n` profits reach `p_max^n`, so
/// nothing narrower than an arbitrary-precision integer is safe here.
///
/// Ordering is the ordinary integer order, which puts the empty-set value 0
/// strictly between every negative and every positive product.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigProduct(BigInt);

impl BigProduct {
    pub fn zero() -> Self {
        BigProduct(BigInt::zero())
    }

    pub fn one() -> Self {
        BigProduct(BigInt::one())
    }

    pub fn from_i64(v: i64) -> Self {
        BigProduct(BigInt::from(v))
    }

    /// Product of `factors`, with the empty product defined as 1.
    pub fn product_of<I: IntoIterator<Item = i64>>(factors: I) -> Self {
        BigProduct(factors.into_iter().map(BigInt::from).product())
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn magnitude(&self) -> &BigUint {
        self.0.magnitude()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn into_bigint(self) -> BigInt {
        self.0
    }

    pub fn mul_i64(&self, p: i64) -> Self {
        BigProduct(&self.0 * p)
    }

    pub fn pow(&self, exp: u32) -> Self {
        BigProduct(num_traits::pow(self.0.clone(), exp as usize))
    }
}

impl From<BigInt> for BigProduct {
    fn from(v: BigInt) -> Self {
        BigProduct(v)
    }
}

impl From<i64> for BigProduct {
    fn from(v: i64) -> Self {
        BigProduct::from_i64(v)
    }
}

impl Mul for &BigProduct {
    type Output = BigProduct;
    fn mul(self, rhs: &BigProduct) -> BigProduct {
        BigProduct(&self.0 * &rhs.0)
    }
}

impl fmt::Display for BigProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for BigProduct {
    type Err = PkpError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigInt::from_str(s.trim())
            .map(BigProduct)
            .map_err(|e| PkpError::Parse(format!("bad integer {s:?}: {e}")))
    }
}

// Serialized as a decimal string: values routinely exceed 64 bits.
impl Serialize for BigProduct {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigProduct {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_zero_between_signs() {
        let neg = BigProduct::from(-1_000_000);
        let pos = BigProduct::from(1);
        assert!(neg < BigProduct::zero());
        assert!(BigProduct::zero() < pos);
        assert!(BigProduct::from(-3) < BigProduct::from(-2));
    }

    #[test]
    fn sign_matches_magnitude() {
        assert_eq!(BigProduct::zero().signum(), 0);
        assert!(BigProduct::zero().magnitude().is_zero());
        assert_eq!(BigProduct::from(-7).signum(), -1);
        assert_eq!(BigProduct::from(-7).magnitude(), &BigUint::from(7u8));
    }

    #[test]
    fn string_round_trip_beyond_u64() {
        let v = BigProduct::from(9).pow(40);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with('"'));
        let back: BigProduct = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!("12x".parse::<BigProduct>().is_err());
    }
}
