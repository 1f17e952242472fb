//! Scalar types usable as the finite part of the max-plus carrier.
//!
//! Everything in this crate is generic over [`Scalar`]. The exact rational
//! types are the reference carriers; the float impls exist for quick
//! exploratory work where tie detection does not matter.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};

/// Ordered field-like scalar.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Parses an integer, decimal (`-2.5`) or fraction (`-5/2`) token.
    fn parse_decimal(token: &str) -> Option<Self>;

    /// Canonical text form. Integers print without a fractional part.
    fn to_exact_string(&self) -> String;

    fn to_f64_lossy(&self) -> f64;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        let n = Self::from_i64(numer).expect("i64 is representable");
        let d = Self::from_i64(denom).expect("i64 is representable");
        n / d
    }

    fn half(&self) -> Self {
        self.clone() / (Self::one() + Self::one())
    }
}

fn split_decimal(token: &str) -> Option<(bool, &str, &str)> {
    let token = token.trim();
    let (neg, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((neg, int_part, frac_part))
}

fn parse_big_decimal(token: &str) -> Option<BigRational> {
    if let Some((num, den)) = token.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (neg, int_part, frac_part) = split_decimal(token)?;
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if neg { -value } else { value })
}

impl Scalar for BigRational {
    fn parse_decimal(token: &str) -> Option<Self> {
        parse_big_decimal(token)
    }

    fn to_exact_string(&self) -> String {
        self.to_string()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for Ratio<i64> {
    fn parse_decimal(token: &str) -> Option<Self> {
        let big = parse_big_decimal(token)?;
        Some(Ratio::new(big.numer().to_i64()?, big.denom().to_i64()?))
    }

    fn to_exact_string(&self) -> String {
        self.to_string()
    }

    fn to_f64_lossy(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn parse_decimal(token: &str) -> Option<Self> {
                if let Some((num, den)) = token.split_once('/') {
                    let num: $t = num.trim().parse().ok()?;
                    let den: $t = den.trim().parse().ok()?;
                    return Some(num / den);
                }
                split_decimal(token)?;
                token.trim().parse().ok()
            }

            fn to_exact_string(&self) -> String {
                if self.fract() == 0.0 && self.abs() < 1e15 {
                    format!("{}", *self as i64)
                } else {
                    format!("{}", self)
                }
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Exact integer conversion used by constructors that take `i64` literals.
pub fn int<T: Scalar>(value: i64) -> T {
    T::from_i64(value).expect("i64 is representable")
}

#[allow(dead_code)]
pub(crate) fn two<T: Scalar>() -> T {
    T::one() + T::one()
}
