//! The max-plus carrier: a scalar extended by a bottom element.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;

/// Element of `T ∪ {−∞}`. There is no `+∞`; no operation here produces one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtReal<T> {
    Bottom,
    Finite(T),
}

pub use ExtReal::{Bottom, Finite};

impl<T: Scalar> ExtReal<T> {
    pub fn zero() -> Self {
        Finite(T::zero())
    }

    pub fn int(value: i64) -> Self {
        Finite(crate::scalar::int(value))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Bottom)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Finite(v) => Some(v),
            Bottom => None,
        }
    }

    /// Tropical sum, `max(a, b)`.
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product, `a + b` with bottom absorbing.
    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.clone() + b.clone()),
            _ => Bottom,
        }
    }

    pub fn min_with(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `self + c` for a finite scalar `c`.
    pub fn shift(&self, c: &T) -> Self {
        match self {
            Finite(a) => Finite(a.clone() + c.clone()),
            Bottom => Bottom,
        }
    }

    pub fn parse(token: &str) -> Option<Self> {
        let t = token.trim();
        if t == "-inf" || t == "−inf" || t == "-∞" {
            return Some(Bottom);
        }
        T::parse_decimal(t).map(Finite)
    }

    pub fn to_exact_string(&self) -> String {
        match self {
            Finite(v) => v.to_exact_string(),
            Bottom => "-inf".to_string(),
        }
    }
}

impl<T: Scalar> PartialOrd for ExtReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Bottom, Bottom) => Some(Ordering::Equal),
            (Bottom, Finite(_)) => Some(Ordering::Less),
            (Finite(_), Bottom) => Some(Ordering::Greater),
            (Finite(a), Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl<T: Scalar> From<T> for ExtReal<T> {
    fn from(value: T) -> Self {
        Finite(value)
    }
}

impl<T: Scalar> fmt::Display for ExtReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

/// `a ⊕ b = max(a, b)`.
pub fn t_add<T: Scalar>(a: &ExtReal<T>, b: &ExtReal<T>) -> ExtReal<T> {
    a.oplus(b)
}

/// `a ⊙ b = a + b`.
pub fn t_mul<T: Scalar>(a: &ExtReal<T>, b: &ExtReal<T>) -> ExtReal<T> {
    a.otimes(b)
}
