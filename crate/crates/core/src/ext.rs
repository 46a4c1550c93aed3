//! Extended reals `[-inf, +inf]` with the conventions used throughout the crate.
//!
//! - `a + inf = inf` for `a > -inf`, and `-inf` is absorbing for addition, so
//!   `inf - inf = -inf`;
//! - `x / inf = 0` for finite `x >= 0`, `x / 0 = inf` for `x > 0`, and `0 / 0`,
//!   `inf / inf` are undefined (callers exclude them from suprema);
//! - `0 * inf = 0`.
//!
//! On the wire the infinities are the strings `"inf"` and `"-inf"`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);
    pub const ONE: ExtReal = ExtReal::Finite(1.0);

    /// Maps `f64` infinities onto the infinite variants. Panics on NaN.
    pub fn new(x: f64) -> Self {
        assert!(!x.is_nan(), "NaN is not an extended real");
        if x == f64::INFINITY {
            ExtReal::PosInf
        } else if x == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(x)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_pos_inf(self) -> bool {
        self == ExtReal::PosInf
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(x) => x,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Quotient of two non-negative extended reals, `None` for `0/0` and `inf/inf`.
    pub fn ratio(num: ExtReal, den: ExtReal) -> Option<ExtReal> {
        debug_assert!(num >= ExtReal::ZERO && den >= ExtReal::ZERO);
        match (num, den) {
            (ExtReal::PosInf, ExtReal::PosInf) => None,
            (ExtReal::PosInf, _) => Some(ExtReal::PosInf),
            (ExtReal::Finite(_), ExtReal::PosInf) => Some(ExtReal::ZERO),
            (ExtReal::Finite(a), ExtReal::Finite(b)) => {
                if b == 0.0 {
                    if a == 0.0 {
                        None
                    } else {
                        Some(ExtReal::PosInf)
                    }
                } else {
                    Some(ExtReal::Finite(a / b))
                }
            }
            (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => None,
        }
    }

    /// Natural logarithm of a non-negative extended real; `ln 0 = -inf`.
    pub fn ln(self) -> ExtReal {
        match self {
            ExtReal::PosInf => ExtReal::PosInf,
            ExtReal::Finite(x) if x > 0.0 => ExtReal::Finite(x.ln()),
            ExtReal::Finite(0.0) => ExtReal::NegInf,
            _ => panic!("logarithm of a negative extended real"),
        }
    }

    /// Product with `0 * inf = 0` (measure-theoretic convention).
    pub fn mul_measure(self, other: ExtReal) -> ExtReal {
        if self == ExtReal::ZERO || other == ExtReal::ZERO {
            return ExtReal::ZERO;
        }
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::new(a * b),
            (a, b) => {
                let pos = (a > ExtReal::ZERO) == (b > ExtReal::ZERO);
                if pos {
                    ExtReal::PosInf
                } else {
                    ExtReal::NegInf
                }
            }
        }
    }

    /// Equality up to an absolute tolerance on finite values; infinities must match.
    pub fn approx_eq(self, other: ExtReal, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs() <= tol,
            (a, b) => a == b,
        }
    }

    /// `+inf` when a finite value exceeds `cap`.
    pub fn capped(self, cap: f64) -> ExtReal {
        match self {
            ExtReal::Finite(x) if x > cap => ExtReal::PosInf,
            other => other,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::new(x)
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => ExtReal::NegInf,
            (ExtReal::PosInf, _) | (_, ExtReal::PosInf) => ExtReal::PosInf,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::new(a + b),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::Finite(x) => ExtReal::Finite(-x),
            ExtReal::PosInf => ExtReal::NegInf,
        }
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;

    fn sub(self, rhs: ExtReal) -> ExtReal {
        self + (-rhs)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => f.write_str("inf"),
        }
    }
}

/// Total order for sorting; NaN cannot be constructed.
pub fn total_cmp(a: &ExtReal, b: &ExtReal) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::NegInf => s.serialize_str("-inf"),
            ExtReal::PosInf => s.serialize_str("inf"),
            ExtReal::Finite(x) => s.serialize_f64(*x),
        }
    }
}

struct ExtRealVisitor;

impl<'de> Visitor<'de> for ExtRealVisitor {
    type Value = ExtReal;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a finite number or one of \"inf\", \"-inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExtReal, E> {
        if v.is_nan() {
            Err(E::custom("NaN is not allowed"))
        } else {
            Ok(ExtReal::new(v))
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtReal, E> {
        Ok(ExtReal::Finite(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtReal, E> {
        Ok(ExtReal::Finite(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtReal, E> {
        match v {
            "inf" | "+inf" => Ok(ExtReal::PosInf),
            "-inf" => Ok(ExtReal::NegInf),
            other => Err(E::custom(format!("unrecognized extended real {other:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<ExtReal, D::Error> {
        d.deserialize_any(ExtRealVisitor)
    }
}
