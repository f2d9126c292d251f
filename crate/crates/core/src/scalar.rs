//! Scalar abstraction shared by every computation.
//!
//! Two modes exist: exact rationals (`BigRational`) and `f64`. Every graph,
//! function and report is parameterized by one `Scalar`, so mixing modes is a
//! type error. The only crossing point is [`widen`], which converts an exact
//! value to floating point.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Rational,
    Float64,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::Float64 => "float64",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(ScalarMode::Rational),
            "float64" => Ok(ScalarMode::Float64),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub trait Scalar: Clone + Debug + Display + PartialOrd + Signed + Send + Sync + 'static {
    const MODE: ScalarMode;

    fn is_exact() -> bool {
        Self::MODE == ScalarMode::Rational
    }

    fn as_f64(&self) -> f64;

    /// Exact conversion for rationals; fails on non-finite input.
    fn from_f64(x: f64) -> Result<Self>;

    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// `2^e` for any integer exponent.
    fn pow2(e: i64) -> Self;

    fn powi(&self, k: i32) -> Self;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

pub type Rational = BigRational;

impl Scalar for BigRational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x).ok_or(Error::NonFinite(x))
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn pow2(e: i64) -> Self {
        let shift = e.unsigned_abs() as usize;
        let p = BigInt::one() << shift;
        if e >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        }
    }

    fn powi(&self, k: i32) -> Self {
        num_traits::Pow::pow(self, k)
    }

    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(Self::from_int(i)),
                None => Err(Error::ModeMismatch(format!(
                    "floating-point literal {n} in a rational computation"
                ))),
            },
            other => Err(Error::ParseScalar(other.to_string())),
        }
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float64;

    fn as_f64(&self) -> f64 {
        *self
    }

    fn from_f64(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::NonFinite(x))
        }
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn pow2(e: i64) -> Self {
        2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    fn powi(&self, k: i32) -> Self {
        f64::powi(*self, k)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| Error::ParseScalar(n.to_string())),
            // rational literals widen into float mode
            Value::String(s) => Ok(widen(&parse_rational(s)?)),
            other => Err(Error::ParseScalar(other.to_string())),
        }
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::ParseScalar(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Widening conversion rational → float.
pub fn widen(x: &BigRational) -> f64 {
    Scalar::as_f64(x)
}

/// Integer view of an exponent, when it has one.
pub fn integer_exponent(q: f64) -> Option<i32> {
    if q.fract() == 0.0 && q.abs() <= i32::MAX as f64 {
        Some(q as i32)
    } else {
        None
    }
}

/// `|x|^q` with the conventions used throughout: `0^0 = 1`, `0^q = 0` for
/// `q > 0`. Negative exponents at zero return `None` (infinite). Integer
/// exponents stay in the scalar type; others go through `f64`, and the bool
/// flags a rational-mode result that is therefore approximate.
pub fn abs_pow<S: Scalar>(x: &S, q: f64) -> Result<Option<(S, bool)>> {
    let a = x.abs();
    if a.is_zero() {
        return Ok(match q {
            0.0 => Some((S::one(), false)),
            q if q > 0.0 => Some((S::zero(), false)),
            _ => None,
        });
    }
    match integer_exponent(q) {
        Some(k) => Ok(Some((a.powi(k), false))),
        None => {
            let v = a.as_f64().powf(q);
            Ok(Some((S::from_f64(v)?, S::is_exact())))
        }
    }
}
