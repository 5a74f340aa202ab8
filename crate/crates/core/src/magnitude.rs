use std::cmp::Ordering;
use std::f64::consts::LN_2;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul};

use num::bigint::BigUint;
use num::{BigRational, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Natural log of an arbitrary-precision unsigned integer; `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        // exact conversion is still finite here
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit prefix converts");
    top.ln() + shift as f64 * LN_2
}

/// Natural log of a non-negative rational; `-inf` for zero.
pub fn ln_ratio(x: &BigRational) -> f64 {
    assert!(!x.is_negative(), "logarithm of a negative rational");
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    ln_biguint(num) - ln_biguint(den)
}

/// A positive real stored by its natural logarithm, with a distinguished zero.
///
/// Products are sums of logs and sums use a max-shifted `ln_1p` combination,
/// so values like `2^(10^6)` stay representable.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct LogMagnitude(f64);

/// Serialized as `{"ln": <natural log>}`.
impl Serialize for LogMagnitude {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Ln(f64);
        impl Serialize for Ln {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                crate::report::sig17(&self.0, s)
            }
        }
        let mut st = s.serialize_struct("LogMagnitude", 1)?;
        st.serialize_field("ln", &Ln(self.0))?;
        st.end()
    }
}

impl LogMagnitude {
    pub const ZERO: LogMagnitude = LogMagnitude(f64::NEG_INFINITY);
    pub const ONE: LogMagnitude = LogMagnitude(0.0);

    pub fn from_ln(ln: f64) -> Self {
        assert!(!ln.is_nan() && ln != f64::INFINITY, "invalid log value {ln}");
        LogMagnitude(ln)
    }

    pub fn from_log2(log2: f64) -> Self {
        Self::from_ln(log2 * LN_2)
    }

    pub fn from_value(x: f64) -> Self {
        assert!(x >= 0.0 && x.is_finite(), "magnitude of {x}");
        LogMagnitude(x.ln())
    }

    pub fn from_biguint(x: &BigUint) -> Self {
        LogMagnitude(ln_biguint(x))
    }

    pub fn from_u64(x: u64) -> Self {
        LogMagnitude((x as f64).ln())
    }

    pub fn from_ratio(x: &BigRational) -> Self {
        LogMagnitude(ln_ratio(x))
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn log2(self) -> f64 {
        self.0 / LN_2
    }

    /// The value itself; overflows to `inf` beyond `f64` range.
    pub fn value(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn powf(self, exponent: f64) -> Self {
        if exponent == 0.0 {
            return Self::ONE;
        }
        if self.is_zero() {
            assert!(exponent > 0.0, "zero to a negative power");
            return Self::ZERO;
        }
        LogMagnitude(self.0 * exponent)
    }

    pub fn recip(self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        LogMagnitude(-self.0)
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }

    /// `|self / other - 1|`, computed on the log scale.
    pub fn relative_diff(self, other: Self) -> f64 {
        if self.is_zero() && other.is_zero() {
            return 0.0;
        }
        (self.0 - other.0).exp_m1().abs()
    }
}

impl Default for LogMagnitude {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Display for LogMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "2^{:.6}", self.log2())
        }
    }
}

impl Mul for LogMagnitude {
    type Output = LogMagnitude;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        LogMagnitude(self.0 + rhs.0)
    }
}

impl Div for LogMagnitude {
    type Output = LogMagnitude;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Add for LogMagnitude {
    type Output = LogMagnitude;
    fn add(self, rhs: Self) -> Self {
        let (hi, lo) = if self.0 >= rhs.0 { (self, rhs) } else { (rhs, self) };
        if lo.is_zero() {
            return hi;
        }
        LogMagnitude(hi.0 + (lo.0 - hi.0).exp().ln_1p())
    }
}

impl Sum for LogMagnitude {
    /// Sorted log-sum-exp: shift by the largest term and add the scaled terms
    /// from largest to smallest.
    fn sum<I: Iterator<Item = LogMagnitude>>(iter: I) -> Self {
        let mut terms: Vec<f64> = iter.map(|t| t.0).filter(|t| *t != f64::NEG_INFINITY).collect();
        if terms.is_empty() {
            return Self::ZERO;
        }
        terms.sort_by(|a, b| b.total_cmp(a));
        let top = terms[0];
        let scaled: f64 = terms.iter().map(|t| (t - top).exp()).sum();
        LogMagnitude(top + scaled.ln())
    }
}

/// The vertex count `n`, either exactly or as `log2 n` for astronomically
/// large orders.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    Exact(u64),
    Log2(#[serde(serialize_with = "crate::report::sig17")] f64),
}

impl Order {
    pub fn ln(&self) -> f64 {
        match *self {
            Order::Exact(n) => (n as f64).ln(),
            Order::Log2(l) => l * LN_2,
        }
    }

    pub fn log2(&self) -> f64 {
        match *self {
            Order::Exact(n) => (n as f64).log2(),
            Order::Log2(l) => l,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match *self {
            Order::Exact(n) => Some(n),
            Order::Log2(_) => None,
        }
    }

    pub fn magnitude(&self) -> LogMagnitude {
        LogMagnitude::from_ln(self.ln())
    }

    /// `ln(n - a)`, or `-inf` when `n <= a`.
    pub fn ln_minus(&self, a: u64) -> f64 {
        match *self {
            Order::Exact(n) => {
                if n <= a {
                    f64::NEG_INFINITY
                } else {
                    ((n - a) as f64).ln()
                }
            }
            Order::Log2(_) => {
                let ln_n = self.ln();
                let ratio = a as f64 * (-ln_n).exp();
                if ratio >= 1.0 {
                    f64::NEG_INFINITY
                } else {
                    ln_n + (-ratio).ln_1p()
                }
            }
        }
    }

    /// Whether `n >= k`.
    pub fn at_least(&self, k: u64) -> bool {
        match *self {
            Order::Exact(n) => n >= k,
            Order::Log2(_) => k == 0 || self.ln_minus(k - 1) > f64::NEG_INFINITY,
        }
    }

    /// `C(n - a, k)` from the falling factorial, in log-domain.
    pub fn binomial(&self, a: u64, k: u64) -> LogMagnitude {
        let mut ln = 0.0;
        for i in 0..k {
            let term = self.ln_minus(a + i);
            if term == f64::NEG_INFINITY {
                return LogMagnitude::ZERO;
            }
            ln += term - ((i + 1) as f64).ln();
        }
        LogMagnitude::from_ln(ln)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact(n) => write!(f, "{n}"),
            Order::Log2(l) => write!(f, "2^{l}"),
        }
    }
}
