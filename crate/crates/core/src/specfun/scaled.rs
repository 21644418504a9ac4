//! Sign / log-modulus representation of real numbers.
//!
//! Polynomial values near the soft edge (for example `H_N(sqrt(2N))` at
//! `N = 200`) and the normalising constants of the scaling limits leave the
//! range of `f64`. A [`ScaledValue`] stores `sign * exp(log_abs)` and supports
//! the handful of operations the evaluators need.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A real number stored as `sign * exp(log_abs)`.
///
/// Zero is encoded as `sign == 0`, `log_abs == -inf`.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledValue {
    sign: i8,
    log_abs: f64,
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };
    pub const ONE: ScaledValue = ScaledValue {
        sign: 1,
        log_abs: 0.0,
    };

    /// Builds a value from its parts. A zero sign or a `-inf` log forces zero.
    pub fn new(sign: i8, log_abs: f64) -> Self {
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            ScaledValue {
                sign: sign.signum(),
                log_abs,
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            ScaledValue {
                sign: if x > 0.0 { 1 } else { -1 },
                log_abs: x.abs().ln(),
            }
        }
    }

    /// `exp(log)` with positive sign.
    pub fn from_log(log: f64) -> Self {
        Self::new(1, log)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Decodes to `f64`; saturates to `±inf` past the overflow threshold.
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_abs.exp()
        }
    }

    /// Decodes only when the result is a finite double.
    pub fn to_finite(&self) -> Option<f64> {
        let v = self.to_f64();
        v.is_finite().then_some(v)
    }

    /// Multiplies by `exp(shift)`.
    pub fn scale_exp(self, shift: f64) -> Self {
        if self.sign == 0 {
            self
        } else {
            Self::new(self.sign, self.log_abs + shift)
        }
    }

    pub fn abs(self) -> Self {
        Self::new(self.sign.abs(), self.log_abs)
    }

    pub fn powi(self, k: i32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if k % 2 == 0 { 1 } else { self.sign };
        Self::new(sign, self.log_abs * f64::from(k))
    }

    /// Sums a sequence, also returning `log` of the sum of absolute values.
    ///
    /// The second component measures cancellation: it exceeds the log of the
    /// result by the number of nats lost.
    pub fn sum_with_magnitude<I: IntoIterator<Item = ScaledValue>>(terms: I) -> (Self, f64) {
        let terms: Vec<ScaledValue> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        let Some(max_log) = terms
            .iter()
            .map(|t| t.log_abs)
            .max_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
        else {
            return (Self::ZERO, f64::NEG_INFINITY);
        };
        let mut acc = 0.0;
        let mut mag = 0.0;
        for t in &terms {
            let r = (t.log_abs - max_log).exp();
            acc += f64::from(t.sign) * r;
            mag += r;
        }
        (Self::from_f64(acc).scale_exp(max_log), mag.ln() + max_log)
    }
}

impl Default for ScaledValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScaledValue({:+}·e^{})", self.sign, self.log_abs)
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_finite() {
            Some(v) if (1e-4..1e15).contains(&v.abs()) => write!(f, "{v}"),
            Some(v) => write!(f, "{v:e}"),
            None => {
                let l10 = self.log_abs / std::f64::consts::LN_10;
                let e = l10.floor();
                let m = 10f64.powf(l10 - e) * f64::from(self.sign);
                write!(f, "{m}e{e}")
            }
        }
    }
}

impl From<f64> for ScaledValue {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> Self {
        ScaledValue {
            sign: -self.sign,
            log_abs: self.log_abs,
        }
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.sign * rhs.sign, self.log_abs + rhs.log_abs)
    }
}

impl Mul<f64> for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: f64) -> Self {
        self * ScaledValue::from_f64(rhs)
    }
}

impl Div for ScaledValue {
    type Output = ScaledValue;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "ScaledValue division by zero");
        Self::new(self.sign * rhs.sign, self.log_abs - rhs.log_abs)
    }
}

impl Add for ScaledValue {
    type Output = ScaledValue;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.log_abs >= rhs.log_abs {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let r = (small.log_abs - big.log_abs).exp();
        let factor = if big.sign == small.sign {
            1.0 + r
        } else {
            1.0 - r
        };
        if factor == 0.0 {
            return Self::ZERO;
        }
        Self::new(big.sign, big.log_abs + factor.ln())
    }
}

impl Sub for ScaledValue {
    type Output = ScaledValue;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}
