use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex exponent `a = rate + i·frequency` of the weight `e^{-a t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightExponent {
    rate: f64,
    frequency: f64,
}

impl WeightExponent {
    pub fn new(rate: f64, frequency: f64) -> Result<Self> {
        if !(rate.is_finite() && rate >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "decay rate must be finite and >= 0, got {rate}"
            )));
        }
        if !frequency.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "frequency must be finite, got {frequency}"
            )));
        }
        Ok(Self { rate, frequency })
    }

    /// Pure decay `e^{-rate·t}`.
    pub fn decay(rate: f64) -> Result<Self> {
        Self::new(rate, 0.0)
    }

    /// Decay with time constant `tau`, i.e. `rate = 1/tau`.
    pub fn from_tau(tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tau must be positive and finite, got {tau}"
            )));
        }
        Self::new(1.0 / tau, 0.0)
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn with_frequency(self, frequency: f64) -> Result<Self> {
        Self::new(self.rate, frequency)
    }

    pub fn exponent(&self) -> Complex64 {
        Complex64::new(self.rate, self.frequency)
    }

    /// `e^{-a t}`.
    pub fn factor(&self, t: f64) -> Complex64 {
        (-self.exponent() * t).exp()
    }
}

/// Upper integration limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Horizon {
    Finite(f64),
    Infinite,
}

impl Horizon {
    pub fn finite(t: f64) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidArgument(format!("time must be finite and >= 0, got {t}")));
        }
        Ok(Self::Finite(t))
    }
}

impl FromStr for Horizon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" => Ok(Self::Infinite),
            other => {
                let t: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("cannot parse time `{s}`")))?;
                if t == f64::INFINITY {
                    return Ok(Self::Infinite);
                }
                Self::finite(t)
            }
        }
    }
}

impl fmt::Display for Horizon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(t) => write!(f, "{t}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}
