//! q-numbers and q-factorials for real q = e^s > 1.

use crate::error::{Error, Result};

/// The deformation parameter, stored as the exponent `s` together with `q = e^s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParam {
    s: f64,
    q: f64,
}

impl DeformationParam {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidDeformation { s });
        }
        Ok(DeformationParam { s, q: libm::exp(s) })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// q^x, evaluated as e^(s x).
    pub fn pow(&self, x: f64) -> f64 {
        libm::exp(self.s * x)
    }

    /// q - 1/q.
    pub fn spread(&self) -> f64 {
        2.0 * libm::sinh(self.s)
    }
}

/// `[x] = (q^x - q^-x) / (q - q^-1)`, i.e. `sinh(s x) / sinh(s)`.
pub fn q_number(x: f64, p: DeformationParam) -> f64 {
    libm::sinh(p.s * x) / libm::sinh(p.s)
}

/// `[n]! = [n][n-1]...[1]` with `[0]! = 1`.
pub fn q_factorial(n: i64, p: DeformationParam) -> Result<f64> {
    if n < 0 {
        return Err(Error::NegativeFactorial { n });
    }
    Ok((1..=n).map(|k| q_number(k as f64, p)).product())
}
