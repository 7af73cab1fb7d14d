use std::fmt;

use serde::{Deserialize, Serialize};

use super::ArithError;

/// Univariate integer polynomial, coefficients in ascending degree.
///
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// is the empty vector. Arithmetic is overflow-checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out.push(a.checked_add(b).ok_or(ArithError::Overflow)?);
        }
        Ok(Self::new(out))
    }

    pub fn neg(&self) -> Result<Self, ArithError> {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, c: i128) -> Result<Self, ArithError> {
        let coeffs =
            self.coeffs.iter().map(|a| a.checked_mul(c).ok_or(ArithError::Overflow)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(*b).ok_or(ArithError::Overflow)?;
                out[i + j] = out[i + j].checked_add(t).ok_or(ArithError::Overflow)?;
            }
        }
        Ok(Self::new(out))
    }

    pub fn pow(&self, k: u32) -> Result<Self, ArithError> {
        let mut acc = Self::constant(1);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: i128) -> Result<i128, ArithError> {
        let mut acc: i128 = 0;
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x).and_then(|v| v.checked_add(*c)).ok_or(ArithError::Overflow)?;
        }
        Ok(acc)
    }

    /// Coefficients of `p(x + shift)` by repeated synthetic division.
    pub fn taylor_shift(&self, shift: i128) -> Result<Self, ArithError> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].checked_mul(shift).ok_or(ArithError::Overflow)?;
                c[j] = c[j].checked_add(t).ok_or(ArithError::Overflow)?;
            }
        }
        Ok(Self::new(c))
    }

    /// `p(x + 1) - p(x)`.
    pub fn forward_difference(&self) -> Result<Self, ArithError> {
        self.taylor_shift(1)?.sub(self)
    }

    /// Divides every coefficient by `d`, failing unless all divide exactly.
    pub fn div_exact_scalar(&self, d: i128) -> Result<Self, ArithError> {
        if d == 0 || self.coeffs.iter().any(|c| c % d != 0) {
            return Err(ArithError::InexactDivision { dividend: self.to_string(), divisor: d.to_string() });
        }
        Ok(Self::new(self.coeffs.iter().map(|c| c / d).collect()))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}
