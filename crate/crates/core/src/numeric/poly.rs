use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ring::MultiPoly;

/// Dense univariate polynomial with complex coefficients, low degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    /// Drops exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Specializes every variable except `var` to the values in `point`
    /// (given in ring order, the entry for `var` ignored).
    pub fn from_multipoly(p: &MultiPoly, var: &str, point: &[Complex64]) -> Result<Self> {
        if point.len() != p.ring().len() {
            return Err(Error::Dimension {
                expected: p.ring().len(),
                got: point.len(),
            });
        }
        let coeffs = p
            .coefficients_in(var)?
            .iter()
            .map(|c| c.eval_complex(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    /// `Σ |a_i| |z|^i`, the scale against which residuals are measured.
    pub fn abs_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
    }

    /// `|p(z)| / max(1, Σ |a_i| |z|^i)`.
    pub fn relative_residual(&self, z: Complex64) -> f64 {
        self.eval(z).norm() / self.abs_bound(z).max(1.0)
    }

    pub fn derivative(&self) -> ComplexPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| a * i as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(zero) + other.coeffs.get(i).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}
