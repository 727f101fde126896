//! Truncated complex Taylor series.
//!
//! A [`TruncatedSeries`] of order `N` holds the coefficients `c_0, …, c_N` of
//! `Σ c_k (z − center)^k`. Every operation is exact through order `N` up to
//! floating-point rounding; nothing beyond `N` is tracked. Binary operations
//! require equal centers and equal orders, and recentering is always an
//! explicit [`TruncatedSeries::compose`] with a shifted inner series.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorial;

/// Smallest divisor constant-term modulus accepted by [`TruncatedSeries::checked_div`].
pub const DIV_FLOOR: f64 = 1e-12;

/// Maximum gap between an inner series' constant term and the outer center in composition.
pub const ALIGN_TOLERANCE: f64 = 1e-12;

/// Guard terms added on top of the highest derivative a caller needs.
pub const GUARD_TERMS: usize = 2;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::SeriesMismatch(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(TruncatedSeries { center, coeffs })
    }

    pub fn zero(center: Complex64, order: usize) -> Self {
        TruncatedSeries {
            center,
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn constant(center: Complex64, value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(center, order);
        s.coeffs[0] = value;
        s
    }

    /// The function `z ↦ z` expanded at `center`: `center + (z − center)`.
    pub fn identity(center: Complex64, order: usize) -> Self {
        let mut s = Self::constant(center, center, order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    /// The function `z ↦ z − center`, i.e. the bare expansion variable.
    pub fn variable(center: Complex64, order: usize) -> Self {
        let mut s = Self::zero(center, order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Value at the center.
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    fn check_aligned(&self, other: &Self) -> Result<()> {
        if self.center != other.center {
            return Err(Error::SeriesMismatch(format!(
                "centers differ: {} vs {}",
                self.center, other.center
            )));
        }
        if self.order() != other.order() {
            return Err(Error::SeriesMismatch(format!(
                "orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_aligned(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries {
            center: self.center,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_aligned(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncatedSeries {
            center: self.center,
            coeffs,
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_aligned(other)?;
        let n = self.order();
        let mut coeffs = vec![ZERO; n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries {
            center: self.center,
            coeffs,
        })
    }

    /// The series `T` with `other · T = self` through the common order.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_aligned(other)?;
        let lead = other.coeffs[0];
        if lead.norm() <= DIV_FLOOR {
            return Err(Error::DivisionFloor {
                modulus: lead.norm(),
            });
        }
        let n = self.order();
        let mut q: Vec<Complex64> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let acc = (1..=k).fold(self.coeffs[k], |acc, j| acc - other.coeffs[j] * q[k - j]);
            q.push(acc / lead);
        }
        Ok(TruncatedSeries {
            center: self.center,
            coeffs: q,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        TruncatedSeries {
            center: self.center,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add_constant(&self, value: Complex64) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += value;
        s
    }

    /// Taylor coefficients of `self ∘ inner` at `inner`'s center.
    ///
    /// `self` must be expanded at the value `inner` takes at its own center,
    /// so that `inner − self.center` has no constant term. Horner evaluation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.order() != inner.order() {
            return Err(Error::SeriesMismatch(format!(
                "orders differ: {} vs {}",
                self.order(),
                inner.order()
            )));
        }
        if (inner.coeffs[0] - self.center).norm() > ALIGN_TOLERANCE {
            return Err(Error::CompositionAlignment {
                inner: inner.coeffs[0],
                outer: self.center,
            });
        }
        let mut shifted = inner.clone();
        shifted.coeffs[0] = ZERO;
        let n = self.order();
        let mut acc = TruncatedSeries::constant(inner.center, self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.checked_mul(&shifted)?.add_constant(self.coeffs[k]);
        }
        Ok(acc)
    }

    /// `k!·c_k`, the k-th derivative at the center.
    pub fn derivative_at_center(&self, k: usize) -> Result<Complex64> {
        if k > self.order() {
            return Err(Error::OrderExceeded {
                k,
                order: self.order(),
            });
        }
        Ok(self.coeffs[k] * factorial(k))
    }

    /// All derivatives `f'(center), …, f^(order)(center)`.
    pub fn derivatives(&self) -> Vec<Complex64> {
        (1..=self.order())
            .map(|k| self.coeffs[k] * factorial(k))
            .collect()
    }

    /// Evaluates the truncated polynomial at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let x = z - self.center;
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * x + c)
    }
}

/// `T_a ∘ S = (S + a)/(1 + āS)` for `|a| ≤ 1`.
pub fn moebius_t_series(a: Complex64, s: &TruncatedSeries) -> Result<TruncatedSeries> {
    let num = s.add_constant(a);
    let den = s.scale(a.conj()).add_constant(ONE);
    num.checked_div(&den)
}

/// `T_{−z0}(z) = (z − z0)/(1 − z̄0 z)` expanded in powers of `z − z0`.
pub fn moebius_t_neg_z0_series(z0: Complex64, order: usize) -> Result<TruncatedSeries> {
    crate::error::check_open_disk("z0", z0)?;
    let num = TruncatedSeries::variable(z0, order);
    let den = TruncatedSeries::variable(z0, order)
        .scale(-z0.conj())
        .add_constant(Complex64::new(1.0 - z0.norm_sqr(), 0.0));
    num.checked_div(&den)
}
