//! Disk geometry: the bracket `[z, w]`, the automorphisms `T_a`, closed disks
//! and finite Blaschke products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_open_disk, Error, Result};

/// Denominators below this modulus are treated as exact zeros.
pub const POLE_FLOOR: f64 = 1e-300;

/// Value of the bracket `[z, w]`.
///
/// The infinite case is an ordinary output, not an error; callers branch on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bracket {
    Finite(Complex64),
    Infinity,
}

impl Bracket {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Bracket::Finite(v) => Some(v),
            Bracket::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Bracket::Infinity)
    }
}

/// `[z, w] = (z − w)/(1 − w̄z)`.
///
/// Returns [`Bracket::Infinity`] when `z·w̄ = −1` or when the denominator
/// falls below [`POLE_FLOOR`]. `[z, z]` is `0` for every `z`.
pub fn bracket(z: Complex64, w: Complex64) -> Bracket {
    if z == w {
        return Bracket::Finite(Complex64::new(0.0, 0.0));
    }
    if z * w.conj() == Complex64::new(-1.0, 0.0) {
        return Bracket::Infinity;
    }
    let den = Complex64::new(1.0, 0.0) - w.conj() * z;
    if den.norm() < POLE_FLOOR {
        return Bracket::Infinity;
    }
    Bracket::Finite((z - w) / den)
}

/// The disk automorphism `T_a(z) = (z + a)/(1 + āz)`.
pub fn moebius_t(a: Complex64, z: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) + a.conj() * z;
    if den.norm() < POLE_FLOOR {
        return Err(Error::Pole(z));
    }
    Ok((z + a) / den)
}

/// Closed disk `{ζ : |ζ − center| ≤ radius}`; radius 0 is a single point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl ClosedDisk {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::Precondition(format!(
                "disk radius must be finite and nonnegative, got {radius}"
            )));
        }
        Ok(ClosedDisk { center, radius })
    }

    pub fn point(center: Complex64) -> Self {
        ClosedDisk {
            center,
            radius: 0.0,
        }
    }

    pub fn is_point(&self) -> bool {
        self.radius == 0.0
    }

    /// `|ζ − center| − radius`: negative inside, positive outside.
    pub fn signed_distance(&self, zeta: Complex64) -> f64 {
        (zeta - self.center).norm() - self.radius
    }

    /// Membership in the disk inflated by the relative factor `1 + rel_slack`.
    pub fn contains(&self, zeta: Complex64, rel_slack: f64) -> bool {
        (zeta - self.center).norm() <= self.radius * (1.0 + rel_slack)
    }
}

/// `B(z) = e^{iθ} ∏ [z, z_j]` with every `|z_j| < 1`.
///
/// The rotation is stored as an angle so the unimodular factor is exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    theta: f64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(theta: f64, zeros: Vec<Complex64>) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Precondition("rotation angle must be finite".into()));
        }
        for (j, z) in zeros.iter().enumerate() {
            check_open_disk(&format!("Blaschke zero {j}"), *z)?;
        }
        Ok(BlaschkeProduct { theta, zeros })
    }

    /// The unimodular constant `e^{iθ}`.
    pub fn constant(theta: f64) -> Result<Self> {
        Self::new(theta, Vec::new())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        blaschke_eval(self, z)
    }
}

/// Evaluates `B(z)` for `|z| ≤ 1`.
pub fn blaschke_eval(b: &BlaschkeProduct, z: Complex64) -> Complex64 {
    b.zeros.iter().fold(b.rotation(), |acc, &zj| {
        // |z_j| < 1 and |z| ≤ 1 keep the denominator away from zero.
        acc * (z - zj) / (Complex64::new(1.0, 0.0) - zj.conj() * z)
    })
}
