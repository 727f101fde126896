//! The n-th order Schwarz-Pick disk.
//!
//! For data `(z0; γ0, …, γ_{n−1})` with `|γk| < 1` every admissible `f` satisfies
//! `f⁽ⁿ⁾(z0) = c_n + ρ_n γ_n` with `γ_n = Hⁿf(z0)` free in the closed unit disk:
//!
//! ```text
//! c_n = (1 − |γ0|²)/(1 − |z0|²)ⁿ · (n! G_n(γ1, …, γ_{n−1}) − s_{n−1}(z0))
//! ρ_n = n! ∏_{k=0}^{n−1} (1 − |γk|²) / (1 − |z0|²)ⁿ
//! ```
//!
//! The boundary is reached exactly by the nested extremal functions
//! `f_{γ,ε} = T_{γ0}(u·T_{γ1}(u·T_{γ2}(⋯ u·T_{γ_{n−1}}(ε·u) ⋯)))`, `u = T_{−z0}(z)`,
//! with `|ε| = 1`; replacing `ε` by a Schur function `f*` gives every admissible map.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_closed_disk, check_open_disk, Error, Result};
use crate::factorial;
use crate::moebius::{moebius_t, BlaschkeProduct, ClosedDisk};
use crate::peschl::{peschl_from_series, s_remainder};
use crate::schur::g_poly;
use crate::taylor::{moebius_t_neg_z0_series, moebius_t_series, TruncatedSeries, GUARD_TERMS};
use crate::UNIT_TOLERANCE;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// The point `z0` together with `γ0 = f(z0)` and `γk = Hᵏf(z0)`, `k < n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicData {
    z0: Complex64,
    gammas: Vec<Complex64>,
}

impl HyperbolicData {
    /// `gammas` holds `γ0, …, γ_{n−1}`; its length is `n`.
    pub fn new(z0: Complex64, gammas: Vec<Complex64>) -> Result<Self> {
        check_open_disk("z0", z0)?;
        if gammas.is_empty() {
            return Err(Error::Precondition("at least γ0 is required".into()));
        }
        for (k, g) in gammas.iter().enumerate() {
            check_closed_disk(&format!("gamma {k}"), *g)?;
        }
        Ok(HyperbolicData { z0, gammas })
    }

    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    pub fn gammas(&self) -> &[Complex64] {
        &self.gammas
    }

    pub fn gamma0(&self) -> Complex64 {
        self.gammas[0]
    }

    /// `γ1, …, γ_{n−1}`.
    pub fn lower(&self) -> &[Complex64] {
        &self.gammas[1..]
    }

    /// The derivative order the data constrain.
    pub fn n(&self) -> usize {
        self.gammas.len()
    }

    /// The first `len` entries as data of order `len`.
    pub fn truncate(&self, len: usize) -> Self {
        HyperbolicData {
            z0: self.z0,
            gammas: self.gammas[..len].to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchClass {
    Interior,
    /// The first unimodular parameter is `γ_j`; admissible maps are a single
    /// Blaschke product of degree `j`.
    BlaschkeDegenerate(usize),
    ConstantUnimodular,
}

impl fmt::Display for BranchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchClass::Interior => write!(f, "interior"),
            BranchClass::BlaschkeDegenerate(j) => write!(f, "blaschke_degenerate:{j}"),
            BranchClass::ConstantUnimodular => write!(f, "constant_unimodular"),
        }
    }
}

fn is_unit(z: Complex64) -> bool {
    z.norm() >= 1.0 - UNIT_TOLERANCE
}

pub fn classify(data: &HyperbolicData) -> Result<BranchClass> {
    if is_unit(data.gamma0()) {
        return Ok(BranchClass::ConstantUnimodular);
    }
    let Some(j) = data
        .gammas
        .iter()
        .skip(1)
        .position(|g| is_unit(*g))
        .map(|p| p + 1)
    else {
        return Ok(BranchClass::Interior);
    };
    if let Some(k) = data.gammas[j + 1..]
        .iter()
        .position(|g| g.norm() > UNIT_TOLERANCE)
    {
        return Err(Error::Inconsistent(format!(
            "gamma {j} is unimodular but gamma {} = {} is not zero; only a degree-{j} Blaschke product matches",
            j + 1 + k,
            data.gammas[j + 1 + k]
        )));
    }
    Ok(BranchClass::BlaschkeDegenerate(j))
}

/// `c_n` from the closed formula (valid on every branch with `|γ0| < 1`).
fn center_nth(data: &HyperbolicData) -> Result<Complex64> {
    let n = data.n();
    let w = 1.0 - data.z0.norm_sqr();
    let g0 = data.gamma0();
    let s = s_remainder(data.z0, g0, data.lower())?;
    Ok((1.0 - g0.norm_sqr()) / w.powi(n as i32) * (factorial(n) * g_poly(data.lower()) - s))
}

/// `ρ_n`, ignoring branch degeneracy.
fn radius_nth(data: &HyperbolicData) -> f64 {
    let n = data.n();
    let w = 1.0 - data.z0.norm_sqr();
    let weight: f64 = data
        .gammas
        .iter()
        .map(|g| (1.0 - g.norm_sqr()).max(0.0))
        .product();
    factorial(n) * weight / w.powi(n as i32)
}

/// The closed disk of values of `f⁽ⁿ⁾(z0)`, `n = data.n()`.
pub fn disk_nth(data: &HyperbolicData) -> Result<ClosedDisk> {
    match classify(data)? {
        BranchClass::ConstantUnimodular => Ok(ClosedDisk::point(ZERO)),
        BranchClass::BlaschkeDegenerate(_) => Ok(ClosedDisk::point(center_nth(data)?)),
        BranchClass::Interior => ClosedDisk::new(center_nth(data)?, radius_nth(data)),
    }
}

/// `c_2, ρ_2` written out directly; a cross-check for [`disk_nth`] at `n = 2`.
pub fn c2_rho2_explicit(z0: Complex64, gamma0: Complex64, gamma1: Complex64) -> ClosedDisk {
    let w2 = (1.0 - z0.norm_sqr()).powi(2);
    let v = 1.0 - gamma0.norm_sqr();
    let center = 2.0 * v * (z0.conj() - gamma0.conj() * gamma1) * gamma1 / w2;
    let radius = (2.0 * v * (1.0 - gamma1.norm_sqr()) / w2).max(0.0);
    ClosedDisk { center, radius }
}

/// The innermost factor `f*` of an extremal function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Tail {
    /// A constant `ε` with `|ε| ≤ 1`.
    Constant(Complex64),
    Blaschke(BlaschkeProduct),
}

impl Tail {
    pub fn constant(eps: Complex64) -> Result<Self> {
        check_closed_disk("tail constant", eps)?;
        Ok(Tail::Constant(eps))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Tail::Constant(eps) => *eps,
            Tail::Blaschke(b) => b.eval(z),
        }
    }

    pub fn series(&self, center: Complex64, order: usize) -> Result<TruncatedSeries> {
        match self {
            Tail::Constant(eps) => Ok(TruncatedSeries::constant(center, *eps, order)),
            Tail::Blaschke(b) => {
                let id = TruncatedSeries::identity(center, order);
                b.zeros().iter().try_fold(
                    TruncatedSeries::constant(center, b.rotation(), order),
                    |acc, &zj| acc.checked_mul(&moebius_t_series(-zj, &id)?),
                )
            }
        }
    }

    /// True when the tail is a unimodular constant (the boundary case).
    pub fn is_unimodular_constant(&self) -> bool {
        matches!(self, Tail::Constant(eps) if is_unit(*eps))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub data: HyperbolicData,
    pub tail: Tail,
}

impl ExtremalSpec {
    pub fn new(data: HyperbolicData, tail: Tail) -> Self {
        ExtremalSpec { data, tail }
    }

    pub fn with_constant(data: HyperbolicData, eps: Complex64) -> Result<Self> {
        Ok(ExtremalSpec {
            data,
            tail: Tail::constant(eps)?,
        })
    }

    /// The parameters that enter the nesting and the constant closing it, or
    /// `None` when the innermost factor is the tail itself.
    fn layout(&self) -> Result<(&[Complex64], Option<Complex64>)> {
        let g = self.data.gammas();
        Ok(match classify(&self.data)? {
            BranchClass::ConstantUnimodular => (&g[..1], None),
            BranchClass::BlaschkeDegenerate(j) => (&g[..j], Some(g[j])),
            BranchClass::Interior => (g, None),
        })
    }

    /// Pointwise value of the nested construction at `z` (no series involved).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let z0 = self.data.z0();
        if matches!(classify(&self.data)?, BranchClass::ConstantUnimodular) {
            return Ok(self.data.gamma0());
        }
        let u = crate::moebius::bracket(z, z0)
            .finite()
            .ok_or(Error::Pole(z))?;
        let (params, closing) = self.layout()?;
        let mut acc = u * closing.unwrap_or_else(|| self.tail.eval(z));
        for &g in params[1..].iter().rev() {
            acc = u * moebius_t(g, acc)?;
        }
        moebius_t(params[0], acc)
    }
}

/// Series of the extremal function at `z0` through `order`.
///
/// Interior data nest all of `γ0 … γ_{n−1}` around `tail·u`; data on the
/// degenerate branch `γ_j` build the degree-`j` Blaschke product closed by
/// `γ_j·u` and ignore the tail.
pub fn extremal_series(spec: &ExtremalSpec, order: usize) -> Result<TruncatedSeries> {
    let z0 = spec.data.z0();
    if matches!(classify(&spec.data)?, BranchClass::ConstantUnimodular) {
        return Ok(TruncatedSeries::constant(z0, spec.data.gamma0(), order));
    }
    let u = moebius_t_neg_z0_series(z0, order)?;
    let (params, closing) = spec.layout()?;
    let inner = match closing {
        Some(eps) => u.scale(eps),
        None => spec.tail.series(z0, order)?.checked_mul(&u)?,
    };
    let nested = params[1..]
        .iter()
        .rev()
        .try_fold(inner, |acc, &g| u.checked_mul(&moebius_t_series(g, &acc)?))?;
    moebius_t_series(params[0], &nested)
}

/// `f⁽ⁿ⁾(z0)` of the extremal function, `n = spec.data.n()`.
pub fn extremal_nth_derivative(spec: &ExtremalSpec) -> Result<Complex64> {
    let n = spec.data.n();
    extremal_series(spec, n + GUARD_TERMS)?.derivative_at_center(n)
}

/// `s_{n−1}(z0)` read off a concrete admissible function: the extremal with
/// constant tail `eps`. Any admissible function gives the same value.
pub fn s_remainder_by_reference(
    z0: Complex64,
    gamma0: Complex64,
    lower: &[Complex64],
    eps: Complex64,
) -> Result<Complex64> {
    let n = lower.len() + 1;
    if n == 1 {
        return Ok(ZERO);
    }
    let mut gammas = vec![gamma0];
    gammas.extend_from_slice(lower);
    let spec = ExtremalSpec::with_constant(HyperbolicData::new(z0, gammas)?, eps)?;
    let f = extremal_series(&spec, n + GUARD_TERMS)?;
    let d = peschl_from_series(&f)?;
    let fn_ = f.derivative_at_center(n)?;
    let w = 1.0 - z0.norm_sqr();
    Ok(d[n - 1] - w.powi(n as i32) * fn_ / (1.0 - gamma0.norm_sqr()))
}
