//! Maps fixing the origin.
//!
//! For `h` with `h(0) = 0`, `h(z0) = w0` and `h⁽ᵏ⁾(z0) = w_k` (`k < n`), write
//! `h = z·f`. Then `f(z0) = γ0 = w0/z0`, `f` is a self-map whenever `h` is not a
//! rotation, and `h⁽ⁿ⁾ = z f⁽ⁿ⁾ + n f⁽ⁿ⁻¹⁾`. The values of `h⁽ⁿ⁾(z0)` fill the disk
//!
//! ```text
//! c'_n = n (c_{n−1} + ρ_{n−1} γ_{n−1}) + z0 c_n,     ρ'_n = |z0| ρ_n
//! ```
//!
//! with `c_0 + ρ_0 γ_0 = γ0`. The prescribed derivatives and the hyperbolic
//! parameters of `f` are related by `w_k = c'_k + ρ'_k z0 γ_k / |z0|`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_closed_disk, check_open_disk, Error, Result};
use crate::moebius::ClosedDisk;
use crate::taylor::TruncatedSeries;
use crate::variability::{
    classify, disk_nth, extremal_series, BranchClass, ExtremalSpec, HyperbolicData, Tail,
};
use crate::UNIT_TOLERANCE;

/// Relative tolerance for values forced by a degenerate branch.
pub const FORCED_TOLERANCE: f64 = 1e-9;

/// `(z0, w0; γ1, …, γ_{n−1})` for a map `h` with `h(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DieudonneData {
    z0: Complex64,
    w0: Complex64,
    gammas: Vec<Complex64>,
}

fn check_points(z0: Complex64, w0: Complex64) -> Result<()> {
    check_open_disk("z0", z0)?;
    if z0.norm() == 0.0 {
        return Err(Error::Precondition(
            "z0 must be nonzero for maps fixing the origin".into(),
        ));
    }
    if w0.norm() >= z0.norm() {
        return Err(Error::Precondition(format!(
            "|w0| = {} must be smaller than |z0| = {}",
            w0.norm(),
            z0.norm()
        )));
    }
    Ok(())
}

impl DieudonneData {
    /// `gammas` holds `γ1, …, γ_{n−1}`, so `n = gammas.len() + 1`.
    pub fn new(z0: Complex64, w0: Complex64, gammas: Vec<Complex64>) -> Result<Self> {
        check_points(z0, w0)?;
        for (k, g) in gammas.iter().enumerate() {
            check_closed_disk(&format!("gamma {}", k + 1), *g)?;
        }
        Ok(DieudonneData { z0, w0, gammas })
    }

    /// Builds the data from prescribed derivatives `w_1, …, w_{n−1}`.
    pub fn from_ws(z0: Complex64, w0: Complex64, ws: &[Complex64]) -> Result<Self> {
        let chain = gamma_from_w(z0, w0, ws)?;
        Self::new(z0, w0, chain.values)
    }

    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    pub fn w0(&self) -> Complex64 {
        self.w0
    }

    pub fn gammas(&self) -> &[Complex64] {
        &self.gammas
    }

    pub fn n(&self) -> usize {
        self.gammas.len() + 1
    }

    /// `r = |z0|`.
    pub fn r(&self) -> f64 {
        self.z0.norm()
    }

    /// `s = |w0|`.
    pub fn s(&self) -> f64 {
        self.w0.norm()
    }

    pub fn gamma0(&self) -> Complex64 {
        self.w0 / self.z0
    }

    /// Data `(z0; γ0, γ1, …, γ_{n−1})` of `f = h/z`.
    pub fn hyperbolic(&self) -> Result<HyperbolicData> {
        let mut g = Vec::with_capacity(self.n());
        g.push(self.gamma0());
        g.extend_from_slice(&self.gammas);
        HyperbolicData::new(self.z0, g)
    }
}

/// `f(z0), f'(z0), …, f^(n−1)(z0)` of every admissible `f` with data `hd`
/// extended by one more parameter: `f⁽ᵏ⁾(z0) = c_k + ρ_k γ_k`.
fn lower_derivatives(hd: &HyperbolicData) -> Result<Vec<Complex64>> {
    let n = hd.n();
    let mut out = Vec::with_capacity(n);
    out.push(hd.gamma0());
    for k in 1..n {
        let disk = disk_nth(&hd.truncate(k))?;
        out.push(disk.center + disk.radius * hd.gammas()[k]);
    }
    Ok(out)
}

/// The closed disk of values of `h⁽ⁿ⁾(z0)`, `n = data.n()`.
pub fn dieudonne_disk(data: &DieudonneData) -> Result<ClosedDisk> {
    let hd = data.hyperbolic()?;
    let n = hd.n();
    let inner = disk_nth(&hd)?;
    let lower = lower_derivatives(&hd)?;
    let center = n as f64 * lower[n - 1] + data.z0 * inner.center;
    match classify(&hd)? {
        BranchClass::Interior => ClosedDisk::new(center, data.r() * inner.radius),
        _ => Ok(ClosedDisk::point(center)),
    }
}

/// `c'_2, ρ'_2` in terms of `r = |z0|`, `s = |w0|`; a cross-check for [`dieudonne_disk`].
pub fn c2_rho2_dieudonne_explicit(z0: Complex64, w0: Complex64, gamma1: Complex64) -> ClosedDisk {
    let r2 = z0.norm_sqr();
    let s2 = w0.norm_sqr();
    let r = r2.sqrt();
    let den = (1.0 - r2).powi(2);
    let center =
        2.0 * (r2 - s2) / (r2 * den) * gamma1 * (1.0 - z0 * w0.conj() / z0.conj() * gamma1);
    let radius = (2.0 * (r2 - s2) / (r * den) * (1.0 - gamma1.norm_sqr())).max(0.0);
    ClosedDisk { center, radius }
}

/// A chain of converted parameters, with the index of the first unimodular `γ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterChain {
    pub values: Vec<Complex64>,
    pub degenerate_at: Option<usize>,
}

/// `w_1, …, w_{n−1}` from `γ1, …, γ_{n−1}`.
pub fn w_from_gamma(data: &DieudonneData) -> Result<ParameterChain> {
    let hd = data.hyperbolic()?;
    let degenerate_at = match classify(&hd)? {
        BranchClass::BlaschkeDegenerate(j) => Some(j),
        _ => None,
    };
    let f = lower_derivatives(&hd)?;
    let values = (1..hd.n())
        .map(|k| k as f64 * f[k - 1] + data.z0 * f[k])
        .collect();
    Ok(ParameterChain {
        values,
        degenerate_at,
    })
}

/// `γ1, …, γ_{n−1}` from `w_1, …, w_{n−1}`.
///
/// Each `w_k` must lie in the disk `D̄(c'_k, ρ'_k)` fixed by the earlier entries;
/// a point outside is reported as [`Error::Infeasible`]. A point on the boundary
/// makes `γ_k` unimodular, after which every later `w` is forced.
pub fn gamma_from_w(z0: Complex64, w0: Complex64, ws: &[Complex64]) -> Result<ParameterChain> {
    check_points(z0, w0)?;
    let r = z0.norm();
    let mut gammas: Vec<Complex64> = Vec::with_capacity(ws.len());
    let mut degenerate_at = None;
    for (idx, &w) in ws.iter().enumerate() {
        let k = idx + 1;
        let disk = dieudonne_disk(&DieudonneData::new(z0, w0, gammas.clone())?)?;
        let offset = w - disk.center;
        if degenerate_at.is_some() {
            if offset.norm() > FORCED_TOLERANCE * disk.center.norm().max(1.0) {
                return Err(Error::Infeasible {
                    index: k,
                    excess: offset.norm(),
                });
            }
            gammas.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let gamma = offset * r / (disk.radius * z0);
        if gamma.norm() > 1.0 + UNIT_TOLERANCE || !gamma.norm().is_finite() {
            return Err(Error::Infeasible {
                index: k,
                excess: offset.norm() - disk.radius,
            });
        }
        if gamma.norm() >= 1.0 - UNIT_TOLERANCE {
            degenerate_at = Some(k);
        }
        gammas.push(gamma);
    }
    Ok(ParameterChain {
        values: gammas,
        degenerate_at,
    })
}

/// Series at `z0` of `h = z·f` with `f` the extremal function for `data` and `tail`.
pub fn extremal_h_series(
    data: &DieudonneData,
    tail: &Tail,
    order: usize,
) -> Result<TruncatedSeries> {
    let spec = ExtremalSpec::new(data.hyperbolic()?, tail.clone());
    let f = extremal_series(&spec, order)?;
    f.checked_mul(&TruncatedSeries::identity(data.z0, order))
}
