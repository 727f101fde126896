//! Variability disks for the n-th derivative of analytic self-maps of the unit disk.
//!
//! Given a point `z0` in the unit disk and prescribed data
//! `f(z0) = γ0, H¹f(z0) = γ1, …, Hⁿ⁻¹f(z0) = γ_{n−1}` (value plus hyperbolic
//! derivatives), the set of possible values of `f⁽ⁿ⁾(z0)` is a closed disk
//! `D̄(c_n, ρ_n)`. This crate computes that disk, the analogous disk for maps
//! fixing the origin with prescribed ordinary derivatives at `z0`, and the
//! extremal functions that reach the boundary.
//!
//! Layout:
//!
//! - [`moebius`]: the bracket `[z, w]`, disk automorphisms, closed disks, Blaschke products
//! - [`taylor`]: truncated complex Taylor series, the differentiation engine
//! - [`schur`]: Schur polynomials `F_n`, `G_n`, coefficient/parameter conversions,
//!   hyperbolic derivatives and hyperbolic divided differences
//! - [`peschl`]: Peschl invariant derivatives and Bell-polynomial conversions
//! - [`variability`]: the disk `(c_n, ρ_n)`, branch classification, extremal functions
//! - [`dieudonne`]: the origin-fixing problem, `(c'_n, ρ'_n)` and `w ↔ γ` chains
//! - [`oracle`]: seeded brute-force verification (containment, boundary, roundtrips)
//!
//! ```
//! use num_complex::Complex64;
//! use varregion::{disk_nth, HyperbolicData};
//!
//! // f(0) = 0, H¹f(0) = 0: f''(0) ranges over the closed disk of radius 2.
//! let data = HyperbolicData::new(Complex64::new(0.0, 0.0), vec![Complex64::new(0.0, 0.0); 2]).unwrap();
//! let disk = disk_nth(&data).unwrap();
//! assert!((disk.radius - 2.0).abs() < 1e-15);
//! ```

pub mod dieudonne;
mod error;
pub mod moebius;
pub mod oracle;
pub mod peschl;
pub mod schur;
pub mod taylor;
pub mod variability;

pub use num_complex::Complex64;

pub use dieudonne::{dieudonne_disk, extremal_h_series, gamma_from_w, w_from_gamma, DieudonneData};
pub use error::{Error, Result};
pub use moebius::{blaschke_eval, bracket, moebius_t, BlaschkeProduct, Bracket, ClosedDisk};
pub use oracle::{run_containment, run_roundtrips, SplitMix64, TrialConfig};
pub use peschl::{
    alpha, bell_partial, hyperbolic_from_peschl, ordinary_from_peschl, peschl_from_ordinary,
    peschl_from_series, s_remainder,
};
pub use schur::{
    coefficients_from_parameters, divided_difference, f_poly, g_poly, hyperbolic_derivatives,
    parameters_from_coefficients, SchurParameters,
};
pub use taylor::TruncatedSeries;
pub use variability::{
    classify, disk_nth, extremal_series, BranchClass, ExtremalSpec, HyperbolicData, Tail,
};

/// Moduli within this distance of 1 are treated as unimodular.
pub const UNIT_TOLERANCE: f64 = 1e-10;

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
