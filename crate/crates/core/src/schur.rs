//! Schur parameters.
//!
//! For `g(z) = a_1 z + a_2 z² + …` mapping the disk into itself with `g(0) = 0`,
//! the coefficients and the hyperbolic derivatives `γ_k = Hᵏg(0)` determine each
//! other through the polynomials `F_n`:
//!
//! ```text
//! F_1(γ1)          = γ1
//! F_n(γ1, …, γn)   = (1 − |γ1|²) F_{n−1}(γ2, …, γn)
//!                    − γ̄1 Σ_{k=2}^{n−1} F_{n−k}(γ2, …, γ_{n−k+1}) F_k(γ1, …, γk)
//! a_n              = F_n(γ1, …, γn)
//! ```
//!
//! `F_n` is affine in its last argument with slope `∏_{k<n}(1 − |γk|²)`; the
//! intercept is `G_n(γ1, …, γ_{n−1})`. Hyperbolic derivatives of an arbitrary
//! self-map `f` at `z0` are the Schur parameters of `g = [f ∘ T_{z0}, f(z0)]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_open_disk, Error, Result};
use crate::moebius::{bracket, Bracket};
use crate::taylor::{moebius_t_series, TruncatedSeries};
use crate::UNIT_TOLERANCE;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Memo of `F_k(γ_i, …, γ_{i+k−1})` over the windows of one argument list.
pub struct SchurPolynomialTable<'a> {
    gammas: &'a [Complex64],
    memo: Vec<Option<Complex64>>,
}

impl<'a> SchurPolynomialTable<'a> {
    pub fn new(gammas: &'a [Complex64]) -> Self {
        let n = gammas.len();
        SchurPolynomialTable {
            gammas,
            memo: vec![None; n * (n + 1)],
        }
    }

    fn slot(&self, start: usize, len: usize) -> usize {
        start * (self.gammas.len() + 1) + len
    }

    /// `F_len(γ_start, …, γ_{start+len−1})`.
    pub fn get(&mut self, start: usize, len: usize) -> Complex64 {
        assert!(
            len >= 1 && start + len <= self.gammas.len(),
            "window out of range"
        );
        let slot = self.slot(start, len);
        if let Some(v) = self.memo[slot] {
            return v;
        }
        let g = self.gammas[start];
        let value = if len == 1 {
            g
        } else {
            let mut acc = self.get(start + 1, len - 1) * (1.0 - g.norm_sqr());
            let mut sum = ZERO;
            for k in 2..len {
                sum += self.get(start + 1, len - k) * self.get(start, k);
            }
            acc -= g.conj() * sum;
            acc
        };
        self.memo[slot] = Some(value);
        value
    }
}

/// `F_n(γ1, …, γn)` with `n = gammas.len()`; zero for an empty list.
pub fn f_poly(gammas: &[Complex64]) -> Complex64 {
    if gammas.is_empty() {
        return ZERO;
    }
    SchurPolynomialTable::new(gammas).get(0, gammas.len())
}

/// `G_n(γ1, …, γ_{n−1})`, taken as `F_n` with `γn = 0`. `G_1 = 0`.
pub fn g_poly(gammas: &[Complex64]) -> Complex64 {
    if gammas.is_empty() {
        return ZERO;
    }
    let mut extended = gammas.to_vec();
    extended.push(ZERO);
    f_poly(&extended)
}

/// `a_k = F_k(γ1, …, γk)` for `k = 1..=n`.
pub fn coefficients_from_parameters(gammas: &[Complex64]) -> Vec<Complex64> {
    let mut table = SchurPolynomialTable::new(gammas);
    (1..=gammas.len()).map(|k| table.get(0, k)).collect()
}

/// Schur parameters extracted from data, with the index of the first
/// unimodular parameter if the data come from a finite Blaschke product.
///
/// When `degenerate_at = Some(j)`, `gammas` has exactly `j` entries and the
/// last one has unit modulus; higher parameters do not exist.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurParameters {
    pub gammas: Vec<Complex64>,
    pub degenerate_at: Option<usize>,
}

/// Inverts `a_k = F_k(γ1, …, γk)` one index at a time.
///
/// `coeffs` holds `a_1, …, a_n` (no constant term).
pub fn parameters_from_coefficients(coeffs: &[Complex64]) -> Result<SchurParameters> {
    if coeffs.is_empty() {
        return Err(Error::Precondition("need at least one coefficient".into()));
    }
    let mut gammas: Vec<Complex64> = Vec::with_capacity(coeffs.len());
    let mut weight = 1.0;
    for (idx, &a) in coeffs.iter().enumerate() {
        let k = idx + 1;
        let gamma = (a - g_poly(&gammas)) / weight;
        let modulus = gamma.norm();
        if !modulus.is_finite() || modulus > 1.0 + UNIT_TOLERANCE {
            return Err(Error::Inconsistent(format!(
                "Schur parameter {k} has modulus {modulus} > 1; data do not come from a self-map"
            )));
        }
        gammas.push(gamma);
        if modulus >= 1.0 - UNIT_TOLERANCE {
            return Ok(SchurParameters {
                gammas,
                degenerate_at: Some(k),
            });
        }
        weight *= 1.0 - gamma.norm_sqr();
    }
    Ok(SchurParameters {
        gammas,
        degenerate_at: None,
    })
}

/// `g(ζ) = [f(T_{z0}(ζ)), f(z0)]` as a series at 0, from `f` expanded at `z0`.
pub fn renormalize(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let z0 = f.center();
    check_open_disk("z0", z0)?;
    let f0 = f.value();
    check_open_disk("f(z0)", f0)?;
    let order = f.order();
    let zeta = TruncatedSeries::variable(ZERO, order);
    let t_z0 = moebius_t_series(z0, &zeta)?;
    let pulled_back = f.compose(&t_z0)?;
    let mut g = moebius_t_series(-f0, &pulled_back)?;
    // g(0) = [f(z0), f(z0)] = 0 exactly
    let mut coeffs = g.coeffs().to_vec();
    coeffs[0] = ZERO;
    g = TruncatedSeries::new(ZERO, coeffs)?;
    Ok(g)
}

/// `H¹f(z0), …, Hⁿf(z0)` from the series of `f` at `z0` (order ≥ n).
pub fn hyperbolic_derivatives(f: &TruncatedSeries, n: usize) -> Result<SchurParameters> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if f.order() < n {
        return Err(Error::OrderExceeded {
            k: n,
            order: f.order(),
        });
    }
    let g = renormalize(f)?;
    parameters_from_coefficients(&g.coeffs()[1..=n])
}

/// Hyperbolic divided difference `Δʲf(z; z_{j−1}, …, z_0)`.
///
/// `nodes` lists `z_0, z_1, …, z_{j−1}` in order of application; `j = nodes.len()`
/// and `j = 0` returns `f(z)`. Nodes must be distinct from each other and from `z`.
pub fn divided_difference<F>(f: &F, z: Complex64, nodes: &[Complex64]) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    for (i, a) in nodes.iter().enumerate() {
        if *a == z || nodes[..i].contains(a) {
            return Err(Error::CoincidentNodes(i));
        }
    }
    delta(f, z, nodes)
}

fn delta<F>(f: &F, z: Complex64, nodes: &[Complex64]) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    let Some((&last, rest)) = nodes.split_last() else {
        return Ok(f(z));
    };
    let at_z = delta(f, z, rest)?;
    let at_node = delta(f, last, rest)?;
    let num = finite(bracket(at_z, at_node))?;
    let den = finite(bracket(z, last))?;
    if den == ZERO {
        return Err(Error::InfiniteBracket);
    }
    Ok(num / den)
}

fn finite(b: Bracket) -> Result<Complex64> {
    b.finite().ok_or(Error::InfiniteBracket)
}
