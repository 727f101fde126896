//! Peschl invariant derivatives.
//!
//! `Dⁿf(z0)` is `n!` times the n-th Taylor coefficient of the renormalized map
//! `g = [f ∘ T_{z0}, f(z0)]` at the origin. Two triangular identities connect
//! `D¹f, …, Dⁿf` with the ordinary derivatives through the partial Bell
//! polynomials `A_{n,k}` and the signed Lah numbers `α_{n,k}`:
//!
//! ```text
//! Dⁿf = Σ_{k=1}^{n} α_{n,k} z̄^{n−k} (1−|z|²)^k f^(k) / (1−|f|²)
//!       − Σ_{k=2}^{n} k! (−f̄)^{k−1} A_{n,k}(D¹f, …, D^{n−k+1}f)
//!
//! (1−|z|²)ⁿ f^(n) / (n! (1−|f|²)) = Σ_{k=1}^{n} C(n−1, k−1) z̄^{n−k} b_k
//! b_k = Σ_{l=1}^{k} (l!/k!) (−f̄)^{l−1} A_{k,l}(D¹f, …, D^{k−l+1}f)
//! ```

use num_complex::Complex64;

use crate::error::{check_open_disk, Error, Result};
use crate::factorial;
use crate::schur::{g_poly, renormalize};
use crate::taylor::TruncatedSeries;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// One monomial of `A_{n,k}`: `coefficient · ∏ x_i^{exponents[i−1]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellTerm {
    pub exponents: Vec<u32>,
    pub coefficient: i128,
}

fn checked_factorial(n: usize) -> Result<i128> {
    (1..=n as i128).try_fold(1i128, |acc, k| {
        acc.checked_mul(k)
            .ok_or_else(|| Error::Overflow(format!("{n}!")))
    })
}

/// Monomials of the partial Bell polynomial `A_{n,k}` with exact coefficients
/// `n! / ∏ ((i!)^{j_i} j_i!)`.
pub fn bell_terms(n: usize, k: usize) -> Result<Vec<BellTerm>> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "Bell index k = {k} outside 1..={n}"
        )));
    }
    let width = n - k + 1;
    let n_fact = checked_factorial(n)?;
    let mut fact = Vec::with_capacity(width + 1);
    for i in 0..=width {
        fact.push(checked_factorial(i)?);
    }

    let mut out = Vec::new();
    let mut exps = vec![0u32; width];
    enumerate(width, k, n, &mut exps, &mut |exps| {
        let mut coef = n_fact;
        for (idx, &j) in exps.iter().enumerate() {
            for _ in 0..j {
                coef /= fact[idx + 1];
            }
            coef /= checked_factorial(j as usize)?;
        }
        out.push(BellTerm {
            exponents: exps.to_vec(),
            coefficient: coef,
        });
        Ok(())
    })?;
    Ok(out)
}

/// Chooses `exps[i−1]` (the multiplicity of part size `i`) and recurses on smaller sizes
/// until `parts` parts of total `weight` are placed.
fn enumerate(
    i: usize,
    parts: usize,
    weight: usize,
    exps: &mut [u32],
    emit: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if i == 0 {
        return if parts == 0 && weight == 0 {
            emit(exps)
        } else {
            Ok(())
        };
    }
    for j in 0..=parts.min(weight / i) {
        let (rest_parts, rest_weight) = (parts - j, weight - j * i);
        // every remaining part has size at least 1 and at most i − 1
        if rest_weight < rest_parts || rest_weight > rest_parts * (i - 1) {
            continue;
        }
        exps[i - 1] = j as u32;
        enumerate(i - 1, rest_parts, rest_weight, exps, emit)?;
    }
    exps[i - 1] = 0;
    Ok(())
}

fn eval_terms(terms: &[BellTerm], x: &[Complex64]) -> Complex64 {
    terms
        .iter()
        .map(|t| {
            t.exponents.iter().zip(x).fold(
                Complex64::new(t.coefficient as f64, 0.0),
                |acc, (&j, &xi)| acc * xi.powu(j),
            )
        })
        .sum()
}

/// `A_{n,k}(x_1, …, x_{n−k+1})`; extra trailing entries of `x` are ignored.
pub fn bell_partial(n: usize, k: usize, x: &[Complex64]) -> Result<Complex64> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "Bell index k = {k} outside 1..={n}"
        )));
    }
    if x.len() < n - k + 1 {
        return Err(Error::Precondition(format!(
            "A_{{{n},{k}}} needs {} arguments, got {}",
            n - k + 1,
            x.len()
        )));
    }
    Ok(eval_terms(&bell_terms(n, k)?, x))
}

/// `α_{n,k} = (−1)^{n−k} n!(n−1)! / (k!(k−1)!(n−k)!)` for `1 ≤ k ≤ n`, else 0.
pub fn alpha(n: usize, k: usize) -> Result<i128> {
    if k == 0 || k > n {
        return Ok(0);
    }
    let overflow = || Error::Overflow(format!("alpha({n}, {k})"));
    let num = checked_factorial(n)?
        .checked_mul(checked_factorial(n - 1)?)
        .ok_or_else(overflow)?;
    let den = checked_factorial(k)?
        .checked_mul(checked_factorial(k - 1)?)
        .and_then(|d| d.checked_mul(checked_factorial(n - k).ok()?))
        .ok_or_else(overflow)?;
    let magnitude = num / den;
    Ok(if (n - k).is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    })
}

/// Partial Bell values `A_{m,k}(x)` for all `1 ≤ k ≤ m ≤ n_max`.
#[derive(Debug, Clone)]
pub struct BellTable {
    n_max: usize,
    values: Vec<Complex64>,
}

impl BellTable {
    pub fn new(x: &[Complex64], n_max: usize) -> Result<Self> {
        if x.len() < n_max {
            return Err(Error::Precondition(format!(
                "Bell table of order {n_max} needs {n_max} arguments, got {}",
                x.len()
            )));
        }
        let mut values = vec![ZERO; (n_max + 1) * (n_max + 1)];
        for m in 1..=n_max {
            for k in 1..=m {
                values[m * (n_max + 1) + k] = eval_terms(&bell_terms(m, k)?, x);
            }
        }
        Ok(BellTable { n_max, values })
    }

    pub fn get(&self, m: usize, k: usize) -> Complex64 {
        assert!(
            k >= 1 && k <= m && m <= self.n_max,
            "A_{{{m},{k}}} not tabulated"
        );
        self.values[m * (self.n_max + 1) + k]
    }
}

/// `D¹f(z0), …, Dⁿf(z0)` from the series of `f` at `z0`, `n = order`.
pub fn peschl_from_series(f: &TruncatedSeries) -> Result<Vec<Complex64>> {
    let g = renormalize(f)?;
    Ok(g.derivatives())
}

fn check_point(z0: Complex64, f0: Complex64) -> Result<()> {
    check_open_disk("z0", z0)?;
    check_open_disk("f(z0)", f0)
}

/// `D¹f(z0), …, Dⁿf(z0)` from `f(z0)` and `f'(z0), …, f^(n)(z0)`.
pub fn peschl_from_ordinary(
    z0: Complex64,
    f0: Complex64,
    derivs: &[Complex64],
) -> Result<Vec<Complex64>> {
    check_point(z0, f0)?;
    let n = derivs.len();
    let w = 1.0 - z0.norm_sqr();
    let v = 1.0 - f0.norm_sqr();
    let zb = z0.conj();
    let neg_fb = -f0.conj();
    let mut d: Vec<Complex64> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut value = ZERO;
        for k in 1..=m {
            let a = alpha(m, k)? as f64;
            value += a * zb.powu((m - k) as u32) * w.powi(k as i32) * derivs[k - 1] / v;
        }
        for k in 2..=m {
            let bell = bell_partial(m, k, &d[..m - k + 1])?;
            value -= factorial(k) * neg_fb.powu((k - 1) as u32) * bell;
        }
        d.push(value);
    }
    Ok(d)
}

/// `f'(z0), …, f^(n)(z0)` from `f(z0)` and `D¹f(z0), …, Dⁿf(z0)`.
pub fn ordinary_from_peschl(
    z0: Complex64,
    f0: Complex64,
    peschl: &[Complex64],
) -> Result<Vec<Complex64>> {
    check_point(z0, f0)?;
    let n = peschl.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let w = 1.0 - z0.norm_sqr();
    let v = 1.0 - f0.norm_sqr();
    let zb = z0.conj();
    let neg_fb = -f0.conj();
    let table = BellTable::new(peschl, n)?;
    let b: Vec<Complex64> = (1..=n)
        .map(|k| {
            (1..=k)
                .map(|l| {
                    factorial(l) / factorial(k) * neg_fb.powu((l - 1) as u32) * table.get(k, l)
                })
                .sum()
        })
        .collect();
    let mut out = Vec::with_capacity(n);
    for m in 1..=n {
        let mut rhs = ZERO;
        for k in 1..=m {
            rhs += binomial(m - 1, k - 1) * zb.powu((m - k) as u32) * b[k - 1];
        }
        out.push(rhs * factorial(m) * v / w.powi(m as i32));
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `D^kf(z0) = k! (∏_{j<k}(1−|γj|²) γk + G_k(γ1, …, γ_{k−1}))` for `k = 1..=len`.
pub fn peschl_from_hyperbolic(gammas: &[Complex64]) -> Vec<Complex64> {
    let mut weight = 1.0;
    gammas
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            let k = idx + 1;
            let value = factorial(k) * (weight * g + g_poly(&gammas[..idx]));
            weight *= 1.0 - g.norm_sqr();
            value
        })
        .collect()
}

/// The remainder `s_{n−1}(z0)` in `Dⁿf = (1−|z0|²)ⁿ f^(n)/(1−|f(z0)|²) + s_{n−1}`.
///
/// `lower` holds `γ1, …, γ_{n−1}`, so `n = lower.len() + 1`. Only data of
/// order below `n` enter: the lower Peschl derivatives follow from the
/// `γ`'s, the lower ordinary derivatives from those, and the Bell sums use
/// `D¹ … D^{n−1}` only.
pub fn s_remainder(z0: Complex64, gamma0: Complex64, lower: &[Complex64]) -> Result<Complex64> {
    check_point(z0, gamma0)?;
    let n = lower.len() + 1;
    if n == 1 {
        return Ok(ZERO);
    }
    let d = peschl_from_hyperbolic(lower);
    let derivs = ordinary_from_peschl(z0, gamma0, &d)?;
    let w = 1.0 - z0.norm_sqr();
    let v = 1.0 - gamma0.norm_sqr();
    let zb = z0.conj();
    let neg_fb = -gamma0.conj();
    let mut s = ZERO;
    for k in 1..n {
        let a = alpha(n, k)? as f64;
        s += a * zb.powu((n - k) as u32) * w.powi(k as i32) * derivs[k - 1] / v;
    }
    for k in 2..=n {
        s -= factorial(k) * neg_fb.powu((k - 1) as u32) * bell_partial(n, k, &d[..n - k + 1])?;
    }
    Ok(s)
}

/// `Hⁿf = (Dⁿf − n! G_n(H¹f, …, H^{n−1}f)) / (n! ∏_{k<n}(1 − |Hᵏf|²))`.
///
/// `peschl` holds at least `D¹ … Dⁿ` (only `Dⁿ` is read); `lower` holds `H¹ … H^{n−1}`.
pub fn hyperbolic_from_peschl(peschl: &[Complex64], lower: &[Complex64]) -> Result<Complex64> {
    let n = lower.len() + 1;
    if peschl.len() < n {
        return Err(Error::Precondition(format!(
            "need D^{n}f, got {} Peschl derivatives",
            peschl.len()
        )));
    }
    let weight: f64 = lower.iter().map(|h| 1.0 - h.norm_sqr()).product();
    if weight <= crate::UNIT_TOLERANCE {
        let index = lower
            .iter()
            .position(|h| h.norm() >= 1.0 - crate::UNIT_TOLERANCE)
            .map_or(n - 1, |i| i + 1);
        return Err(Error::Degenerate { index });
    }
    let nf = factorial(n);
    Ok((peschl[n - 1] - nf * g_poly(lower)) / (nf * weight))
}

/// `H¹f, …, Hⁿf` from `D¹f, …, Dⁿf`, one order at a time.
pub fn hyperbolic_sequence_from_peschl(peschl: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut h = Vec::with_capacity(peschl.len());
    for m in 1..=peschl.len() {
        let next = hyperbolic_from_peschl(&peschl[..m], &h)?;
        h.push(next);
    }
    Ok(h)
}
