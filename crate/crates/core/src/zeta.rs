//! Generalized zeta functions of finite density-matrix spectra and the entropy
//! read off their derivatives.
//!
//! With `ζ_{ρ^α}(s) = Σ λ^{−αs}`, the identity `(1/α) dζ_{ρ^α}/ds |_{s=−1/α} = −Σ λ ln λ`
//! holds for every `α ≠ 0`. `α = 1` is `ζ_ρ` at `s = −1`; `α = −1` is the inverse
//! zeta function `ζ_{ρ⁻¹}(s) = Σ λ^s` at `s = 1`.

use serde::Serialize;

use crate::density::{Spectrum, ZERO_THRESHOLD};
use crate::error::{Error, Result};

/// Default step of the central-difference cross-check.
pub const DIFF_STEP: f64 = 1e-6;

/// Strictly positive eigenvalues (the `ρ′` restriction).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaSpectrum {
    values: Vec<f64>,
}

impl ZetaSpectrum {
    /// Drops values at or below the zero threshold and validates the rest.
    pub fn new(values: &[f64]) -> Result<Self> {
        let mut kept = Vec::with_capacity(values.len());
        for &v in values {
            if !(-1e-10..=1.0 + 1e-10).contains(&v) {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalue {v} outside [0, 1]"
                )));
            }
            if v > ZERO_THRESHOLD {
                kept.push(v.min(1.0));
            }
        }
        let total: f64 = kept.iter().sum();
        if total > 1.0 + 1e-10 {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvalues sum to {total}"
            )));
        }
        Ok(ZetaSpectrum { values: kept })
    }

    pub fn from_spectrum(s: &Spectrum) -> Result<Self> {
        Self::new(&s.eigenvalues)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `ζ_ρ(s) = Σ λ^{−s}`.
pub fn zeta_rho(spec: &ZetaSpectrum, s: f64) -> f64 {
    spec.values.iter().map(|l| l.powf(-s)).sum()
}

/// `ζ_{ρ⁻¹}(s) = Σ λ^s`, bounded by the number of nonzero eigenvalues for `s > 0`.
pub fn zeta_inverse(spec: &ZetaSpectrum, s: f64) -> f64 {
    spec.values.iter().map(|l| l.powf(s)).sum()
}

/// `ζ_{ρ^α}(s) = Σ λ^{−αs}`.
pub fn zeta_power(spec: &ZetaSpectrum, alpha: f64, s: f64) -> f64 {
    spec.values.iter().map(|l| l.powf(-alpha * s)).sum()
}

/// `dζ_ρ/ds = −Σ λ^{−s} ln λ`.
pub fn zeta_rho_derivative(spec: &ZetaSpectrum, s: f64) -> f64 {
    -spec.values.iter().map(|l| l.powf(-s) * l.ln()).sum::<f64>()
}

/// `dζ_{ρ⁻¹}/ds = Σ λ^s ln λ`.
pub fn zeta_inverse_derivative(spec: &ZetaSpectrum, s: f64) -> f64 {
    spec.values.iter().map(|l| l.powf(s) * l.ln()).sum()
}

/// `dζ_{ρ^α}/ds = −α Σ λ^{−αs} ln λ`.
pub fn zeta_power_derivative(spec: &ZetaSpectrum, alpha: f64, s: f64) -> f64 {
    -alpha
        * spec
            .values
            .iter()
            .map(|l| l.powf(-alpha * s) * l.ln())
            .sum::<f64>()
}

/// `S = dζ_ρ/ds` at `s = −1`.
pub fn entropy_via_zeta_at_minus_one(spec: &ZetaSpectrum) -> f64 {
    zeta_rho_derivative(spec, -1.0)
}

/// `S = −dζ_{ρ⁻¹}/ds` at `s = 1`.
pub fn entropy_via_inverse_zeta_at_one(spec: &ZetaSpectrum) -> f64 {
    -zeta_inverse_derivative(spec, 1.0)
}

/// `S = (1/α) dζ_{ρ^α}/ds` at `s = −1/α`.
pub fn entropy_via_alpha(spec: &ZetaSpectrum, alpha: f64) -> Result<f64> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::ZeroAlpha);
    }
    Ok(zeta_power_derivative(spec, alpha, -1.0 / alpha) / alpha)
}

/// Central-difference version of [`entropy_via_alpha`], for cross-checking only.
pub fn entropy_via_alpha_numeric(spec: &ZetaSpectrum, alpha: f64, step: f64) -> Result<f64> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::ZeroAlpha);
    }
    let s0 = -1.0 / alpha;
    let d =
        (zeta_power(spec, alpha, s0 + step) - zeta_power(spec, alpha, s0 - step)) / (2.0 * step);
    Ok(d / alpha)
}

/// `−Σ λ ln λ`, summed in ascending order (the derivative routes sum in stored order).
pub fn direct_entropy(spec: &ZetaSpectrum) -> f64 {
    let mut v = spec.values.clone();
    v.sort_by(|a, b| a.total_cmp(b));
    -v.iter().map(|l| l * l.ln()).sum::<f64>()
}

/// One row of a zeta table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaSample {
    pub s: f64,
    pub zeta_rho: f64,
    pub zeta_inverse: f64,
}

pub fn zeta_table(spec: &ZetaSpectrum, s_values: &[f64]) -> Vec<ZetaSample> {
    s_values
        .iter()
        .map(|&s| ZetaSample {
            s,
            zeta_rho: zeta_rho(spec, s),
            zeta_inverse: zeta_inverse(spec, s),
        })
        .collect()
}

pub fn zeta_table_csv(rows: &[ZetaSample]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["s", "zeta_rho", "zeta_inverse"])?;
    for r in rows {
        w.write_record([
            r.s.to_string(),
            r.zeta_rho.to_string(),
            r.zeta_inverse.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
