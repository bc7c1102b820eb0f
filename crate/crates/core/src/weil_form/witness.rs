use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::test_function::Transformable;
use crate::debranges::{psi_gamma_with, BasisFunction, ThetaTable};
use crate::error::Result;
use crate::numerics::{Grid, GridFunction};
use crate::zero_catalog::{iterate_symmetric, ZeroSet};

/// Tolerance on `ψ^(γ) = 1` and on the vanishing at other zeros.
pub const WITNESS_TOL: f64 = 1e-6;

/// Outcome of the interpolation witness at one zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub gamma: f64,
    /// `|ψ^(γ) - 1|`.
    pub value_error: f64,
    /// `max_{γ'≠γ} |ψ^(γ')|`.
    pub max_other: f64,
    /// `max_{γ'≠γ} |ψ^(γ')| |γ - γ'|^{1+δ} / ε`; at most 1 when the bound holds.
    pub worst_bound_ratio: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub pass: bool,
}

/// `ψ = i√(m_γ π) ψ_γ`, so that `ψ^(γ) = 1` and `ψ^(γ') = 0` at the other zeros,
/// checked against `|ψ^(γ')| ≤ ε / |γ - γ'|^{1+δ}`.
pub fn interpolation_witness(
    gamma: f64,
    zs: &ZeroSet,
    table: &ThetaTable,
    out: &Grid,
    epsilon: f64,
    delta: f64,
) -> Result<(GridFunction, WitnessReport)> {
    let basis = BasisFunction::new(gamma, zs)?;
    let c = Complex64::new(0.0, (basis.m_gamma() as f64 * PI).sqrt());
    let psi = psi_gamma_with(&basis, table, out)?.function.scale(c);
    let value_error = (psi.transform(Complex64::new(gamma, 0.0))?.value - 1.0).norm();
    let mut max_other: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for (g, _) in iterate_symmetric(zs) {
        if (g - gamma).abs() < crate::debranges::CATALOG_TOL {
            continue;
        }
        let v = psi.transform(Complex64::new(g, 0.0))?.value.norm();
        max_other = max_other.max(v);
        worst = worst.max(v * (g - gamma).abs().powf(1.0 + delta) / epsilon);
    }
    let pass = value_error <= WITNESS_TOL && max_other <= WITNESS_TOL && worst <= 1.0;
    Ok((
        psi,
        WitnessReport {
            gamma,
            value_error,
            max_other,
            worst_bound_ratio: worst,
            epsilon,
            delta,
            pass,
        },
    ))
}
