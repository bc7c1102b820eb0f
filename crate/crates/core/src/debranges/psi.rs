use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::basis::{restriction_rhs, BasisFunction, IsometryCheck};
use super::theta_table::{frequency_grid, KOperator, ThetaTable};
use crate::error::{Result, WeilError};
use crate::exec::Exec;
use crate::numerics::{inverse_fourier_grid, Domain, Grid, GridFunction};
use crate::special_fn::{xi_scaled, HermiteBiehler};
use crate::zero_catalog::ZeroSet;

/// Smallest frequency cut-off accepted for `ψ_γ`.
pub const MIN_CUTOFF: f64 = 500.0;

/// `ψ_γ` on a time grid with its `L²` truncation bound.
#[derive(Debug, Clone)]
pub struct PsiGamma {
    pub gamma: f64,
    pub z_cut: f64,
    pub function: GridFunction,
    /// `2/(π(Z - |γ|))`, the mass of `|F_γ|²/(2π)` outside `[-Z, Z]`.
    pub tail_bound: f64,
}

/// `F_γ` sampled on the grid of `table`.
pub fn sample_basis<E: HermiteBiehler>(basis: &BasisFunction<E>, table: &ThetaTable) -> Result<GridFunction> {
    let grid = *table.grid();
    let values = table
        .values()
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let x = grid.node(k);
            basis.from_theta(t, Complex64::new(x, 0.0))
        })
        .collect();
    GridFunction::new(grid, values, Domain::Frequency)
}

/// Inverse transform of `Σ c_γ F_γ` from a shared `Θ` table onto `out`.
pub fn inverse_of_combination<E: HermiteBiehler>(
    terms: &[(Complex64, &BasisFunction<E>)],
    table: &ThetaTable,
    out: &Grid,
) -> Result<GridFunction> {
    let grid = *table.grid();
    let theta = table.values();
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    Exec::default().fill(&mut values, |k| {
        let z = Complex64::new(grid.node(k), 0.0);
        terms.iter().map(|(c, b)| c * b.from_theta(theta[k], z)).sum()
    });
    let spec = GridFunction::new(grid, values, Domain::Frequency)?;
    inverse_fourier_grid(&spec, out)
}

/// `ψ_γ` from a precomputed table on `[-Z, Z]`.
pub fn psi_gamma_with<E: HermiteBiehler>(basis: &BasisFunction<E>, table: &ThetaTable, out: &Grid) -> Result<PsiGamma> {
    let z_cut = table.grid().x_max();
    if z_cut < MIN_CUTOFF {
        return Err(WeilError::Domain(format!("psi_gamma needs Z >= {MIN_CUTOFF}, got {z_cut}")));
    }
    let function = inverse_of_combination(&[(Complex64::new(1.0, 0.0), basis)], table, out)?;
    Ok(PsiGamma {
        gamma: basis.gamma(),
        z_cut,
        function,
        tail_bound: 2.0 / (PI * (z_cut - basis.gamma().abs())),
    })
}

/// `ψ_γ = F⁻¹(F_γ · 1_{[-Z,Z]})` on `out`.
pub fn psi_gamma(gamma: f64, zs: &ZeroSet, z_cut: f64, out: &Grid) -> Result<PsiGamma> {
    let basis = BasisFunction::new(gamma, zs)?;
    let table = ThetaTable::xi(frequency_grid(z_cut, out)?, Exec::default())?;
    psi_gamma_with(&basis, &table, out)
}

/// Continuous diagnostics for membership in `V(t) = L²(t,∞) ∩ K L²(t,∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub t: f64,
    /// `‖ψ · 1_{(-∞,t)}‖²`.
    pub negative_mass: f64,
    /// `‖Kψ · 1_{(-∞,t)}‖²`.
    pub k_negative_mass: f64,
    /// `‖Kψ - ψ‖`.
    pub k_residual: f64,
    /// `‖ψ‖²`, the scale the masses are read against.
    pub verdict_threshold: f64,
}

impl MembershipReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct")
    }
}

/// Required grid coverage to the left of `t`.
pub const MEMBERSHIP_MARGIN: f64 = 1.0;

pub fn v_membership(psi: &GridFunction, t: f64, k: &KOperator) -> Result<MembershipReport> {
    if psi.domain() != Domain::Time {
        return Err(WeilError::GridMismatch("membership needs a time-domain function".into()));
    }
    let g = psi.grid();
    if g.x_min() > t - MEMBERSHIP_MARGIN || g.x_max() <= t {
        return Err(WeilError::InvalidGrid(format!(
            "grid [{}, {}] must cover [{}, {}]",
            g.x_min(),
            g.x_max(),
            t - MEMBERSHIP_MARGIN,
            t
        )));
    }
    let kpsi = k.apply(psi)?;
    Ok(MembershipReport {
        t,
        negative_mass: psi.mass_below(t),
        k_negative_mass: kpsi.mass_below(t),
        k_residual: kpsi.sub(psi)?.norm(),
        verdict_threshold: psi.norm_sq(),
    })
}

/// `‖F/E‖_{L²}` on a frequency grid, dividing in log scale so that
/// `E` need not be representable.
pub fn debranges_norm(f: &GridFunction) -> Result<f64> {
    if f.domain() != Domain::Frequency {
        return Err(WeilError::GridMismatch("de Branges norm needs frequency samples".into()));
    }
    let g = f.grid();
    let mut acc = 0.0;
    for (k, &v) in f.values().iter().enumerate() {
        if v == Complex64::new(0.0, 0.0) {
            continue;
        }
        let x = g.node(k);
        let s = xi_scaled(Complex64::new(0.5, -x));
        let e = s.value + s.derivative;
        if !(e.norm() >= 1e-300) {
            return Err(WeilError::ZeroOfE(format!("{x}")));
        }
        let ratio = (v.ln() - s.log_scale).exp() / e;
        acc += ratio.norm_sqr() * g.trapezoid_weight(k);
    }
    Ok(acc.sqrt())
}

/// `‖F_γ‖²` on the table grid against `Σ_{γ'} |F_γ(γ')|² π m_{γ'}`.
pub fn restriction_isometry_check<E: HermiteBiehler>(
    basis: &BasisFunction<E>,
    zs: &ZeroSet,
    table: &ThetaTable,
) -> Result<IsometryCheck> {
    let lhs = sample_basis(basis, table)?.norm_sq();
    let rhs = restriction_rhs(basis, zs)?;
    Ok(IsometryCheck {
        gamma: basis.gamma(),
        lhs,
        rhs,
    })
}
