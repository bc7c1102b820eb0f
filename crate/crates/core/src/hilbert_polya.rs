//! Self-adjoint extensions `M_θ` of multiplication by `z` on `H(E)`, their
//! eigenfunctions at the zeros, spectral coordinates, and the splitting of a
//! time function into its `V(0)` part and a part invisible to the Weil form.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::debranges::{inverse_of_combination, BasisFunction, ThetaTable};
use crate::error::{Result, WeilError};
use crate::exec::Exec;
use crate::numerics::{Domain, GridFunction};
use crate::special_fn::{HermiteBiehler, XiE};
use crate::weil_form::{transform_at_zeros, SpectralCoefficients, Transformable};
use crate::zero_catalog::{iterate_symmetric, ZeroSet};

/// `θ ∈ [0, π)` and a base point `w0` with `S_θ(w0) ≠ 0`.
#[derive(Debug, Clone)]
pub struct ExtensionParams<E = XiE> {
    e: E,
    theta: f64,
    w0: Complex64,
    s_w0: Complex64,
}

impl ExtensionParams<XiE> {
    /// `E = E_ξ` with `w0 = i`.
    pub fn xi(theta: f64) -> Result<Self> {
        Self::new(XiE, theta, Complex64::i())
    }
}

impl<E: HermiteBiehler> ExtensionParams<E> {
    pub fn new(e: E, theta: f64, w0: Complex64) -> Result<Self> {
        if !(0.0..PI).contains(&theta) {
            return Err(WeilError::Domain(format!("theta must lie in [0, π), got {theta}")));
        }
        let s_w0 = s_theta_raw(&e, theta, w0);
        if !(s_w0.norm() > 1e-300) {
            return Err(WeilError::Domain(format!("S_theta vanishes at w0 = {w0}")));
        }
        Ok(Self { e, theta, w0, s_w0 })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn w0(&self) -> Complex64 {
        self.w0
    }
}

fn s_theta_raw<E: HermiteBiehler + ?Sized>(e: &E, theta: f64, z: Complex64) -> Complex64 {
    let i = Complex64::i();
    0.5 * i * (Complex64::cis(theta) * e.e(z) - Complex64::cis(-theta) * e.e_sharp(z))
}

/// `S_θ(z) = (i/2)(e^{iθ}E(z) - e^{-iθ}E♯(z))`.
pub fn s_theta<E: HermiteBiehler>(p: &ExtensionParams<E>, z: Complex64) -> Complex64 {
    s_theta_raw(&p.e, p.theta, z)
}

/// `(G(z), M_θG(z))` with `G = (S_θ(w0)F(z) - S_θ(z)F(w0))/(z - w0)` and
/// `M_θG(z) = zG(z) + F(w0)S_θ(z)`. At `z = w0` the quotient is replaced by
/// its derivative limit.
pub fn m_theta_apply<E, F>(p: &ExtensionParams<E>, f: F, z: Complex64) -> Result<(Complex64, Complex64)>
where
    E: HermiteBiehler,
    F: Fn(Complex64) -> Result<Complex64>,
{
    let f_w0 = f(p.w0)?;
    let s_z = s_theta(p, z);
    let g = if (z - p.w0).norm() < 1e-7 {
        let h = 1e-4;
        let df = (f(p.w0 + h)? - f(p.w0 - h)?) / (2.0 * h);
        let ds = (s_theta(p, p.w0 + h) - s_theta(p, p.w0 - h)) / (2.0 * h);
        p.s_w0 * df - ds * f_w0
    } else {
        (p.s_w0 * f(z)? - s_z * f_w0) / (z - p.w0)
    };
    Ok((g, z * g + f_w0 * s_z))
}

/// Result of the eigenfunction check at one ordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub gamma: f64,
    /// `max |M_θG(z) - γG(z)|` over the samples.
    pub residual: f64,
    /// `max |G(z)|` over the samples.
    pub max_g: f64,
    pub samples: usize,
}

impl EigenReport {
    pub fn relative(&self) -> f64 {
        self.residual / self.max_g
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct")
    }
}

/// `max_z |M_θG(z) - γG(z)|` for the candidate eigenfunction attached to `γ`.
///
/// The seed is `F(z) = κ (S_θ(z) - S_θ(γ))/(z - γ)` with
/// `κ = (γ - w0)/S_θ(w0)`; it is entire for any `γ` and reduces to
/// `(S_θ(z)/S_θ(w0))(γ - w0)/(z - γ)` when `S_θ(γ) = 0`, in which case
/// `G = S_θ(z)/(z - γ)` is an eigenfunction. Otherwise the residual is
/// `S_θ(γ)(γ - w0)(S_θ(z) - S_θ(w0))/(S_θ(w0)(z - w0))`.
pub fn eigen_residual<E: HermiteBiehler>(p: &ExtensionParams<E>, gamma: f64, samples: &[Complex64]) -> Result<EigenReport> {
    let g0 = Complex64::new(gamma, 0.0);
    for &z in samples {
        if (z - g0).norm() < 1e-9 || (z - p.w0).norm() < 1e-9 {
            return Err(WeilError::Domain(format!("sample {z} coincides with gamma or w0")));
        }
    }
    let kappa = (g0 - p.w0) / p.s_w0;
    let s_gamma = s_theta(p, g0);
    let seed = |z: Complex64| -> Result<Complex64> { Ok(kappa * (s_theta(p, z) - s_gamma) / (z - g0)) };
    let rows = Exec::default().map_slice(samples, |&z| -> Result<(f64, f64)> {
        let (g, mg) = m_theta_apply(p, seed, z)?;
        Ok(((mg - gamma * g).norm(), g.norm()))
    });
    let mut residual: f64 = 0.0;
    let mut max_g: f64 = 0.0;
    for r in rows {
        let (res, g) = r?;
        residual = residual.max(res);
        max_g = max_g.max(g);
    }
    Ok(EigenReport {
        gamma,
        residual,
        max_g,
        samples: samples.len(),
    })
}

/// `S_ψ = (ψ^(γ))` over the symmetric iteration of the catalog.
pub fn spectral_coeffs<A: Transformable + ?Sized>(psi: &A, zs: &ZeroSet) -> Result<SpectralCoefficients> {
    transform_at_zeros(psi, zs)
}

/// `ψ = ψ0 + ψ1` with `ψ1 = Σ i S_γ √(m_γ π) ψ_γ ∈ V(0)`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub psi0: GridFunction,
    pub psi1: GridFunction,
    pub coefficients: SpectralCoefficients,
}

/// Split a time function on the catalog; `table` fixes the cut-off `Z` used
/// for every `ψ_γ`.
pub fn decompose_lw(psi: &GridFunction, zs: &ZeroSet, table: &ThetaTable) -> Result<Decomposition> {
    if psi.domain() != Domain::Time {
        return Err(WeilError::GridMismatch("decomposition needs a time-domain function".into()));
    }
    let coefficients = spectral_coeffs(psi, zs)?;
    let sym = iterate_symmetric(zs);
    let bases = sym
        .iter()
        .map(|&(g, _)| BasisFunction::new(g, zs))
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<(Complex64, &BasisFunction)> = bases
        .iter()
        .zip(&coefficients.entries)
        .zip(&sym)
        .map(|((b, s), &(_, m))| (Complex64::i() * s * (m as f64 * PI).sqrt(), b))
        .collect();
    let psi1 = inverse_of_combination(&terms, table, psi.grid())?;
    let psi0 = psi.sub(&psi1)?;
    Ok(Decomposition {
        psi0,
        psi1,
        coefficients,
    })
}

/// Largest `|(iψ')^(z) - z ψ^(z)| / (|z ψ^(z)| + scale)` over `points`, with
/// `ψ'` from central differences on the grid: the time-domain form of
/// multiplication by `z`.
pub fn multiplication_spot_check(psi: &GridFunction, points: &[f64]) -> Result<f64> {
    if psi.domain() != Domain::Time {
        return Err(WeilError::GridMismatch("spot check needs a time-domain function".into()));
    }
    let g = psi.grid();
    let v = psi.values();
    let n = v.len();
    let h = g.spacing();
    let dv: Vec<Complex64> = (0..n)
        .map(|k| {
            let d = if k == 0 {
                (v[1] - v[0]) / h
            } else if k + 1 == n {
                (v[n - 1] - v[n - 2]) / h
            } else {
                (v[k + 1] - v[k - 1]) / (2.0 * h)
            };
            Complex64::i() * d
        })
        .collect();
    let dpsi = GridFunction::new(*g, dv, Domain::Time)?;
    let scale = psi.norm() * g.spacing().sqrt();
    let mut worst: f64 = 0.0;
    for &x in points {
        let z = Complex64::new(x, 0.0);
        let lhs = dpsi.transform(z)?.value;
        let rhs = z * psi.transform(z)?.value;
        worst = worst.max((lhs - rhs).norm() / (rhs.norm() + scale));
    }
    Ok(worst)
}

/// `⟨(1+Θ)/(2(x-γ_i)), (1+Θ)/(2(x-γ_j))⟩` on the table grid: the eigenfunctions
/// `S_{π/2}(z)/(z-γ)` divided by `E`.
pub fn eigenbasis_gram(gammas: &[f64], table: &ThetaTable) -> Vec<Vec<Complex64>> {
    let grid = table.grid();
    let columns: Vec<Vec<Complex64>> = gammas
        .iter()
        .map(|&g| {
            table
                .values()
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    let d = grid.node(k) - g;
                    if d.abs() < 1e-9 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        (1.0 + t) / (2.0 * d)
                    }
                })
                .collect()
        })
        .collect();
    columns
        .iter()
        .map(|a| {
            columns
                .iter()
                .map(|b| {
                    a.iter()
                        .zip(b)
                        .enumerate()
                        .map(|(k, (x, y))| x * y.conj() * grid.trapezoid_weight(k))
                        .sum()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::debranges::{frequency_grid, time_grid};
    use crate::numerics::Grid;
    use crate::special_fn::xi;
    use crate::weil_form::TestFunction;
    use crate::zero_catalog::ZeroSource;
    use crate::numerics::CompactFunction;

    const G1: f64 = 14.134_725_141_734_693;
    const G2: f64 = 21.022_039_638_771_555;

    fn samples(gamma: f64) -> Vec<Complex64> {
        (0..20)
            .map(|k| {
                let a = 0.7 + 0.31 * k as f64;
                Complex64::new(gamma, 0.0) + Complex64::from_polar(0.5 + 0.2 * k as f64, a)
            })
            .collect()
    }

    #[test]
    fn s_half_pi_is_minus_a() {
        let p = ExtensionParams::xi(PI / 2.0).unwrap();
        let z = Complex64::new(3.0, 0.0);
        let target = -xi(Complex64::new(0.5, -3.0)).xi;
        assert!((s_theta(&p, z) - target).norm() < 1e-12);
        assert!(s_theta(&p, Complex64::new(G1, 0.0)).norm() < 1e-8);
        for th in [0.0, 0.4, 2.9] {
            let q = ExtensionParams::xi(th).unwrap();
            let v = s_theta(&q, Complex64::new(7.3, 0.0));
            assert!(v.im.abs() <= 1e-12 * v.norm().max(1.0));
        }
        assert!(ExtensionParams::xi(PI).is_err());
    }

    #[test]
    fn pure_multiplication_when_f_vanishes_at_w0() {
        let p = ExtensionParams::xi(PI / 2.0).unwrap();
        let w0 = p.w0();
        let f = |z: Complex64| -> Result<Complex64> { Ok((z - w0) * (z * 0.1).exp()) };
        let z = Complex64::new(2.0, 0.5);
        let (g, mg) = m_theta_apply(&p, f, z).unwrap();
        assert!((g - p.s_w0 * f(z).unwrap() / (z - w0)).norm() < 1e-12 * g.norm());
        assert!((mg - z * g).norm() < 1e-12 * mg.norm());
        // linearity in F
        let f2 = |z: Complex64| -> Result<Complex64> { Ok(z * z + 1.0) };
        let sum = |z: Complex64| -> Result<Complex64> { Ok(f(z)? + 2.0 * f2(z)?) };
        let (a, ma) = m_theta_apply(&p, f, z).unwrap();
        let (b, mb) = m_theta_apply(&p, f2, z).unwrap();
        let (c, mc) = m_theta_apply(&p, sum, z).unwrap();
        assert!((c - a - 2.0 * b).norm() < 1e-12 * c.norm());
        assert!((mc - ma - 2.0 * mb).norm() < 1e-12 * mc.norm());
    }

    #[test]
    fn eigen_residual_detects_zeros() {
        let p = ExtensionParams::xi(PI / 2.0).unwrap();
        for g in [G1, G2] {
            let r = eigen_residual(&p, g, &samples(g)).unwrap();
            assert!(r.relative() <= 1e-7, "{r:?}");
            let off = eigen_residual(&p, g + 0.1, &samples(g + 0.1)).unwrap();
            assert!(off.relative() >= 1e-2, "{off:?}");
        }
        assert!(eigen_residual(&p, G1, &[Complex64::new(G1, 0.0)]).is_err());
    }

    #[test]
    fn derivative_is_multiplication() {
        let g = Grid::new(-2.0, 2.0, 4001).unwrap();
        let b = TestFunction::bump(0.1, 1.2).unwrap();
        let psi = GridFunction::sample(g, Domain::Time, |x| b.eval(x)).unwrap();
        assert!(multiplication_spot_check(&psi, &[0.5, 3.0, 10.0]).unwrap() < 1e-4);
    }

    #[test]
    fn decomposition_of_basis_function() {
        let zs = ZeroSet::simple(vec![G1, G2], 22.0, ZeroSource::Table).unwrap();
        let out = time_grid(600.0, -4.0, 24.0).unwrap();
        let table = ThetaTable::xi(frequency_grid(600.0, &out).unwrap(), Exec::default()).unwrap();
        let b = BasisFunction::new(G1, &zs).unwrap();
        let psi = crate::debranges::psi_gamma_with(&b, &table, &out).unwrap().function;
        let d = decompose_lw(&psi, &zs, &table).unwrap();
        assert!(d.psi0.norm() <= 1e-3 * psi.norm(), "{}", d.psi0.norm());
        let s = spectral_coeffs(&d.psi0, &zs).unwrap();
        assert!(s.max_abs() < 1e-5);
    }

    #[test]
    fn eigenbasis_is_orthogonal() {
        let table = ThetaTable::xi(Grid::symmetric(400.0, 0.05).unwrap(), Exec::default()).unwrap();
        let m = eigenbasis_gram(&[G1, G2], &table);
        let diag = m[0][0].norm();
        assert!(m[0][1].norm() < 1e-2 * diag, "{:?}", m);
    }
}
