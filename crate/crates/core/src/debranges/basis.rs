use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WeilError};
use crate::numerics::QuadratureResult;
use crate::special_fn::{HermiteBiehler, XiE};
use crate::weil_form::Transformable;
use crate::zero_catalog::ZeroSet;

/// Steps of the Richardson pair for `Θ'`.
pub const THETA_PRIME_STEPS: (f64, f64) = (1e-4, 5e-5);
/// Distance from `γ` below which `F_γ` switches to its limit value.
pub const LIMIT_RADIUS: f64 = 1e-6;
/// Catalog lookup tolerance for basis ordinates.
pub const CATALOG_TOL: f64 = 1e-6;

/// Central difference estimates of `Θ'(x)` and their Richardson combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaPrime {
    pub value: Complex64,
    pub coarse: Complex64,
    pub fine: Complex64,
}

impl ThetaPrime {
    /// Disagreement of the two raw differences, an upper bound on the error of `value`.
    pub fn spread(&self) -> f64 {
        (self.coarse - self.fine).norm()
    }
}

/// `Θ'(x)` by central differences at `h = 1e-4` and `5e-5` with one
/// Richardson step.
pub fn theta_prime_at<E: HermiteBiehler + ?Sized>(e: &E, x: f64) -> Result<ThetaPrime> {
    let diff = |h: f64| -> Result<Complex64> {
        let up = e.theta(Complex64::new(x + h, 0.0))?;
        let down = e.theta(Complex64::new(x - h, 0.0))?;
        Ok((up - down) / (2.0 * h))
    };
    let (h1, h2) = THETA_PRIME_STEPS;
    let coarse = diff(h1)?;
    let fine = diff(h2)?;
    Ok(ThetaPrime {
        value: (4.0 * fine - coarse) / 3.0,
        coarse,
        fine,
    })
}

/// `Θ_ξ'(γ)`.
pub fn theta_prime_at_zero(gamma: f64) -> Result<ThetaPrime> {
    theta_prime_at(&XiE, gamma)
}

/// `F_γ(z) = √(m_γ/π) (1 + Θ(z)) / (2(z - γ))`.
#[derive(Debug, Clone)]
pub struct BasisFunction<E = XiE> {
    e: E,
    gamma: f64,
    m_gamma: u32,
    normalization: f64,
    at_gamma: Complex64,
}

impl BasisFunction<XiE> {
    /// Basis function of `Θ_ξ` at a catalog ordinate (either sign).
    pub fn new(gamma: f64, zs: &ZeroSet) -> Result<Self> {
        Self::with_e(XiE, gamma, zs)
    }
}

impl<E: HermiteBiehler> BasisFunction<E> {
    pub fn with_e(e: E, gamma: f64, zs: &ZeroSet) -> Result<Self> {
        let m_gamma = zs.multiplicity_of(gamma, CATALOG_TOL)?;
        let normalization = (m_gamma as f64 / PI).sqrt();
        let at_gamma = normalization * theta_prime_at(&e, gamma)?.value / 2.0;
        Ok(Self {
            e,
            gamma,
            m_gamma,
            normalization,
            at_gamma,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn m_gamma(&self) -> u32 {
        self.m_gamma
    }

    /// `√(m_γ/π)`.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn hermite_biehler(&self) -> &E {
        &self.e
    }

    /// `F_γ(z)`; the limit `√(m_γ/π) Θ'(γ)/2` near `γ`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let d = z - self.gamma;
        if d.norm() < LIMIT_RADIUS {
            return Ok(self.at_gamma);
        }
        let theta = match self.e.theta(z) {
            Ok(t) => t,
            // a real zero of E: Θ extends continuously across it
            Err(WeilError::ZeroOfE(_)) if z.im == 0.0 => {
                let h = Complex64::new(LIMIT_RADIUS, 0.0);
                0.5 * (self.e.theta(z + h)? + self.e.theta(z - h)?)
            }
            Err(e) => return Err(e),
        };
        Ok(self.from_theta(theta, z))
    }

    /// `F_γ(z)` from a known `Θ(z)`.
    pub fn from_theta(&self, theta: Complex64, z: Complex64) -> Complex64 {
        let d = z - self.gamma;
        if d.norm() < LIMIT_RADIUS {
            return self.at_gamma;
        }
        self.normalization * (1.0 + theta) / (2.0 * d)
    }
}

/// `F_γ` is the transform of `ψ_γ`, so it pairs directly in the Weil form.
impl<E: HermiteBiehler> Transformable for BasisFunction<E> {
    fn transform(&self, z: Complex64) -> Result<QuadratureResult> {
        let v = self.eval(z)?;
        let d = (z - self.gamma).norm().max(LIMIT_RADIUS);
        // rounding of 1 + Θ relative to the distance from γ
        let err = 4.0 * f64::EPSILON * self.normalization / d + 1e-9 * v.norm() * (d < 1e-3) as u8 as f64;
        Ok(QuadratureResult::new(v, err))
    }
}

/// Both sides of the restriction isometry for `F_γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryCheck {
    pub gamma: f64,
    /// `‖F_γ‖²` on the real line (grid value).
    pub lhs: f64,
    /// `Σ_{γ'} |F_γ(γ')|² π m_{γ'}` over the symmetric catalog.
    pub rhs: f64,
}

/// `Σ_{γ'} |F_γ(γ')|² · 2π/|Θ'(γ')|` with `2π/|Θ'(γ')| = π m_{γ'}`.
pub fn restriction_rhs<E: HermiteBiehler>(basis: &BasisFunction<E>, zs: &ZeroSet) -> Result<f64> {
    let mut rhs = 0.0;
    for (g, m) in crate::zero_catalog::iterate_symmetric(zs) {
        let v = basis.eval(Complex64::new(g, 0.0))?;
        rhs += v.norm_sqr() * PI * m as f64;
    }
    Ok(rhs)
}
