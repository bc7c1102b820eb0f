use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::{digamma, log_gamma};
use super::zeta::{euler_maclaurin, euler_maclaurin_line, EulerMaclaurin};

/// Validated strip for ξ: `|Im s| ≤ 120`, `|Re s| ≤ 10`.
pub const VALIDATED_IM: f64 = 120.0;
pub const VALIDATED_RE: f64 = 10.0;

/// ξ and ξ' at a point, with a joint relative error estimate
/// `‖err‖ / (|ξ| + |ξ'|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiValue {
    pub xi: Complex64,
    pub xi_prime: Complex64,
    pub rel_error: f64,
}

/// `(ξ(s), ξ'(s)) = exp(log_scale) · (value, derivative)`.
///
/// The scale factor is `exp(Q(u))` with `u` the reflection of `s` into
/// `Re u ≥ 1/2`; ratios such as `Θ` never need it, which keeps them usable
/// far beyond the range where ξ itself underflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledXi {
    pub log_scale: Complex64,
    pub value: Complex64,
    pub derivative: Complex64,
    pub rel_error: f64,
}

impl ScaledXi {
    pub fn unscaled(&self) -> XiValue {
        let f = self.log_scale.exp();
        XiValue {
            xi: f * self.value,
            xi_prime: f * self.derivative,
            rel_error: self.rel_error,
        }
    }
}

/// Scaled evaluation of ξ and ξ' through `ξ(u) = e^{Q(u)} (u-1)ζ(u)`,
/// `Q(u) = log(u/2) - (u/2) log π + log Γ(u/2)`, and `ξ(s) = ξ(1-s)`.
pub fn xi_scaled(s: Complex64) -> ScaledXi {
    let (u, sign) = if s.re >= 0.5 { (s, 1.0) } else { (1.0 - s, -1.0) };
    assemble(s, u, sign, euler_maclaurin(u))
}

/// [`xi_scaled`] at `s_k = 1/2 - i(x0 + k·h)`, sharing the direct sum along the line.
pub fn xi_scaled_line(x0: f64, h: f64, count: usize) -> Vec<ScaledXi> {
    euler_maclaurin_line(x0, h, count)
        .into_iter()
        .enumerate()
        .map(|(k, em)| {
            let s = Complex64::new(0.5, -(x0 + k as f64 * h));
            assemble(s, s, 1.0, em)
        })
        .collect()
}

fn assemble(s: Complex64, u: Complex64, sign: f64, em: EulerMaclaurin) -> ScaledXi {
    let um1 = u - 1.0;
    let z1 = um1 * em.r + em.w;
    let dz1 = em.r + um1 * em.dr + em.dw;
    let half = 0.5 * u;
    // Re u ≥ 1/2 keeps u/2 away from the poles of Γ and ψ.
    let lg = log_gamma(half).expect("Re u/2 >= 1/4");
    let psi = digamma(half).expect("Re u/2 >= 1/4");
    let q = (0.5 * u).ln() - half * PI.ln() + lg;
    let dq = 1.0 / u - 0.5 * PI.ln() + 0.5 * psi;
    let derivative = sign * (dq * z1 + dz1);

    let t = u.im.abs();
    let phase_growth = 1.0 + t * (2.0 + em.magnitude).ln();
    let mut rel = 8.0 * f64::EPSILON * phase_growth * (1.0 + um1.norm()) * (1.0 + em.magnitude) * (1.0 + dq.norm())
        / (z1.norm() + derivative.norm()).max(f64::MIN_POSITIVE)
        + 4.0 * f64::EPSILON * q.norm();
    if s.im.abs() > VALIDATED_IM || s.re.abs() > VALIDATED_RE {
        rel *= 10.0;
    }
    ScaledXi {
        log_scale: q,
        value: z1,
        derivative,
        rel_error: rel,
    }
}

/// `ξ(s) = ½ s(s-1) π^{-s/2} Γ(s/2) ζ(s)` and `ξ'(s)`.
pub fn xi(s: Complex64) -> XiValue {
    xi_scaled(s).unscaled()
}
