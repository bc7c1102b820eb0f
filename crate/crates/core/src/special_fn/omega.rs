use std::f64::consts::PI;

use crate::error::{Result, WeilError};

/// Inputs beyond this are outside the tested range of the series.
pub const OMEGA_RANGE: f64 = 5.0;

/// `ω(x)`, the inverse Fourier transform of `ξ(1/2 - iz)`:
/// `ω(x) = 2 Σ_{n≥1} (2π² n⁴ e^{9x/2} - 3π n² e^{5x/2}) e^{-π n² e^{2x}}`.
///
/// The series cancels badly for very negative `x`, so arguments below `-1/2`
/// are reflected (ω is even).
pub fn omega_profile(x: f64) -> Result<f64> {
    if !(x.abs() <= OMEGA_RANGE) {
        return Err(WeilError::Domain(format!("omega_profile needs |x| <= {OMEGA_RANGE}, got {x}")));
    }
    let x = if x < -0.5 { -x } else { x };
    let e2 = (2.0 * x).exp();
    let a = 2.0 * PI * PI * (4.5 * x).exp();
    let b = 3.0 * PI * (2.5 * x).exp();
    let mut sum = 0.0;
    for n in 1.. {
        let n2 = (n * n) as f64;
        let term = (a * n2 * n2 - b * n2) * (-PI * n2 * e2).exp();
        sum += term;
        if term.abs() < 1e-16 * sum.abs().max(f64::MIN_POSITIVE) || term == 0.0 {
            break;
        }
    }
    Ok(2.0 * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quadrature::GaussLegendre;
    use crate::special_fn::xi::xi;
    use num_complex::Complex64;

    #[test]
    fn even_without_reflection() {
        // both ±0.3 go through the direct series
        let a = omega_profile(0.3).unwrap();
        let b = omega_profile(-0.3).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs());
    }

    #[test]
    fn superexponential_decay() {
        assert!(omega_profile(5.0).unwrap().abs() <= 1e-16);
        assert!(omega_profile(-5.0).unwrap().abs() <= 1e-16);
        assert!(omega_profile(5.5).is_err());
    }

    #[test]
    fn transform_reproduces_xi() {
        let rule = GaussLegendre::cached(32);
        for z in [0.0, 1.0, 2.0] {
            let v = rule.integrate(
                |x| Complex64::new(omega_profile(x).unwrap() * (z * x).cos(), 0.0),
                -5.0,
                5.0,
                40,
            );
            let target = xi(Complex64::new(0.5, -z)).xi;
            assert!((v - target).norm() < 1e-6, "z={z}: {v} vs {target}");
        }
    }
}
