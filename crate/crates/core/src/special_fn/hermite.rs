//! Hermite–Biehler functions `E` with `E♯(z) = conj(E(conj z))` and the inner
//! function `Θ = E♯/E`.

use num_complex::Complex64;

use super::xi::{xi_scaled, xi_scaled_line};
use crate::error::{Result, WeilError};

/// An entire function of Hermite–Biehler class.
pub trait HermiteBiehler: Sync + Send {
    /// `(E(z), E♯(z))` up to one common nonzero factor.
    fn scaled_pair(&self, z: Complex64) -> (Complex64, Complex64);

    /// `E(z)` itself.
    fn e(&self, z: Complex64) -> Complex64;

    /// `E♯(z) = conj(E(conj z))`.
    fn e_sharp(&self, z: Complex64) -> Complex64 {
        self.e(z.conj()).conj()
    }

    /// `Θ(z) = E♯(z)/E(z)`; fails where `E` vanishes.
    fn theta(&self, z: Complex64) -> Result<Complex64> {
        let (e, es) = self.scaled_pair(z);
        if !(e.norm() >= 1e-300) {
            return Err(WeilError::ZeroOfE(z.to_string()));
        }
        Ok(es / e)
    }

    /// `Θ(x0 + k·h)` for `k < count` on the real line.
    fn theta_line(&self, x0: f64, h: f64, count: usize) -> Result<Vec<Complex64>> {
        (0..count).map(|k| self.theta(Complex64::new(x0 + k as f64 * h, 0.0))).collect()
    }

    /// `A(z) = (E(z) + E♯(z))/2`.
    fn a(&self, z: Complex64) -> Complex64 {
        0.5 * (self.e(z) + self.e_sharp(z))
    }
}

/// `E_ξ(z) = ξ(1/2 - iz) + ξ'(1/2 - iz)`.
///
/// With `s = 1/2 - iz` the functional equation gives `E♯(z) = ξ(s) - ξ'(s)`,
/// so `Θ = (ξ - ξ')/(ξ + ξ')` and the gamma-factor scale cancels.
#[derive(Debug, Clone, Copy, Default)]
pub struct XiE;

fn s_of(z: Complex64) -> Complex64 {
    Complex64::new(0.5, 0.0) - Complex64::i() * z
}

impl HermiteBiehler for XiE {
    fn scaled_pair(&self, z: Complex64) -> (Complex64, Complex64) {
        let x = xi_scaled(s_of(z));
        (x.value + x.derivative, x.value - x.derivative)
    }

    fn e(&self, z: Complex64) -> Complex64 {
        let x = xi_scaled(s_of(z));
        x.log_scale.exp() * (x.value + x.derivative)
    }

    fn theta_line(&self, x0: f64, h: f64, count: usize) -> Result<Vec<Complex64>> {
        xi_scaled_line(x0, h, count)
            .into_iter()
            .enumerate()
            .map(|(k, x)| {
                let e = x.value + x.derivative;
                if !(e.norm() >= 1e-300) {
                    return Err(WeilError::ZeroOfE(format!("{}", x0 + k as f64 * h)));
                }
                Ok((x.value - x.derivative) / e)
            })
            .collect()
    }

    fn e_sharp(&self, z: Complex64) -> Complex64 {
        let x = xi_scaled(s_of(z));
        x.log_scale.exp() * (x.value - x.derivative)
    }
}

/// `E_ξ(z)`.
pub fn e_xi(z: Complex64) -> Complex64 {
    XiE.e(z)
}

/// `Θ_ξ(z) = E_ξ♯(z)/E_ξ(z)`.
pub fn theta_xi(z: Complex64) -> Result<Complex64> {
    XiE.theta(z)
}

/// Finite model `E = A + iA'` with `A(z) = Π (1 - z²/γ²)^{m_γ}`.
///
/// `A` is real with only real zeros, so `E` is Hermite–Biehler and its zeros
/// of `A` carry the prescribed multiplicities. Used to exercise formulas that
/// depend on `m_γ` without multiple zeros of ξ.
#[derive(Debug, Clone)]
pub struct PolynomialE {
    zeros: Vec<(f64, u32)>,
}

impl PolynomialE {
    pub fn new(zeros: Vec<(f64, u32)>) -> Result<Self> {
        for &(g, m) in &zeros {
            if !(g.is_finite() && g > 0.0) || m == 0 {
                return Err(WeilError::Domain(format!(
                    "polynomial model needs positive ordinates and multiplicities, got ({g}, {m})"
                )));
            }
        }
        Ok(Self { zeros })
    }

    /// `(A(z), A'(z))`.
    pub fn a_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &(g, m) in &self.zeros {
            let f = 1.0 - z * z / (g * g);
            let df = -2.0 * z / (g * g);
            let mut fm = Complex64::new(1.0, 0.0);
            for _ in 1..m {
                fm *= f;
            }
            let dfm = m as f64 * fm * df; // (f^m)' = m f^{m-1} f'
            let fm = fm * f;
            dp = dp * fm + p * dfm;
            p *= fm;
        }
        (p, dp)
    }
}

impl HermiteBiehler for PolynomialE {
    fn scaled_pair(&self, z: Complex64) -> (Complex64, Complex64) {
        let (a, da) = self.a_with_derivative(z);
        let i = Complex64::i();
        (a + i * da, a - i * da)
    }

    fn e(&self, z: Complex64) -> Complex64 {
        self.scaled_pair(z).0
    }
}
