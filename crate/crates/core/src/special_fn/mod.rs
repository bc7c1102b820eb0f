//! Γ, ζ, ξ, the Hermite–Biehler function `E_ξ`, its inner function `Θ_ξ`, and
//! the profile `ω` whose transform is `ξ(1/2 - iz)`.

pub mod gamma;
pub mod hermite;
pub mod omega;
pub mod xi;
pub mod zeta;

pub use gamma::{digamma, log_gamma};
pub use hermite::{e_xi, theta_xi, HermiteBiehler, PolynomialE, XiE};
pub use omega::omega_profile;
pub use xi::{xi, xi_scaled, xi_scaled_line, ScaledXi, XiValue};
pub use zeta::{zeta, zeta_with_derivative};
