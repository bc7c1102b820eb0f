//! Numerical objects around the Weil hermitian form of the Riemann zeta zeros.
//!
//! * [`special_fn`]: Γ, ζ, ξ, the Hermite–Biehler function `E(z) = ξ(1/2-iz) + ξ'(1/2-iz)`
//!   and its inner function `Θ = E♯/E`.
//! * [`zero_catalog`]: zero ordinates by root finding or from text tables.
//! * [`weil_form`]: the Weil pairing, the screw function and its kernel.
//! * [`debranges`]: the orthonormal basis `F_γ`, its time-domain profiles `ψ_γ`,
//!   the involution `K` and `V(t)` diagnostics.
//! * [`hilbert_polya`]: self-adjoint extensions `M_θ` and the `L_W` decomposition.

pub mod debranges;
pub mod error;
pub mod exec;
pub mod hilbert_polya;
pub mod numerics;
pub mod report;
pub mod special_fn;
pub mod suites;
pub mod weil_form;
pub mod zero_catalog;

pub use error::{Result, WeilError};
pub use exec::Exec;
