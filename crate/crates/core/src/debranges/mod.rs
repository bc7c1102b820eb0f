//! Model-space side: the basis `F_γ` of `K(Θ_ξ)`, time-domain `ψ_γ`, the
//! involution `K`, membership diagnostics for `V(t)`, the de Branges norm and
//! the restriction isometry onto `{Θ = -1}`.

mod basis;
mod psi;
mod theta_table;

pub use basis::{
    restriction_rhs, theta_prime_at, theta_prime_at_zero, BasisFunction, IsometryCheck, ThetaPrime,
    CATALOG_TOL, LIMIT_RADIUS, THETA_PRIME_STEPS,
};
pub use psi::{
    debranges_norm, inverse_of_combination, psi_gamma, psi_gamma_with, restriction_isometry_check, sample_basis,
    v_membership, MembershipReport, PsiGamma, MEMBERSHIP_MARGIN, MIN_CUTOFF,
};
pub use theta_table::{frequency_grid, frequency_step, time_grid, KOperator, ThetaTable};
