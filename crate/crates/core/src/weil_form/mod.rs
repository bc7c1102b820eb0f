//! The Weil hermitian form over a zero catalog, the screw function
//! `g(t) = Σ m_γ (e^{iγt} - 1)/γ²` with its kernel and form, and the
//! spectral `L²(τ)` coordinates.

mod pairing;
mod screw;
mod test_function;
mod witness;

pub use pairing::{tau_norm, transform_at_zeros, weil_pairing, weil_pairing_points, FormValue, SpectralCoefficients};
pub use screw::{
    gram_matrix, hermitian_min_eigenvalue, screw_form, screw_form_spectral, screw_g, screw_g_literal, screw_g_value,
    screw_kernel,
};
pub use test_function::{
    antiderivative, random_bump, random_combination, random_mean_zero, TestFunction, Transformable,
};
pub use witness::{interpolation_witness, WitnessReport, WITNESS_TOL};
