//! Grids, Gauss–Legendre quadrature and Fourier transforms.

pub mod fourier;
pub mod grid;
pub mod quadrature;

pub use fourier::{
    forward_fourier_grid, fourier_at, grid_fourier_at, inverse_fourier_grid, Backend, CompactFunction,
    GROWTH_GUARD,
};
pub use grid::{Domain, Grid, GridFunction};
pub use quadrature::{GaussLegendre, QuadratureResult};
