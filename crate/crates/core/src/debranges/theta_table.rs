use num_complex::Complex64;

use crate::error::{Result, WeilError};
use crate::exec::Exec;
use crate::numerics::{
    forward_fourier_grid, inverse_fourier_grid, Domain, Grid, GridFunction,
};
use crate::special_fn::{HermiteBiehler, XiE};

/// `Θ` sampled on a frequency grid.
#[derive(Debug, Clone)]
pub struct ThetaTable {
    grid: Grid,
    values: Vec<Complex64>,
}

impl ThetaTable {
    /// Tabulate `Θ` on `grid`; a symmetric grid is filled from its
    /// nonnegative half through `Θ(-x) = conj Θ(x)`.
    pub fn new<E: HermiteBiehler + ?Sized>(e: &E, grid: Grid, exec: Exec) -> Result<Self> {
        let n = grid.len();
        let symmetric = (grid.x_min() + grid.x_max()).abs() <= 1e-12 * grid.abs_max();
        let values = if symmetric {
            let mid = n / 2;
            let half = line(e, &grid, mid, n - mid, exec)?;
            let mut values = Vec::with_capacity(n);
            for i in 0..mid {
                values.push(half[mid - i - n.is_multiple_of(2) as usize].conj());
            }
            values.extend(half);
            values
        } else {
            line(e, &grid, 0, n, exec)?
        };
        Ok(Self { grid, values })
    }

    /// `Θ_ξ` on `grid`.
    pub fn xi(grid: Grid, exec: Exec) -> Result<Self> {
        Self::new(&XiE, grid, exec)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// The sub-table on `[-half, half]` sharing this table's nodes.
    pub fn restrict(&self, half: f64) -> Result<Self> {
        let h = self.grid.spacing();
        let k = (half / h).round() as usize;
        let center = (-self.grid.x_min() / h).round() as usize;
        let aligned = (self.grid.node(center)).abs() <= 1e-9 * h && (k as f64 * h - half).abs() <= 1e-9 * half;
        if !aligned || k == 0 || k > center || center + k >= self.grid.len() {
            return Err(WeilError::GridMismatch(format!(
                "cannot restrict a table on [{}, {}] with step {h} to ±{half}",
                self.grid.x_min(),
                self.grid.x_max()
            )));
        }
        let grid = Grid::new(-(k as f64) * h, k as f64 * h, 2 * k + 1)?;
        Ok(Self {
            grid,
            values: self.values[center - k..=center + k].to_vec(),
        })
    }
}

const CHUNK: usize = 1024;

/// `Θ` at nodes `first..first+count`, in parallel chunks along the line.
fn line<E: HermiteBiehler + ?Sized>(e: &E, grid: &Grid, first: usize, count: usize, exec: Exec) -> Result<Vec<Complex64>> {
    let h = grid.spacing();
    let chunks = count.div_ceil(CHUNK);
    let parts = exec.map_range(chunks, |c| {
        let start = first + c * CHUNK;
        let len = CHUNK.min(first + count - start);
        e.theta_line(grid.x_min() + start as f64 * h, h, len)
    });
    let mut out = Vec::with_capacity(count);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Frequency step compatible with the inverse-transform guard for outputs up
/// to `|x| ≤ x_abs`; a reciprocal integer, so grids with integer cut-offs nest.
pub fn frequency_step(x_abs: f64) -> f64 {
    let max_step = std::f64::consts::PI / (4.0 * x_abs.max(1.0));
    1.0 / (1.0 / max_step).ceil()
}

/// Frequency grid `[-Z, Z]` for outputs on `out`.
pub fn frequency_grid(z_cut: f64, out: &Grid) -> Result<Grid> {
    Grid::symmetric(z_cut, frequency_step(out.abs_max()))
}

/// Time grid on `[x_min, x_max]` sampling the band `[-Z, Z]` at 1.25× the Nyquist rate.
pub fn time_grid(z_cut: f64, x_min: f64, x_max: f64) -> Result<Grid> {
    Grid::with_max_step(x_min, x_max, 0.8 * std::f64::consts::PI / z_cut)
}

/// `K = F⁻¹ M_Θ J F` on grids: forward transform onto the frequency grid of
/// the table, conjugate, multiply by `Θ`, inverse transform.
#[derive(Debug, Clone)]
pub struct KOperator {
    table: ThetaTable,
}

impl KOperator {
    pub fn new(table: ThetaTable) -> Self {
        Self { table }
    }

    /// `K` for `Θ_ξ` with cut-off `Z` for time functions on `time`.
    pub fn xi(z_cut: f64, time: &Grid, exec: Exec) -> Result<Self> {
        Ok(Self::new(ThetaTable::xi(frequency_grid(z_cut, time)?, exec)?))
    }

    pub fn table(&self) -> &ThetaTable {
        &self.table
    }

    pub fn apply(&self, psi: &GridFunction) -> Result<GridFunction> {
        let spec = forward_fourier_grid(psi, self.table.grid())?;
        let values: Vec<Complex64> = spec
            .values()
            .iter()
            .zip(self.table.values())
            .map(|(f, t)| t * f.conj())
            .collect();
        let spec = GridFunction::new(*self.table.grid(), values, Domain::Frequency)?;
        inverse_fourier_grid(&spec, psi.grid())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_fill_matches_direct() {
        let grid = Grid::symmetric(30.0, 0.25).unwrap();
        let sym = ThetaTable::xi(grid, Exec::default()).unwrap();
        for k in [0, 7, 120, 240] {
            let direct = XiE.theta(Complex64::new(grid.node(k), 0.0)).unwrap();
            assert!((sym.values()[k] - direct).norm() < 1e-12, "k={k}");
        }
        let shifted = Grid::new(-29.0, 31.0, 241).unwrap();
        let t = ThetaTable::xi(shifted, Exec::Sequential).unwrap();
        let direct = XiE.theta(Complex64::new(shifted.node(5), 0.0)).unwrap();
        assert!((t.values()[5] - direct).norm() < 1e-12);
    }

    #[test]
    fn restriction_keeps_nodes() {
        let step = frequency_step(16.0);
        let big = ThetaTable::xi(Grid::symmetric(40.0, step).unwrap(), Exec::default()).unwrap();
        let small = big.restrict(20.0).unwrap();
        let direct = ThetaTable::xi(Grid::symmetric(20.0, step).unwrap(), Exec::default()).unwrap();
        assert!(small.grid().same_as(direct.grid()));
        for (a, b) in small.values().iter().zip(direct.values()) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(big.restrict(20.013).is_err());
    }
}
