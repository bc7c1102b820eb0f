//! Fourier transforms with the convention `f^(z) = ∫ f(x) e^{izx} dx` and
//! inverse `(1/2π) ∫ F(z) e^{-izx} dz`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::{Domain, Grid, GridFunction};
use super::quadrature::{integrate_with_estimate, QuadratureResult};
use crate::error::{Result, WeilError};
use crate::exec::Exec;

/// Largest |Im z| accepted by [`fourier_at`].
pub const GROWTH_GUARD: f64 = 50.0;

/// A function with known compact support `[a, b]`.
pub trait CompactFunction: Sync {
    fn support(&self) -> (f64, f64);
    fn eval(&self, x: f64) -> Complex64;
}

impl<F: Fn(f64) -> Complex64 + Sync> CompactFunction for (F, (f64, f64)) {
    fn support(&self) -> (f64, f64) {
        self.1
    }
    fn eval(&self, x: f64) -> Complex64 {
        (self.0)(x)
    }
}

/// Floor on the panel count, so that edge layers of bump-like functions are resolved.
const MIN_PANELS: f64 = 16.0;

/// `∫_a^b f(x) e^{izx} dx` by order-32 Gauss–Legendre panels of width at most `4/(1+|z|)`.
pub fn fourier_at<F: CompactFunction + ?Sized>(f: &F, z: Complex64) -> Result<QuadratureResult> {
    if z.im.abs() > GROWTH_GUARD {
        return Err(WeilError::GrowthGuard {
            im: z.im.abs(),
            guard: GROWTH_GUARD,
        });
    }
    let (a, b) = f.support();
    if b <= a {
        return Ok(QuadratureResult::new(Complex64::new(0.0, 0.0), 0.0));
    }
    let panels = ((b - a) * (1.0 + z.norm()) / 4.0).ceil().max(MIN_PANELS) as usize;
    let iz = Complex64::i() * z;
    Ok(integrate_with_estimate(|x| f.eval(x) * (iz * x).exp(), a, b, panels))
}

/// How to evaluate a trapezoid transform between two uniform grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Chirp-z above a size threshold, direct summation below.
    #[default]
    Auto,
    /// Explicit double loop, one output node per work item.
    Direct(Exec),
    /// Bluestein chirp-z evaluation of the same sum through FFT convolution.
    ChirpZ,
}

const AUTO_DIRECT_LIMIT: usize = 1 << 22;
const RESEED: usize = 256;

/// `y_j = Σ_k w_k a_k e^{i·sign·u_k·v_j}` for trapezoid weights `w_k` of `input`,
/// nodes `u_k` of `input` and `v_j` of `output`.
pub fn trapezoid_transform(
    values: &[Complex64],
    input: &Grid,
    output: &Grid,
    sign: f64,
    backend: Backend,
) -> Vec<Complex64> {
    assert_eq!(values.len(), input.len());
    let weighted: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(k, v)| v * input.trapezoid_weight(k))
        .collect();
    let backend = match backend {
        Backend::Auto if input.len().saturating_mul(output.len()) <= AUTO_DIRECT_LIMIT => {
            Backend::Direct(Exec::Parallel)
        }
        Backend::Auto => Backend::ChirpZ,
        b => b,
    };
    match backend {
        Backend::Direct(exec) => direct_sum(&weighted, input, output, sign, exec),
        _ => chirp_z(&weighted, input, output, sign),
    }
}

fn direct_sum(a: &[Complex64], input: &Grid, output: &Grid, sign: f64, exec: Exec) -> Vec<Complex64> {
    let h = input.spacing();
    exec.map_range(output.len(), |j| {
        let x = output.node(j);
        let rot = Complex64::cis(sign * h * x);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut w = Complex64::new(0.0, 0.0);
        for (k, ak) in a.iter().enumerate() {
            if k % RESEED == 0 {
                w = Complex64::cis(sign * input.node(k) * x);
            }
            acc += ak * w;
            w *= rot;
        }
        acc
    })
}

fn chirp_z(a: &[Complex64], input: &Grid, output: &Grid, sign: f64) -> Vec<Complex64> {
    let n = a.len();
    let m = output.len();
    let (z0, hz) = (input.x_min(), input.spacing());
    let (x0, hx) = (output.x_min(), output.spacing());
    let alpha = hz * hx;
    let len = (n + m - 1).next_power_of_two();

    let mut u = vec![Complex64::new(0.0, 0.0); len];
    for (k, ak) in a.iter().enumerate() {
        let kf = k as f64;
        u[k] = ak * Complex64::cis(sign * (hz * x0 * kf + 0.5 * alpha * kf * kf));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); len];
    for d in 0..m {
        let df = d as f64;
        v[d] = Complex64::cis(-sign * 0.5 * alpha * df * df);
    }
    for d in 1..n {
        let df = d as f64;
        v[len - d] = Complex64::cis(-sign * 0.5 * alpha * df * df);
    }

    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);
    fwd.process(&mut u);
    fwd.process(&mut v);
    for (p, q) in u.iter_mut().zip(&v) {
        *p *= q;
    }
    inv.process(&mut u);
    let norm = 1.0 / len as f64;
    (0..m)
        .map(|j| {
            let jf = j as f64;
            let phase = sign * (z0 * x0 + z0 * hx * jf + 0.5 * alpha * jf * jf);
            u[j] * norm * Complex64::cis(phase)
        })
        .collect()
}

/// `(1/2π) ∫_{-Z}^{Z} F(z) e^{-izx} dz` at every node of `out`, trapezoid in `z`.
///
/// Requires `h_freq · max|x| ≤ π/4` so the periodic images of the output
/// stay well separated from the window.
pub fn inverse_fourier_grid(f: &GridFunction, out: &Grid) -> Result<GridFunction> {
    inverse_fourier_grid_with(f, out, Backend::Auto)
}

pub fn inverse_fourier_grid_with(f: &GridFunction, out: &Grid, backend: Backend) -> Result<GridFunction> {
    if f.domain() != Domain::Frequency {
        return Err(WeilError::GridMismatch("inverse transform needs frequency samples".into()));
    }
    let step = f.grid().spacing();
    if step * out.abs_max() > PI / 4.0 * (1.0 + 1e-12) {
        return Err(WeilError::Aliasing {
            step,
            x_max: out.abs_max(),
        });
    }
    let mut vals = trapezoid_transform(f.values(), f.grid(), out, -1.0, backend);
    let c = 1.0 / (2.0 * PI);
    vals.iter_mut().for_each(|v| *v *= c);
    GridFunction::new(*out, vals, Domain::Time)
}

/// `∫ f(x) e^{izx} dx` at every node of `out`, trapezoid in `x`.
///
/// Requires the time step to resolve the requested band: `h_time · max|z| ≤ π`.
pub fn forward_fourier_grid(f: &GridFunction, out: &Grid) -> Result<GridFunction> {
    forward_fourier_grid_with(f, out, Backend::Auto)
}

pub fn forward_fourier_grid_with(f: &GridFunction, out: &Grid, backend: Backend) -> Result<GridFunction> {
    if f.domain() != Domain::Time {
        return Err(WeilError::GridMismatch("forward transform needs time samples".into()));
    }
    let step = f.grid().spacing();
    if step * out.abs_max() > PI * (1.0 + 1e-12) {
        return Err(WeilError::Aliasing {
            step,
            x_max: out.abs_max(),
        });
    }
    let vals = trapezoid_transform(f.values(), f.grid(), out, 1.0, backend);
    GridFunction::new(*out, vals, Domain::Frequency)
}

/// Trapezoid value of `∫ f(x) e^{izx} dx` for time samples.
///
/// The error estimate is the weighted mass in the outer 2% of the window plus
/// a rounding term; it assumes `f` is resolved by the grid and has decayed at
/// the window edges.
pub fn grid_fourier_at(f: &GridFunction, z: Complex64) -> Result<QuadratureResult> {
    if f.domain() != Domain::Time {
        return Err(WeilError::GridMismatch("grid transform needs time samples".into()));
    }
    if z.im.abs() > GROWTH_GUARD {
        return Err(WeilError::GrowthGuard {
            im: z.im.abs(),
            guard: GROWTH_GUARD,
        });
    }
    let g = f.grid();
    let n = g.len();
    let edge = (n / 50).max(1);
    let iz = Complex64::i() * z;
    let h = g.spacing();
    let rot = (iz * h).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    let mut edge_mass = 0.0;
    let mut w = Complex64::new(0.0, 0.0);
    for (k, v) in f.values().iter().enumerate() {
        if k % RESEED == 0 {
            w = (iz * g.node(k)).exp();
        }
        let term = v * w * g.trapezoid_weight(k);
        acc += term;
        let t = term.norm();
        l1 += t;
        if k < edge || k + edge >= n {
            edge_mass += t;
        }
        w *= rot;
    }
    Ok(QuadratureResult::new(acc, edge_mass + 1e-14 * l1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn gaussian_grid(grid: Grid) -> GridFunction {
        GridFunction::sample(grid, Domain::Time, |x| Complex64::new((-x * x).exp(), 0.0)).unwrap()
    }

    #[test]
    fn guard_rejects_large_imaginary_part() {
        let f = (|_x: f64| Complex64::new(1.0, 0.0), (-1.0, 1.0));
        assert!(matches!(
            fourier_at(&f, Complex64::new(0.0, 60.0)),
            Err(WeilError::GrowthGuard { .. })
        ));
    }

    #[test]
    fn box_transform_closed_form() {
        let f = (|_x: f64| Complex64::new(1.0, 0.0), (-1.0, 1.0));
        for z in [0.3, 2.0, 17.5] {
            let q = fourier_at(&f, Complex64::new(z, 0.0)).unwrap();
            assert_abs_diff_eq!(q.value.re, 2.0 * z.sin() / z, epsilon = 1e-13);
            assert_abs_diff_eq!(q.value.im, 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn gaussian_forward_transform_matches_closed_form() {
        let t = gaussian_grid(Grid::new(-8.0, 8.0, 801).unwrap());
        let out = Grid::new(-6.0, 6.0, 25).unwrap();
        let f = forward_fourier_grid(&t, &out).unwrap();
        for (z, v) in out.nodes().zip(f.values()) {
            let exact = PI.sqrt() * (-z * z / 4.0).exp();
            assert!((v - exact).norm() < 1e-12, "z={z}");
        }
    }

    #[test]
    fn backends_agree() {
        let input = Grid::new(-30.0, 30.0, 1201).unwrap();
        let vals: Vec<Complex64> = input
            .nodes()
            .map(|z| Complex64::new((-z * z / 40.0).exp(), (z / 7.0).sin() * (-z.abs()).exp()))
            .collect();
        let out = Grid::new(-3.0, 5.0, 333).unwrap();
        let d_seq = trapezoid_transform(&vals, &input, &out, -1.0, Backend::Direct(Exec::Sequential));
        let d_par = trapezoid_transform(&vals, &input, &out, -1.0, Backend::Direct(Exec::Parallel));
        let cz = trapezoid_transform(&vals, &input, &out, -1.0, Backend::ChirpZ);
        let scale: f64 = vals.iter().map(|v| v.norm()).sum::<f64>() * input.spacing();
        for j in 0..out.len() {
            assert_eq!(d_seq[j], d_par[j]);
            assert!((d_seq[j] - cz[j]).norm() < 1e-12 * scale, "j={j}");
        }
    }

    #[test]
    fn inverse_of_gaussian_spectrum() {
        let freq = Grid::symmetric(40.0, 0.05).unwrap();
        let spec = GridFunction::sample(freq, Domain::Frequency, |z| {
            Complex64::new(PI.sqrt() * (-z * z / 4.0).exp(), 0.0)
        })
        .unwrap();
        let out = Grid::new(-5.0, 5.0, 101).unwrap();
        let back = inverse_fourier_grid(&spec, &out).unwrap();
        for (x, v) in out.nodes().zip(back.values()) {
            assert!((v - (-x * x).exp()).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_spectrum_and_conjugate_symmetry() {
        let freq = Grid::symmetric(10.0, 0.1).unwrap();
        let out = Grid::new(-3.0, 3.0, 61).unwrap();
        let zero = GridFunction::zeros(freq, Domain::Frequency);
        let t = inverse_fourier_grid(&zero, &out).unwrap();
        assert!(t.values().iter().all(|v| v.norm() == 0.0));

        let sym = GridFunction::sample(freq, Domain::Frequency, |z| {
            Complex64::new((-z * z / 9.0).exp(), z * (-z * z / 5.0).exp())
        })
        .unwrap();
        let t = inverse_fourier_grid(&sym, &out).unwrap();
        for v in t.values() {
            assert!(v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn aliasing_guard() {
        let freq = Grid::symmetric(10.0, 0.5).unwrap();
        let out = Grid::new(-3.0, 3.0, 61).unwrap();
        let spec = GridFunction::zeros(freq, Domain::Frequency);
        assert!(matches!(inverse_fourier_grid(&spec, &out), Err(WeilError::Aliasing { .. })));
        let t = gaussian_grid(Grid::new(-1.0, 1.0, 11).unwrap());
        assert!(forward_fourier_grid(&t, &Grid::new(-100.0, 100.0, 3).unwrap()).is_err());
    }

    #[test]
    fn grid_transform_matches_gaussian() {
        let t = gaussian_grid(Grid::new(-9.0, 9.0, 1801).unwrap());
        let q = grid_fourier_at(&t, Complex64::new(1.5, 0.0)).unwrap();
        assert!((q.value - PI.sqrt() * (-1.5f64 * 1.5 / 4.0).exp()).norm() < 1e-13);
        assert!(q.error_estimate < 1e-12);
    }
}
