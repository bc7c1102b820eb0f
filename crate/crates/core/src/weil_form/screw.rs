use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::pairing::FormValue;
use super::test_function::{TestFunction, Transformable};
use crate::error::{Result, WeilError};
use crate::exec::Exec;
use crate::numerics::{CompactFunction, GaussLegendre};
use crate::zero_catalog::{iterate_symmetric, tail_density_bound, ZeroSet};

/// `g(t) = Σ m_γ (e^{iγt} - 1)/γ²` over the symmetric iteration.
///
/// Pairing `±γ` gives `2 Σ m_γ (cos γt - 1)/γ²`, so `g` is real and even.
pub fn screw_g_value(t: f64, zs: &ZeroSet) -> f64 {
    zs.iter()
        .map(|(g, m)| 2.0 * m as f64 * ((g * t).cos() - 1.0) / (g * g))
        .sum()
}

/// `g(t)` with the truncation bound `2 log(T)/T · min(1, |t|T)`.
pub fn screw_g(t: f64, zs: &ZeroSet) -> FormValue {
    let tail = tail_density_bound(zs.height_t()) * (t.abs() * zs.height_t()).min(1.0);
    FormValue::new(Complex64::new(screw_g_value(t, zs), 0.0), tail, 0.0)
}

/// `g(t)` summed term by term over the symmetric iteration, without pairing.
pub fn screw_g_literal(t: f64, zs: &ZeroSet) -> Complex64 {
    iterate_symmetric(zs)
        .into_iter()
        .map(|(g, m)| m as f64 * (Complex64::new(0.0, g * t).exp() - 1.0) / (g * g))
        .sum()
}

/// `G_g(t, s) = g(t - s) - g(t) - g(-s) + g(0)`.
pub fn screw_kernel(t: f64, s: f64, zs: &ZeroSet) -> Complex64 {
    let v = screw_g_value(t - s, zs) - screw_g_value(t, zs) - screw_g_value(-s, zs) + screw_g_value(0.0, zs);
    Complex64::new(v, 0.0)
}

/// `[G_g(t_i, t_j)]`.
pub fn gram_matrix(nodes: &[f64], zs: &ZeroSet) -> DMatrix<Complex64> {
    DMatrix::from_fn(nodes.len(), nodes.len(), |i, j| screw_kernel(nodes[i], nodes[j], zs))
}

/// Smallest eigenvalue and trace of a hermitian matrix, through the real
/// symmetric embedding `[[A, -B], [B, A]]`.
pub fn hermitian_min_eigenvalue(m: &DMatrix<Complex64>) -> (f64, f64) {
    let n = m.nrows();
    let big = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let a = m[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => a.re,
            (true, false) => -a.im,
            (false, true) => a.im,
        }
    });
    let eig = SymmetricEigen::new(big);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let trace = (0..n).map(|i| m[(i, i)].re).sum();
    (min, trace)
}

/// Panel count for a 32-point rule to resolve `e^{iγx}` up to `γ_max` over `width`.
fn panels_for(width: f64, gamma_max: f64) -> usize {
    (width * (1.0 + gamma_max) / 16.0).ceil().max(4.0) as usize
}

fn weighted_nodes(f: &TestFunction, panels: usize, conj: bool) -> (Vec<f64>, Vec<Complex64>) {
    let (a, b) = f.support();
    let rule = GaussLegendre::cached(32);
    let width = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * 32);
    let mut ws = Vec::with_capacity(panels * 32);
    for p in 0..panels {
        let left = a + p as f64 * width;
        for (x, w) in rule.mapped(left, left + width) {
            let v = f.eval(x);
            xs.push(x);
            ws.push(if conj { v.conj() } else { v } * w);
        }
    }
    (xs, ws)
}

/// `(2m_γ/γ², cos γx, sin γx)` per node, so that
/// `g(t - s) = Σ 2m/γ² (cos γt cos γs + sin γt sin γs - 1)`.
fn trig_table(xs: &[f64], zs: &ZeroSet) -> Vec<Vec<(f64, f64)>> {
    xs.iter()
        .map(|&x| zs.iter().map(|(g, _)| (g * x).sin_cos()).map(|(s, c)| (c, s)).collect())
        .collect()
}

fn double_quadrature(phi1: &TestFunction, phi2: &TestFunction, zs: &ZeroSet, panels1: usize, panels2: usize) -> (Complex64, f64) {
    let (s, a) = weighted_nodes(phi1, panels1, false);
    let (t, b) = weighted_nodes(phi2, panels2, true);
    let sum_a: Complex64 = a.iter().sum();
    let sum_b: Complex64 = b.iter().sum();
    let ga: Complex64 = s.iter().zip(&a).map(|(&x, w)| screw_g_value(-x, zs) * w).sum();
    let gb: Complex64 = t.iter().zip(&b).map(|(&x, w)| screw_g_value(x, zs) * w).sum();
    let coef: Vec<f64> = zs.iter().map(|(g, m)| 2.0 * m as f64 / (g * g)).collect();
    let trig_s = trig_table(&s, zs);
    let trig_t = trig_table(&t, zs);
    let rows = Exec::default().map_range(t.len(), |i| {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut l1 = 0.0;
        for (j, ts) in trig_s.iter().enumerate() {
            let g: f64 = coef
                .iter()
                .zip(&trig_t[i])
                .zip(ts)
                .map(|((k, (ct, st)), (cs, ss))| k * (ct * cs + st * ss - 1.0))
                .sum();
            let term = g * a[j];
            acc += term;
            l1 += term.norm();
        }
        (acc * b[i], l1 * b[i].norm())
    });
    let mut cross = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for (v, m) in rows {
        cross += v;
        l1 += m;
    }
    // g(0) = 0
    let value = cross - gb * sum_a - sum_b * ga;
    (value, l1)
}

/// `∫∫ G_g(t,s) φ₁(s) conj(φ₂(t)) ds dt` by tensor Gauss–Legendre panels,
/// refined once for the error estimate. Both inputs need mean zero.
pub fn screw_form(phi1: &TestFunction, phi2: &TestFunction, zs: &ZeroSet) -> Result<FormValue> {
    for phi in [phi1, phi2] {
        let mean = phi.mean()?.norm();
        if mean > 1e-10 {
            return Err(WeilError::Domain(format!("screw form needs mean-zero inputs, got |mean| = {mean:e}")));
        }
    }
    let gamma_max = zs.ordinates().last().copied().unwrap_or(0.0);
    let (a1, b1) = phi1.support();
    let (a2, b2) = phi2.support();
    if b1 <= a1 || b2 <= a2 || zs.is_empty() {
        return Ok(FormValue::new(Complex64::new(0.0, 0.0), 0.0, 0.0));
    }
    let p1 = panels_for(b1 - a1, gamma_max);
    let p2 = panels_for(b2 - a2, gamma_max);
    let (coarse, _) = double_quadrature(phi1, phi2, zs, p1, p2);
    let (fine, l1) = double_quadrature(phi1, phi2, zs, 2 * p1, 2 * p2);
    let quad = (fine - coarse).norm() + 64.0 * f64::EPSILON * l1;
    let tail = screw_tail(phi1, phi2, zs.height_t())?;
    Ok(FormValue::new(fine, tail, quad))
}

/// `Σ m_γ φ^₁(γ) conj(φ^₂(γ)) / γ²` over the symmetric iteration, i.e. the
/// `L²(τ)` pairing of `φ^(λ)/λ`.
pub fn screw_form_spectral(phi1: &TestFunction, phi2: &TestFunction, zs: &ZeroSet) -> Result<FormValue> {
    let mut value = Complex64::new(0.0, 0.0);
    let mut quad = 0.0;
    for (g, m) in iterate_symmetric(zs) {
        let z = Complex64::new(g, 0.0);
        let a = phi1.transform(z)?;
        let b = if std::ptr::eq(phi1, phi2) { a } else { phi2.transform(z)? };
        let w = m as f64 / (g * g);
        value += w * a.value * b.value.conj();
        quad += w * (a.error_estimate * b.value.norm() + b.error_estimate * a.value.norm());
    }
    let tail = screw_tail(phi1, phi2, zs.height_t())?;
    Ok(FormValue::new(value, tail, quad))
}

fn screw_tail(phi1: &TestFunction, phi2: &TestFunction, height_t: f64) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for k in 0..=32 {
        let lambda = height_t * (1.0 + k as f64 / 32.0);
        for sign in [1.0, -1.0] {
            let z = Complex64::new(sign * lambda, 0.0);
            let a = phi1.transform(z)?.value.norm();
            let b = if std::ptr::eq(phi1, phi2) { a } else { phi2.transform(z)?.value.norm() };
            sup = sup.max(a * b);
        }
    }
    Ok(sup * tail_density_bound(height_t))
}
