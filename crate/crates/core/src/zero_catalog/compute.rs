use num_complex::Complex64;

use super::{ZeroSet, ZeroSource};
use crate::error::{Result, WeilError};
use crate::exec::Exec;
use crate::special_fn::xi_scaled;

/// Largest height accepted by [`compute_zeros`].
pub const MAX_HEIGHT: f64 = 120.0;

const SWEEP_STEP: f64 = 0.02;
const SWEEP_START: f64 = 1.0;
const ROOT_TOL: f64 = 1e-13;

/// A positive multiple of the real number `ξ(1/2 + it)`.
///
/// `ξ = e^{Q}·v` with `e^{Re Q} > 0`, so `Re(e^{i Im Q}·v)` has the sign of ξ
/// without underflow.
pub fn critical_line_real(t: f64) -> f64 {
    let x = xi_scaled(Complex64::new(0.5, t));
    (Complex64::new(0.0, x.log_scale.im).exp() * x.value).re
}

/// Ordinates in `(0, T]` found by a sign-change sweep of
/// `t ↦ ξ(1/2 + it)` and refined by bisection with secant steps.
pub fn compute_zeros(height_t: f64, exec: Exec) -> Result<ZeroSet> {
    if !(height_t.is_finite() && height_t > 0.0) || height_t > MAX_HEIGHT {
        return Err(WeilError::Domain(format!(
            "compute_zeros needs 0 < T <= {MAX_HEIGHT}, got {height_t}"
        )));
    }
    if height_t <= SWEEP_START {
        return ZeroSet::simple(vec![], height_t, ZeroSource::Computed);
    }
    let steps = ((height_t - SWEEP_START) / SWEEP_STEP).ceil() as usize;
    let nodes: Vec<f64> = (0..=steps)
        .map(|k| (SWEEP_START + k as f64 * SWEEP_STEP).min(height_t))
        .collect();
    let values = exec.map_slice(&nodes, |&t| critical_line_real(t));
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(WeilError::NonFinite(i));
    }
    let brackets: Vec<(f64, f64, f64, f64)> = (0..steps)
        .filter(|&k| values[k] == 0.0 || values[k].signum() != values[k + 1].signum())
        .map(|k| (nodes[k], nodes[k + 1], values[k], values[k + 1]))
        .collect();
    let mut roots = exec.map_slice(&brackets, |&(a, b, fa, fb)| refine(a, b, fa, fb));
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    roots.retain(|&g| g <= height_t);
    ZeroSet::simple(roots, height_t, ZeroSource::Computed)
}

/// Safeguarded secant (Illinois) inside a sign-change bracket.
fn refine(mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let mut side = 0i8;
    for _ in 0..200 {
        if b - a <= ROOT_TOL {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let fc = critical_line_real(c);
        if fc == 0.0 {
            return c;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        } else {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        }
    }
    0.5 * (a + b)
}
