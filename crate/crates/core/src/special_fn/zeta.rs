//! Riemann zeta by Euler–Maclaurin summation, differentiated termwise.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::gamma::log_gamma;
use crate::error::{Result, WeilError};

/// Number of Bernoulli correction terms.
const CORRECTIONS: usize = 40;
/// Target ratio `(|s| + 2M) / (2πN)` between consecutive correction terms.
const TERM_RATIO: f64 = 0.65;

/// `B_{2k} / (2k)!` for `k = 1..=CORRECTIONS`.
fn bernoulli_coefficients() -> &'static [f64; CORRECTIONS] {
    static COEFFS: OnceLock<[f64; CORRECTIONS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = [0.0; CORRECTIONS];
        for (i, slot) in out.iter_mut().enumerate() {
            let k = i + 1;
            let two_k = 2 * k;
            let zeta_even = match two_k {
                2 => PI.powi(2) / 6.0,
                4 => PI.powi(4) / 90.0,
                6 => PI.powi(6) / 945.0,
                8 => PI.powi(8) / 9450.0,
                10 => PI.powi(10) / 93555.0,
                _ => (1..=64).rev().map(|n| (n as f64).powi(-(two_k as i32))).sum(),
            };
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * zeta_even / (2.0 * PI).powi(two_k as i32);
        }
        out
    })
}

/// Pieces of the Euler–Maclaurin formula: `ζ(s) = R(s) + W(s)/(s-1)` with
/// `W(s) = N^{1-s}`, together with `R'`, `W'`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EulerMaclaurin {
    pub r: Complex64,
    pub dr: Complex64,
    pub w: Complex64,
    pub dw: Complex64,
    /// `Σ |n^{-s}|` over the direct part, a scale for rounding estimates.
    pub magnitude: f64,
}

/// Summation cut-off for `s`.
pub(crate) fn cutoff(s: Complex64) -> usize {
    let n = (s.norm() + 2.0 * CORRECTIONS as f64) / (2.0 * PI * TERM_RATIO);
    (n.ceil() as usize).max(8)
}

pub(crate) fn euler_maclaurin(s: Complex64) -> EulerMaclaurin {
    let n_cut = cutoff(s);
    let mut r = Complex64::new(0.0, 0.0);
    let mut dr = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for n in 1..n_cut {
        let ln_n = (n as f64).ln();
        let term = (-s * ln_n).exp();
        r += term;
        dr -= term * ln_n;
        magnitude += (-s.re * ln_n).exp();
    }
    finish(s, n_cut, r, dr, magnitude)
}

/// Euler–Maclaurin pieces at `s_k = 1/2 - i(x0 + k·h)`, `k < count`.
///
/// Along a vertical line `n^{-s_{k+1}} = n^{-s_k} e^{ih log n}`, so the direct
/// sum advances by one rotation per term; phasors are reseeded every
/// [`STRIP_RESEED`] points.
pub(crate) fn euler_maclaurin_line(x0: f64, h: f64, count: usize) -> Vec<EulerMaclaurin> {
    let mut out = Vec::with_capacity(count);
    let mut start = 0;
    while start < count {
        let len = STRIP_RESEED.min(count - start);
        let xa = x0 + start as f64 * h;
        let xb = x0 + (start + len - 1) as f64 * h;
        let s_far = Complex64::new(0.5, -xa.abs().max(xb.abs()));
        let n_cut = cutoff(s_far);
        let mut amp = Vec::with_capacity(n_cut);
        let mut ln = Vec::with_capacity(n_cut);
        let mut phase = Vec::with_capacity(n_cut);
        let mut rot = Vec::with_capacity(n_cut);
        let mut magnitude = 0.0;
        for n in 1..n_cut {
            let l = (n as f64).ln();
            let a = (-0.5 * l).exp();
            amp.push(a);
            ln.push(l);
            phase.push(Complex64::cis(xa * l));
            rot.push(Complex64::cis(h * l));
            magnitude += a;
        }
        for k in 0..len {
            let x = xa + k as f64 * h;
            let mut r = Complex64::new(0.0, 0.0);
            let mut dr = Complex64::new(0.0, 0.0);
            for j in 0..amp.len() {
                let term = amp[j] * phase[j];
                r += term;
                dr -= term * ln[j];
                phase[j] *= rot[j];
            }
            out.push(finish(Complex64::new(0.5, -x), n_cut, r, dr, magnitude));
        }
        start += len;
    }
    out
}

/// Points per phasor seed in [`euler_maclaurin_line`].
pub(crate) const STRIP_RESEED: usize = 256;

/// Half-weight endpoint term and Bernoulli corrections at the cut-off `N`.
fn finish(s: Complex64, n_cut: usize, mut r: Complex64, mut dr: Complex64, magnitude: f64) -> EulerMaclaurin {
    let nf = n_cut as f64;
    let ln_big = nf.ln();
    let n_pow = (-s * ln_big).exp(); // N^{-s}
    r += 0.5 * n_pow;
    dr -= 0.5 * ln_big * n_pow;

    // T_1 = s N^{-s-1}; T_{k+1} = T_k (s+2k-1)(s+2k) / N^2
    let inv_n2 = 1.0 / (nf * nf);
    let mut t = s * n_pow / nf;
    let mut dt = n_pow / nf * (1.0 - s * ln_big);
    let coeffs = bernoulli_coefficients();
    for (i, c) in coeffs.iter().enumerate() {
        r += c * t;
        dr += c * dt;
        let k = (i + 1) as f64;
        let q = (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        let dq = 2.0 * s + 4.0 * k - 1.0;
        let t_next = t * q * inv_n2;
        dt = (dt * q + t * dq) * inv_n2;
        t = t_next;
    }
    let w = n_pow * nf;
    EulerMaclaurin {
        r,
        dr,
        w,
        dw: -ln_big * w,
        magnitude,
    }
}

/// `(s-1)ζ(s)` and its derivative; entire, no pole handling required.
#[cfg(test)]
pub(crate) fn completed(s: Complex64) -> (Complex64, Complex64) {
    let em = euler_maclaurin(s);
    let sm1 = s - 1.0;
    (sm1 * em.r + em.w, em.r + sm1 * em.dr + em.dw)
}

/// `ζ(s)` and `ζ'(s)` for `Re s ≥ 0`.
pub fn zeta_with_derivative(s: Complex64) -> Result<(Complex64, Complex64)> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(WeilError::Pole {
            function: "zeta",
            at: s.to_string(),
        });
    }
    if s.re < 0.0 {
        return Err(WeilError::Domain(format!(
            "zeta_with_derivative needs Re s >= 0, got {s}"
        )));
    }
    let em = euler_maclaurin(s);
    let inv = 1.0 / (s - 1.0);
    let z = em.r + em.w * inv;
    let dz = em.dr + em.dw * inv - em.w * inv * inv;
    Ok((z, dz))
}

/// Riemann zeta; the functional equation covers `Re s < 0`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s.re >= 0.0 {
        return zeta_with_derivative(s).map(|(z, _)| z);
    }
    // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
    let one_minus = 1.0 - s;
    let (z1, _) = zeta_with_derivative(one_minus)?;
    let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + log_gamma(one_minus)?;
    Ok(log_factor.exp() * (0.5 * PI * s).sin() * z1)
}
