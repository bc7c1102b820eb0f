use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::test_function::Transformable;
use crate::error::{Result, WeilError};
use crate::exec::Exec;
use crate::zero_catalog::{iterate_symmetric, tail_density_bound, ZeroSet};

/// A hermitian form value with its truncation and quadrature budgets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormValue {
    #[serde(rename = "value_re")]
    pub re: f64,
    #[serde(rename = "value_im")]
    pub im: f64,
    pub tail_bound: f64,
    pub quad_error: f64,
}

impl FormValue {
    pub fn new(value: Complex64, tail_bound: f64, quad_error: f64) -> Self {
        Self {
            re: value.re,
            im: value.im,
            tail_bound,
            quad_error,
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `tail_bound + quad_error`.
    pub fn budget(&self) -> f64 {
        self.tail_bound + self.quad_error
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct")
    }
}

/// `(S_γ)` aligned with the symmetric iteration of a catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCoefficients {
    pub entries: Vec<Complex64>,
}

impl SpectralCoefficients {
    /// Unit vector at position `index` of the symmetric iteration.
    pub fn basis(len: usize, index: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); len];
        entries[index] = Complex64::new(1.0, 0.0);
        Self { entries }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|e| c * e).collect(),
        }
    }

    /// Largest `|S_γ|`.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }
}

/// `Σ m_γ |S_γ|²` over the symmetric iteration.
pub fn tau_norm(s: &SpectralCoefficients, zs: &ZeroSet) -> Result<f64> {
    let sym = iterate_symmetric(zs);
    if sym.len() != s.entries.len() {
        return Err(WeilError::Misaligned {
            left: s.entries.len(),
            right: sym.len(),
        });
    }
    Ok(sym.iter().zip(&s.entries).map(|(&(_, m), e)| m as f64 * e.norm_sqr()).sum())
}

/// `Σ m_γ ψ^₁(γ) conj(ψ^₂(conj γ))` over explicit, possibly non-real, points.
///
/// `tail_height` is the truncation height used for the tail model; `None`
/// means the point set is complete.
pub fn weil_pairing_points<A, B>(
    psi1: &A,
    psi2: &B,
    points: &[(Complex64, u32)],
    tail_height: Option<f64>,
) -> Result<FormValue>
where
    A: Transformable + ?Sized,
    B: Transformable + ?Sized,
{
    let same = same_object(psi1, psi2);
    let terms = Exec::default().map_slice(points, |&(g, m)| -> Result<(Complex64, f64)> {
        let a = psi1.transform(g)?;
        let b = if same && g.im == 0.0 { a } else { psi2.transform(g.conj())? };
        let m = m as f64;
        let err = a.error_estimate * b.value.norm()
            + b.error_estimate * a.value.norm()
            + a.error_estimate * b.error_estimate;
        Ok((m * a.value * b.value.conj(), m * err))
    });
    let mut value = Complex64::new(0.0, 0.0);
    let mut quad = 0.0;
    for t in terms {
        let (v, e) = t?;
        value += v;
        quad += e;
    }
    let tail = match tail_height {
        Some(t) => tail_model(psi1, psi2, t)?,
        None => 0.0,
    };
    Ok(FormValue::new(value, tail, quad + 4.0 * f64::EPSILON * value.norm()))
}

/// Weil hermitian form over a catalog.
pub fn weil_pairing<A, B>(psi1: &A, psi2: &B, zs: &ZeroSet) -> Result<FormValue>
where
    A: Transformable + ?Sized,
    B: Transformable + ?Sized,
{
    let points: Vec<(Complex64, u32)> = iterate_symmetric(zs)
        .into_iter()
        .map(|(g, m)| (Complex64::new(g, 0.0), m))
        .collect();
    weil_pairing_points(psi1, psi2, &points, Some(zs.height_t()))
}

/// `ψ^(γ)` at every point of the symmetric iteration.
pub fn transform_at_zeros<A: Transformable + ?Sized>(psi: &A, zs: &ZeroSet) -> Result<SpectralCoefficients> {
    let sym = iterate_symmetric(zs);
    let entries = Exec::default()
        .map_slice(&sym, |&(g, _)| psi.transform(Complex64::new(g, 0.0)).map(|r| r.value))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralCoefficients { entries })
}

fn same_object<A: ?Sized, B: ?Sized>(a: &A, b: &B) -> bool {
    std::ptr::eq(a as *const A as *const u8, b as *const B as *const u8)
}

const TAIL_SAMPLES: usize = 32;

/// `sup_{T≤|λ|≤2T} |ψ^₁(λ) ψ^₂(λ)| λ² · 2 log(T)/T`: the density bound for
/// `Σ_{|γ|>T} m_γ/γ²` scaled by a dyadic sample of the transform decay.
fn tail_model<A, B>(psi1: &A, psi2: &B, height_t: f64) -> Result<f64>
where
    A: Transformable + ?Sized,
    B: Transformable + ?Sized,
{
    let mut sup: f64 = 0.0;
    for k in 0..=TAIL_SAMPLES {
        let lambda = height_t * (1.0 + k as f64 / TAIL_SAMPLES as f64);
        for sign in [1.0, -1.0] {
            let z = Complex64::new(sign * lambda, 0.0);
            let a = psi1.transform(z)?.value.norm();
            let b = if same_object(psi1, psi2) { a } else { psi2.transform(z)?.value.norm() };
            sup = sup.max(a * b * lambda * lambda);
        }
    }
    Ok(sup * tail_density_bound(height_t))
}
