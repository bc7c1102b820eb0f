use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A quadrature value together with a nonnegative error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
}

impl QuadratureResult {
    pub fn new(value: Complex64, error_estimate: f64) -> Self {
        Self {
            value,
            error_estimate: error_estimate.abs(),
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Shared rule of a common order.
    pub fn cached(n: usize) -> &'static GaussLegendre {
        static R16: OnceLock<GaussLegendre> = OnceLock::new();
        static R24: OnceLock<GaussLegendre> = OnceLock::new();
        static R32: OnceLock<GaussLegendre> = OnceLock::new();
        static R64: OnceLock<GaussLegendre> = OnceLock::new();
        let cell = match n {
            16 => &R16,
            24 => &R24,
            32 => &R32,
            64 => &R64,
            _ => panic!("no cached Gauss-Legendre rule of order {n}"),
        };
        cell.get_or_init(|| GaussLegendre::new(n))
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    /// `∫_a^b f` with `panels` equal panels.
    pub fn integrate<F: FnMut(f64) -> Complex64>(
        &self,
        mut f: F,
        a: f64,
        b: f64,
        panels: usize,
    ) -> Complex64 {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let lo = a + p as f64 * width;
            let hi = if p + 1 == panels { b } else { lo + width };
            for (x, w) in self.mapped(lo, hi) {
                acc += f(x) * w;
            }
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Panelled integral with an error estimate from a lower-order rule on the same panels.
pub fn integrate_with_estimate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
) -> QuadratureResult {
    let r32 = GaussLegendre::cached(32);
    let r24 = GaussLegendre::cached(24);
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut hi = Complex64::new(0.0, 0.0);
    let mut lo = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for p in 0..panels {
        let left = a + p as f64 * width;
        let right = if p + 1 == panels { b } else { left + width };
        for (x, w) in r32.mapped(left, right) {
            let v = f(x);
            hi += v * w;
            l1 += v.norm() * w.abs();
        }
        for (x, w) in r24.mapped(left, right) {
            lo += f(x) * w;
        }
    }
    QuadratureResult::new(hi, (hi - lo).norm() + 4.0 * f64::EPSILON * l1)
}
