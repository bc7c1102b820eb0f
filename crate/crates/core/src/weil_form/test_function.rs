use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WeilError};
use crate::numerics::{fourier_at, grid_fourier_at, CompactFunction, GaussLegendre, GridFunction, QuadratureResult};

/// Anything whose transform `f^(z) = ∫ f(x) e^{izx} dx` can be evaluated.
pub trait Transformable: Sync {
    fn transform(&self, z: Complex64) -> Result<QuadratureResult>;
}

impl Transformable for GridFunction {
    fn transform(&self, z: Complex64) -> Result<QuadratureResult> {
        grid_fourier_at(self, z)
    }
}

impl<T: Transformable + ?Sized> Transformable for &T {
    fn transform(&self, z: Complex64) -> Result<QuadratureResult> {
        (**self).transform(z)
    }
}

/// Smooth compactly supported functions built from the bump
/// `b(x) = exp(-1/(1-x²))` on `(-1, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    /// `b((x - center)/half_width)`.
    Bump { center: f64, half_width: f64 },
    /// `d/dx b((x - center)/half_width)`.
    BumpDerivative { center: f64, half_width: f64 },
    /// `x ↦ ∫_{-∞}^x inner`; compactly supported only when `inner` has mean zero.
    Antiderivative { inner: Box<TestFunction>, compact: bool },
    /// `Σ c_k f_k`.
    Combination { terms: Vec<(Complex64, TestFunction)> },
}

fn unit_bump(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

fn unit_bump_derivative(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        let d = 1.0 - u * u;
        (-1.0 / d).exp() * (-2.0 * u / (d * d))
    }
}

impl TestFunction {
    pub fn bump(center: f64, half_width: f64) -> Result<Self> {
        check_shape(center, half_width)?;
        Ok(TestFunction::Bump { center, half_width })
    }

    pub fn bump_derivative(center: f64, half_width: f64) -> Result<Self> {
        check_shape(center, half_width)?;
        Ok(TestFunction::BumpDerivative { center, half_width })
    }

    pub fn combination(terms: Vec<(Complex64, TestFunction)>) -> Self {
        TestFunction::Combination { terms }
    }

    /// Zero function.
    pub fn zero() -> Self {
        TestFunction::Combination { terms: vec![] }
    }

    /// Whether the support is bounded.
    pub fn is_compact(&self) -> bool {
        match self {
            TestFunction::Antiderivative { compact, .. } => *compact,
            TestFunction::Combination { terms } => terms.iter().all(|(_, f)| f.is_compact()),
            _ => true,
        }
    }

    /// `∫ f`, i.e. `f^(0)`.
    pub fn mean(&self) -> Result<Complex64> {
        Ok(self.transform(Complex64::new(0.0, 0.0))?.value)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        TestFunction::Combination {
            terms: vec![(c, self.clone())],
        }
    }

    fn eval_antiderivative(inner: &TestFunction, x: f64) -> Complex64 {
        let (a, b) = inner.support();
        if x <= a {
            return Complex64::new(0.0, 0.0);
        }
        let upper = x.min(b);
        let panels = ((upper - a) * 8.0).ceil().max(1.0) as usize;
        GaussLegendre::cached(32).integrate(|y| inner.eval(y), a, upper, panels)
    }
}

fn check_shape(center: f64, half_width: f64) -> Result<()> {
    if !(center.is_finite() && half_width.is_finite() && half_width > 0.0) {
        return Err(WeilError::Domain(format!(
            "bump needs finite center and positive half width, got ({center}, {half_width})"
        )));
    }
    Ok(())
}

impl CompactFunction for TestFunction {
    fn support(&self) -> (f64, f64) {
        match self {
            TestFunction::Bump { center, half_width } | TestFunction::BumpDerivative { center, half_width } => {
                (center - half_width, center + half_width)
            }
            TestFunction::Antiderivative { inner, .. } => inner.support(),
            TestFunction::Combination { terms } => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for (_, f) in terms {
                    let (a, b) = f.support();
                    lo = lo.min(a);
                    hi = hi.max(b);
                }
                if lo > hi {
                    (0.0, 0.0)
                } else {
                    (lo, hi)
                }
            }
        }
    }

    fn eval(&self, x: f64) -> Complex64 {
        match self {
            TestFunction::Bump { center, half_width } => Complex64::new(unit_bump((x - center) / half_width), 0.0),
            TestFunction::BumpDerivative { center, half_width } => {
                Complex64::new(unit_bump_derivative((x - center) / half_width) / half_width, 0.0)
            }
            TestFunction::Antiderivative { inner, .. } => Self::eval_antiderivative(inner, x),
            TestFunction::Combination { terms } => terms.iter().map(|(c, f)| c * f.eval(x)).sum(),
        }
    }
}

impl Transformable for TestFunction {
    fn transform(&self, z: Complex64) -> Result<QuadratureResult> {
        match self {
            TestFunction::Combination { terms } => {
                let mut value = Complex64::new(0.0, 0.0);
                let mut err = 0.0;
                for (c, f) in terms {
                    let r = f.transform(z)?;
                    value += c * r.value;
                    err += c.norm() * r.error_estimate;
                }
                Ok(QuadratureResult::new(value, err))
            }
            TestFunction::Antiderivative { inner, compact } => {
                if !compact {
                    return Err(WeilError::Domain(
                        "antiderivative of a function with nonzero mean is not compactly supported".into(),
                    ));
                }
                // ψ^(z) = φ^(z)/(-iz) away from the origin
                if z.norm() > 0.5 {
                    let r = inner.transform(z)?;
                    let d = -Complex64::i() * z;
                    Ok(QuadratureResult::new(r.value / d, r.error_estimate / d.norm()))
                } else {
                    fourier_at(self, z)
                }
            }
            _ => fourier_at(self, z),
        }
    }
}

/// `ψ(x) = ∫_{-∞}^x φ`. Derivatives of bumps integrate in closed form; other
/// inputs are flagged non-compact unless their mean vanishes.
pub fn antiderivative(phi: &TestFunction) -> Result<TestFunction> {
    match phi {
        TestFunction::BumpDerivative { center, half_width } => Ok(TestFunction::Bump {
            center: *center,
            half_width: *half_width,
        }),
        TestFunction::Combination { terms }
            if terms.iter().all(|(_, f)| matches!(f, TestFunction::BumpDerivative { .. })) =>
        {
            let terms = terms
                .iter()
                .map(|(c, f)| antiderivative(f).map(|g| (*c, g)))
                .collect::<Result<Vec<_>>>()?;
            Ok(TestFunction::Combination { terms })
        }
        other => {
            let mean = other.mean()?;
            let scale = l1_norm(other);
            Ok(TestFunction::Antiderivative {
                inner: Box::new(other.clone()),
                compact: mean.norm() <= 1e-12 * scale.max(1.0),
            })
        }
    }
}

fn l1_norm(f: &TestFunction) -> f64 {
    let (a, b) = f.support();
    if b <= a {
        return 0.0;
    }
    let panels = ((b - a) * 8.0).ceil() as usize;
    GaussLegendre::cached(32).integrate(|x| Complex64::new(f.eval(x).norm(), 0.0), a, b, panels).re
}

/// Random bump with support inside `[lo, hi]`.
pub fn random_bump<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> TestFunction {
    let span = hi - lo;
    let half_width = rng.gen_range(0.1 * span..0.5 * span) / 2.0 + 0.05 * span;
    let half_width = half_width.min(span / 2.0);
    let center = rng.gen_range(lo + half_width..=hi - half_width);
    TestFunction::Bump { center, half_width }
}

/// Random combination of bumps inside `[lo, hi]` with complex weights.
pub fn random_combination<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, terms: usize) -> TestFunction {
    let terms = (0..terms)
        .map(|_| {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            (c, random_bump(rng, lo, hi))
        })
        .collect();
    TestFunction::Combination { terms }
}

/// Random mean-zero function: bump derivatives plus a balanced pair of bumps.
pub fn random_mean_zero<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Result<TestFunction> {
    let mut terms = Vec::new();
    for _ in 0..2 {
        let b = random_bump(rng, lo, hi);
        let (c, w) = match b {
            TestFunction::Bump { center, half_width } => (center, half_width),
            _ => unreachable!(),
        };
        let coeff = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        terms.push((coeff, TestFunction::bump_derivative(c, w)?));
    }
    let b1 = random_bump(rng, lo, hi);
    let b2 = random_bump(rng, lo, hi);
    let m1 = b1.mean()?;
    let m2 = b2.mean()?;
    let c1 = Complex64::new(rng.gen_range(0.2..1.0), rng.gen_range(-1.0..1.0));
    terms.push((c1, b1));
    terms.push((-c1 * m1 / m2, b2));
    Ok(TestFunction::Combination { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_bump_integral() {
        // ∫_{-1}^{1} exp(-1/(1-x²)) dx, adaptive quadrature at 1e-14
        let b = TestFunction::bump(0.0, 1.0).unwrap();
        let v = b.transform(c(0.0, 0.0)).unwrap();
        assert!((v.value - c(0.443_993_816_168_079_4, 0.0)).norm() < 1e-12, "{}", v.value);
    }

    #[test]
    fn translation_law() {
        let b = TestFunction::bump(0.0, 0.7).unwrap();
        let bt = TestFunction::bump(1.3, 0.7).unwrap();
        let z = c(4.2, 0.3);
        let lhs = bt.transform(z).unwrap().value;
        let rhs = (Complex64::i() * z * 1.3).exp() * b.transform(z).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn odd_function_has_zero_mean() {
        let d = TestFunction::bump_derivative(0.0, 1.0).unwrap();
        assert!(d.mean().unwrap().norm() < 1e-14);
    }

    #[test]
    fn antiderivative_rules() {
        let d = TestFunction::bump_derivative(0.5, 0.8).unwrap();
        assert_eq!(antiderivative(&d).unwrap(), TestFunction::bump(0.5, 0.8).unwrap());
        let b = TestFunction::bump(0.0, 1.0).unwrap();
        let a = antiderivative(&b).unwrap();
        assert!(!a.is_compact());
        assert!(a.transform(c(3.0, 0.0)).is_err());
    }

    #[test]
    fn antiderivative_transform_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let phi = random_mean_zero(&mut rng, -2.0, 2.0).unwrap();
        let psi = antiderivative(&phi).unwrap();
        let generic = TestFunction::Antiderivative {
            inner: Box::new(phi.clone()),
            compact: true,
        };
        let lambda = c(3.0, 0.0);
        // direct quadrature of the sampled antiderivative
        let direct = fourier_at(&generic, lambda).unwrap().value;
        let via = phi.transform(lambda).unwrap().value / (-Complex64::i() * lambda);
        assert!((direct - via).norm() < 1e-10, "{direct} vs {via}");
        assert!((psi.transform(lambda).unwrap().value - via).norm() < 1e-10);
        assert!(psi.is_compact());
    }

    #[test]
    fn random_helpers_respect_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = random_combination(&mut rng, -3.0, 3.0, 3);
            let (a, b) = f.support();
            assert!(a >= -3.0 && b <= 3.0);
            let m = random_mean_zero(&mut rng, -3.0, 3.0).unwrap();
            assert!(m.mean().unwrap().norm() < 1e-12);
        }
    }
}
