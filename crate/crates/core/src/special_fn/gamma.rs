use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, WeilError};

const LANCZOS_G: f64 = 671.0 / 128.0;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of `log Γ(z)`.
///
/// Lanczos approximation on `Re z ≥ 1/2`; left of that the upward recurrence
/// `log Γ(z) = log Γ(z+n) - Σ log(z+k)` keeps the branch continuous off the
/// negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(WeilError::Pole {
            function: "log_gamma",
            at: z.to_string(),
        });
    }
    if z.re >= 0.5 {
        return Ok(lanczos(z));
    }
    let n = (0.5 - z.re).ceil() as usize;
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).ln();
    }
    Ok(lanczos(z + n as f64) - shift)
}

fn lanczos(z: Complex64) -> Complex64 {
    let t = z + LANCZOS_G;
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for (j, c) in LANCZOS.iter().enumerate() {
        ser += c / (z + (j + 1) as f64);
    }
    (z + 0.5) * t.ln() - t + ((2.0 * PI).sqrt() * ser).ln() - z.ln()
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(WeilError::Pole {
            function: "digamma",
            at: z.to_string(),
        });
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.norm() < 15.0 || w.re < 0.5 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    const B: [f64; 8] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];
    let inv2 = 1.0 / (w * w);
    let mut pow = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in B.iter().enumerate() {
        series += b / (2.0 * (k + 1) as f64) * pow;
        pow *= inv2;
    }
    Ok(acc + w.ln() - 0.5 / w - series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Stirling series with upward shift; independent of the Lanczos path.
    fn stirling_log_gamma(z: Complex64) -> Complex64 {
        let mut w = z;
        let mut shift = c(0.0, 0.0);
        while w.norm() < 30.0 {
            shift += w.ln();
            w += 1.0;
        }
        let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
        let mut s = c(0.0, 0.0);
        let mut p = 1.0 / w;
        for (k, bk) in b.iter().enumerate() {
            let n = 2.0 * (k + 1) as f64;
            s += bk / (n * (n - 1.0)) * p;
            p /= w * w;
        }
        (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + s - shift
    }

    #[test]
    fn classical_values() {
        assert_abs_diff_eq!(log_gamma(c(1.0, 0.0)).unwrap().norm(), 0.0, epsilon = 1e-14);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(half.re, PI.sqrt().ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(half.im, 0.0);
        let five = log_gamma(c(5.0, 0.0)).unwrap();
        assert_abs_diff_eq!(five.re, 24f64.ln(), epsilon = 1e-13);
    }

    #[test]
    fn poles_rejected() {
        for z in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(z, 0.0)), Err(WeilError::Pole { .. })));
            assert!(digamma(c(z, 0.0)).is_err());
        }
    }

    #[test]
    fn principal_branch_on_negative_axis() {
        // log Γ(-1/2) = log(2√π) - iπ on the principal branch
        let v = log_gamma(c(-0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, (2.0 * PI.sqrt()).ln(), epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, -PI, epsilon = 1e-13);
    }

    #[test]
    fn agrees_with_stirling_oracle() {
        for re in [-3.3, -0.7, 0.25, 0.5, 1.7, 4.0, 11.0] {
            for im in [-2500.0, -120.0, -13.0, -1.0, 0.3, 7.5, 60.0, 400.0, 5000.0] {
                let z = c(re, im);
                let a = log_gamma(z).unwrap();
                let b = stirling_log_gamma(z);
                assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()), "z={z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn digamma_matches_log_gamma_derivative() {
        for z in [c(0.25, 0.0), c(0.25, 30.0), c(3.0, -2.0), c(-1.5, 0.5), c(0.75, 2500.0), c(0.25, -500.0)] {
            let h = 1e-5;
            let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
            let d = digamma(z).unwrap();
            assert!((fd - d).norm() < 1e-7 * (1.0 + d.norm()), "z={z}");
        }
        // ψ(1) = -γ_E
        assert_abs_diff_eq!(digamma(c(1.0, 0.0)).unwrap().re, -0.577_215_664_901_532_9, epsilon = 1e-14);
    }
}
