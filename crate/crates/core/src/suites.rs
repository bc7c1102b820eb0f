//! Verification suites: each runs a family of identities and returns one
//! [`CheckRow`] per identity, with the worst case over its samples.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::debranges::{
    frequency_grid, psi_gamma_with, restriction_isometry_check, theta_prime_at_zero, time_grid, v_membership,
    BasisFunction, KOperator, PsiGamma, ThetaTable,
};
use crate::error::{Result, WeilError};
use crate::exec::Exec;
use crate::hilbert_polya::{
    decompose_lw, eigen_residual, eigenbasis_gram, multiplication_spot_check, spectral_coeffs, ExtensionParams,
};
use crate::numerics::{quadrature::GaussLegendre, CompactFunction, Domain, Grid, GridFunction};
use crate::report::{CheckRow, Report, Tolerances};
use crate::special_fn::{gamma::log_gamma, omega_profile, theta_xi, xi, xi_scaled, zeta};
use crate::weil_form::{
    antiderivative, gram_matrix, hermitian_min_eigenvalue, random_bump, random_mean_zero, screw_form,
    screw_form_spectral, screw_g_literal, screw_g_value, tau_norm, interpolation_witness, transform_at_zeros, weil_pairing,
    TestFunction,
};
use crate::zero_catalog::{compute_zeros, counting_check, ZeroSet, ZeroSource, COUNTING_TOLERANCE};

/// `ξ(1/2)` to 30 digits.
const XI_HALF: f64 = 0.497_120_778_188_314_1;
/// `ξ(0.3 + 7i)` to 30 digits.
const XI_REFERENCE: (f64, f64) = (0.3, 7.0);
const XI_REFERENCE_VALUE: (f64, f64) = (0.152_009_453_389_406_78, -0.010_817_164_613_535_754);

/// Frequency band used for `K` on compactly supported bumps; their spectra
/// are negligible beyond it.
pub const BUMP_BAND: f64 = 500.0;
/// Time window for `K` on bumps supported in `[-3, 3]`.
pub const BUMP_WINDOW: (f64, f64) = (-24.0, 24.0);
/// Default time window for `ψ_γ`.
pub const PSI_WINDOW: (f64, f64) = (-4.0, 96.0);
/// Default frequency cut-off for `ψ_γ`.
pub const DEFAULT_CUTOFF: f64 = 5000.0;

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 6] = ["special", "weil", "debranges", "screw", "hilbert_polya", "all"];

/// Inputs shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub zeros: ZeroSet,
    /// Frequency cut-off `Z` for `ψ_γ`.
    pub z_cut: f64,
    /// Time grid for `ψ_γ`; defaults to [`PSI_WINDOW`] at 1.25× Nyquist.
    pub grid: Option<Grid>,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub exec: Exec,
}

impl SuiteConfig {
    pub fn new(zeros: ZeroSet) -> Self {
        Self {
            zeros,
            z_cut: DEFAULT_CUTOFF,
            grid: None,
            tolerances: Tolerances::default(),
            seed: 20_240_601,
            exec: Exec::default(),
        }
    }

    /// The `ψ_γ` time grid at cut-off `z_cut`.
    pub fn time_grid_at(&self, z_cut: f64) -> Result<Grid> {
        match self.grid {
            Some(g) if z_cut == self.z_cut => Ok(g),
            Some(g) => time_grid(z_cut, g.x_min(), g.x_max()),
            None => time_grid(z_cut, PSI_WINDOW.0, PSI_WINDOW.1),
        }
    }

    fn tol(&self, id: &str, default: f64) -> f64 {
        self.tolerances.get(id, default)
    }

    fn rng(&self, stream: u64) -> StdRng {
        StdRng::seed_from_u64(self.seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Runs suites and keeps the `Θ` tables they share.
pub struct Session {
    cfg: SuiteConfig,
    doubled: OnceLock<ThetaTable>,
    base: OnceLock<ThetaTable>,
}

impl Session {
    pub fn new(cfg: SuiteConfig) -> Self {
        Self {
            cfg,
            doubled: OnceLock::new(),
            base: OnceLock::new(),
        }
    }

    pub fn config(&self) -> &SuiteConfig {
        &self.cfg
    }

    /// `Θ` on `[-2Z, 2Z]` for outputs on the `2Z` time grid.
    pub fn doubled_table(&self) -> Result<&ThetaTable> {
        if let Some(t) = self.doubled.get() {
            return Ok(t);
        }
        let z2 = 2.0 * self.cfg.z_cut;
        let t = ThetaTable::xi(frequency_grid(z2, &self.cfg.time_grid_at(z2)?)?, self.cfg.exec)?;
        Ok(self.doubled.get_or_init(|| t))
    }

    /// `Θ` on `[-Z, Z]`, cut from the doubled table when that already exists.
    pub fn table(&self) -> Result<&ThetaTable> {
        if let Some(t) = self.base.get() {
            return Ok(t);
        }
        let out = self.cfg.time_grid_at(self.cfg.z_cut)?;
        let wanted = frequency_grid(self.cfg.z_cut, &out)?;
        let from_doubled = self
            .doubled
            .get()
            .and_then(|d| d.restrict(self.cfg.z_cut).ok())
            .filter(|t| t.grid().same_as(&wanted));
        let t = match from_doubled {
            Some(t) => t,
            None => ThetaTable::xi(wanted, self.cfg.exec)?,
        };
        Ok(self.base.get_or_init(|| t))
    }

    pub fn run(&self, suite: &str) -> Result<Report> {
        match suite {
            "special" => Ok(self.special()),
            "weil" => Ok(self.weil()),
            "debranges" => Ok(self.debranges()),
            "screw" => Ok(self.screw()),
            "hilbert_polya" => Ok(self.hilbert_polya()),
            "all" => {
                let mut r = Report::new("all");
                for s in &SUITES[..5] {
                    r.extend(self.run(s)?);
                }
                Ok(r)
            }
            other => Err(WeilError::Domain(format!(
                "unknown suite '{other}'; expected one of {}",
                SUITES.join(", ")
            ))),
        }
    }

    fn special(&self) -> Report {
        let cfg = &self.cfg;
        let mut r = Report::new("special");
        let half = xi(Complex64::new(0.5, 0.0)).xi;
        r.push(CheckRow::at_most(
            "xi.half_value",
            "ξ(1/2) = 0.4971207781883141099…",
            (half.re - XI_HALF).abs().max(half.im.abs()) / XI_HALF,
            cfg.tol("xi.half_value", 1e-10),
        ));
        let s_ref = Complex64::new(XI_REFERENCE.0, XI_REFERENCE.1);
        let v_ref = Complex64::new(XI_REFERENCE_VALUE.0, XI_REFERENCE_VALUE.1);
        r.push(CheckRow::at_most(
            "xi.reference_point",
            "ξ(0.3+7i) = 0.15200945338940678… − 0.01081716461353575…i",
            (xi(s_ref).xi - v_ref).norm() / v_ref.norm(),
            cfg.tol("xi.reference_point", 1e-10),
        ));
        r.push(guarded("xi.functional_equation", "ξ(s) = ξ(1−s)", || {
            let mut rng = cfg.rng(1);
            let mut worst: f64 = 0.0;
            for _ in 0..100 {
                let s = Complex64::new(rng.gen_range(0.05..0.95), rng.gen_range(-40.0..40.0));
                let a = xi_from_zeta(s)?;
                let b = xi_from_zeta(1.0 - s)?;
                let c = xi(s).xi;
                worst = worst.max((a - b).norm() / a.norm()).max((a - c).norm() / a.norm());
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("xi.functional_equation", 1e-10)))
        }));
        r.push(guarded("theta.at_zero", "Θ(0) = 1", || {
            let v = theta_xi(Complex64::new(0.0, 0.0))?;
            Ok(CheckRow::at_most("", "", (v - 1.0).norm(), cfg.tol("theta.at_zero", 1e-12)))
        }));
        r.push(guarded("theta.unimodular", "|Θ(x)| = 1 for real x", || {
            let mut rng = cfg.rng(2);
            let mut worst: f64 = 0.0;
            for _ in 0..100 {
                let x = rng.gen_range(-1000.0..1000.0);
                worst = worst.max((theta_xi(Complex64::new(x, 0.0))?.norm() - 1.0).abs());
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("theta.unimodular", 1e-12)))
        }));
        r.push(guarded("theta.contraction", "|Θ(z)| < 1 for Im z > 0", || {
            let mut rng = cfg.rng(3);
            let mut worst: f64 = 0.0;
            for _ in 0..50 {
                let z = Complex64::new(rng.gen_range(-60.0..60.0), rng.gen_range(0.05..5.0));
                worst = worst.max(theta_xi(z)?.norm());
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("theta.contraction", 1.0)))
        }));
        r.push(guarded("omega.transform", "∫ ω(x) e^{izx} dx = ξ(1/2 − iz)", || {
            let rule = GaussLegendre::cached(32);
            let mut worst: f64 = 0.0;
            for z in [0.0, 1.0, 2.0, 5.0] {
                let mut err = None;
                let v = rule.integrate(
                    |x| match omega_profile(x) {
                        Ok(w) => Complex64::new(w * (z * x).cos(), 0.0),
                        Err(e) => {
                            err.get_or_insert(e);
                            Complex64::new(0.0, 0.0)
                        }
                    },
                    -5.0,
                    5.0,
                    40,
                );
                if let Some(e) = err {
                    return Err(e);
                }
                worst = worst.max((v - xi(Complex64::new(0.5, -z)).xi).norm());
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("omega.transform", 1e-6)))
        }));
        let zs = &cfg.zeros;
        let residual = zs
            .ordinates()
            .iter()
            .map(|&g| {
                let x = xi_scaled(Complex64::new(0.5, g));
                x.value.norm() / x.derivative.norm()
            })
            .fold(0.0, f64::max);
        r.push(CheckRow::at_most(
            "catalog.residual",
            "|ξ(1/2+iγ)| ≤ 1e−8·|ξ'(1/2+iγ)|",
            residual,
            cfg.tol("catalog.residual", 1e-8),
        ));
        let counting = counting_check(zs);
        r.push(CheckRow::at_most(
            "catalog.counting",
            "|#{γ ≤ T} − ((T/2π)log(T/2πe) + 7/8)| ≤ 2",
            counting.discrepancy,
            cfg.tol("catalog.counting", COUNTING_TOLERANCE),
        ));
        if zs.source() != ZeroSource::Synthetic {
            r.push(guarded("catalog.compute_agreement", "root-found ordinates = catalog ordinates", || {
                let computed = compute_zeros(zs.height_t(), cfg.exec)?;
                if computed.len() != zs.len() {
                    return Ok(CheckRow::at_most("", "", f64::INFINITY, 1e-6));
                }
                let worst = computed
                    .ordinates()
                    .iter()
                    .zip(zs.ordinates())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                Ok(CheckRow::at_most("", "", worst, cfg.tol("catalog.compute_agreement", 1e-6)))
            }));
        }
        r
    }

    fn weil(&self) -> Report {
        let cfg = &self.cfg;
        let zs = &cfg.zeros;
        let mut r = Report::new("weil");
        r.push(guarded("weil.positivity", "Re⟨ψ,ψ⟩_W ≥ −(tail_bound + quad_error)", || {
            let mut rng = cfg.rng(10);
            let bumps: Vec<TestFunction> = (0..50).map(|_| random_bump(&mut rng, -3.0, 3.0)).collect();
            let worst = cfg
                .exec
                .map_slice(&bumps, |b| weil_pairing(b, b, zs).map(|w| -w.re - w.budget()))
                .into_iter()
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(f64::NEG_INFINITY, f64::max);
            Ok(CheckRow::at_most("", "", worst, cfg.tol("weil.positivity", 0.0)))
        }));
        r.push(guarded("weil.hermitian", "⟨ψ₁,ψ₂⟩_W = conj ⟨ψ₂,ψ₁⟩_W", || {
            let mut rng = cfg.rng(11);
            let mut worst: f64 = 0.0;
            for _ in 0..10 {
                let a = random_bump(&mut rng, -3.0, 3.0);
                let b = random_bump(&mut rng, -3.0, 3.0);
                let ab = weil_pairing(&a, &b, zs)?.value();
                let ba = weil_pairing(&b, &a, zs)?.value();
                worst = worst.max((ab - ba.conj()).norm());
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("weil.hermitian", 1e-12)))
        }));
        if let Some(&g1) = zs.ordinates().first() {
            r.push(guarded("weil.basis_pairing", "⟨ψ_γ,ψ_γ⟩_W = 1/π with ψ^_γ = F_γ", || {
                let b = BasisFunction::new(g1, zs)?;
                let w = weil_pairing(&b, &b, zs)?;
                Ok(CheckRow::at_most("", "", (w.value() - 1.0 / PI).norm(), cfg.tol("weil.basis_pairing", 1e-6)))
            }));
        }
        r.push(guarded("weil.tau_norm", "⟨ψ,ψ⟩_W = Σ m_γ |ψ^(γ)|²", || {
            let mut rng = cfg.rng(12);
            let mut worst: f64 = 0.0;
            for _ in 0..10 {
                let b = random_bump(&mut rng, -3.0, 3.0);
                let w = weil_pairing(&b, &b, zs)?;
                let t = tau_norm(&transform_at_zeros(&b, zs)?, zs)?;
                worst = worst.max((t - w.re).abs() / w.re.abs().max(1e-300));
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("weil.tau_norm", 1e-12)))
        }));
        r
    }

    fn screw(&self) -> Report {
        let cfg = &self.cfg;
        let zs = &cfg.zeros;
        let mut r = Report::new("screw");
        r.push(guarded("screw.gram_psd", "G_g(t,s) = g(t−s) − g(t) − g(−s) + g(0) ⪰ 0", || {
            let mut rng = cfg.rng(20);
            let sets: Vec<Vec<f64>> = (0..100)
                .map(|_| (0..8).map(|_| rng.gen_range(-3.0..3.0)).collect())
                .collect();
            let worst = cfg
                .exec
                .map_slice(&sets, |nodes| {
                    let (min, trace) = hermitian_min_eigenvalue(&gram_matrix(nodes, zs));
                    -min / trace
                })
                .into_iter()
                .fold(f64::NEG_INFINITY, f64::max);
            Ok(CheckRow::at_most("", "", worst, cfg.tol("screw.gram_psd", 1e-8)))
        }));
        let literal = (0..=100)
            .map(|k| {
                let t = -5.0 + 0.1 * k as f64;
                (screw_g_literal(t, zs) - screw_g_value(t, zs)).norm()
            })
            .fold(0.0, f64::max);
        r.push(CheckRow::at_most(
            "screw.g_real_form",
            "Σ_γ m_γ(e^{iγt} − 1)/γ² = 2Σ_{γ>0} m_γ(cos γt − 1)/γ²",
            literal,
            cfg.tol("screw.g_real_form", 1e-13),
        ));
        r.push(guarded("screw.form_identity", "∫∫ G_g(t,s) φ₁(t) conj φ₂(s) dt ds = ⟨∫φ₁,∫φ₂⟩_W", || {
            let mut rng = cfg.rng(21);
            let phis = (0..10)
                .map(|_| random_mean_zero(&mut rng, -2.0, 2.0))
                .collect::<Result<Vec<_>>>()?;
            let ratios = cfg.exec.map_slice(&phis, |phi| -> Result<f64> {
                let q = screw_form(phi, phi, zs)?;
                let psi = antiderivative(phi)?;
                let w = weil_pairing(&psi, &psi, zs)?;
                Ok((q.value() - w.value()).norm() / (q.budget() + w.budget()))
            });
            let worst = ratios.into_iter().collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
            Ok(CheckRow::at_most("", "", worst, cfg.tol("screw.form_identity", 1.0)))
        }));
        r.push(guarded("screw.form_spectral", "∫∫ G_g φ₁ conj φ₂ = Σ m_γ φ^₁(γ) conj φ^₂(γ)/γ²", || {
            let mut rng = cfg.rng(22);
            let mut worst: f64 = 0.0;
            for _ in 0..5 {
                let phi = random_mean_zero(&mut rng, -2.0, 2.0)?;
                let q = screw_form(&phi, &phi, zs)?;
                let s = screw_form_spectral(&phi, &phi, zs)?;
                worst = worst.max((q.value() - s.value()).norm() / (q.quad_error + s.quad_error + 1e-300));
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("screw.form_spectral", 1.0)))
        }));
        r
    }

    fn debranges(&self) -> Report {
        let cfg = &self.cfg;
        let zs = &cfg.zeros;
        let mut r = Report::new("debranges");
        let mut rng = cfg.rng(30);
        let k_bumps = (|| -> Result<(f64, f64)> {
            let out = time_grid(BUMP_BAND, BUMP_WINDOW.0, BUMP_WINDOW.1)?;
            let k = KOperator::xi(BUMP_BAND, &out, cfg.exec)?;
            let mut inv: f64 = 0.0;
            let mut iso: f64 = 0.0;
            for _ in 0..20 {
                let b = random_bump(&mut rng, -3.0, 3.0);
                let psi = GridFunction::sample(out, Domain::Time, |x| b.eval(x))?;
                let kp = k.apply(&psi)?;
                let kkp = k.apply(&kp)?;
                inv = inv.max(kkp.sub(&psi)?.norm() / psi.norm());
                iso = iso.max((kp.norm() / psi.norm() - 1.0).abs());
            }
            Ok((inv, iso))
        })();
        match k_bumps {
            Ok((inv, iso)) => {
                r.push(CheckRow::at_most("k.involution", "K²ψ = ψ", inv, cfg.tol("k.involution", 1e-3)));
                r.push(CheckRow::at_most("k.isometry", "‖Kψ‖ = ‖ψ‖", iso, cfg.tol("k.isometry", 1e-3)));
            }
            Err(e) => r.push(CheckRow::failed("k.involution", "K²ψ = ψ", &e.to_string())),
        }
        let Some(&g1) = zs.ordinates().first() else {
            return r;
        };
        r.push(guarded("theta.derivative_at_zeros", "Θ'(γ)/2 = −i/m_γ", || {
            let mut worst: f64 = 0.0;
            for (g, m) in zs.iter() {
                let tp = theta_prime_at_zero(g)?;
                worst = worst.max((tp.value + Complex64::new(0.0, 2.0 / m as f64)).norm());
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("theta.derivative_at_zeros", 1e-5)))
        }));
        r.push(guarded("basis.values", "F_γ(γ') = −i δ_{γγ'}/√(m_γ π)", || {
            let bases = zs.iter().map(|(g, _)| BasisFunction::new(g, zs)).collect::<Result<Vec<_>>>()?;
            let mut diag: f64 = 0.0;
            let mut off: f64 = 0.0;
            for b in &bases {
                for (g, m) in zs.iter() {
                    let v = b.eval(Complex64::new(g, 0.0))?;
                    if g == b.gamma() {
                        diag = diag.max((v + Complex64::new(0.0, 1.0 / (m as f64 * PI).sqrt())).norm());
                    } else {
                        off = off.max(v.norm());
                    }
                }
            }
            Ok(CheckRow::at_most("", "", diag.max(off), cfg.tol("basis.values", 1e-6)))
        }));
        let table2 = match self.doubled_table() {
            Ok(t) => t,
            Err(e) => {
                r.push(CheckRow::failed("debranges.table", "Θ tabulated on [−2Z, 2Z]", &e.to_string()));
                return r;
            }
        };
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => {
                r.push(CheckRow::failed("debranges.table", "Θ tabulated on [−Z, Z]", &e.to_string()));
                return r;
            }
        };
        r.push(guarded("restriction.isometry", "‖F_γ‖²_{L²(ℝ)} = Σ_{γ'} |F_γ(γ')|² 2π/|Θ'(γ')|", || {
            let mut worst: f64 = 0.0;
            for &g in zs.ordinates().iter().take(3) {
                let c = restriction_isometry_check(&BasisFunction::new(g, zs)?, zs, table)?;
                worst = worst.max((c.lhs / c.rhs - 1.0).abs());
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("restriction.isometry", 1e-2)))
        }));
        r.push(guarded("restriction.rhs", "Σ_{γ'} |F_γ(γ')|² π m_{γ'} = 1", || {
            let mut worst: f64 = 0.0;
            for &g in zs.ordinates().iter().take(3) {
                worst = worst.max((crate::debranges::restriction_rhs(&BasisFunction::new(g, zs)?, zs)? - 1.0).abs());
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("restriction.rhs", 1e-6)))
        }));
        let psis = (|| -> Result<(PsiGamma, Option<PsiGamma>, PsiGamma, Grid)> {
            let out = cfg.time_grid_at(cfg.z_cut)?;
            let b1 = BasisFunction::new(g1, zs)?;
            let p1 = psi_gamma_with(&b1, table, &out)?;
            let p2 = match zs.ordinates().get(1) {
                Some(&g2) => Some(psi_gamma_with(&BasisFunction::new(g2, zs)?, table, &out)?),
                None => None,
            };
            let out2 = cfg.time_grid_at(2.0 * cfg.z_cut)?;
            let p1_fine = psi_gamma_with(&b1, table2, &out2)?;
            Ok((p1, p2, p1_fine, out))
        })();
        let (p1, p2, p1_fine, out) = match psis {
            Ok(p) => p,
            Err(e) => {
                r.push(CheckRow::failed("psi.build", "ψ_γ = F⁻¹(F_γ 1_{[−Z,Z]})", &e.to_string()));
                return r;
            }
        };
        let defect = 2.0 * PI * p1.function.norm_sq() - 1.0;
        let defect_fine = 2.0 * PI * p1_fine.function.norm_sq() - 1.0;
        r.push(CheckRow::at_most(
            "psi.norm",
            "2π‖ψ_γ‖² = ‖F_γ‖² = 1",
            defect.abs(),
            cfg.tol("psi.norm", p1.tail_bound.max(1e-2)),
        ));
        r.push(CheckRow::at_least(
            "psi.norm_convergence",
            "|2π‖ψ_γ‖² − 1| at Z over the same at 2Z ≥ 1.8",
            defect.abs() / defect_fine.abs(),
            cfg.tol("psi.norm_convergence", 1.8),
        ));
        r.push(guarded("psi.pairing_diagonal", "⟨ψ_γ,ψ_γ⟩_W = 1/π", || {
            let w = weil_pairing(&p1.function, &p1.function, zs)?;
            Ok(CheckRow::at_most("", "", (w.value() - 1.0 / PI).norm(), cfg.tol("psi.pairing_diagonal", 1e-5)))
        }));
        if let Some(p2) = &p2 {
            r.push(guarded("psi.pairing_cross", "⟨ψ_γ,ψ_γ'⟩_W = 0 for γ ≠ γ'", || {
                let w = weil_pairing(&p1.function, &p2.function, zs)?;
                Ok(CheckRow::at_most("", "", w.value().norm(), cfg.tol("psi.pairing_cross", 1e-5)))
            }));
        }
        let k = KOperator::new(table.clone());
        r.push(guarded("k.fixes_psi", "Kψ_γ = ψ_γ", || {
            let kp = k.apply(&p1.function)?;
            Ok(CheckRow::at_most("", "", kp.sub(&p1.function)?.norm(), cfg.tol("k.fixes_psi", 5e-2)))
        }));
        r.push(guarded("membership.negative_mass", "ψ_γ ∈ V(0): ‖ψ_γ 1_{(−∞,0)}‖² + ‖Kψ_γ 1_{(−∞,0)}‖² = 0", || {
            if out.x_min() > -crate::debranges::MEMBERSHIP_MARGIN {
                return Err(WeilError::InvalidGrid("time grid must start below −1".into()));
            }
            let m = v_membership(&p1.function, 0.0, &k)?;
            Ok(CheckRow::at_most(
                "",
                "",
                m.negative_mass + m.k_negative_mass,
                cfg.tol("membership.negative_mass", p1.tail_bound),
            ))
        }));
        r.push(guarded("witness.interpolation", "ψ^(γ) = 1, |ψ^(γ')| ≤ ε/|γ−γ'|^{1+δ}", || {
            let (_, w) = interpolation_witness(g1, zs, table, &out, 1e-3, 1.0)?;
            let value = w.value_error.max(w.max_other);
            let mut row = CheckRow::at_most("", "", value, cfg.tol("witness.interpolation", crate::weil_form::WITNESS_TOL));
            row.pass &= w.pass;
            Ok(row)
        }));
        r
    }

    fn hilbert_polya(&self) -> Report {
        let cfg = &self.cfg;
        let zs = &cfg.zeros;
        let mut r = Report::new("hilbert_polya");
        r.push(guarded("eigen.residual", "M_{π/2}G = γG for G = S_{π/2}(z)/(z−γ)", || {
            let p = ExtensionParams::xi(PI / 2.0)?;
            let rows = cfg.exec.map_range(zs.len(), |i| {
                let g = zs.ordinates()[i];
                eigen_residual(&p, g, &eigen_samples(cfg.seed, i, g)).map(|e| e.relative())
            });
            let worst = rows.into_iter().collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
            Ok(CheckRow::at_most("", "", worst, cfg.tol("eigen.residual", 1e-7)))
        }));
        r.push(guarded("eigen.perturbed", "|M_{π/2}G − γ'G| ≥ 1e−2·max|G| at γ' = γ + 0.1", || {
            let p = ExtensionParams::xi(PI / 2.0)?;
            let rows = cfg.exec.map_range(zs.len(), |i| {
                let g = zs.ordinates()[i] + 0.1;
                eigen_residual(&p, g, &eigen_samples(cfg.seed, i, g)).map(|e| e.relative())
            });
            let worst = rows
                .into_iter()
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            Ok(CheckRow::at_least("", "", worst, cfg.tol("eigen.perturbed", 1e-2)))
        }));
        r.push(guarded("multiplication.spot_check", "(iψ')^(z) = z ψ^(z)", || {
            let g = Grid::new(-3.0, 3.0, 6001)?;
            let mut rng = cfg.rng(40);
            let b = random_bump(&mut rng, -3.0, 3.0);
            let psi = GridFunction::sample(g, Domain::Time, |x| b.eval(x))?;
            let v = multiplication_spot_check(&psi, &[0.5, 2.0, 7.5, 14.0])?;
            Ok(CheckRow::at_most("", "", v, cfg.tol("multiplication.spot_check", 1e-4)))
        }));
        if zs.is_empty() {
            return r;
        }
        let table = match self.table() {
            Ok(t) => t,
            Err(e) => {
                r.push(CheckRow::failed("hilbert_polya.table", "Θ tabulated on [−Z, Z]", &e.to_string()));
                return r;
            }
        };
        r.push(guarded("eigenbasis.orthogonality", "⟨S(z)/((z−γ)E), S(z)/((z−γ')E)⟩ = 0 for γ ≠ γ'", || {
            let gammas: Vec<f64> = zs.ordinates().iter().take(4).copied().collect();
            let m = eigenbasis_gram(&gammas, table);
            let mut worst: f64 = 0.0;
            for i in 0..gammas.len() {
                for j in 0..gammas.len() {
                    if i != j {
                        worst = worst.max(m[i][j].norm() / (m[i][i].norm() * m[j][j].norm()).sqrt());
                    }
                }
            }
            Ok(CheckRow::at_most("", "", worst, cfg.tol("eigenbasis.orthogonality", 1e-2)))
        }));
        let decompositions = (|| -> Result<Vec<(f64, f64)>> {
            let out = cfg.time_grid_at(cfg.z_cut)?;
            let mut rng = cfg.rng(41);
            let mut rows = Vec::new();
            for _ in 0..10 {
                let b = random_bump(&mut rng, -3.0, 3.0);
                let psi = GridFunction::sample(out, Domain::Time, |x| b.eval(x))?;
                let d = decompose_lw(&psi, zs, table)?;
                let s0 = spectral_coeffs(&d.psi0, zs)?.max_abs();
                let w = weil_pairing(&psi, &psi, zs)?;
                let w1 = weil_pairing(&d.psi1, &d.psi1, zs)?;
                rows.push((s0, (w.value() - w1.value()).norm() / (w.budget() + w1.budget())));
            }
            Ok(rows)
        })();
        match decompositions {
            Ok(rows) => {
                let s0 = rows.iter().map(|r| r.0).fold(0.0, f64::max);
                let ratio = rows.iter().map(|r| r.1).fold(0.0, f64::max);
                r.push(CheckRow::at_most(
                    "decompose.coefficients",
                    "ψ₀ = ψ − Σ iS_γ√(m_γπ) ψ_γ has ψ^₀(γ) = 0",
                    s0,
                    cfg.tol("decompose.coefficients", 1e-5),
                ));
                r.push(CheckRow::at_most(
                    "decompose.pairing",
                    "⟨ψ,ψ⟩_W = ⟨ψ₁,ψ₁⟩_W",
                    ratio,
                    cfg.tol("decompose.pairing", 1.0),
                ));
            }
            Err(e) => r.push(CheckRow::failed("decompose.coefficients", "ψ^₀(γ) = 0", &e.to_string())),
        }
        r
    }
}

/// `ξ(s) = ½ s(s−1) π^{−s/2} Γ(s/2) ζ(s)` straight from ζ, without reflection.
fn xi_from_zeta(s: Complex64) -> Result<Complex64> {
    let log = -0.5 * s * PI.ln() + log_gamma(0.5 * s)?;
    Ok(0.5 * s * (s - 1.0) * log.exp() * zeta(s)?)
}

/// Twenty points around `γ` at radii in `[0.25, 1]`, seeded per zero.
pub fn eigen_samples(seed: u64, index: usize, gamma: f64) -> Vec<Complex64> {
    let mut rng = StdRng::seed_from_u64(seed.wrapping_add(1000 + index as u64));
    (0..20)
        .map(|_| {
            let r = rng.gen_range(0.25..1.0);
            let a = rng.gen_range(0.0..2.0 * PI);
            Complex64::new(gamma, 0.0) + Complex64::from_polar(r, a)
        })
        .collect()
}

/// Run a check that may fail to evaluate; the closure's row supplies only
/// `value`, `bound` and `pass`.
fn guarded<F: FnOnce() -> Result<CheckRow>>(id: &str, anchor: &str, f: F) -> CheckRow {
    match f() {
        Ok(mut row) => {
            row.check_id = id.to_string();
            if row.paper_anchor.is_empty() {
                row.paper_anchor = anchor.to_string();
            }
            row
        }
        Err(e) => CheckRow::failed(id, anchor, &e.to_string()),
    }
}

/// Convenience: run one suite on a fresh session.
pub fn run_suite(suite: &str, cfg: SuiteConfig) -> Result<Report> {
    Session::new(cfg).run(suite)
}
