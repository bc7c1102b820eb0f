use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use num_complex::Complex64;
use weil_core::debranges::{frequency_grid, psi_gamma_with, time_grid, v_membership, BasisFunction, KOperator, ThetaTable};
use weil_core::numerics::{Domain, Grid, GridFunction};
use weil_core::special_fn::omega_profile;
use weil_core::suites::{Session, SuiteConfig, PSI_WINDOW};
use weil_core::weil_form::screw_g_value;
use weil_core::zero_catalog::{compute_zeros, load_zeros, ZeroCache, ZeroSet};
use weil_core::Exec;

use crate::config::{RunConfig, ZeroSourceSpec};
use crate::error::CliError;
use crate::{ExportObject, Suite, ZerosAction};

const SCREW_G_GRID: &str = "0:5:501";
const OMEGA_GRID: &str = "-5:5:1001";
const F_GAMMA_GRID: &str = "-50:50:1001";

/// The catalog named by the configuration; computed catalogs go through the cache.
pub fn resolve_zeros(cfg: &RunConfig) -> Result<ZeroSet, CliError> {
    match &cfg.zero_source {
        ZeroSourceSpec::Table(path) => Ok(load_zeros(path, cfg.height_t)?),
        ZeroSourceSpec::Compute => {
            let cache = ZeroCache::from_env();
            if let Some(zs) = cache.load(cfg.height_t)? {
                info!("using cached zeros for T = {}", cfg.height_t);
                return Ok(zs);
            }
            let zs = compute_zeros(cfg.height_t, Exec::default())?;
            match cache.store(&zs) {
                Ok(p) => info!("cached {} zeros at {}", zs.len(), p.display()),
                Err(e) => warn!("could not cache zeros: {e}"),
            }
            Ok(zs)
        }
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

pub fn verify(suite: Suite, cfg: &RunConfig) -> Result<(), CliError> {
    if matches!(suite, Suite::Debranges | Suite::HilbertPolya | Suite::All) {
        cfg.require_psi_cutoff()?;
    }
    let zeros = resolve_zeros(cfg)?;
    let mut sc = SuiteConfig::new(zeros);
    sc.z_cut = cfg.freq_cutoff_z;
    sc.grid = cfg.grid;
    sc.tolerances = cfg.tolerances.clone();
    if let Some(seed) = cfg.seed {
        sc.seed = seed;
    }
    let report = Session::new(sc).run(suite.name())?;
    for id in cfg.tolerances.ids() {
        if report.row(id).is_none() {
            warn!("tolerance override for unknown check '{id}'");
        }
    }
    for row in &report.rows {
        let tag = if row.pass { "PASS" } else { "FAIL" };
        println!("{tag}  {:<28} value {:>11.4e}  bound {:>10.3e}", row.check_id, row.value, row.bound);
    }
    let path = write_file(&cfg.out_dir, &format!("report_{}.json", suite.name()), &report.to_json())?;
    println!("report: {}", path.display());
    match report.failures().count() {
        0 => Ok(()),
        n => Err(CliError::Checks(n)),
    }
}

pub fn zeros(action: ZerosAction, cfg: &RunConfig) -> Result<(), CliError> {
    let cache = ZeroCache::from_env();
    match action {
        ZerosAction::Import { path } => {
            let zs = load_zeros(&path, cfg.height_t)?;
            let dest = cache.store(&zs)?;
            println!("imported {} ordinates up to T = {} into {}", zs.len(), cfg.height_t, dest.display());
        }
        ZerosAction::Compute => {
            let zs = compute_zeros(cfg.height_t, Exec::default())?;
            let dest = cache.store(&zs)?;
            println!("computed {} ordinates up to T = {} into {}", zs.len(), cfg.height_t, dest.display());
        }
        ZerosAction::List => {
            for t in cache.list()? {
                let count = cache.load(t)?.map(|z| z.len()).unwrap_or(0);
                println!("T = {t}\t{count} zeros\t{}", cache.path_for(t).display());
            }
        }
    }
    Ok(())
}

fn grid_or(cfg: &RunConfig, default: &str) -> Result<Grid, CliError> {
    match cfg.grid {
        Some(g) => Ok(g),
        None => Ok(Grid::parse_spec(default)?),
    }
}

fn ordinate(zs: &ZeroSet, index: usize) -> Result<f64, CliError> {
    if index == 0 || index > zs.len() {
        return Err(CliError::Usage(format!("zero index must lie in 1..={}, got {index}", zs.len())));
    }
    Ok(zs.ordinates()[index - 1])
}

pub fn export(object: ExportObject, cfg: &RunConfig) -> Result<(), CliError> {
    let written = match object {
        ExportObject::PsiGamma { index, with_k } => {
            cfg.require_psi_cutoff()?;
            let zs = resolve_zeros(cfg)?;
            let gamma = ordinate(&zs, index)?;
            let out = match cfg.grid {
                Some(g) => g,
                None => time_grid(cfg.freq_cutoff_z, PSI_WINDOW.0, PSI_WINDOW.1)?,
            };
            let table = ThetaTable::xi(frequency_grid(cfg.freq_cutoff_z, &out)?, Exec::default())?;
            let psi = psi_gamma_with(&BasisFunction::new(gamma, &zs)?, &table, &out)?;
            let mut paths = vec![write_file(&cfg.out_dir, &format!("psi_gamma_{index}.csv"), &psi.function.to_csv_string())?];
            if with_k {
                let k = KOperator::new(table);
                let kpsi = k.apply(&psi.function)?;
                paths.push(write_file(&cfg.out_dir, &format!("k_psi_gamma_{index}.csv"), &kpsi.to_csv_string())?);
                let m = v_membership(&psi.function, 0.0, &k)?;
                paths.push(write_file(&cfg.out_dir, &format!("membership_{index}.json"), &m.to_json())?);
            }
            paths
        }
        ExportObject::ScrewG => {
            let zs = resolve_zeros(cfg)?;
            let g = grid_or(cfg, SCREW_G_GRID)?;
            let f = GridFunction::sample(g, Domain::Time, |t| Complex64::new(screw_g_value(t, &zs), 0.0))?;
            vec![write_file(&cfg.out_dir, "screw_g.csv", &f.to_csv_string())?]
        }
        ExportObject::Omega => {
            let g = grid_or(cfg, OMEGA_GRID)?;
            let values = g
                .nodes()
                .map(|x| omega_profile(x).map(|w| Complex64::new(w, 0.0)))
                .collect::<Result<Vec<_>, _>>()?;
            let f = GridFunction::new(g, values, Domain::Time)?;
            vec![write_file(&cfg.out_dir, "omega.csv", &f.to_csv_string())?]
        }
        ExportObject::FGamma { index } => {
            let zs = resolve_zeros(cfg)?;
            let gamma = ordinate(&zs, index)?;
            let g = grid_or(cfg, F_GAMMA_GRID)?;
            let basis = BasisFunction::new(gamma, &zs)?;
            let values = g
                .nodes()
                .map(|x| basis.eval(Complex64::new(x, 0.0)))
                .collect::<Result<Vec<_>, _>>()?;
            let f = GridFunction::new(g, values, Domain::Frequency)?;
            vec![write_file(&cfg.out_dir, &format!("f_gamma_{index}.csv"), &f.to_csv_string())?]
        }
    };
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}
