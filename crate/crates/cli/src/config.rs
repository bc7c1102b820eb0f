//! Run configuration: a `key = value` file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use weil_core::numerics::Grid;
use weil_core::report::Tolerances;
use weil_core::suites::DEFAULT_CUTOFF;
use weil_core::zero_catalog::MAX_HEIGHT;

use crate::error::CliError;

/// Where the zero catalog comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroSourceSpec {
    /// Plain-text ordinate table.
    Table(PathBuf),
    /// Root finding, reusing the cache when it already holds `T`.
    Compute,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub zero_source: ZeroSourceSpec,
    pub height_t: f64,
    pub freq_cutoff_z: f64,
    pub grid: Option<Grid>,
    pub tolerances: Tolerances,
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            zero_source: ZeroSourceSpec::Compute,
            height_t: 100.0,
            freq_cutoff_z: DEFAULT_CUTOFF,
            grid: None,
            tolerances: Tolerances::default(),
            out_dir: PathBuf::from("weil-lab-out"),
            seed: None,
        }
    }
}

/// Values that may come from either the file or the flags.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub zeros: Option<PathBuf>,
    pub compute_zeros: bool,
    pub height_t: Option<f64>,
    pub cutoff_z: Option<f64>,
    pub grid: Option<String>,
    pub out: Option<PathBuf>,
    pub tol: Vec<String>,
    pub seed: Option<u64>,
}

impl RunConfig {
    /// Defaults, then `file`, then `flags`.
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            cfg.apply(&parse_file(&text)?)?;
        }
        cfg.apply(flags)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, o: &Overrides) -> Result<(), CliError> {
        if o.zeros.is_some() && o.compute_zeros {
            return Err(CliError::Usage("--zeros and --compute-zeros are exclusive".into()));
        }
        if let Some(p) = &o.zeros {
            self.zero_source = ZeroSourceSpec::Table(p.clone());
        }
        if o.compute_zeros {
            self.zero_source = ZeroSourceSpec::Compute;
        }
        if let Some(t) = o.height_t {
            self.height_t = t;
        }
        if let Some(z) = o.cutoff_z {
            self.freq_cutoff_z = z;
        }
        if let Some(g) = &o.grid {
            self.grid = Some(Grid::parse_spec(g).map_err(|e| CliError::Usage(format!("--grid: {e}")))?);
        }
        if let Some(p) = &o.out {
            self.out_dir = p.clone();
        }
        for entry in &o.tol {
            let (id, val) = entry
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--tol expects <id>=<value>, got '{entry}'")))?;
            let v: f64 = val
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--tol {id}: '{val}' is not a number")))?;
            self.tolerances.set(id.trim(), v);
        }
        if o.seed.is_some() {
            self.seed = o.seed;
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.height_t > 0.0 && self.height_t <= MAX_HEIGHT) {
            return Err(CliError::Usage(format!("height_T must lie in (0, {MAX_HEIGHT}], got {}", self.height_t)));
        }
        if !(self.freq_cutoff_z.is_finite() && self.freq_cutoff_z > 0.0) {
            return Err(CliError::Usage(format!("cutoff_Z must be positive, got {}", self.freq_cutoff_z)));
        }
        Ok(())
    }

    /// `ψ_γ` needs a cut-off of at least [`weil_core::debranges::MIN_CUTOFF`].
    pub fn require_psi_cutoff(&self) -> Result<(), CliError> {
        let min = weil_core::debranges::MIN_CUTOFF;
        if self.freq_cutoff_z < min {
            return Err(CliError::Usage(format!("cutoff_Z must be at least {min} for ψ_γ, got {}", self.freq_cutoff_z)));
        }
        Ok(())
    }
}

/// Parse `key = value` lines; `#` starts a comment. Tolerances use
/// `tol.<check_id> = <value>`.
pub fn parse_file(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| CliError::Usage(format!("config line {}: {msg}", n + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        let num = || value.parse::<f64>().map_err(|_| bad(&format!("'{value}' is not a number")));
        match key {
            "zeros" => o.zeros = Some(PathBuf::from(value)),
            "compute_zeros" => {
                o.compute_zeros = value.parse().map_err(|_| bad("compute_zeros expects true or false"))?;
            }
            "height_T" => o.height_t = Some(num()?),
            "cutoff_Z" => o.cutoff_z = Some(num()?),
            "grid" => o.grid = Some(value.to_string()),
            "out" => o.out = Some(PathBuf::from(value)),
            "seed" => o.seed = Some(value.parse().map_err(|_| bad("seed expects an unsigned integer"))?),
            k if k.starts_with("tol.") => o.tol.push(format!("{}={value}", &k[4..])),
            other => return Err(bad(&format!("unknown key '{other}'"))),
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = parse_file("height_T = 50\n# comment\ncutoff_Z = 800 # trailing\ntol.psi.norm = 0.5\n").unwrap();
        let mut cfg = RunConfig::default();
        cfg.apply(&file).unwrap();
        assert_eq!(cfg.height_t, 50.0);
        assert_eq!(cfg.tolerances.get("psi.norm", 1.0), 0.5);
        let flags = Overrides {
            height_t: Some(30.0),
            tol: vec!["psi.norm=0.25".into()],
            ..Default::default()
        };
        cfg.apply(&flags).unwrap();
        assert_eq!(cfg.height_t, 30.0);
        assert_eq!(cfg.freq_cutoff_z, 800.0);
        assert_eq!(cfg.tolerances.get("psi.norm", 1.0), 0.25);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_file("nonsense").is_err());
        assert!(parse_file("height_T = abc").is_err());
        assert!(parse_file("colour = blue").is_err());
        let flags = Overrides {
            height_t: Some(500.0),
            ..Default::default()
        };
        assert!(matches!(RunConfig::resolve(None, &flags), Err(CliError::Usage(_))));
        let both = Overrides {
            zeros: Some("z.txt".into()),
            compute_zeros: true,
            ..Default::default()
        };
        assert!(RunConfig::resolve(None, &both).is_err());
    }
}
