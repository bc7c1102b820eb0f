use std::fs;
use std::path::{Path, PathBuf};

use super::{format_zeros, parse_zeros, ZeroSet, ZeroSource};
use crate::error::{Result, WeilError};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "WEIL_LAB_CACHE";
const DEFAULT_DIR: &str = ".weil-lab-cache";

/// Directory of cached catalogs, one `zeros_T{T}.txt` per height.
#[derive(Debug, Clone)]
pub struct ZeroCache {
    dir: PathBuf,
}

impl ZeroCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$WEIL_LAB_CACHE`, else `./.weil-lab-cache`.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::new(d),
            _ => Self::new(DEFAULT_DIR),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, height_t: f64) -> PathBuf {
        self.dir.join(format!("zeros_T{height_t}.txt"))
    }

    pub fn store(&self, zs: &ZeroSet) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(zs.height_t());
        fs::write(&path, format_zeros(zs))?;
        Ok(path)
    }

    /// Cached catalog for exactly this `T`, if present.
    pub fn load(&self, height_t: f64) -> Result<Option<ZeroSet>> {
        let path = self.path_for(height_t);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).map_err(|e| WeilError::Io(format!("{}: {e}", path.display())))?;
        let zs = parse_zeros(&text, height_t)?;
        ZeroSet::new(zs.ordinates().to_vec(), zs.multiplicities().to_vec(), height_t, ZeroSource::Computed).map(Some)
    }

    /// Heights with a cached catalog, ascending. A missing directory is empty.
    pub fn list(&self) -> Result<Vec<f64>> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(vec![]),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for entry in entries {
            let name = entry?.file_name();
            let name = name.to_string_lossy();
            if let Some(t) = name
                .strip_prefix("zeros_T")
                .and_then(|r| r.strip_suffix(".txt"))
                .and_then(|t| t.parse::<f64>().ok())
            {
                out.push(t);
            }
        }
        out.sort_by(f64::total_cmp);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ZeroCache::new(dir.path());
        assert!(cache.list().unwrap().is_empty());
        assert!(cache.load(30.0).unwrap().is_none());
        let zs = ZeroSet::simple(vec![14.134725141734693, 21.022039638771555], 30.0, ZeroSource::Computed).unwrap();
        let p = cache.store(&zs).unwrap();
        let first = fs::read(&p).unwrap();
        let back = cache.load(30.0).unwrap().unwrap();
        cache.store(&back).unwrap();
        assert_eq!(first, fs::read(&p).unwrap());
        assert!((back.ordinates()[1] - 21.022039638771555).abs() < 1e-12);
        assert_eq!(cache.list().unwrap(), vec![30.0]);
    }

    #[test]
    fn missing_directory_lists_empty() {
        let cache = ZeroCache::new("/nonexistent/weil/cache/dir");
        assert!(cache.list().unwrap().is_empty());
    }
}
