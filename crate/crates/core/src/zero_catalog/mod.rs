//! The set Γ of nontrivial-zero ordinates with multiplicities.

mod cache;
mod compute;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WeilError};

pub use cache::ZeroCache;
pub use compute::{compute_zeros, critical_line_real, MAX_HEIGHT};

/// Where a catalog came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroSource {
    Table,
    Computed,
    Synthetic,
}

impl fmt::Display for ZeroSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroSource::Table => "table",
            ZeroSource::Computed => "computed",
            ZeroSource::Synthetic => "synthetic",
        })
    }
}

/// Ascending positive ordinates `γ ≤ T` with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    ordinates: Vec<f64>,
    multiplicities: Vec<u32>,
    height_t: f64,
    source: ZeroSource,
}

impl ZeroSet {
    pub fn new(ordinates: Vec<f64>, multiplicities: Vec<u32>, height_t: f64, source: ZeroSource) -> Result<Self> {
        if !(height_t.is_finite() && height_t > 0.0) {
            return Err(WeilError::Domain(format!("height T must be positive, got {height_t}")));
        }
        if ordinates.len() != multiplicities.len() {
            return Err(WeilError::Misaligned {
                left: ordinates.len(),
                right: multiplicities.len(),
            });
        }
        for (i, &g) in ordinates.iter().enumerate() {
            if !(g.is_finite() && g > 0.0 && g <= height_t) {
                return Err(WeilError::Domain(format!("ordinate {g} outside (0, {height_t}]")));
            }
            if i > 0 && ordinates[i - 1] >= g {
                return Err(WeilError::Domain(format!("ordinates not strictly ascending at {g}")));
            }
        }
        if multiplicities.contains(&0) {
            return Err(WeilError::Domain("multiplicities must be at least 1".into()));
        }
        Ok(Self {
            ordinates,
            multiplicities,
            height_t,
            source,
        })
    }

    /// Simple zeros at the given ordinates.
    pub fn simple(ordinates: Vec<f64>, height_t: f64, source: ZeroSource) -> Result<Self> {
        let m = vec![1; ordinates.len()];
        Self::new(ordinates, m, height_t, source)
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn height_t(&self) -> f64 {
        self.height_t
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// `(γ, m_γ)` for positive ordinates.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (f64, u32)> + ExactSizeIterator + '_ {
        self.ordinates.iter().copied().zip(self.multiplicities.iter().copied())
    }

    /// Multiplicity of the catalog zero within `tol` of `gamma`.
    pub fn multiplicity_of(&self, gamma: f64, tol: f64) -> Result<u32> {
        self.index_of(gamma, tol).map(|i| self.multiplicities[i])
    }

    /// Index of the catalog zero within `tol` of `gamma` (either sign).
    pub fn index_of(&self, gamma: f64, tol: f64) -> Result<usize> {
        let g = gamma.abs();
        let i = self.ordinates.partition_point(|&x| x < g - tol);
        match self.ordinates.get(i) {
            Some(&x) if (x - g).abs() <= tol => Ok(i),
            _ => Err(WeilError::NotInCatalog(gamma)),
        }
    }

    /// Keep ordinates `≤ t`.
    pub fn truncate_to(&self, t: f64) -> Result<Self> {
        let n = self.ordinates.partition_point(|&x| x <= t);
        Self::new(
            self.ordinates[..n].to_vec(),
            self.multiplicities[..n].to_vec(),
            t,
            self.source,
        )
    }

    /// Total count with multiplicity.
    pub fn counted(&self) -> u64 {
        self.multiplicities.iter().map(|&m| m as u64).sum()
    }

    /// Bound on `Σ_{γ>T} m_γ/γ²` over both signs: `2·log(T)/T`.
    pub fn tail_density_bound(&self) -> f64 {
        tail_density_bound(self.height_t)
    }
}

/// `2·log(T)/T`, from `Σ_{γ>T} m_γ/γ² ≤ log(T)/T` on each half-line.
pub fn tail_density_bound(height_t: f64) -> f64 {
    let t = height_t.max(std::f64::consts::E);
    2.0 * t.ln() / t
}

/// `(−γ, m)` then `(γ, m)`, ascending.
pub fn iterate_symmetric(zs: &ZeroSet) -> Vec<(f64, u32)> {
    let neg = zs.iter().rev().map(|(g, m)| (-g, m));
    neg.chain(zs.iter()).collect()
}

/// Parse an ordinate table (one decimal per line, ascending). Blank lines and
/// lines starting with `#` are skipped. Ordinates above `height_t` are dropped.
pub fn parse_zeros(text: &str, height_t: f64) -> Result<ZeroSet> {
    let mut all = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line.parse().map_err(|e| WeilError::Parse {
            line: line_no,
            message: format!("{e}: {line:?}"),
        })?;
        if !(value.is_finite() && value > 0.0) {
            return Err(WeilError::Parse {
                line: line_no,
                message: format!("ordinate must be positive, got {value}"),
            });
        }
        if let Some(&prev) = all.last() {
            if value <= prev {
                return Err(WeilError::Parse {
                    line: line_no,
                    message: format!("not ascending: {value} after {prev}"),
                });
            }
        }
        all.push(value);
    }
    let kept: Vec<f64> = all.into_iter().take_while(|&g| g <= height_t).collect();
    if kept.is_empty() {
        log::warn!("zero table has no ordinates at or below T = {height_t}");
    }
    ZeroSet::simple(kept, height_t, ZeroSource::Table)
}

/// Load an ordinate table from disk; see [`parse_zeros`].
pub fn load_zeros(path: impl AsRef<Path>, height_t: f64) -> Result<ZeroSet> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| WeilError::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_zeros(&text, height_t)
}

/// Table format: one ordinate per line with 12 decimals.
pub fn format_zeros(zs: &ZeroSet) -> String {
    let mut out = String::with_capacity(zs.len() * 20);
    for g in zs.ordinates() {
        out.push_str(&format!("{g:.12}\n"));
    }
    out
}

/// Riemann–von Mangoldt cross-check of a catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    pub height_t: f64,
    pub count: u64,
    pub expected: f64,
    pub discrepancy: f64,
    pub pass: bool,
}

/// Tolerated `|count − N(T)|`.
pub const COUNTING_TOLERANCE: f64 = 2.0;

/// `N(T) ≈ (T/2π)·log(T/2πe) + 7/8`.
pub fn counting_estimate(height_t: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    height_t / two_pi * (height_t / (two_pi * std::f64::consts::E)).ln() + 7.0 / 8.0
}

pub fn counting_check(zs: &ZeroSet) -> CountingReport {
    let expected = counting_estimate(zs.height_t());
    let count = zs.counted();
    let discrepancy = (count as f64 - expected).abs();
    CountingReport {
        height_t: zs.height_t(),
        count,
        expected,
        discrepancy,
        pass: discrepancy <= COUNTING_TOLERANCE,
    }
}
