use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WeilError};

/// Uniform grid `x_min, x_min + h, ..., x_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(WeilError::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 2 {
            return Err(WeilError::InvalidGrid(format!(
                "need at least 2 points, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// Grid on `[x_min, x_max]` whose spacing is at most `max_step`.
    pub fn with_max_step(x_min: f64, x_max: f64, max_step: f64) -> Result<Self> {
        if !(max_step > 0.0) {
            return Err(WeilError::InvalidGrid(format!("step {max_step} must be positive")));
        }
        let intervals = ((x_max - x_min) / max_step).ceil().max(1.0) as usize;
        Self::new(x_min, x_max, intervals + 1)
    }

    /// Symmetric grid `[-half, half]` with spacing exactly `step`, `half` rounded up
    /// to a whole number of steps.
    pub fn symmetric(half: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(half > 0.0) {
            return Err(WeilError::InvalidGrid(format!(
                "symmetric grid needs positive half-width and step, got {half}, {step}"
            )));
        }
        let k = (half / step).ceil() as usize;
        let edge = k as f64 * step;
        Self::new(-edge, edge, 2 * k + 1)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.node(i))
    }

    /// Largest |x| on the grid.
    pub fn abs_max(&self) -> f64 {
        self.x_min.abs().max(self.x_max.abs())
    }

    /// Trapezoid weight of node `i` (spacing included).
    pub fn trapezoid_weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        if i == 0 || i + 1 == self.n_points {
            0.5 * h
        } else {
            h
        }
    }

    pub fn same_as(&self, other: &Grid) -> bool {
        self.n_points == other.n_points
            && (self.x_min - other.x_min).abs() <= 1e-12 * (1.0 + self.x_min.abs())
            && (self.x_max - other.x_max).abs() <= 1e-12 * (1.0 + self.x_max.abs())
    }

    /// Parse `"xmin:xmax:n"`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(WeilError::InvalidGrid(format!(
                "expected xmin:xmax:n, got {spec:?}"
            )));
        }
        let bad = |what: &str| WeilError::InvalidGrid(format!("bad {what} in {spec:?}"));
        let x_min: f64 = parts[0].parse().map_err(|_| bad("xmin"))?;
        let x_max: f64 = parts[1].parse().map_err(|_| bad("xmax"))?;
        let n: usize = parts[2].parse().map_err(|_| bad("n"))?;
        Self::new(x_min, x_max, n)
    }
}

/// Which variable a grid function is sampled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Time,
    Frequency,
}

/// Complex samples on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<Complex64>,
    domain: Domain,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>, domain: Domain) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(WeilError::Misaligned {
                left: values.len(),
                right: grid.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(WeilError::NonFinite(i));
        }
        Ok(Self {
            grid,
            values,
            domain,
        })
    }

    /// Sample `f` at every node.
    pub fn sample<F: Fn(f64) -> Complex64>(grid: Grid, domain: Domain, f: F) -> Result<Self> {
        let values = grid.nodes().map(f).collect();
        Self::new(grid, values, domain)
    }

    pub fn zeros(grid: Grid, domain: Domain) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            domain,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    fn check_compatible(&self, other: &GridFunction) -> Result<()> {
        if self.domain != other.domain {
            return Err(WeilError::GridMismatch(format!(
                "domains differ: {:?} vs {:?}",
                self.domain, other.domain
            )));
        }
        if !self.grid.same_as(&other.grid) {
            return Err(WeilError::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }

    /// Trapezoid approximation of `∫ f conj(g)`.
    pub fn inner_product(&self, other: &GridFunction) -> Result<Complex64> {
        self.check_compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| a * b.conj() * self.grid.trapezoid_weight(i))
            .sum())
    }

    pub fn norm_sq(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v.norm_sqr() * self.grid.trapezoid_weight(i))
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Squared L² mass on `(-inf, t)`; the node straddling `t` is split linearly.
    pub fn mass_below(&self, t: f64) -> f64 {
        let h = self.grid.spacing();
        let mut mass = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let x = self.grid.node(i);
            let lo = if i == 0 { x } else { x - 0.5 * h };
            let hi = if i + 1 == self.grid.len() { x } else { x + 0.5 * h };
            let covered = (t.min(hi) - lo).clamp(0.0, hi - lo);
            mass += v.norm_sqr() * covered;
        }
        mass
    }

    pub fn scale(&self, c: Complex64) -> GridFunction {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
            domain: self.domain,
        }
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.check_compatible(other)?;
        Ok(GridFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
            domain: self.domain,
        })
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.check_compatible(other)?;
        Ok(GridFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            domain: self.domain,
        })
    }

    /// CSV with header `x,re,im`, 17 significant digits per field.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::with_capacity(64 * self.values.len() + 16);
        out.push_str("x,re,im\n");
        for (x, v) in self.grid.nodes().zip(&self.values) {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", x, v.re, v.im);
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_csv_string().as_bytes())?;
        Ok(())
    }

    /// Inverse of [`GridFunction::to_csv_string`].
    pub fn from_csv_str(text: &str, domain: Domain) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == "x,re,im" => {}
            _ => {
                return Err(WeilError::Parse {
                    line: 1,
                    message: "expected header x,re,im".into(),
                })
            }
        }
        let mut xs = Vec::new();
        let mut vals = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<f64> = line
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| WeilError::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })?;
            if f.len() != 3 {
                return Err(WeilError::Parse {
                    line: i + 1,
                    message: format!("expected 3 fields, got {}", f.len()),
                });
            }
            xs.push(f[0]);
            vals.push(Complex64::new(f[1], f[2]));
        }
        if xs.len() < 2 {
            return Err(WeilError::InvalidGrid("fewer than two rows".into()));
        }
        let grid = Grid::new(xs[0], xs[xs.len() - 1], xs.len())?;
        Self::new(grid, vals, domain)
    }
}
