use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ProfileKind {
    Step {
        n1: f64,
        n2: f64,
        core_radius: f64,
    },
    Tabulated {
        r_grid: Vec<f64>,
        n_values: Vec<f64>,
    },
}

/// Refractive index as a function of radius. Tabulated profiles are
/// interpolated linearly and held constant beyond the last grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub kind: ProfileKind,
    pub n_max: f64,
    pub n_clad: f64,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidProfile(msg.into())
}

impl RadialProfile {
    pub fn step(n1: f64, n2: f64, core_radius: f64) -> Result<Self> {
        if !(n2 >= 1.0 && n1 > n2 && n1.is_finite()) {
            return Err(invalid(format!(
                "step profile needs n1 > n2 >= 1, got n1 = {n1}, n2 = {n2}"
            )));
        }
        if !(core_radius > 0.0 && core_radius.is_finite()) {
            return Err(invalid(format!(
                "core radius must be positive, got {core_radius}"
            )));
        }
        Ok(RadialProfile {
            kind: ProfileKind::Step {
                n1,
                n2,
                core_radius,
            },
            n_max: n1,
            n_clad: n2,
        })
    }

    pub fn tabulated(r_grid: Vec<f64>, n_values: Vec<f64>) -> Result<Self> {
        if r_grid.len() != n_values.len() {
            return Err(invalid("r and n columns differ in length"));
        }
        if r_grid.len() < 2 {
            return Err(invalid("tabulated profile needs at least two points"));
        }
        if !(r_grid[0] >= 0.0) || r_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("radii must be non-negative and strictly ascending"));
        }
        if r_grid.iter().chain(&n_values).any(|v| !v.is_finite()) {
            return Err(invalid("profile contains non-finite values"));
        }
        if n_values.iter().any(|&n| n < 1.0) {
            return Err(invalid("refractive index below 1"));
        }
        let n_clad = *n_values.last().unwrap();
        let n_max = n_values.iter().copied().fold(f64::MIN, f64::max);
        if !(n_max > n_clad) {
            return Err(invalid("profile has no index maximum above the cladding"));
        }
        Ok(RadialProfile {
            kind: ProfileKind::Tabulated { r_grid, n_values },
            n_max,
            n_clad,
        })
    }

    /// Two columns `r, n` separated by commas or whitespace. A non-numeric
    /// first row is taken as a header; `#` starts a comment line.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut r = Vec::new();
        let mut n = Vec::new();
        let mut first = true;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line
                .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            let parsed: Option<Vec<f64>> = cols.iter().map(|c| c.parse().ok()).collect();
            match parsed {
                Some(v) if v.len() == 2 => {
                    r.push(v[0]);
                    n.push(v[1]);
                }
                None if first => {}
                _ => {
                    return Err(invalid(format!(
                        "line {}: expected two numeric columns, got {line:?}",
                        lineno + 1
                    )))
                }
            }
            first = false;
        }
        Self::tabulated(r, n)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::from_csv_str(&text)
    }

    pub fn index_at(&self, r: f64) -> f64 {
        match &self.kind {
            ProfileKind::Step {
                n1,
                n2,
                core_radius,
            } => {
                if r <= *core_radius {
                    *n1
                } else {
                    *n2
                }
            }
            ProfileKind::Tabulated { r_grid, n_values } => interpolate(r_grid, n_values, r),
        }
    }

    /// Radius beyond which the index equals the cladding value: the core
    /// radius of a step profile, the start of the constant tail otherwise.
    pub fn core_scale(&self) -> f64 {
        match &self.kind {
            ProfileKind::Step { core_radius, .. } => *core_radius,
            ProfileKind::Tabulated { r_grid, n_values } => {
                let last = *n_values.last().unwrap();
                let start = n_values
                    .iter()
                    .rposition(|&n| n != last)
                    .map_or(0, |i| i + 1);
                r_grid[start]
            }
        }
    }

    /// Radii where the index or its slope jumps; the integrator restarts there.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            ProfileKind::Step { core_radius, .. } => vec![*core_radius],
            ProfileKind::Tabulated { r_grid, .. } => {
                let tail = self.core_scale();
                r_grid
                    .iter()
                    .copied()
                    .filter(|&r| r > 0.0 && r <= tail)
                    .collect()
            }
        }
    }

    /// Normalised frequency `k0 a sqrt(n_max^2 - n_clad^2)` with `a` the core scale.
    pub fn v_number(&self, k0: f64) -> f64 {
        k0 * self.core_scale() * ((self.n_max - self.n_clad) * (self.n_max + self.n_clad)).sqrt()
    }

    pub fn is_step(&self) -> bool {
        matches!(self.kind, ProfileKind::Step { .. })
    }
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if x <= xs[0] {
        return ys[0];
    }
    let last = xs.len() - 1;
    if x >= xs[last] {
        return ys[last];
    }
    let i = xs.partition_point(|&v| v <= x) - 1;
    let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    ys[i] + t * (ys[i + 1] - ys[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_validation() {
        assert!(RadialProfile::step(1.45, 1.44, 4e-6).is_ok());
        assert_eq!(
            RadialProfile::step(1.44, 1.45, 4e-6).unwrap_err().name(),
            "InvalidProfile"
        );
        assert!(RadialProfile::step(1.5, 0.9, 4e-6).is_err());
        assert!(RadialProfile::step(1.5, 1.4, 0.0).is_err());
    }

    #[test]
    fn step_index_lookup() {
        let p = RadialProfile::step(1.45, 1.44, 4e-6).unwrap();
        assert_eq!(p.index_at(0.0), 1.45);
        assert_eq!(p.index_at(4e-6), 1.45);
        assert_eq!(p.index_at(4.000001e-6), 1.44);
        assert_eq!(p.core_scale(), 4e-6);
    }

    #[test]
    fn tabulated_interpolation_and_tail() {
        let p =
            RadialProfile::tabulated(vec![0.0, 1.0, 2.0, 3.0], vec![1.5, 1.45, 1.4, 1.4]).unwrap();
        assert_eq!(p.n_max, 1.5);
        assert_eq!(p.n_clad, 1.4);
        assert!((p.index_at(0.5) - 1.475).abs() < 1e-15);
        assert_eq!(p.index_at(10.0), 1.4);
        assert_eq!(p.core_scale(), 2.0);
        assert_eq!(p.breakpoints(), vec![1.0, 2.0]);
    }

    #[test]
    fn csv_with_and_without_header() {
        let a = RadialProfile::from_csv_str("r,n\n0,1.5\n1e-6,1.45\n2e-6,1.44\n").unwrap();
        let b = RadialProfile::from_csv_str("# comment\n0 1.5\n1e-6 1.45\n\n2e-6 1.44").unwrap();
        assert_eq!(a, b);
        assert!(RadialProfile::from_csv_str("r,n\n0,1.5\nx,y\n").is_err());
        assert!(RadialProfile::from_csv_str("0,1.5\n0,1.4\n").is_err());
    }

    #[test]
    fn v_number_of_step() {
        let p = RadialProfile::step(1.45, 1.44, 4e-6).unwrap();
        let k0 = 2.0 * std::f64::consts::PI / 1.55e-6;
        let v = p.v_number(k0);
        assert!((v - 2.756_494_3).abs() < 1e-6, "{v}");
    }
}
