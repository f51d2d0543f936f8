//! TE/TM mode dispersion of hollow rectangular and circular metallic guides
//! with vacuum filling.
//!
//! A mode below cutoff is reported with `kg = 0`, `v_g = 0` and infinite
//! phase velocity and guide wavelength; its decay rate goes in `kappa`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::numerics::{bessel_j, bessel_j_prime, bracket_scan, find_root, DEFAULT_ROOT_TOL};

/// Relative distance `|k0 - kc| / kc` under which a point counts as cutoff.
pub const CUTOFF_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Polarization {
    #[default]
    TE,
    TM,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::TE => "TE",
            Polarization::TM => "TM",
        })
    }
}

impl FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "TE" => Ok(Polarization::TE),
            "TM" => Ok(Polarization::TM),
            _ => Err(Error::InvalidMode(format!("unknown polarization '{s}'"))),
        }
    }
}

/// A TE or TM mode label. For rectangular guides `m`, `n` count half
/// periods along the two transverse axes; for circular guides `m` is the
/// azimuthal number and `n >= 1` the radial root index.
///
/// Serialized as its label: `TE11` when both indices are single digits,
/// `TE_12_3` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ModeIndex {
    pub polarization: Polarization,
    pub m: u32,
    pub n: u32,
}

impl ModeIndex {
    pub fn te(m: u32, n: u32) -> Self {
        ModeIndex {
            polarization: Polarization::TE,
            m,
            n,
        }
    }

    pub fn tm(m: u32, n: u32) -> Self {
        ModeIndex {
            polarization: Polarization::TM,
            m,
            n,
        }
    }
}

impl Default for ModeIndex {
    fn default() -> Self {
        ModeIndex::te(1, 0)
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m < 10 && self.n < 10 {
            write!(f, "{}{}{}", self.polarization, self.m, self.n)
        } else {
            write!(f, "{}_{}_{}", self.polarization, self.m, self.n)
        }
    }
}

impl FromStr for ModeIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMode(format!("cannot parse mode label '{s}'"));
        if s.len() < 4 || !s.is_char_boundary(2) {
            return Err(bad());
        }
        let polarization: Polarization = s[..2].parse()?;
        let rest = s[2..].trim_start_matches('_');
        let (m, n) = if let Some((a, b)) = rest.split_once(['_', ',']) {
            (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
        } else if rest.len() == 2 && rest.bytes().all(|c| c.is_ascii_digit()) {
            (
                (rest.as_bytes()[0] - b'0') as u32,
                (rest.as_bytes()[1] - b'0') as u32,
            )
        } else {
            return Err(bad());
        };
        Ok(ModeIndex { polarization, m, n })
    }
}

impl From<ModeIndex> for String {
    fn from(m: ModeIndex) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for ModeIndex {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Geometry {
    Rectangular { a: f64, b: f64 },
    Circular { radius: f64 },
}

impl Geometry {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Geometry::Rectangular { a, b } => a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite(),
            Geometry::Circular { radius } => radius > 0.0 && radius.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "guide dimensions must be positive: {self:?}"
            )))
        }
    }

    /// Checks the index rules of `mode` for this geometry.
    pub fn check_mode(&self, mode: ModeIndex) -> Result<()> {
        let valid = match (self, mode.polarization) {
            (Geometry::Rectangular { .. }, Polarization::TE) => mode.m + mode.n > 0,
            (Geometry::Rectangular { .. }, Polarization::TM) => mode.m >= 1 && mode.n >= 1,
            (Geometry::Circular { .. }, _) => mode.n >= 1,
        };
        if valid {
            Ok(())
        } else {
            Err(Error::InvalidMode(format!(
                "{mode} is not a mode of a {} guide",
                self.kind()
            )))
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Geometry::Rectangular { .. } => "rectangular",
            Geometry::Circular { .. } => "circular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Regime {
    #[default]
    Propagating,
    Cutoff,
    Evanescent,
}

/// Kinematic record of one mode at one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct DispersionPoint {
    pub omega: f64,
    pub k0: f64,
    pub kc: f64,
    pub kg: f64,
    pub kappa: f64,
    #[serde(with = "crate::sentinel")]
    pub v_ph: f64,
    pub v_g: f64,
    #[serde(with = "crate::sentinel")]
    pub lambda_g: f64,
    #[serde(with = "crate::sentinel")]
    pub z_char: f64,
    pub regime: Regime,
}

type ZeroCache = HashMap<(u32, u32, bool), f64>;

/// `k`-th positive zero of `J_m` (or of `J_m'` when `derivative` is set),
/// located by a dense sign-change scan and refined with Brent's method.
/// The `x = 0` stationary point of `J_m'` is not counted. Results are
/// memoised for the life of the process.
pub fn bessel_zero(m: u32, k: u32, derivative: bool) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidMode("root index must be >= 1".into()));
    }
    static ZEROS: OnceLock<Mutex<ZeroCache>> = OnceLock::new();
    let cache = ZEROS.get_or_init(Default::default);
    if let Some(&x) = cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(m, k, derivative))
    {
        return Ok(x);
    }
    let x = locate_zero(m, k, derivative)?;
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((m, k, derivative), x);
    Ok(x)
}

fn locate_zero(m: u32, k: u32, derivative: bool) -> Result<f64> {
    let mu = m as usize;
    let f = |x: f64| {
        if derivative {
            bessel_j_prime(mu, x)
        } else {
            bessel_j(mu, x)
        }
    };
    // j_{m,1} and j'_{m,1} both exceed m; McMahon bounds the k-th zero by
    // (k + m/2 + 1) pi.
    let lo = (m as f64).max(1e-3);
    let hi = (k as f64 + 0.5 * m as f64 + 1.0) * std::f64::consts::PI + 10.0;
    let points = ((hi - lo) / 0.02).ceil() as usize + 1;
    let brackets = bracket_scan(f, lo, hi, points);
    let b = brackets
        .get(k as usize - 1)
        .ok_or_else(|| Error::NonConverged(format!("zero {k} of J_{m} not found below {hi}")))?;
    find_root(f, *b, DEFAULT_ROOT_TOL)
}

/// Transverse (cutoff) wavenumber of `mode` in `geom`, rad/m.
pub fn cutoff_wavenumber(geom: Geometry, mode: ModeIndex) -> Result<f64> {
    geom.validate()?;
    geom.check_mode(mode)?;
    match geom {
        Geometry::Rectangular { a, b } => {
            let kx = mode.m as f64 * std::f64::consts::PI / a;
            let ky = mode.n as f64 * std::f64::consts::PI / b;
            Ok(kx.hypot(ky))
        }
        Geometry::Circular { radius } => {
            let root = bessel_zero(mode.m, mode.n, mode.polarization == Polarization::TE)?;
            Ok(root / radius)
        }
    }
}

/// Full dispersion record at angular frequency `omega`.
pub fn dispersion(geom: Geometry, mode: ModeIndex, omega: f64) -> Result<DispersionPoint> {
    let kc = cutoff_wavenumber(geom, mode)?;
    dispersion_with_cutoff(kc, mode.polarization, omega)
}

/// Same as [`dispersion`] for an already known cutoff wavenumber.
pub fn dispersion_with_cutoff(kc: f64, pol: Polarization, omega: f64) -> Result<DispersionPoint> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain(format!(
            "omega must be positive, got {omega}"
        )));
    }
    let pc = PhysicalConstants::CODATA2018;
    let c = pc.c;
    let k0 = omega / c;
    let mut p = DispersionPoint {
        omega,
        k0,
        kc,
        kg: 0.0,
        kappa: 0.0,
        v_ph: f64::INFINITY,
        v_g: 0.0,
        lambda_g: f64::INFINITY,
        z_char: 0.0,
        regime: Regime::Evanescent,
    };
    if (k0 - kc).abs() <= CUTOFF_REL_TOL * kc {
        p.regime = Regime::Cutoff;
        p.z_char = match pol {
            Polarization::TE => f64::INFINITY,
            Polarization::TM => 0.0,
        };
    } else if k0 > kc {
        let kg = ((k0 - kc) * (k0 + kc)).sqrt();
        p.kg = kg;
        p.v_ph = omega / kg;
        p.v_g = c * c * kg / omega;
        p.lambda_g = 2.0 * std::f64::consts::PI / kg;
        p.regime = Regime::Propagating;
        p.z_char = impedance(kg / k0, pol, pc.z0);
    } else {
        p.kappa = ((kc - k0) * (kc + k0)).sqrt();
    }
    Ok(p)
}

fn impedance(kg_over_k0: f64, pol: Polarization, z0: f64) -> f64 {
    match pol {
        Polarization::TM => kg_over_k0 * z0,
        Polarization::TE => z0 / kg_over_k0,
    }
}

/// Modal characteristic impedance: `(kg/k0) Z0` for TM, `(k0/kg) Z0` for TE.
pub fn characteristic_impedance(point: &DispersionPoint, pol: Polarization) -> Result<f64> {
    if point.regime != Regime::Propagating {
        return Err(Error::NotPropagating(format!(
            "impedance undefined in the {:?} regime",
            point.regime
        )));
    }
    Ok(impedance(
        point.kg / point.k0,
        pol,
        PhysicalConstants::CODATA2018.z0,
    ))
}

/// Uniform sweep of `samples` frequencies over `[omega_lo, omega_hi]`,
/// endpoints included.
pub fn dispersion_sweep(
    geom: Geometry,
    mode: ModeIndex,
    omega_lo: f64,
    omega_hi: f64,
    samples: usize,
) -> Result<Vec<DispersionPoint>> {
    if !(omega_lo < omega_hi) || samples < 2 {
        return Err(Error::domain(format!(
            "sweep needs omega_lo < omega_hi and samples >= 2 (got {omega_lo}, {omega_hi}, {samples})"
        )));
    }
    let kc = cutoff_wavenumber(geom, mode)?;
    let step = (omega_hi - omega_lo) / (samples - 1) as f64;
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let omega = if i == samples - 1 {
                omega_hi
            } else {
                omega_lo + step * i as f64
            };
            dispersion_with_cutoff(kc, mode.polarization, omega)
        })
        .collect()
}

/// One row of a cutoff table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct CutoffEntry {
    pub mode: ModeIndex,
    pub kc: f64,
    pub cutoff_frequency: f64,
}

/// The `count` lowest-cutoff modes of `geom`, ascending in `kc`, ties
/// broken TE before TM then by `(m, n)`.
pub fn cutoff_table(geom: Geometry, count: usize) -> Result<Vec<CutoffEntry>> {
    geom.validate()?;
    let c = PhysicalConstants::CODATA2018.c;
    // enough candidates to cover the lowest `count` of either family
    let span = (count as f64).sqrt().ceil() as u32 + 3;
    let mut entries = Vec::new();
    for pol in [Polarization::TE, Polarization::TM] {
        for m in 0..=span + 2 {
            for n in 0..=span + 2 {
                let mode = ModeIndex {
                    polarization: pol,
                    m,
                    n,
                };
                if geom.check_mode(mode).is_err() {
                    continue;
                }
                let kc = cutoff_wavenumber(geom, mode)?;
                entries.push(CutoffEntry {
                    mode,
                    kc,
                    cutoff_frequency: c * kc / (2.0 * std::f64::consts::PI),
                });
            }
        }
    }
    entries.sort_by(|x, y| {
        let tie = (x.kc - y.kc).abs() <= 1e-12 * x.kc.max(y.kc);
        let by_kc = if tie {
            std::cmp::Ordering::Equal
        } else {
            x.kc.total_cmp(&y.kc)
        };
        by_kc
            .then((x.mode.polarization as u8).cmp(&(y.mode.polarization as u8)))
            .then((x.mode.m, x.mode.n).cmp(&(y.mode.m, y.mode.n)))
    });
    entries.truncate(count);
    Ok(entries)
}
