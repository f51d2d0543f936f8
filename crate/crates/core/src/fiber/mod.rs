//! Scalar LP modes of circularly symmetric fibers.
//!
//! With `F^ = sqrt(r) F` the radial field equation takes the Schrodinger
//! form `F^'' + [E - V(r)] F^ = 0`, where `E = n_max^2 k0^2 - beta^2` and
//! `V(r) = (n_max^2 - n(r)^2) k0^2 + (l^2 - 1/4) / r^2`. Guided modes are the
//! bound states `0 < E < V_inf`.
//!
//! Step profiles are solved from the closed-form characteristic equation;
//! any profile can be solved by shooting.

mod profile;
mod shooting;
mod step;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{find_root_with, Bracket, MAX_ITERATIONS};

pub use profile::{ProfileKind, RadialProfile};
pub use shooting::{
    lp_solve_shooting, mode_field, FieldPoint, ShootingOutcome, SHOOTING_SCAN_POINTS,
};
pub use step::{lp_solve_step, STEP_SCAN_POINTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Guided,
    LeakyTunnel,
    LeakyRefract,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LPMode {
    pub l: u32,
    pub radial_order: u32,
    pub beta: f64,
    #[serde(rename = "E_val")]
    pub e_val: f64,
    pub classification: Classification,
    pub u: f64,
    pub w: f64,
}

impl Default for LPMode {
    fn default() -> Self {
        LPMode {
            l: 0,
            radial_order: 1,
            beta: 0.0,
            e_val: 0.0,
            classification: Classification::Guided,
            u: 0.0,
            w: 0.0,
        }
    }
}

impl LPMode {
    pub fn label(&self) -> String {
        format!("LP{}{}", self.l, self.radial_order)
    }
}

/// The fiber at a fixed `beta` seen as a one-dimensional potential problem.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialView {
    pub profile: RadialProfile,
    pub k0: f64,
    pub e_val: f64,
    pub v_inf: f64,
    pub azimuthal_v: u32,
}

impl PotentialView {
    pub fn potential(&self, r: f64) -> f64 {
        let n = self.profile.index_at(r);
        let l = self.azimuthal_v as f64;
        (self.profile.n_max - n) * (self.profile.n_max + n) * self.k0 * self.k0
            + (l * l - 0.25) / (r * r)
    }
}

pub fn okoshi_transform(
    profile: &RadialProfile,
    v: u32,
    k0: f64,
    beta: f64,
) -> Result<PotentialView> {
    if !(k0 > 0.0) {
        return Err(Error::domain(format!("k0 must be positive, got {k0}")));
    }
    let (nm, nc) = (profile.n_max, profile.n_clad);
    Ok(PotentialView {
        profile: profile.clone(),
        k0,
        e_val: nm * nm * k0 * k0 - beta * beta,
        v_inf: (nm - nc) * (nm + nc) * k0 * k0,
        azimuthal_v: v,
    })
}

/// Guided when `0 < E < V_inf`. Above `V_inf` the wave leaks, by tunnelling
/// when a barrier `V(r) > E` lies beyond the inner turning point or just
/// outside the core, otherwise by refraction. `E <= 0` has no classical region at all and is rejected.
pub fn classify_solution(view: &PotentialView, e_val: f64) -> Result<Classification> {
    if !(e_val > 0.0) {
        return Err(Error::domain(format!(
            "E = {e_val} lies below the potential floor"
        )));
    }
    if e_val < view.v_inf {
        return Ok(Classification::Guided);
    }
    let tail = view.profile.core_scale();
    let points = 4000;
    let mut allowed = false;
    for i in 1..=points {
        let r = tail * i as f64 / points as f64;
        let v = view.potential(r);
        if v < e_val {
            allowed = true;
        } else if allowed {
            return Ok(Classification::LeakyTunnel);
        }
    }
    // outside the core the potential only falls, so its largest value is just past the tail start
    let past = view.potential(tail * (1.0 + 1e-9));
    if past > e_val {
        return Ok(Classification::LeakyTunnel);
    }
    Ok(Classification::LeakyRefract)
}

/// Far field of the regular solution once `beta` approaches the free-space
/// value: `sin(k r - l pi / 2) / r`.
pub fn asymptotic_fields(l: u32, k: f64, r_grid: &[f64]) -> Result<Vec<f64>> {
    if !(k > 0.0) {
        return Err(Error::domain(format!("k must be positive, got {k}")));
    }
    let shift = l as f64 * std::f64::consts::FRAC_PI_2;
    r_grid
        .iter()
        .map(|&r| {
            if r > 0.0 {
                Ok((k * r - shift).sin() / r)
            } else {
                Err(Error::domain(format!("radius must be positive, got {r}")))
            }
        })
        .collect()
}

/// Open interval `(n_clad k0, n_max k0)` of guided propagation constants.
pub fn guided_window(profile: &RadialProfile, k0: f64) -> (f64, f64) {
    (profile.n_clad * k0, profile.n_max * k0)
}

/// Core and cladding parameters `u = a sqrt(n_max^2 k0^2 - beta^2)` and
/// `w = a sqrt(beta^2 - n_clad^2 k0^2)`.
pub(crate) fn transverse_parameters(profile: &RadialProfile, k0: f64, beta: f64) -> (f64, f64) {
    let a = profile.core_scale();
    let (hi, lo) = (profile.n_max * k0, profile.n_clad * k0);
    let u = a * ((hi - beta) * (hi + beta)).max(0.0).sqrt();
    let w = a * ((beta - lo) * (beta + lo)).max(0.0).sqrt();
    (u, w)
}

pub(crate) fn make_mode(profile: &RadialProfile, l: u32, order: u32, k0: f64, beta: f64) -> LPMode {
    let (u, w) = transverse_parameters(profile, k0, beta);
    let nm = profile.n_max * k0;
    LPMode {
        l,
        radial_order: order,
        beta,
        e_val: (nm - beta) * (nm + beta),
        classification: Classification::Guided,
        u,
        w,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Method {
    #[default]
    Analytic,
    Shooting,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "analytic" | "step" => Ok(Method::Analytic),
            "shooting" => Ok(Method::Shooting),
            _ => Err(Error::domain(format!("unknown method {s:?}"))),
        }
    }
}

/// Guided modes for one azimuthal order. Shooting candidates that fail to
/// converge are dropped.
pub fn lp_solve(
    profile: &RadialProfile,
    l: u32,
    k0: f64,
    method: Method,
    tol: f64,
) -> Result<Vec<LPMode>> {
    match method {
        Method::Analytic => lp_solve_step(profile, l, k0, tol),
        Method::Shooting => {
            let (lo, hi) = guided_window(profile, k0);
            Ok(lp_solve_shooting(profile, l, k0, lo, hi, tol)?.modes)
        }
    }
}

/// Every guided mode of the fiber, sorted by descending `beta`.
pub fn lp_solve_all(
    profile: &RadialProfile,
    k0: f64,
    method: Method,
    tol: f64,
) -> Result<Vec<LPMode>> {
    let mut all = Vec::new();
    for l in 0u32.. {
        let modes = lp_solve(profile, l, k0, method, tol)?;
        // past the last supported order no higher order is guided either
        if modes.is_empty() && l > 0 {
            break;
        }
        all.extend(modes);
    }
    all.sort_by(|a, b| b.beta.total_cmp(&a.beta));
    Ok(all)
}

/// Sign-change scan of `f` over the open unit interval followed by Brent
/// refinement. The grid is doubled until two successive densities agree on
/// the number of roots.
pub(crate) fn scan_unit_interval<F>(
    f: &F,
    points: usize,
    tol: f64,
    max_doublings: u32,
) -> (Vec<f64>, Vec<Error>)
where
    F: Fn(f64) -> f64 + Sync,
{
    let mut n = points.max(8);
    let mut brackets = sign_changes(f, n);
    for _ in 0..max_doublings {
        n *= 2;
        let finer = sign_changes(f, n);
        let stable = finer.len() == brackets.len();
        brackets = finer;
        if stable {
            break;
        }
    }
    let results: Vec<Result<f64>> = brackets
        .par_iter()
        .map(|b| find_root_with(f, *b, tol, MAX_ITERATIONS))
        .collect();
    let mut roots = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(t) => roots.push(t),
            Err(e) => failures.push(e),
        }
    }
    (roots, failures)
}

fn sign_changes<F: Fn(f64) -> f64 + Sync>(f: &F, n: usize) -> Vec<Bracket> {
    let ts: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let vals: Vec<f64> = ts.par_iter().map(|&t| f(t)).collect();
    let mut out = Vec::new();
    for i in 0..n - 1 {
        let (a, b) = (vals[i], vals[i + 1]);
        if !a.is_finite() || !b.is_finite() {
            continue;
        }
        if a == 0.0 || a.signum() != b.signum() && b != 0.0 {
            out.push(Bracket {
                lo: ts[i],
                hi: ts[i + 1],
                f_lo: a,
                f_hi: b,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::riccati_psi;

    fn step() -> RadialProfile {
        RadialProfile::step(1.45, 1.44, 4e-6).unwrap()
    }

    const K0: f64 = 4.053_667_940_115_862e6;

    #[test]
    fn potential_inside_core_is_centrifugal() {
        let view = okoshi_transform(&step(), 2, K0, 1.445 * K0).unwrap();
        let r = 1e-6;
        assert!((view.potential(r) - 3.75 / (r * r)).abs() < 1e-3);
    }

    #[test]
    fn potential_limit_and_window_edge() {
        let p = step();
        let view = okoshi_transform(&p, 0, K0, 1.44 * K0).unwrap();
        let expect = (1.45f64 * 1.45 - 1.44 * 1.44) * K0 * K0;
        assert!((view.v_inf - expect).abs() / expect < 1e-12);
        assert!((view.e_val - view.v_inf).abs() / expect < 1e-10);
        assert!((view.potential(1.0) - view.v_inf).abs() / expect < 1e-6);
    }

    #[test]
    fn window_biconditional() {
        let p = step();
        let (lo, hi) = guided_window(&p, K0);
        for i in 1..100 {
            let beta = lo + (hi - lo) * i as f64 / 100.0;
            let v = okoshi_transform(&p, 0, K0, beta).unwrap();
            assert!(v.e_val > 0.0 && v.e_val < v.v_inf);
        }
        for beta in [0.9 * lo, lo * (1.0 - 1e-9)] {
            let v = okoshi_transform(&p, 0, K0, beta).unwrap();
            assert!(v.e_val > v.v_inf);
        }
    }

    #[test]
    fn classification_cases() {
        let p = step();
        let view = okoshi_transform(&p, 0, K0, 1.445 * K0).unwrap();
        assert_eq!(
            classify_solution(&view, view.v_inf / 2.0).unwrap(),
            Classification::Guided
        );
        assert_eq!(
            classify_solution(&view, 1.5 * view.v_inf).unwrap(),
            Classification::LeakyRefract
        );
        let view8 = okoshi_transform(&p, 8, K0, 1.445 * K0).unwrap();
        assert_eq!(
            classify_solution(&view8, view8.v_inf * (1.0 + 1e-3)).unwrap(),
            Classification::LeakyTunnel
        );
        assert!(classify_solution(&view, 0.0).is_err());
    }

    #[test]
    fn asymptotic_field_shapes() {
        let k = 3.0;
        let f = asymptotic_fields(0, k, &[std::f64::consts::PI / k]).unwrap();
        assert!(f[0].abs() < 1e-15);
        let rs: Vec<f64> = (1..50).map(|i| 0.37 * i as f64).collect();
        let f = asymptotic_fields(0, k, &rs).unwrap();
        for (r, v) in rs.iter().zip(&f) {
            assert!((v - riccati_psi(0, k * r).0 / r).abs() < 1e-12);
            assert!(v.abs() <= 1.0 / r);
        }
        assert!(asymptotic_fields(0, k, &[0.0]).is_err());
    }

    #[test]
    fn unit_scan_finds_all_sine_zeros() {
        let f = |t: f64| (20.0 * t).sin();
        let (roots, fails) = scan_unit_interval(&f, 16, 1e-13, 6);
        assert!(fails.is_empty());
        assert_eq!(roots.len(), 6);
        for (k, r) in roots.iter().enumerate() {
            assert!((r - (k + 1) as f64 * std::f64::consts::PI / 20.0).abs() < 1e-12);
        }
    }
}
