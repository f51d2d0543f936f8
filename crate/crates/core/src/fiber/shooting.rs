use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    bessel_k_mod_scaled, integrate_radial, integrate_radial_trace, OdeState, DEFAULT_ODE_STEPS,
};

use super::{make_mode, scan_unit_interval, LPMode, RadialProfile};

/// Initial number of scan points across the requested `beta` interval.
pub const SHOOTING_SCAN_POINTS: usize = 300;

/// The integration starts at this fraction of the core scale.
const START_FRACTION: f64 = 1e-6;
/// Steps per decade of the graded start region.
const DECADE_STEPS: f64 = 1000.0;
/// Matching radius in units of the core scale.
const MATCH_FACTOR: f64 = 1.5;

#[derive(Debug, Clone, PartialEq)]
pub struct ShootingOutcome {
    pub modes: Vec<LPMode>,
    /// candidates whose refinement failed
    pub failures: Vec<Error>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct FieldPoint {
    pub r: f64,
    pub f_hat: f64,
}

/// Everything the radial integration needs at one `beta`.
struct Shot<'a> {
    profile: &'a RadialProfile,
    k0: f64,
    l: u32,
    e_val: f64,
    gamma: f64,
    scale: f64,
    r_match: f64,
}

impl<'a> Shot<'a> {
    fn new(profile: &'a RadialProfile, l: u32, k0: f64, beta: f64) -> Self {
        let (nm, nc) = (profile.n_max * k0, profile.n_clad * k0);
        let scale = profile.core_scale();
        Shot {
            profile,
            k0,
            l,
            e_val: (nm - beta) * (nm + beta),
            gamma: ((beta - nc) * (beta + nc)).sqrt(),
            scale,
            r_match: MATCH_FACTOR * scale,
        }
    }

    /// Knots of the integration path with the step to use up to each knot.
    /// Below one percent of the core scale the grid is graded by decades.
    fn segments(&self) -> Vec<(f64, f64, f64)> {
        let a = self.scale;
        let h = (self.r_match - 1e-2 * a) / DEFAULT_ODE_STEPS as f64;
        let mut knots: Vec<f64> = (0..=4)
            .map(|p| START_FRACTION * a * 10f64.powi(p))
            .collect();
        knots.extend(
            self.profile
                .breakpoints()
                .into_iter()
                .filter(|&r| r > 1e-2 * a && r < self.r_match),
        );
        knots.push(self.r_match);
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        knots
            .windows(2)
            .map(|w| {
                let step = if w[1] <= 1e-2 * a {
                    (w[1] - w[0]) / DECADE_STEPS
                } else {
                    h
                };
                (w[0], w[1], step)
            })
            .collect()
    }

    fn rhs(&self, lo: f64, hi: f64) -> impl Fn(f64, f64, f64) -> f64 + '_ {
        let nm2 = self.profile.n_max * self.profile.n_max;
        let k2 = self.k0 * self.k0;
        let cent = (self.l as f64).powi(2) - 0.25;
        let pad = 1e-9 * (hi - lo);
        move |r: f64, y: f64, _| {
            // evaluate the index strictly inside the segment so a jump at a knot is seen from the right side
            let n = self.profile.index_at(r.clamp(lo + pad, hi - pad));
            ((nm2 - n * n) * k2 + cent / (r * r) - self.e_val) * y
        }
    }

    fn start(&self) -> OdeState {
        let r0 = START_FRACTION * self.scale;
        // regular branch F^ ~ r^(l + 1/2), scaled to unit value
        OdeState::new(r0, 1.0, (self.l as f64 + 0.5) / r0)
    }

    /// Integrates to the matching radius, renormalising after every segment.
    /// Returns the final state and the accumulated log scale factor.
    fn run(&self, samples: &[f64], record: &mut Vec<(f64, f64, f64)>) -> Result<(OdeState, f64)> {
        let mut s = self.start();
        let mut log_scale = 0.0;
        let mut next = 0;
        for (lo, hi, step) in self.segments() {
            let rhs = self.rhs(lo, hi);
            let first = next;
            while next < samples.len() && samples[next] <= hi {
                next += 1;
            }
            if next > first {
                for st in integrate_radial_trace(&rhs, s, &samples[first..next], step)? {
                    record.push((st.r, st.y, log_scale));
                }
            }
            s = integrate_radial(&rhs, s, hi, step)?;
            let norm = s.y.hypot(self.scale * s.yp);
            s.y /= norm;
            s.yp /= norm;
            log_scale += norm.ln();
        }
        Ok((s, log_scale))
    }

    /// `d/dr ln(sqrt(r) K_l(gamma r))` at the matching radius.
    fn tail_log_derivative(&self) -> Result<f64> {
        let x = self.gamma * self.r_match;
        let l = self.l as usize;
        let kl = bessel_k_mod_scaled(l, x)?;
        let km = bessel_k_mod_scaled(if l == 0 { 1 } else { l - 1 }, x)?;
        let kp = bessel_k_mod_scaled(l + 1, x)?;
        Ok(0.5 / self.r_match - self.gamma * (km + kp) / (2.0 * kl))
    }

    /// Sine of the angle between the shot and the decaying tail in the
    /// `(F^, a F^')` plane. Continuous in `beta`, zero at the modes.
    fn mismatch(&self) -> Result<f64> {
        let (s, _) = self.run(&[], &mut Vec::new())?;
        let ld = self.tail_log_derivative()?;
        let a = self.scale;
        let tail_norm = 1.0f64.hypot(a * ld);
        Ok((a * s.yp - a * ld * s.y) / (s.y.hypot(a * s.yp) * tail_norm))
    }
}

/// Guided modes of order `l` with `beta` in `(beta_lo, beta_hi)` found by
/// shooting the transformed radial equation outward from near the axis and
/// matching to the decaying cladding solution `sqrt(r) K_l(gamma r)`.
pub fn lp_solve_shooting(
    profile: &RadialProfile,
    l: u32,
    k0: f64,
    beta_lo: f64,
    beta_hi: f64,
    tol: f64,
) -> Result<ShootingOutcome> {
    if !(k0 > 0.0) {
        return Err(Error::domain(format!("k0 must be positive, got {k0}")));
    }
    let (lo, hi) = super::guided_window(profile, k0);
    if !(beta_lo < beta_hi && beta_lo >= lo && beta_hi <= hi) {
        return Err(Error::domain(format!(
            "beta interval [{beta_lo}, {beta_hi}] must be ordered and inside the guided window [{lo}, {hi}]"
        )));
    }
    let beta_at = |t: f64| beta_lo + t * (beta_hi - beta_lo);
    let f = |t: f64| {
        Shot::new(profile, l, k0, beta_at(t))
            .mismatch()
            .unwrap_or(f64::NAN)
    };
    let (mut roots, failures) = scan_unit_interval(&f, SHOOTING_SCAN_POINTS, tol, 5);
    roots.sort_by(|a, b| b.total_cmp(a));
    let modes = roots
        .into_iter()
        .enumerate()
        .map(|(i, t)| make_mode(profile, l, i as u32 + 1, k0, beta_at(t)))
        .collect();
    let failures = failures
        .into_iter()
        .map(|e| Error::NonConverged(format!("LP{l} candidate: {e}")))
        .collect();
    Ok(ShootingOutcome { modes, failures })
}

/// Transformed field `F^ = sqrt(r) F` of a mode on ascending radii, scaled
/// to unit peak over the samples. Radii past the matching point follow the
/// exact cladding tail.
pub fn mode_field(
    profile: &RadialProfile,
    mode: &LPMode,
    k0: f64,
    radii: &[f64],
) -> Result<Vec<FieldPoint>> {
    let shot = Shot::new(profile, mode.l, k0, mode.beta);
    let r_min = START_FRACTION * shot.scale;
    if radii.windows(2).any(|w| !(w[1] > w[0])) || radii.first().is_some_and(|&r| r < r_min) {
        return Err(Error::domain(format!(
            "radii must ascend from at least {r_min}"
        )));
    }
    let split = radii.partition_point(|&r| r <= shot.r_match);
    let mut record = Vec::with_capacity(radii.len());
    let (end, end_log) = shot.run(&radii[..split], &mut record)?;
    let l = mode.l as usize;
    let k_end = bessel_k_mod_scaled(l, shot.gamma * shot.r_match)?;
    for &r in &radii[split..] {
        let k = bessel_k_mod_scaled(l, shot.gamma * r)?;
        let ratio =
            (r / shot.r_match).sqrt() * k / k_end * (-shot.gamma * (r - shot.r_match)).exp();
        record.push((r, end.y * ratio, end_log));
    }
    let peak = record
        .iter()
        .filter(|p| p.1 != 0.0)
        .map(|p| p.1.abs().ln() + p.2)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(record
        .into_iter()
        .map(|(r, y, log)| FieldPoint {
            r,
            f_hat: y * (log - peak).exp(),
        })
        .collect())
}
