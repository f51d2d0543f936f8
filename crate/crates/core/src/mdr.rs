//! TE morphology-dependent resonances of a homogeneous dielectric sphere.
//!
//! In the size parameter `x = k a` and `rho = r / a` the radial TE equation is
//! `u'' + [x^2 eps(rho) - nu(nu+1)/rho^2] u = 0`, a Schrodinger problem with
//! energy `x^2` and potential `nu(nu+1)/rho^2 - x^2 (eps - 1)`. Resonances are
//! quasi-bound levels trapped between the sphere surface and the outer
//! centrifugal barrier.
//!
//! Two routes locate them: a real-axis scan of the closed-form internal
//! enhancement ([`find_resonances`]) and direct integration of the radial
//! equation ([`shape_resonance_estimate`]).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    find_root_with, integrate_radial, riccati_chi, riccati_psi, Bracket, OdeState,
    DEFAULT_ODE_STEPS, MAX_ITERATIONS,
};

/// Default prominence threshold, in units of the median response.
pub const DEFAULT_PROMINENCE: f64 = 3.0;

const GOLDEN: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereSystem {
    pub n_sphere: f64,
    pub radius: f64,
    pub nu: u32,
}

impl SphereSystem {
    pub fn new(n_sphere: f64, radius: f64, nu: u32) -> Result<Self> {
        if !(n_sphere >= 1.0 && n_sphere.is_finite()) {
            return Err(Error::domain(format!(
                "sphere index must be at least 1, got {n_sphere}"
            )));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::domain(format!(
                "radius must be positive, got {radius}"
            )));
        }
        Ok(SphereSystem {
            n_sphere,
            radius,
            nu,
        })
    }

    fn centrifugal(&self) -> f64 {
        let nu = self.nu as f64;
        nu * (nu + 1.0)
    }

    /// Size parameters between which the surface is classically allowed
    /// inside and a barrier stands outside: `(sqrt(nu(nu+1)) / n, sqrt(nu(nu+1)))`.
    pub fn barrier_window(&self) -> (f64, f64) {
        let top = self.centrifugal().sqrt();
        (top / self.n_sphere, top)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct ResonanceRecord {
    pub nu: u32,
    pub order: u32,
    pub x_res: f64,
    pub width: f64,
    pub q_factor: f64,
    pub enhancement: f64,
}

/// `nu(nu+1)/rho^2 - x^2 (eps(rho) - 1)` in units of `1/radius^2`.
pub fn effective_potential(sys: &SphereSystem, x: f64, rho: f64) -> f64 {
    let eps = if rho <= 1.0 {
        sys.n_sphere * sys.n_sphere
    } else {
        1.0
    };
    sys.centrifugal() / (rho * rho) - x * x * (eps - 1.0)
}

/// Squared interior amplitude of the TE partial wave relative to the
/// exterior standing wave. The interior `psi(n x rho)` is matched in value
/// and slope to `alpha psi(x rho) + beta chi(x rho)`; the response is
/// `1 / (alpha^2 + beta^2)`.
pub fn te_response(sys: &SphereSystem, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "size parameter must be positive, got {x}"
        )));
    }
    let nu = sys.nu as usize;
    let n = sys.n_sphere;
    let (pi, dpi) = riccati_psi(nu, n * x);
    let (p, dp) = riccati_psi(nu, x);
    let (c, dc) = riccati_chi(nu, x)?;
    let w = p * dc - dp * c;
    let alpha = (pi * dc - n * dpi * c) / w;
    let beta = (n * dpi * p - pi * dp) / w;
    Ok(1.0 / (alpha * alpha + beta * beta))
}

/// Response sampled on `samples` evenly spaced points of `[x_lo, x_hi]`.
pub fn response_trace(
    sys: &SphereSystem,
    x_lo: f64,
    x_hi: f64,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    let xs = grid(x_lo, x_hi, samples);
    xs.par_iter()
        .map(|&x| Ok((x, te_response(sys, x)?)))
        .collect()
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn median(values: &[f64]) -> f64 {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Interior grid indices that are local maxima above `threshold`.
fn local_maxima(values: &[f64], threshold: f64) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| {
            values[i] > values[i - 1] && values[i] >= values[i + 1] && values[i] > threshold
        })
        .collect()
}

/// Golden-section maximisation of `f` on `[a, b]`.
fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, rel_tol: f64) -> (f64, f64) {
    let mut c = a + GOLDEN * (b - a);
    let mut d = b - GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= rel_tol * c.abs() {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = a + GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = b - GOLDEN * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Walks from the peak in steps of `step` (sign gives the direction) until
/// the response drops below `half`, then bisects the crossing. When the
/// curve turns upward first, the trough is returned.
fn half_crossing<F: Fn(f64) -> f64>(f: &F, x_peak: f64, half: f64, step: f64) -> Option<f64> {
    let mut inner = x_peak;
    let mut prev = f(x_peak);
    let mut h = step;
    for _ in 0..100_000 {
        let x = inner + h;
        if !(x > 0.0) {
            return None;
        }
        let v = f(x);
        if !v.is_finite() {
            return None;
        }
        if v < half {
            let (mut a, mut b) = (inner, x);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if f(m) >= half {
                    a = m;
                } else {
                    b = m;
                }
                if (b - a).abs() <= 1e-15 * m.abs() {
                    break;
                }
            }
            return Some(0.5 * (a + b));
        }
        if v > prev {
            // the neighbouring structure rises before half height is reached
            let (xt, _) = golden_max(&|t| -f(t), inner - h, x, 1e-12);
            return Some(xt);
        }
        prev = v;
        inner = x;
        h *= 1.5;
    }
    None
}

/// Resonances in `[x_lo, x_hi]`, ascending in `x`, found by scanning
/// `te_response` on `samples` points. Local maxima above `prominence` times
/// the median response are refined by golden section and their full width
/// at half maximum is bracketed and bisected. Orders count peaks from the
/// low end of the window.
pub fn find_resonances(
    sys: &SphereSystem,
    x_lo: f64,
    x_hi: f64,
    samples: usize,
    prominence: f64,
) -> Result<Vec<ResonanceRecord>> {
    if !(x_lo > 0.0 && x_hi > x_lo) {
        return Err(Error::domain(format!(
            "need 0 < x_lo < x_hi, got [{x_lo}, {x_hi}]"
        )));
    }
    if samples < 100 {
        return Err(Error::domain(format!(
            "need at least 100 samples, got {samples}"
        )));
    }
    let trace = response_trace(sys, x_lo, x_hi, samples)?;
    let values: Vec<f64> = trace.iter().map(|p| p.1).collect();
    let threshold = prominence * median(&values);
    let step = (x_hi - x_lo) / (samples - 1) as f64;
    let f = |x: f64| te_response(sys, x).unwrap_or(f64::NAN);
    let peaks: Vec<Option<(f64, f64, f64)>> = local_maxima(&values, threshold)
        .par_iter()
        .map(|&i| {
            let (x_res, peak) = golden_max(&f, trace[i - 1].0, trace[i + 1].0, 1e-13);
            let half = 0.5 * peak;
            let probe = (step / 8.0).min(1e-4 * x_res);
            let left = half_crossing(&f, x_res, half, -probe)?;
            let right = half_crossing(&f, x_res, half, probe)?;
            Some((x_res, right - left, peak))
        })
        .collect();
    let mut out: Vec<ResonanceRecord> = Vec::new();
    for (x_res, width, peak) in peaks.into_iter().flatten() {
        if out
            .last()
            .is_some_and(|r| (r.x_res - x_res).abs() <= 1e-9 * x_res)
        {
            continue;
        }
        out.push(ResonanceRecord {
            nu: sys.nu,
            order: out.len() as u32 + 1,
            x_res,
            width,
            q_factor: x_res / width,
            enhancement: peak,
        });
    }
    Ok(out)
}

/// Radial equation integrated through the sphere for one size parameter.
struct RadialShot<'a> {
    sys: &'a SphereSystem,
    x: f64,
}

impl RadialShot<'_> {
    fn rhs(&self, eps: f64) -> impl Fn(f64, f64, f64) -> f64 + '_ {
        let cent = self.sys.centrifugal();
        let k2 = self.x * self.x * eps;
        move |rho: f64, u: f64, _| (cent / (rho * rho) - k2) * u
    }

    /// Regular solution at the surface, normalised, as `(u, du/drho)`.
    fn surface(&self) -> Result<OdeState> {
        let n = self.sys.n_sphere;
        let eps = n * n;
        let turn = self.sys.centrifugal().sqrt() / (n * self.x);
        let start = 0.1 * turn.min(1.0);
        let nu = self.sys.nu as f64;
        let h = 1.0 / DEFAULT_ODE_STEPS as f64;
        let mut s = OdeState::new(start, 1.0, (nu + 1.0) / start);
        let mut knots = vec![1.0];
        if turn < 1.0 && turn > start {
            knots.insert(0, turn);
        }
        for end in knots {
            s = integrate_radial(self.rhs(eps), s, end, h)?;
            let norm = s.y.hypot(s.yp / self.x);
            s.y /= norm;
            s.yp /= norm;
        }
        Ok(s)
    }

    /// Interior amplitude squared over the exterior standing-wave amplitude
    /// squared, with the exterior decomposition taken at `rho = 2`.
    fn amplitude_ratio(&self) -> Result<f64> {
        let nu = self.sys.nu as usize;
        let n = self.sys.n_sphere;
        let x = self.x;
        let s = self.surface()?;
        let (p, dp) = riccati_psi(nu, n * x);
        let c_in = (s.y * p + s.yp / (n * x) * dp) / (p * p + dp * dp);
        let out = integrate_radial(self.rhs(1.0), s, 2.0, 1.0 / DEFAULT_ODE_STEPS as f64)?;
        let (q, dq) = riccati_psi(nu, 2.0 * x);
        let (c, dc) = riccati_chi(nu, 2.0 * x)?;
        let w = q * dc - dq * c;
        let up = out.yp / x;
        let alpha = (out.y * dc - up * c) / w;
        let beta = (up * q - out.y * dq) / w;
        Ok(c_in * c_in / (alpha * alpha + beta * beta))
    }

    /// Matching of the interior shot to the outgoing-decaying `chi` branch,
    /// as the sine of the angle between the two in the `(u, u'/x)` plane.
    fn quasi_bound_mismatch(&self) -> Result<f64> {
        let s = self.surface()?;
        let (c, dc) = riccati_chi(self.sys.nu as usize, self.x)?;
        let up = s.yp / self.x;
        Ok((up * c - s.y * dc) / (s.y.hypot(up) * c.hypot(dc)))
    }
}

fn climb<F: Fn(f64) -> f64>(f: &F, x0: f64) -> Option<(f64, f64)> {
    let mut h = 1e-6 * x0;
    let f0 = f(x0);
    let dir = if f(x0 + h) >= f0 { 1.0 } else { -1.0 };
    let (mut a, mut b) = (x0 - dir * h, x0);
    let mut fb = f0;
    for _ in 0..200 {
        let c = b + dir * h;
        let fc = f(c);
        if !fc.is_finite() || c <= 0.0 {
            return None;
        }
        if fc < fb {
            let (lo, hi) = if a < c { (a, c) } else { (c, a) };
            return Some(golden_max(f, lo, hi, 1e-13));
        }
        a = b;
        b = c;
        fb = fc;
        h *= 1.6;
    }
    None
}

/// Quasi-bound levels from shooting the radial equation, ascending in `x`,
/// over `[sqrt(nu(nu+1))/n, 1.25 sqrt(nu(nu+1))]`. Seeds come from the
/// sign changes of the `chi` matching and from local maxima of the
/// amplitude ratio on a coarse grid; each is climbed to its maximum.
pub fn shape_resonance_levels(sys: &SphereSystem, count: usize) -> Result<Vec<(f64, f64)>> {
    let (lo, top) = sys.barrier_window();
    let hi = 1.25 * top;
    if !(lo < hi) || sys.n_sphere <= 1.0 {
        return Ok(Vec::new());
    }
    let points = 400;
    let xs = grid(lo, hi, points);
    let ratio = |x: f64| RadialShot { sys, x }.amplitude_ratio().unwrap_or(f64::NAN);
    let mismatch = |x: f64| {
        RadialShot { sys, x }
            .quasi_bound_mismatch()
            .unwrap_or(f64::NAN)
    };

    let ratios: Vec<f64> = xs.par_iter().map(|&x| ratio(x)).collect();
    let threshold = DEFAULT_PROMINENCE * median(&ratios);
    let mut seeds: Vec<f64> = local_maxima(&ratios, threshold)
        .into_iter()
        .map(|i| xs[i])
        .collect();

    let matches: Vec<f64> = xs.par_iter().map(|&x| mismatch(x)).collect();
    for i in 0..points - 1 {
        let (a, b) = (matches[i], matches[i + 1]);
        if a.is_finite() && b.is_finite() && a.signum() != b.signum() {
            let br = Bracket {
                lo: xs[i],
                hi: xs[i + 1],
                f_lo: a,
                f_hi: b,
            };
            if let Ok(x) = find_root_with(mismatch, br, 1e-12, MAX_ITERATIONS) {
                seeds.push(x);
            }
        }
    }

    let mut levels: Vec<(f64, f64)> = seeds
        .par_iter()
        .filter_map(|&x| climb(&ratio, x))
        .filter(|&(x, v)| x >= lo && x <= hi && v > threshold)
        .collect();
    levels.sort_by(|a, b| a.0.total_cmp(&b.0));
    levels.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-7 * b.0);
    levels.truncate(count);
    Ok(levels)
}

/// Size parameter of the `order`-th quasi-bound level (1 = lowest).
pub fn shape_resonance_estimate(sys: &SphereSystem, order: u32) -> Result<f64> {
    if order == 0 {
        return Err(Error::domain("order starts at 1"));
    }
    let levels = shape_resonance_levels(sys, order as usize)?;
    levels.get(order as usize - 1).map(|l| l.0).ok_or_else(|| {
        Error::NonConverged(format!(
            "only {} levels found below order {order}",
            levels.len()
        ))
    })
}
