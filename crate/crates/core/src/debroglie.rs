//! A massive particle viewed as a guided mode: the rest mass sets a
//! Compton-type cutoff `k_c = m0 c / hbar`, the total energy sets `k_0` and
//! the momentum sets the guide wavenumber `k_g`, so `k_g^2 + k_c^2 = k_0^2`.
//!
//! Wavelengths follow `lambda = 2 pi / k` throughout.

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::sentinel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct ParticleState {
    pub m0: f64,
    pub v: f64,
    #[serde(with = "sentinel")]
    pub gamma_rel: f64,
    pub m_rel: f64,
    #[serde(with = "sentinel")]
    pub lambda_c: f64,
    pub lambda_0: f64,
    #[serde(with = "sentinel")]
    pub lambda_g: f64,
    pub k_c: f64,
    pub k_0: f64,
    pub k_g: f64,
    #[serde(rename = "E_total")]
    pub e_total: f64,
    pub p: f64,
    #[serde(with = "sentinel")]
    pub v_ph: f64,
    pub v_g: f64,
}

fn wavelength(k: f64) -> f64 {
    if k == 0.0 {
        f64::INFINITY
    } else {
        2.0 * std::f64::consts::PI / k
    }
}

/// State of a particle of rest mass `m0 > 0` moving at `0 <= v < c`.
pub fn from_velocity(pc: &PhysicalConstants, m0: f64, v: f64) -> Result<ParticleState> {
    if !(m0 > 0.0) {
        return Err(Error::domain(format!(
            "rest mass must be positive, got {m0}"
        )));
    }
    if !(v >= 0.0 && v < pc.c) {
        return Err(Error::domain(format!(
            "velocity must lie in [0, c), got {v}"
        )));
    }
    let beta = v / pc.c;
    let gamma = 1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt();
    let m = gamma * m0;
    let k_c = m0 * pc.c / pc.hbar;
    let k_0 = m * pc.c / pc.hbar;
    let k_g = m * v / pc.hbar;
    Ok(ParticleState {
        m0,
        v,
        gamma_rel: gamma,
        m_rel: m,
        lambda_c: wavelength(k_c),
        lambda_0: wavelength(k_0),
        lambda_g: wavelength(k_g),
        k_c,
        k_0,
        k_g,
        e_total: m * pc.c * pc.c,
        p: m * v,
        v_ph: if v == 0.0 {
            f64::INFINITY
        } else {
            pc.c * pc.c / v
        },
        v_g: v,
    })
}

/// Angular frequency `c sqrt(k^2 + k_c^2)` of guide wavenumber `k`.
pub fn omega_of_k(pc: &PhysicalConstants, m0: f64, k: f64) -> f64 {
    let k_c = m0 * pc.c / pc.hbar;
    pc.c * k.hypot(k_c)
}

/// State with guide wavenumber `k`. A zero rest mass gives the free photon.
pub fn from_wavenumber(pc: &PhysicalConstants, m0: f64, k: f64) -> Result<ParticleState> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::domain(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    if !(m0 >= 0.0) {
        return Err(Error::domain(format!(
            "rest mass must be non-negative, got {m0}"
        )));
    }
    let k_c = m0 * pc.c / pc.hbar;
    let k_0 = k.hypot(k_c);
    let omega = pc.c * k_0;
    let v = pc.c * (k / k_0);
    let e_total = pc.hbar * omega;
    let m = e_total / (pc.c * pc.c);
    let gamma = if m0 > 0.0 { k_0 / k_c } else { f64::INFINITY };
    Ok(ParticleState {
        m0,
        v,
        gamma_rel: gamma,
        m_rel: m,
        lambda_c: wavelength(k_c),
        lambda_0: wavelength(k_0),
        lambda_g: wavelength(k),
        k_c,
        k_0,
        k_g: k,
        e_total,
        p: pc.hbar * k,
        v_ph: pc.c * (k_0 / k),
        v_g: v,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct GuideAnalogy {
    pub lambda_c: f64,
    pub equivalent_cutoff_frequency: f64,
}

/// Compton wavelength and the angular frequency `m0 c^2 / hbar` at which
/// the analogous guide cuts off.
pub fn guide_analogy(pc: &PhysicalConstants, m0: f64) -> GuideAnalogy {
    let k_c = m0 * pc.c / pc.hbar;
    GuideAnalogy {
        lambda_c: wavelength(k_c),
        equivalent_cutoff_frequency: pc.c * k_c,
    }
}
