//! Gaussian wave packet and the TE/TM mode that is indistinguishable from
//! it: a narrowband packet of quality factor `Q` acts like a guided mode
//! with cutoff `sqrt(2 k0 dk)` in a guide of transverse size `lambda0 sqrt(Q)`.
//!
//! Vacuum dispersion is assumed, so `Q = omega0 / d_omega = k0 / dk`, and the
//! one-sided detuning `dk` is the sideband offset `2 sqrt(a)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct GaussianPacket {
    #[serde(rename = "amplitude_A")]
    pub amplitude_a: f64,
    pub k0: f64,
    /// Gaussian parameter `a` of the spectral envelope, rad^2/m^2
    pub a_var: f64,
    /// sideband offset `2 sqrt(a)`, rad/m
    pub delta_k: f64,
    pub q_factor: f64,
}

impl GaussianPacket {
    pub fn new(amplitude_a: f64, k0: f64, a_var: f64) -> Result<Self> {
        if !(a_var > 0.0) || !(k0 > 0.0) {
            return Err(Error::domain(format!(
                "packet needs k0 > 0 and a > 0 (got k0 = {k0}, a = {a_var})"
            )));
        }
        let delta_k = 2.0 * a_var.sqrt();
        let q_factor = k0 / delta_k;
        if !(q_factor > 1.0) {
            return Err(Error::domain(format!(
                "packet is not narrowband: Q = {q_factor}"
            )));
        }
        Ok(GaussianPacket {
            amplitude_a,
            k0,
            a_var,
            delta_k,
            q_factor,
        })
    }

    /// Packet with carrier `k0` and quality factor `q` (`dk = k0 / q`).
    pub fn from_quality(amplitude_a: f64, k0: f64, q: f64) -> Result<Self> {
        if !(q > 1.0) {
            return Err(Error::domain(format!("Q must exceed 1, got {q}")));
        }
        let half = 0.5 * k0 / q;
        Self::new(amplitude_a, k0, half * half)
    }

    pub fn lambda0(&self) -> f64 {
        2.0 * PI / self.k0
    }
}

/// Spectral amplitude `A / sqrt(4 pi a) exp(-(k - k0)^2 / 4a)`.
pub fn packet_amplitude(p: &GaussianPacket, k: f64) -> f64 {
    let d = k - p.k0;
    p.amplitude_a / (4.0 * PI * p.a_var).sqrt() * (-d * d / (4.0 * p.a_var)).exp()
}

/// `omega0 / d_omega`; a width at or above the carrier is rejected.
pub fn quality_factor(omega0: f64, delta_omega: f64) -> Result<f64> {
    if !(omega0 > 0.0 && delta_omega > 0.0) {
        return Err(Error::domain("omega0 and delta_omega must be positive"));
    }
    if delta_omega >= omega0 {
        return Err(Error::domain(format!(
            "delta_omega = {delta_omega} >= omega0 = {omega0}: not narrowband"
        )));
    }
    Ok(omega0 / delta_omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct EquivalentMode {
    pub kc_eq: f64,
    pub lambda_c_eq: f64,
    pub b_eq: f64,
    pub kg: f64,
}

pub fn equivalent_mode(p: &GaussianPacket) -> Result<EquivalentMode> {
    let kc_eq = (2.0 * p.k0 * p.delta_k).sqrt();
    if kc_eq >= p.k0 {
        return Err(Error::domain(format!(
            "equivalent cutoff {kc_eq} >= k0 {}: Q = {} too small",
            p.k0, p.q_factor
        )));
    }
    Ok(EquivalentMode {
        kc_eq,
        lambda_c_eq: 2.0 * PI / kc_eq,
        b_eq: p.lambda0() * p.q_factor.sqrt(),
        kg: ((p.k0 - kc_eq) * (p.k0 + kc_eq)).sqrt(),
    })
}

/// Cutoff without the narrowband approximation: `sqrt((k0 + kg)(k0 - kg))`
/// with `kg = k0 - dk`.
pub fn exact_equivalent_cutoff(p: &GaussianPacket) -> f64 {
    let kg = p.k0 - p.delta_k;
    ((p.k0 + kg) * (p.k0 - kg)).sqrt()
}

/// The perturbation as seen from the source: carrier and bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct SourceView {
    pub k0: f64,
    pub omega0: f64,
    pub delta_omega: f64,
}

/// The same perturbation as a finite mode of transverse size `b_eq`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct ModeView {
    pub k0: f64,
    pub lambda0: f64,
    pub q_factor: f64,
    pub b_eq: f64,
    pub kc_eq: f64,
    pub lambda_c_eq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct PacketReport {
    pub packet: GaussianPacket,
    pub source: SourceView,
    pub mode: ModeView,
}

/// Pairs the source description `(omega0, d_omega)` with the finite-mode
/// description `(b_eq, Q)` of the same packet.
pub fn indistinguishability_report(p: &GaussianPacket) -> Result<PacketReport> {
    let c = PhysicalConstants::CODATA2018.c;
    let eq = equivalent_mode(p)?;
    let omega0 = c * p.k0;
    Ok(PacketReport {
        packet: *p,
        source: SourceView {
            k0: p.k0,
            omega0,
            delta_omega: c * p.delta_k,
        },
        mode: ModeView {
            k0: p.k0,
            lambda0: p.lambda0(),
            q_factor: p.q_factor,
            b_eq: eq.b_eq,
            kc_eq: eq.kc_eq,
            lambda_c_eq: eq.lambda_c_eq,
        },
    })
}
