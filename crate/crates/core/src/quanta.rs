//! Angular-momentum and energy bookkeeping for guided TE/TM modes, the
//! half-wavelength standing-wave cell with its `+hbar/2` / `-hbar/2`
//! magnetic half-cells, the modal fine-structure coupling and the
//! Abraham/Minkowski photon momenta.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::waveguide::{dispersion, Geometry, ModeIndex, Polarization, Regime};

pub use crate::constants::PhysicalConstants;

/// Ratio of z angular momentum to energy per unit length: `-m / omega`.
pub fn angular_momentum_energy_ratio(m: i64, omega: f64) -> f64 {
    -(m as f64) / omega
}

/// Angular momentum carried per cell: `-m hbar`.
pub fn angular_momentum_per_cell(pc: &PhysicalConstants, m: i64) -> f64 {
    -(m as f64) * pc.hbar
}

/// One half-guide-wavelength standing-wave cell. Electric nodes sit at both
/// ends, the magnetic node at the centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct StationaryCell {
    pub mode: ModeIndex,
    pub omega: f64,
    pub lambda_g: f64,
    pub cell_length: f64,
    pub e_nodes: [f64; 2],
    pub b_node: f64,
    pub energy: f64,
    /// angular momentum of the two magnetic half-cells
    pub half_quanta: [f64; 2],
    pub net_angular_momentum: f64,
}

/// Builds the cell of a propagating mode at `omega`.
pub fn build_cell(
    pc: &PhysicalConstants,
    mode: ModeIndex,
    geom: Geometry,
    omega: f64,
) -> Result<StationaryCell> {
    let point = dispersion(geom, mode, omega)?;
    if point.regime != Regime::Propagating {
        return Err(Error::NotPropagating(format!(
            "{mode} is {:?} at omega = {omega}",
            point.regime
        )));
    }
    Ok(cell_from_guide_wavelength(pc, mode, omega, point.lambda_g))
}

/// Cell construction for a given guide wavelength.
pub fn cell_from_guide_wavelength(
    pc: &PhysicalConstants,
    mode: ModeIndex,
    omega: f64,
    lambda_g: f64,
) -> StationaryCell {
    let cell_length = 0.5 * lambda_g;
    let half_quanta = [0.5 * pc.hbar, -0.5 * pc.hbar];
    StationaryCell {
        mode,
        omega,
        lambda_g,
        cell_length,
        e_nodes: [0.0, cell_length],
        b_node: 0.25 * lambda_g,
        energy: pc.hbar * omega,
        half_quanta,
        net_angular_momentum: half_quanta[0] + half_quanta[1],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct FieldSample {
    pub z: f64,
    pub e_amp: f64,
    pub b_amp: f64,
}

/// Normalised transverse E and B along the cell: `sin(pi z / L)` and
/// `cos(pi z / L)` on `samples` evenly spaced points of `[0, L]`.
pub fn cell_field_profile(cell: &StationaryCell, samples: usize) -> Result<Vec<FieldSample>> {
    if samples < 3 {
        return Err(Error::domain(format!(
            "need at least 3 samples, got {samples}"
        )));
    }
    let len = cell.cell_length;
    let out = (0..samples)
        .map(|i| {
            let z = if i == samples - 1 {
                len
            } else {
                len * i as f64 / (samples - 1) as f64
            };
            let phase = std::f64::consts::PI * z / len;
            FieldSample {
                z,
                e_amp: phase.sin(),
                b_amp: phase.cos(),
            }
        })
        .collect();
    Ok(out)
}

/// `e^2 / (4 pi eps0 c hbar)`.
pub fn fine_structure_constant(pc: &PhysicalConstants) -> f64 {
    pc.e_charge * pc.e_charge / (4.0 * std::f64::consts::PI * pc.eps0 * pc.c * pc.hbar)
}

/// Coupling with the vacuum impedance replaced by the modal characteristic
/// impedance: `Z_car e^2 / (4 pi hbar)`.
pub fn modal_fine_structure(
    pc: &PhysicalConstants,
    kg_over_k0: f64,
    pol: Polarization,
) -> Result<f64> {
    if !(kg_over_k0 > 0.0 && kg_over_k0 <= 1.0) {
        return Err(Error::domain(format!(
            "kg/k0 must lie in (0, 1], got {kg_over_k0}"
        )));
    }
    let z = match pol {
        Polarization::TM => kg_over_k0 * pc.z0,
        Polarization::TE => pc.z0 / kg_over_k0,
    };
    Ok(z * pc.e_charge * pc.e_charge / (4.0 * std::f64::consts::PI * pc.hbar))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct PhotonMomenta {
    pub p_minkowski: f64,
    pub p_abraham: f64,
    pub p_free: f64,
}

/// Minkowski (`hbar omega n_p / c`), Abraham (`hbar omega / (c n_g)`) and
/// free-space momenta of a single quantum.
pub fn photon_momentum(
    pc: &PhysicalConstants,
    omega: f64,
    n_phase: f64,
    n_group: f64,
) -> PhotonMomenta {
    let p_free = pc.hbar * omega / pc.c;
    PhotonMomenta {
        p_minkowski: p_free * n_phase,
        p_abraham: p_free / n_group,
        p_free,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PC: PhysicalConstants = PhysicalConstants::CODATA2018;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn ratio_examples() {
        assert!(rel(angular_momentum_energy_ratio(2, 1e15), -2e-15) < 1e-15);
        assert_eq!(angular_momentum_energy_ratio(0, 3.0), 0.0);
        assert_eq!(angular_momentum_energy_ratio(-1, 1.0), 1.0);
    }

    #[test]
    fn per_cell_examples() {
        assert_eq!(angular_momentum_per_cell(&PC, 1), -1.054_571_817e-34);
        assert_eq!(angular_momentum_per_cell(&PC, 0), 0.0);
        assert!(rel(angular_momentum_per_cell(&PC, -3), 3.0 * PC.hbar) < 1e-15);
    }

    #[test]
    fn cell_geometry_from_guide_wavelength() {
        let cell = cell_from_guide_wavelength(&PC, ModeIndex::te(1, 0), 1e15, 2.0);
        assert_eq!(cell.cell_length, 1.0);
        assert_eq!(cell.b_node, 0.5);
        assert_eq!(cell.b_node - cell.e_nodes[0], cell.lambda_g / 4.0);
        assert_eq!(cell.net_angular_momentum, 0.0);
        assert!(rel(cell.energy, 1.054_571_817e-19) < 1e-15);
    }

    #[test]
    fn build_cell_rejects_evanescent_modes() {
        let g = Geometry::Rectangular { a: 0.02, b: 0.01 };
        let err = build_cell(
            &PC,
            ModeIndex::te(1, 0),
            g,
            2.0 * std::f64::consts::PI * 1e9,
        )
        .unwrap_err();
        assert_eq!(err.name(), "NotPropagating");
    }

    #[test]
    fn field_profile_nodes() {
        let cell = cell_from_guide_wavelength(&PC, ModeIndex::te(1, 0), 1e10, 0.04);
        let prof = cell_field_profile(&cell, 5).unwrap();
        assert_eq!(prof[0].e_amp, 0.0);
        assert_eq!(prof[0].b_amp, 1.0);
        assert!((prof[2].e_amp - 1.0).abs() < 1e-15);
        assert!(prof[2].b_amp.abs() < 1e-15);
        assert!(prof[4].e_amp.abs() < 1e-12);
        assert!((prof[4].b_amp + 1.0).abs() < 1e-15);
        assert!(cell_field_profile(&cell, 2).is_err());
    }

    #[test]
    fn alpha_value() {
        let a = fine_structure_constant(&PC);
        // direct evaluation of the CODATA 2018 inputs
        assert!(rel(a, 7.297_352_573_749_258e-3) < 1e-13, "{a}");
        assert!((1.0 / a - 137.036).abs() < 1e-3);
        let doubled = PhysicalConstants {
            e_charge: 2.0 * PC.e_charge,
            ..PC
        };
        assert!(rel(fine_structure_constant(&doubled), 4.0 * a) < 1e-15);
    }

    #[test]
    fn modal_alpha() {
        let a = fine_structure_constant(&PC);
        for pol in [Polarization::TE, Polarization::TM] {
            assert!(rel(modal_fine_structure(&PC, 1.0, pol).unwrap(), a) < 1e-10);
        }
        assert!(
            rel(
                modal_fine_structure(&PC, 0.5, Polarization::TM).unwrap(),
                a / 2.0
            ) < 1e-10
        );
        assert!(
            rel(
                modal_fine_structure(&PC, 0.5, Polarization::TE).unwrap(),
                2.0 * a
            ) < 1e-10
        );
        assert!(modal_fine_structure(&PC, 0.0, Polarization::TE).is_err());
        assert!(modal_fine_structure(&PC, 1.5, Polarization::TM).is_err());
    }

    #[test]
    fn momenta() {
        let p = photon_momentum(&PC, 1.2153e15, 1.0, 1.0);
        assert_eq!(p.p_minkowski, p.p_free);
        assert_eq!(p.p_abraham, p.p_free);
        let p = photon_momentum(&PC, 1.2153e15, 1.5, 2.0);
        assert!(rel(p.p_minkowski, 1.5 * PC.hbar * 1.2153e15 / PC.c) < 1e-15);
        assert!(rel(p.p_abraham, p.p_free / 2.0) < 1e-15);
    }
}
