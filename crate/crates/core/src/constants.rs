//! CODATA 2018 constants used throughout the crate.

use serde::{Deserialize, Serialize};

/// Electron rest mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Planck constant, J s (exact).
pub const PLANCK_H: f64 = 6.626_070_15e-34;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// speed of light, m/s
    pub c: f64,
    /// reduced Planck constant, J s
    pub hbar: f64,
    /// elementary charge, C
    pub e_charge: f64,
    /// vacuum permittivity, F/m
    pub eps0: f64,
    /// impedance of free space, ohm
    pub z0: f64,
}

impl PhysicalConstants {
    pub const CODATA2018: PhysicalConstants = PhysicalConstants {
        c: 299_792_458.0,
        hbar: 1.054_571_817e-34,
        e_charge: 1.602_176_634e-19,
        eps0: 8.854_187_812_8e-12,
        // 1 / (eps0 c)
        z0: 376.730_313_668,
    };

    /// Vacuum permeability implied by `mu0 eps0 c^2 = 1`.
    pub fn mu0(&self) -> f64 {
        1.0 / (self.eps0 * self.c * self.c)
    }

    /// Planck constant `2 pi hbar`.
    pub fn h(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA2018
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_relation_holds() {
        let pc = PhysicalConstants::CODATA2018;
        let mu0 = pc.z0 / pc.c;
        assert!((pc.c * pc.c * mu0 * pc.eps0 - 1.0).abs() < 1e-10);
        assert!((pc.z0 - 1.0 / (pc.eps0 * pc.c)).abs() / pc.z0 < 1e-11);
    }

    #[test]
    fn h_matches_exact_value() {
        let pc = PhysicalConstants::CODATA2018;
        assert!((pc.h() - PLANCK_H).abs() / PLANCK_H < 1e-9);
    }
}
