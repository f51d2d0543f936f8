use fsq_core::debroglie::{from_velocity, from_wavenumber, omega_of_k};
use fsq_core::numerics::central_derivative;
use fsq_core::waveguide::{
    cutoff_wavenumber, dispersion, Geometry, ModeIndex, Polarization, Regime,
};
use fsq_core::wavepacket::{equivalent_mode, GaussianPacket};
use fsq_core::PhysicalConstants;
use proptest::prelude::*;

const PC: PhysicalConstants = PhysicalConstants::CODATA2018;

fn geometry() -> impl Strategy<Value = Geometry> {
    prop_oneof![
        (1e-3f64..0.1, 1e-3f64..0.1).prop_map(|(a, b)| Geometry::Rectangular {
            a: a.max(b),
            b: a.min(b)
        }),
        (1e-3f64..0.1).prop_map(|radius| Geometry::Circular { radius }),
    ]
}

fn mode(geom: Geometry) -> impl Strategy<Value = ModeIndex> {
    let circular = matches!(geom, Geometry::Circular { .. });
    (any::<bool>(), 0u32..4, 0u32..4).prop_map(move |(te, m, n)| {
        let pol = if te {
            Polarization::TE
        } else {
            Polarization::TM
        };
        let (m, n) = match (circular, pol) {
            (true, _) => (m, n + 1),
            (false, Polarization::TE) if m == 0 && n == 0 => (1, 0),
            (false, Polarization::TM) => (m + 1, n + 1),
            _ => (m, n),
        };
        ModeIndex {
            polarization: pol,
            m,
            n,
        }
    })
}

proptest! {
    #[test]
    fn propagating_identities(
        (geom, mode) in geometry().prop_flat_map(|g| (Just(g), mode(g))),
        factor in 1.0001f64..20.0,
    ) {
        let kc = cutoff_wavenumber(geom, mode).unwrap();
        let p = dispersion(geom, mode, factor * kc * PC.c).unwrap();
        prop_assert_eq!(p.regime, Regime::Propagating);
        let closure = (p.kg * p.kg + p.kc * p.kc - p.k0 * p.k0) / (p.k0 * p.k0);
        prop_assert!(closure.abs() <= 1e-12);
        prop_assert!((p.v_ph * p.v_g / (PC.c * PC.c) - 1.0).abs() <= 1e-12);
        prop_assert!(p.v_ph > PC.c && p.v_g < PC.c);
    }

    #[test]
    fn below_cutoff_is_evanescent(
        (geom, mode) in geometry().prop_flat_map(|g| (Just(g), mode(g))),
        factor in 0.01f64..0.999,
    ) {
        let kc = cutoff_wavenumber(geom, mode).unwrap();
        let p = dispersion(geom, mode, factor * kc * PC.c).unwrap();
        prop_assert_eq!(p.regime, Regime::Evanescent);
        prop_assert!(p.kappa > 0.0);
        prop_assert_eq!(p.v_g, 0.0);
    }

    #[test]
    fn particle_state_invariants(beta in 0.0001f64..0.9999, m0 in 1e-31f64..1e-25) {
        let s = from_velocity(&PC, m0, beta * PC.c).unwrap();
        prop_assert!(((s.k_g * s.k_g + s.k_c * s.k_c) / (s.k_0 * s.k_0) - 1.0).abs() <= 1e-12);
        prop_assert!((s.v_ph * s.v_g / (PC.c * PC.c) - 1.0).abs() <= 1e-12);
        let mc2 = m0 * PC.c * PC.c;
        let pc = s.p * PC.c;
        prop_assert!(((pc * pc + mc2 * mc2) / (s.e_total * s.e_total) - 1.0).abs() <= 1e-12);
        prop_assert!(s.v_ph > PC.c);
        prop_assert!(s.lambda_0 < s.lambda_c);
        let back = from_wavenumber(&PC, m0, s.k_g).unwrap();
        prop_assert!((back.v / s.v - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn numerical_group_velocity(beta in 0.001f64..0.999) {
        let m0 = 9.109_383_701_5e-31;
        let s = from_velocity(&PC, m0, beta * PC.c).unwrap();
        let h = 1e-3 * s.k_g.min(s.k_c);
        let vg = central_derivative(|k| omega_of_k(&PC, m0, k), s.k_g, h);
        prop_assert!((vg / s.v - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn packet_monotone_in_q(q in 10f64..1e6) {
        let k0 = 2.0 * std::f64::consts::PI / 1e-6;
        let a = equivalent_mode(&GaussianPacket::from_quality(1.0, k0, q).unwrap()).unwrap();
        let b = equivalent_mode(&GaussianPacket::from_quality(1.0, k0, 1.01 * q).unwrap()).unwrap();
        prop_assert!(b.b_eq > a.b_eq);
        prop_assert!(b.kc_eq < a.kc_eq);
        prop_assert!(((a.kg * a.kg + a.kc_eq * a.kc_eq) / (k0 * k0) - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn narrowband_identity_over_q_decades() {
    let k0 = 2.0 * std::f64::consts::PI / 1.3e-6;
    let lambda0 = 2.0 * std::f64::consts::PI / k0;
    for e in 1..=6 {
        let q = 10f64.powi(e);
        let lhs = 0.5 * lambda0 * (2.0 * q).sqrt();
        let rhs = 2.0 * std::f64::consts::PI / (2.0 * k0 * (k0 / q)).sqrt();
        assert!((lhs / rhs - 1.0).abs() <= 1e-12);
    }
}
