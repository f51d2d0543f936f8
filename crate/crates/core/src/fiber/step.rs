use crate::error::{Error, Result};
use crate::numerics::bessel_k_mod_scaled;
use crate::numerics::special::bessel_j_seq;

use super::{guided_window, make_mode, scan_unit_interval, LPMode, ProfileKind, RadialProfile};

/// Initial number of scan points across the guided window.
pub const STEP_SCAN_POINTS: usize = 2000;

/// LP characteristic function with the Bessel poles cleared:
/// `u J_{l-1}(u) K_l(w) + w K_{l-1}(w) J_l(u)`, zero exactly at the modes.
/// Exponentially scaled `K` keeps the sign and avoids overflow.
pub(crate) fn characteristic(l: u32, u: f64, w: f64) -> f64 {
    let l = l as usize;
    let j = bessel_j_seq(l.max(1), u);
    let (jl, jm) = if l == 0 {
        (j[0], -j[1])
    } else {
        (j[l], j[l - 1])
    };
    let k = |n: usize| bessel_k_mod_scaled(n, w).unwrap_or(f64::NAN);
    let (kl, km) = if l == 0 {
        (k(0), k(1))
    } else {
        (k(l), k(l - 1))
    };
    u * jm * kl + w * km * jl
}

/// Guided LP modes of order `l` for a step profile, highest `beta` first.
/// An empty list means `l` is below cutoff at this wavelength.
pub fn lp_solve_step(profile: &RadialProfile, l: u32, k0: f64, tol: f64) -> Result<Vec<LPMode>> {
    let ProfileKind::Step { core_radius, .. } = profile.kind else {
        return Err(Error::InvalidProfile(
            "closed-form solver needs a step profile".into(),
        ));
    };
    if !(k0 > 0.0) {
        return Err(Error::domain(format!("k0 must be positive, got {k0}")));
    }
    let (lo, hi) = guided_window(profile, k0);
    let beta_at = |t: f64| lo + t * (hi - lo);
    let f = |t: f64| {
        let beta = beta_at(t);
        let u = core_radius * ((hi - beta) * (hi + beta)).sqrt();
        let w = core_radius * ((beta - lo) * (beta + lo)).sqrt();
        characteristic(l, u, w)
    };
    let (mut roots, failures) = scan_unit_interval(&f, STEP_SCAN_POINTS, tol, 6);
    if let Some(e) = failures.into_iter().next() {
        return Err(e);
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(i, t)| make_mode(profile, l, i as u32 + 1, k0, beta_at(t)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::DEFAULT_ROOT_TOL;

    /// Step fiber of core radius 10 and n1 = 1.5 with n2 set so that k0 = 1
    /// gives normalised frequency `v`.
    fn fiber(v: f64) -> RadialProfile {
        let n1: f64 = 1.5;
        let n2 = (n1 * n1 - v * v / 100.0).sqrt();
        RadialProfile::step(n1, n2, 10.0).unwrap()
    }

    #[test]
    fn single_mode_below_lp11_cutoff() {
        let p = fiber(2.0);
        assert_eq!(
            lp_solve_step(&p, 0, 1.0, DEFAULT_ROOT_TOL).unwrap().len(),
            1
        );
        assert!(lp_solve_step(&p, 1, 1.0, DEFAULT_ROOT_TOL)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn lp01_root_matches_reference() {
        // V = 2.5: u J1(u)/J0(u) = w K1(w)/K0(w) solved independently
        let p = fiber(2.5);
        let m = &lp_solve_step(&p, 0, 1.0, DEFAULT_ROOT_TOL).unwrap()[0];
        assert!((m.u - 1.669_739_706_849_41).abs() < 1e-9, "{}", m.u);
    }

    #[test]
    fn u_w_closure() {
        let p = fiber(5.0);
        for l in 0..3 {
            for m in lp_solve_step(&p, l, 1.0, DEFAULT_ROOT_TOL).unwrap() {
                assert!(((m.u * m.u + m.w * m.w) / 25.0 - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_tabulated_profile() {
        let p = RadialProfile::tabulated(vec![0.0, 1.0, 2.0], vec![1.5, 1.5, 1.4]).unwrap();
        assert_eq!(
            lp_solve_step(&p, 0, 1.0, 1e-12).unwrap_err().name(),
            "InvalidProfile"
        );
    }
}
