use fsq_core::mdr::{
    effective_potential, find_resonances, shape_resonance_estimate, shape_resonance_levels,
    te_response, SphereSystem, DEFAULT_PROMINENCE,
};

fn sphere(nu: u32) -> SphereSystem {
    SphereSystem::new(1.5, 2e-6, nu).unwrap()
}

fn scan(nu: u32) -> Vec<fsq_core::mdr::ResonanceRecord> {
    let x = nu as f64;
    find_resonances(&sphere(nu), x / 1.5, 1.25 * x, 20_000, DEFAULT_PROMINENCE).unwrap()
}

#[test]
fn scan_and_shooting_agree_on_first_three_orders() {
    for nu in [15, 20, 25] {
        let found = scan(nu);
        let levels = shape_resonance_levels(&sphere(nu), 3).unwrap();
        assert_eq!(levels.len(), 3, "nu = {nu}");
        for (rec, (x_est, _)) in found.iter().zip(&levels) {
            assert!(
                (x_est - rec.x_res).abs() / rec.x_res <= 1e-3,
                "nu = {nu}, order {}",
                rec.order
            );
        }
    }
}

#[test]
fn quality_drops_with_order() {
    let found = scan(20);
    assert!(found[0].q_factor > found[1].q_factor);
    assert!(found[1].q_factor > found[2].q_factor);
    for r in &found {
        assert!(r.width > 0.0);
        assert!((r.q_factor - r.x_res / r.width).abs() <= 1e-12 * r.q_factor);
    }
}

#[test]
fn thicker_barrier_traps_longer() {
    assert!(scan(30)[0].q_factor > scan(10)[0].q_factor);
}

#[test]
fn refinement_is_stable_under_denser_scan() {
    let s = sphere(20);
    let coarse = find_resonances(&s, 10.0, 20.0, 20_000, DEFAULT_PROMINENCE).unwrap();
    let fine = find_resonances(&s, 10.0, 20.0, 40_000, DEFAULT_PROMINENCE).unwrap();
    assert!(!coarse.is_empty());
    assert_eq!(coarse.len(), fine.len());
    let step = 10.0 / 19_999.0;
    for (a, b) in coarse.iter().zip(&fine) {
        assert!((a.x_res - b.x_res).abs() < step);
    }
}

#[test]
fn trapped_resonances_sit_inside_barrier_window() {
    let s = sphere(20);
    let (lo, hi) = s.barrier_window();
    let found = find_resonances(&s, lo, hi, 20_000, DEFAULT_PROMINENCE).unwrap();
    assert!(found.len() >= 2);
    for r in &found {
        assert!(r.x_res > lo && r.x_res < hi);
        // classically allowed just inside the surface, forbidden just outside
        assert!(effective_potential(&s, r.x_res, 1.0) < r.x_res * r.x_res);
        assert!(effective_potential(&s, r.x_res, 1.0 + 1e-9) > r.x_res * r.x_res);
    }
    // nothing is trapped before the well opens
    let below = find_resonances(&s, 0.5 * lo, 0.99 * lo, 5_000, DEFAULT_PROMINENCE).unwrap();
    assert!(below.is_empty());
}

#[test]
fn peaks_stand_out_of_local_background() {
    let s = sphere(20);
    for r in scan(20).iter().take(2) {
        let background = te_response(&s, r.x_res - 5.0 * r.width)
            .unwrap()
            .max(te_response(&s, r.x_res + 5.0 * r.width).unwrap());
        assert!(r.enhancement > 10.0 * background);
        assert!(r.enhancement > te_response(&s, r.x_res * (1.0 - 1e-7)).unwrap());
        assert!(r.enhancement > te_response(&s, r.x_res * (1.0 + 1e-7)).unwrap());
    }
}

#[test]
fn levels_ascend_and_low_orders_sit_below_nu() {
    let s = sphere(20);
    let x1 = shape_resonance_estimate(&s, 1).unwrap();
    let x2 = shape_resonance_estimate(&s, 2).unwrap();
    assert!(x2 > x1);
    for x in [x1, x2] {
        assert!(x > 20.0 / 1.5 && x < 20.0);
    }
}

#[test]
fn missing_level_is_reported() {
    let s = SphereSystem::new(1.5, 1.0, 3).unwrap();
    assert_eq!(
        shape_resonance_estimate(&s, 40).unwrap_err().name(),
        "NonConverged"
    );
}
