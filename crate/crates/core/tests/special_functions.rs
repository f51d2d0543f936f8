use fsq_core::numerics::special::bessel_j_seq;
use fsq_core::numerics::{bessel_j, bessel_j_prime, bessel_k_mod, riccati_chi, riccati_psi};
use proptest::prelude::*;

#[test]
fn riccati_wronskian() {
    for nu in 0..=40 {
        for i in 1..=60 {
            let x = 0.75 * i as f64 + 0.1;
            let (p, dp) = riccati_psi(nu, x);
            let (c, dc) = riccati_chi(nu, x).unwrap();
            let w = dp * c - p * dc;
            assert!(
                (w - 1.0).abs() < 1e-9 * (1.0 + (p * dc).abs()),
                "nu = {nu}, x = {x}: {w}"
            );
        }
    }
}

#[test]
fn riccati_low_orders_closed_form() {
    for i in 1..100 {
        let x = 0.3 * i as f64;
        let (s, c) = x.sin_cos();
        assert!((riccati_psi(0, x).0 - s).abs() < 1e-14);
        assert!((riccati_psi(1, x).0 - (s / x - c)).abs() < 1e-13);
        assert!((riccati_chi(0, x).unwrap().0 - c).abs() < 1e-14);
        assert!((riccati_chi(1, x).unwrap().0 - (c / x + s)).abs() < 1e-13);
    }
}

#[test]
fn chi_rejects_origin() {
    assert!(riccati_chi(3, 0.0).is_err());
    assert!(bessel_k_mod(0, -1.0).is_err());
}

#[test]
fn j_sum_rule() {
    for x in [0.5, 3.0, 17.0, 80.0] {
        let j = bessel_j_seq(200, x);
        let s = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
        assert!((s - 1.0).abs() < 1e-13);
    }
}

proptest! {
    #[test]
    fn j_three_term_recurrence(n in 1usize..40, x in 0.1f64..60.0) {
        let lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
        let rhs = 2.0 * n as f64 / x * bessel_j(n, x);
        let scale = bessel_j(n - 1, x).abs().max(bessel_j(n + 1, x).abs()).max(1e-300);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * scale.max(1e-3));
    }

    #[test]
    fn j_derivative_identity(n in 1usize..30, x in 0.1f64..50.0) {
        let d = bessel_j_prime(n, x);
        let expect = 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
        prop_assert!((d - expect).abs() < 1e-12);
    }

    #[test]
    fn k_recurrence(n in 1usize..20, x in 0.05f64..40.0) {
        let lhs = bessel_k_mod(n + 1, x).unwrap() - bessel_k_mod(n - 1, x).unwrap();
        let rhs = 2.0 * n as f64 / x * bessel_k_mod(n, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn riccati_psi_recurrence(nu in 1usize..50, x in 0.5f64..100.0) {
        let a = riccati_psi(nu - 1, x).0 + riccati_psi(nu + 1, x).0;
        let b = (2 * nu + 1) as f64 / x * riccati_psi(nu, x).0;
        let scale = riccati_psi(nu - 1, x).0.abs().max(riccati_psi(nu + 1, x).0.abs());
        prop_assert!((a - b).abs() <= 1e-11 * scale.max(1e-200));
    }
}
