use leibenson::exact::{radial_pde_residual, BarenblattProfile};
use leibenson::geometry::RadialGrid;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hand_profile(r: f64, t: f64) -> f64 {
    let s = 1.0 - t;
    if s <= 0.0 {
        return 0.0;
    }
    s.powi(6) * (1.0 + 8.0 * r.sqrt() * s * s).powi(-2)
}

#[test]
fn matches_hand_reduced_formula() {
    let b = BarenblattProfile::default_profile();
    for &r in &[0.0, 1e-4, 0.02, 0.7, 3.0, 19.5] {
        for &t in &[0.0, 0.3, 0.99, 1.0] {
            let (got, want) = (b.eval(r, t), hand_profile(r, t));
            assert!(
                (got - want).abs() <= 1e-14 * want.max(1e-300),
                "{r} {t}: {got} {want}"
            );
        }
    }
}

#[test]
fn residual_ratio_at_least_two() {
    let b = BarenblattProfile::default_profile();
    for &h in &[1e-2, 1e-3] {
        let big = b.pde_residual(1.0, 0.25, h, h).unwrap().abs();
        let small = b.pde_residual(1.0, 0.25, 0.5 * h, 0.5 * h).unwrap().abs();
        assert!(big / small >= 2.0, "h = {h}: {big} vs {small}");
    }
}

#[test]
fn residual_order_at_random_interior_points() {
    let b = BarenblattProfile::default_profile();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let r = rng.gen_range(0.2..5.0);
        let t = rng.gen_range(0.05..0.9);
        let study = b.residual_study(r, t, &[1e-2, 5e-3, 2.5e-3]).unwrap();
        let order = study.order.expect("interior point");
        assert!(order >= 1.0, "order {order} at ({r}, {t})");
    }
}

#[test]
fn perturbed_time_term_is_a_negative_control() {
    let b = BarenblattProfile::default_profile();
    let shifted = b.with_c(b.c + 0.1).unwrap();
    let exact = |r: f64, t: f64| b.eval(r, t);
    let wrong = |r: f64, t: f64| shifted.eval(r, t);
    let res: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&h| {
            radial_pde_residual(&wrong, &exact, &|r| b.rho(r), 3, 2.0, 0.5, 1.0, 0.25, h, h)
                .unwrap()
                .abs()
        })
        .collect();
    let scale = b.rho(1.0) * (b.eval(1.0, 0.2) - b.eval(1.0, 0.3)).abs() / 0.1;
    assert!(res.iter().all(|&x| x > 1e-2 * scale), "{res:?}");
    assert!((res[2] / res[1] - 1.0).abs() < 1e-2);
}

#[test]
fn printed_bracket_coefficient_does_not_solve_the_equation() {
    // κ_l^{+1/(p−1)}·D/((p−l)q) = 0.25·0.5/(0.5·0.5) = 0.5 instead of 8.
    let printed = |r: f64, t: f64| {
        let s: f64 = 1.0 - t;
        s.powi(6) * (1.0 + 0.5 * r.sqrt() * s * s).powi(-2)
    };
    let rho = |r: f64| r.powf(-1.5);
    let res = |h: f64| {
        radial_pde_residual(&printed, &printed, &rho, 3, 2.0, 0.5, 1.0, 0.25, h, h)
            .unwrap()
            .abs()
    };
    let dt_scale = (printed(1.0, 0.24) - printed(1.0, 0.26)).abs() / 0.02;
    assert!(res(1e-3) > 0.5 * dt_scale);
    assert!((res(1e-4) / res(1e-3) - 1.0).abs() < 1e-2);
}

#[test]
fn energy_is_monotone_in_time() {
    let b = BarenblattProfile::default_profile();
    let mut last = f64::INFINITY;
    for k in 0..=10 {
        let t = 0.1 * k as f64;
        let phi = b.energy_phi(2.0, t, 20.0).unwrap().value;
        assert!(phi <= last, "t = {t}");
        last = phi;
    }
    assert_eq!(last, 0.0);
}

#[test]
fn cell_averages_sum_to_the_exact_mass() {
    let b = BarenblattProfile::default_profile();
    let model = b.model().unwrap();
    let grid = RadialGrid::uniform(&model, 2.0, 50).unwrap();
    let avg = b.cell_averages(&grid, 0.3).unwrap();
    let discrete: f64 = grid.rho_mass(&avg);
    // ∫₀² u ρ dμ with u(r, 0.3) by a fine midpoint sum
    let k = 400_000;
    let h = 2.0 / k as f64;
    let exact: f64 = (0..k)
        .map(|i| {
            let r = (i as f64 + 0.5) * h;
            hand_profile(r, 0.3) * r.powf(-1.5) * 4.0 * std::f64::consts::PI * r * r * h
        })
        .sum();
    assert!(
        ((discrete - exact) / exact).abs() < 1e-6,
        "{discrete} {exact}"
    );
}

proptest! {
    #[test]
    fn nonincreasing_in_r_and_t(r in 0.0f64..50.0, dr in 0.0f64..5.0, t in 0.0f64..1.2, dt in 0.0f64..0.5) {
        let b = BarenblattProfile::default_profile();
        prop_assert!(b.eval(r + dr, t) <= b.eval(r, t));
        prop_assert!(b.eval(r, t + dt) <= b.eval(r, t));
        prop_assert!(b.eval(r, t) >= 0.0);
    }

    #[test]
    fn bracket_collapses_onto_similarity_variable(r1 in 0.01f64..10.0, t1 in 0.0f64..0.95, t2 in 0.0f64..0.95) {
        let b = BarenblattProfile::default_profile();
        // choose r2 with the same similarity variable at t2
        let xi = b.similarity_variable(r1, t1);
        let r2 = (xi / (1.0 - t2).powi(2)).powi(2);
        let bracket = |r: f64, t: f64| {
            let s: f64 = 1.0 - t;
            (b.eval(r, t) / s.powi(6)).powf(-0.5)
        };
        let (a, c) = (bracket(r1, t1), bracket(r2, t2));
        prop_assert!(((a - c) / a).abs() < 1e-9);
    }
}
