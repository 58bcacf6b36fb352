use leibenson::diagnostics::{
    bump_family, caccioppoli_check, chained_energy_bound, energy_phi, fit_rate, hoelder_step_check,
    psi, psi_zero_time, sobolev_probe, sobolev_ratio, verify_comparison, CACCIOPPOLI_TOL,
};
use leibenson::exact::BarenblattProfile;
use leibenson::geometry::{Density, RadialGrid, WeightedModel};
use leibenson::params::{caccioppoli_constant, extinction_time_bound};
use leibenson::solver::{run, OuterBc, RunOptions, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rk4(phi0: f64, c: f64, a: f64, t_end: f64, steps: usize) -> f64 {
    let f = |y: f64| -c * y.max(0.0).powf(a);
    let h = t_end / steps as f64;
    let mut y = phi0;
    for _ in 0..steps {
        let k1 = f(y);
        let k2 = f(y + 0.5 * h * k1);
        let k3 = f(y + 0.5 * h * k2);
        let k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

#[test]
fn closed_form_psi_matches_rk4() {
    let (phi0, c, sigma, d) = (5.0, 0.8, 2.0, 0.5);
    let a = sigma / (sigma + d);
    let t_zero = psi_zero_time(phi0, c, sigma, d);
    for frac in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let t = frac * t_zero;
        let want = rk4(phi0, c, a, t, 20_000);
        let got = psi(phi0, c, sigma, d, t);
        assert!(
            ((got - want) / want).abs() < 1e-8,
            "t = {t}: {got} vs {want}"
        );
    }
    // T from the extinction bound is the first zero of Ψ
    let (c1, c_sob): (f64, f64) = (15.0 / 32.0, 2.0);
    let rate = c1 * c_sob.powf(-sigma / (sigma + d));
    let t_bound = extinction_time_bound(phi0, c1, c_sob, sigma, d).unwrap();
    assert!((t_bound - psi_zero_time(phi0, rate, sigma, d)).abs() < 1e-12 * t_bound);
    assert_eq!(psi(phi0, rate, sigma, d, t_bound), 0.0);
}

fn hoelder_grids() -> Vec<(RadialGrid, f64, f64, f64, f64)> {
    // (grid, σ, D, θ, κ)
    let mut out = Vec::new();
    let e = WeightedModel::euclidean(3, 2.0)
        .unwrap()
        .with_density(Density::power(1.5))
        .unwrap();
    out.push((
        RadialGrid::uniform(&e, 4.0, 64).unwrap(),
        2.0,
        0.5,
        12.0 / 7.0,
        3.0,
    ));
    let c = WeightedModel::conformal(3, 2.0, 1.5, 1.0)
        .unwrap()
        .with_density(Density::unit())
        .unwrap();
    out.push((
        RadialGrid::uniform(&c, 10.0, 64).unwrap(),
        2.0,
        0.5,
        12.0 / 7.0,
        3.0,
    ));
    let r = WeightedModel::ricci_polynomial(3, 2.0, 4.0)
        .unwrap()
        .with_density(Density::power(1.0).with_core(0.5))
        .unwrap();
    out.push((
        RadialGrid::uniform(&r, 5.0, 64).unwrap(),
        2.0,
        0.5,
        12.0 / 7.0,
        3.0,
    ));
    // σκ = σ + D: the sup-norm form
    out.push((
        RadialGrid::uniform(&e, 4.0, 64).unwrap(),
        2.0,
        0.5,
        f64::INFINITY,
        1.25,
    ));
    out
}

#[test]
fn discrete_hoelder_on_random_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (grid, sigma, d, theta, kappa) in hoelder_grids() {
        for _ in 0..1000 {
            let scale = 10f64.powf(rng.gen_range(-3.0..3.0));
            let u: Vec<f64> = (0..64)
                .map(|_| {
                    if rng.gen_bool(0.2) {
                        0.0
                    } else {
                        scale * rng.gen::<f64>()
                    }
                })
                .collect();
            let c = hoelder_step_check(&grid, &u, sigma, d, theta, kappa).unwrap();
            assert!(c.passed, "{} > {}", c.lhs, c.rhs);
        }
    }
}

#[test]
fn probe_is_scale_invariant_in_v() {
    let m = WeightedModel::euclidean(3, 2.0).unwrap();
    let grid = RadialGrid::uniform(&m, 4.0, 400).unwrap();
    let v: Vec<f64> = grid.sample(|r| (1.0 - r * r / 9.0).max(0.0).powi(2));
    let v2: Vec<f64> = v.iter().map(|x| 2.0 * x).collect();
    let (a, b) = (
        sobolev_ratio(&grid, &v, 2.0, 3.0).unwrap(),
        sobolev_ratio(&grid, &v2, 2.0, 3.0).unwrap(),
    );
    assert!(((a - b) / a).abs() < 1e-12);
}

#[test]
fn probe_is_stable_under_refinement() {
    let m = WeightedModel::euclidean(3, 2.0).unwrap();
    let family = bump_family(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0, 4.0]);
    let probe = |cells: usize| {
        let grid = RadialGrid::uniform(&m, 4.0, cells).unwrap();
        sobolev_probe(&grid, 2.0, 3.0, &family).unwrap().c_lower
    };
    let (a, b, c) = (probe(200), probe(400), probe(800));
    assert!(c.is_finite() && c > 0.0);
    assert!(
        ((a - c) / c).abs() < 0.05 && ((b - c) / c).abs() < 0.05,
        "{a} {b} {c}"
    );
    // sharp Euclidean constant: (∫v⁶)^{1/3} ≤ S⁻¹ ∫|∇v|², S = 3(π/2)^{4/3}
    let sharp = 1.0 / (3.0 * (std::f64::consts::PI / 2.0).powf(4.0 / 3.0));
    assert!(c <= sharp * 1.01, "{c} vs sharp {sharp}");
}

fn default_grid(cells: usize, r_max: f64) -> RadialGrid {
    let prof = BarenblattProfile::default_profile();
    RadialGrid::uniform(&prof.model().unwrap(), r_max, cells).unwrap()
}

#[test]
fn discrete_energy_converges_to_the_exact_integral() {
    let prof = BarenblattProfile::default_profile();
    let exact = prof.energy_phi(2.0, 0.0, 20.0).unwrap().value;
    let errors: Vec<f64> = [500, 1000, 2000]
        .iter()
        .map(|&n| {
            let grid = default_grid(n, 20.0);
            let u = prof.cell_averages(&grid, 0.0).unwrap();
            ((energy_phi(&grid, &u, 2.0, 0.5) - exact) / exact).abs()
        })
        .collect();
    assert!(errors[1] < errors[0] && errors[2] < errors[1], "{errors:?}");
    assert!(errors[2] < 0.03, "{errors:?}");
}

#[test]
fn energy_chain_on_a_tracking_run() {
    let prof = BarenblattProfile::default_profile();
    let grid = default_grid(60, 2.0);
    let u0 = prof.cell_averages(&grid, 0.0).unwrap();
    let cfg = SolverConfig::new(grid, 2.0, 0.5, 0.6)
        .unwrap()
        .with_outer_bc(OuterBc::DirichletExact(prof));
    let mut opts = RunOptions::new(2.0, 0.5, 0.005);
    opts.monitor_energy = true;
    let out = run(&cfg, u0, &opts).unwrap();
    let tr = &out.trace;
    assert!(tr.len() > 100);

    let c1 = caccioppoli_constant(2.0, 0.5, 2.0, 0.5);
    assert!((c1 - 15.0 / 32.0).abs() < 1e-15);
    for (t1, t2) in [(0.0, 0.1), (0.1, 0.5), (0.2, 0.3), (0.05, 0.6)] {
        let m = caccioppoli_check(tr, c1, t1, t2, CACCIOPPOLI_TOL).unwrap();
        assert!(m.passed, "({t1}, {t2}): {m:?}");
    }

    let c_star = fit_rate(tr).unwrap();
    assert!(c_star > 0.0);
    assert!(verify_comparison(tr, c_star).unwrap().passed);
    assert!(!verify_comparison(tr, 10.0 * c_star).unwrap().passed);

    let (phi, bound) = chained_energy_bound(
        &cfg.grid,
        &out.final_state.u,
        2.0,
        0.5,
        2.0,
        3.0,
        12.0 / 7.0,
    )
    .unwrap();
    assert!(phi <= bound * (1.0 + 1e-8));
}
