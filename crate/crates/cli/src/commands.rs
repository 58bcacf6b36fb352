use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use leibenson::diagnostics::{
    bump_family, caccioppoli_check, fit_rate, hoelder_step_check, sobolev_probe, verify_comparison,
    EnergyTrace, CACCIOPPOLI_TOL,
};
use leibenson::exact::BarenblattProfile;
use leibenson::geometry::{
    finiteness_norm, fitted_tail_exponent, Density, RadialGrid, WeightedModel,
};
use leibenson::params::{
    admissible_l_range, derive, extinction_time_bound, theta_max_cases, DerivedConstants,
    Exponents, Regime,
};
use leibenson::solver::{run, OuterBc, RunOptions, RunStatus, SolverConfig, State};

use crate::config::{ConfigError, RunConfig};
use crate::format::{e17, g6};
use crate::{exit, CliError, Outcome};

/// Header of the trace CSV written by `simulate`.
pub const CSV_HEADER: [&str; 7] = [
    "t",
    "sup_u",
    "Phi",
    "grad_term",
    "mass",
    "outflow",
    "clamped",
];

/// Environment variable that relocates relative output paths.
pub const OUT_DIR_ENV: &str = "LEIBENSON_OUT_DIR";

const DEFAULT_L: f64 = 1.5;

fn config_err<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Config(ConfigError(msg.into())))
}

pub fn exponents(cfg: &RunConfig) -> Result<Exponents, CliError> {
    let mut e = Exponents::new(
        cfg.u32_or("n", 3)?,
        cfg.f64_or("p", 2.0),
        cfg.f64_or("q", 0.5),
        cfg.f64_or("zeta", Exponents::DEFAULT_ZETA),
    )?;
    if let Some(s) = cfg.f64_opt("sigma") {
        e = e.with_sigma(s);
    }
    Ok(e)
}

pub fn family(cfg: &RunConfig) -> &str {
    cfg.str_or("family", "euclidean")
}

/// The weighted model named by `family`, without density.
pub fn bare_model(cfg: &RunConfig) -> Result<WeightedModel, CliError> {
    let n = cfg.u32_or("n", 3)?;
    let p = cfg.f64_or("p", 2.0);
    let model = match family(cfg) {
        "euclidean" => WeightedModel::euclidean(n, p)?,
        "conformal" => WeightedModel::conformal_with_smoothing(
            n,
            p,
            cfg.f64_or("l", DEFAULT_L),
            cfg.f64_or("c", 1.0),
            cfg.f64_or("R0", 1.0),
        )?,
        "ch_polynomial" => WeightedModel::ch_polynomial(n, p, require(cfg, "alpha")?)?,
        "ricci_polynomial" => WeightedModel::ricci_polynomial(n, p, require(cfg, "alpha")?)?,
        other => return config_err(format!("unknown family `{other}`")),
    };
    Ok(model)
}

fn require(cfg: &RunConfig, key: &str) -> Result<f64, CliError> {
    cfg.f64_opt(key)
        .ok_or_else(|| CliError::Config(ConfigError(format!("key `{key}` is required here"))))
}

/// `ρ = rho_coeff · (rho_core² + r²)^{−rho_l/2}`. In the conformal family
/// `l` is the exponent of the conformal factor and `ρ ≡ 1` by default;
/// elsewhere `rho_l` defaults to `l`.
pub fn density(cfg: &RunConfig) -> Density {
    let default_l = if family(cfg) == "conformal" {
        0.0
    } else {
        cfg.f64_or("l", DEFAULT_L)
    };
    Density {
        coeff: cfg.f64_or("rho_coeff", 1.0),
        l: cfg.f64_or("rho_l", default_l),
        core: cfg.f64_or("rho_core", 0.0),
    }
}

pub fn model(cfg: &RunConfig) -> Result<WeightedModel, CliError> {
    Ok(bare_model(cfg)?.with_density(density(cfg))?)
}

pub fn regime(cfg: &RunConfig) -> Result<(String, Regime), CliError> {
    let default = match family(cfg) {
        "conformal" => "conformal",
        "ch_polynomial" => "cartan_hadamard",
        "ricci_polynomial" => "ricci",
        _ => "exact_rn",
    };
    let name = cfg.str_or("regime", default).to_string();
    let regime = match name.as_str() {
        "exact_rn" => Regime::ExactRn,
        "conformal" => Regime::Conformal,
        "cartan_hadamard" => Regime::CartanHadamard {
            alpha: require(cfg, "alpha")?,
        },
        "ricci" => Regime::Ricci {
            alpha: require(cfg, "alpha")?,
        },
        "rn_optimal" => Regime::RnOptimal,
        other => return config_err(format!("unknown regime `{other}`")),
    };
    Ok((name, regime))
}

pub fn profile(cfg: &RunConfig) -> Result<BarenblattProfile, CliError> {
    Ok(BarenblattProfile::new(
        cfg.u32_or("n", 3)?,
        cfg.f64_or("p", 2.0),
        cfg.f64_or("q", 0.5),
        cfg.f64_or("l", DEFAULT_L),
        cfg.f64_or("C", 1.0),
        cfg.f64_or("T", 1.0),
    )?)
}

pub fn cmd_params(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let e = exponents(cfg)?;
    let dc = derive(&e)?;
    let (case, _) = theta_max_cases(&e)?;
    let (regime_name, regime) = regime(cfg)?;
    let range = admissible_l_range(&e, regime)?;
    let mut r = String::new();
    let line = |r: &mut String, k: &str, v: String| {
        let _ = writeln!(r, "{k:<10} = {v}");
    };
    line(&mut r, "D", g6(dc.d));
    line(&mut r, "kappa", g6(dc.kappa));
    line(&mut r, "sigma_min", g6(dc.sigma_min));
    line(&mut r, "sigma", g6(dc.sigma));
    line(&mut r, "theta", g6(dc.theta));
    line(
        &mut r,
        "theta_max",
        format!("{} ({case})", g6(dc.theta_max)),
    );
    line(
        &mut r,
        "theta_opt",
        format!("{} (conjectural)", g6(dc.theta_opt.conjectural_value())),
    );
    line(&mut r, "l_star", g6(dc.l_star));
    line(&mut r, "c1", g6(dc.c1));
    line(&mut r, "regime", regime_name);
    line(&mut r, "l range", range.to_string());
    let mut code = exit::OK;
    if let Some(l) = cfg.f64_opt("l") {
        let ok = range.contains(l);
        line(
            &mut r,
            "l",
            format!(
                "{} (kappa_l = {}): {}",
                g6(l),
                g6(dc.kappa_l(l)),
                if ok { "admissible" } else { "not admissible" }
            ),
        );
        if !ok {
            code = exit::NEGATIVE_VERDICT;
        }
    }
    Ok(Outcome { code, report: r })
}

/// Step sizes of the residual convergence table.
pub const RESIDUAL_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStatus {
    Pass,
    Fail,
    /// `t ≥ T`: the solution vanishes identically.
    ZeroRegion,
    /// The time stencil straddles `T`.
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub r: f64,
    pub t: f64,
    pub residuals: Vec<f64>,
    pub order: Option<f64>,
    pub status: PointStatus,
}

/// Residual study on `r_count × t_count` points of `[0.2, 5] × [0.05, 0.9]`.
pub fn residual_lattice(
    prof: &BarenblattProfile,
    r_count: usize,
    t_count: usize,
) -> Result<Vec<LatticePoint>, CliError> {
    let lin = |a: f64, b: f64, k: usize, m: usize| a + (b - a) * k as f64 / (m - 1) as f64;
    let h_max = RESIDUAL_STEPS[0];
    let mut out = Vec::with_capacity(r_count * t_count);
    for it in 0..t_count {
        let t = lin(0.05, 0.9, it, t_count);
        for ir in 0..r_count {
            let r = lin(0.2, 5.0, ir, r_count);
            let point = if t - h_max >= prof.t_ext {
                LatticePoint {
                    r,
                    t,
                    residuals: vec![0.0; 3],
                    order: None,
                    status: PointStatus::ZeroRegion,
                }
            } else if t + h_max >= prof.t_ext {
                LatticePoint {
                    r,
                    t,
                    residuals: vec![],
                    order: None,
                    status: PointStatus::Skipped,
                }
            } else {
                let study = prof.residual_study(r, t, &RESIDUAL_STEPS)?;
                let status = match study.order {
                    Some(o) if o >= 1.0 => PointStatus::Pass,
                    _ => PointStatus::Fail,
                };
                LatticePoint {
                    r,
                    t,
                    residuals: study.residuals,
                    order: study.order,
                    status,
                }
            };
            out.push(point);
        }
    }
    Ok(out)
}

pub fn cmd_verify_exact(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let prof = profile(cfg)?;
    let points = residual_lattice(&prof, 20, 10)?;
    let mut r = String::new();
    let _ = writeln!(
        r,
        "profile n={} p={} q={} l={} C={} T={}  (bracket coefficient {})",
        prof.n,
        g6(prof.p),
        g6(prof.q),
        g6(prof.l),
        g6(prof.c),
        g6(prof.t_ext),
        g6(prof.bracket_coefficient())
    );
    let _ = writeln!(
        r,
        "{:>10} {:>10} {:>13} {:>13} {:>13} {:>8}  status",
        "r", "t", "h=1e-2", "h=5e-3", "h=2.5e-3", "order"
    );
    for pt in &points {
        let res = |k: usize| pt.residuals.get(k).map_or("-".to_string(), |x| g6(*x));
        let status = match pt.status {
            PointStatus::Pass => "pass",
            PointStatus::Fail => "FAIL",
            PointStatus::ZeroRegion => "zero region (t >= T)",
            PointStatus::Skipped => "skipped (stencil crosses T)",
        };
        let _ = writeln!(
            r,
            "{:>10} {:>10} {:>13} {:>13} {:>13} {:>8}  {status}",
            g6(pt.r),
            g6(pt.t),
            res(0),
            res(1),
            res(2),
            pt.order.map_or("-".to_string(), g6)
        );
    }
    let evaluated = points
        .iter()
        .filter(|p| matches!(p.status, PointStatus::Pass | PointStatus::Fail))
        .count();
    let passed = points
        .iter()
        .filter(|p| p.status == PointStatus::Pass)
        .count();
    let fraction = if evaluated == 0 {
        0.0
    } else {
        passed as f64 / evaluated as f64
    };
    let ok = evaluated > 0 && fraction >= 0.95;
    let _ = writeln!(
        r,
        "order >= 1 at {passed}/{evaluated} evaluated points ({}%): {}",
        g6(100.0 * fraction),
        if ok { "verified" } else { "NOT verified" }
    );
    Ok(Outcome {
        code: if ok { exit::OK } else { exit::NEGATIVE_VERDICT },
        report: r,
    })
}

/// `θ` from the config: a number, `inf`, or (absent) `θ_max` of the exponents.
pub fn theta(cfg: &RunConfig) -> Result<f64, CliError> {
    match cfg.f64_opt("theta") {
        Some(t) => Ok(t),
        None => Ok(derive(&exponents(cfg)?)?.theta_max),
    }
}

pub fn cmd_finiteness(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = model(cfg)?;
    let theta = theta(cfg)?;
    let r_probe = cfg.f64_or("R_probe", 1e3);
    let f = finiteness_norm(&m, theta, r_probe)?;
    let mut r = String::new();
    let _ = writeln!(r, "family          = {}", m.name());
    let _ = writeln!(r, "theta           = {}", g6(theta));
    let what = if theta.is_infinite() {
        "sup rho/omega"
    } else {
        "integral"
    };
    let _ = writeln!(r, "{what:<15} = {} (on (0, {}])", g6(f.value), g6(r_probe));
    let _ = writeln!(r, "tail exponent   = {}", g6(f.tail_exponent));
    let _ = writeln!(r, "origin exponent = {}", g6(f.origin_exponent));
    if m.density_exponents().is_some() {
        let fitted = fitted_tail_exponent(&m, theta, r_probe, 8)?;
        let _ = writeln!(
            r,
            "fitted exponent = {} (doubling from R_probe)",
            g6(fitted)
        );
    }
    let _ = writeln!(
        r,
        "verdict         = {}",
        if f.finite { "finite" } else { "infinite" }
    );
    Ok(Outcome {
        code: if f.finite {
            exit::OK
        } else {
            exit::NEGATIVE_VERDICT
        },
        report: r,
    })
}

fn probe_family(
    cfg: &RunConfig,
    r_max: f64,
) -> Result<Vec<leibenson::diagnostics::Bump>, CliError> {
    let radii = cfg
        .list("probe_radii")?
        .unwrap_or_else(|| [0.25, 0.5, 0.75, 1.0].iter().map(|f| f * r_max).collect());
    let powers = cfg
        .list("probe_powers")?
        .unwrap_or_else(|| vec![1.0, 2.0, 3.0, 4.0]);
    Ok(bump_family(&radii, &powers))
}

pub fn cmd_sobolev_probe(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = bare_model(cfg)?;
    let r_max = cfg.f64_or("R_max", 4.0);
    let grid = RadialGrid::uniform(&m, r_max, cfg.usize_or("cells", 400)?)?;
    let family = probe_family(cfg, r_max)?;
    let res = sobolev_probe(&grid, m.p, m.kappa, &family)?;
    let mut r = String::new();
    let _ = writeln!(r, "family   = {}", m.name());
    let _ = writeln!(r, "kappa    = {}", g6(m.kappa));
    let _ = writeln!(r, "profiles = {}", family.len());
    let _ = writeln!(
        r,
        "C_lower  = {} (lower bound for the Sobolev constant)",
        g6(res.c_lower)
    );
    let _ = writeln!(
        r,
        "best     = (1 - (r/R)^2)_+^k with R = {}, k = {}",
        g6(res.best.radius),
        g6(res.best.power)
    );
    Ok(Outcome {
        code: exit::OK,
        report: r,
    })
}

/// Overlapping windows `[t₀ + kΔ, t₀ + (k+2)Δ]`, `Δ = span/(count+1)`.
pub fn caccioppoli_pairs(trace: &EnergyTrace, count: usize) -> Vec<(f64, f64)> {
    let (t0, t1) = (trace.times[0], trace.times[trace.len() - 1]);
    let step = (t1 - t0) / (count + 1) as f64;
    (0..count)
        .map(|k| (t0 + k as f64 * step, (t0 + (k + 2) as f64 * step).min(t1)))
        .collect()
}

pub fn resolve_out_path(raw: &str) -> PathBuf {
    let path = Path::new(raw);
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn write_trace_csv(path: &Path, trace: &EnergyTrace) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(CSV_HEADER).map_err(io)?;
    for k in 0..trace.len() {
        w.write_record([
            e17(trace.times[k]),
            e17(trace.sup_u[k]),
            e17(trace.phi[k]),
            e17(trace.grad_term[k]),
            e17(trace.mass[k]),
            e17(trace.outflow[k]),
            e17(trace.clamped[k]),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Everything `simulate` needs, resolved from a config.
pub struct Simulation {
    pub solver: SolverConfig,
    pub u0: Vec<f64>,
    pub options: RunOptions,
    pub constants: DerivedConstants,
    pub profile: Option<BarenblattProfile>,
}

pub fn simulation(cfg: &RunConfig) -> Result<Simulation, CliError> {
    let e = exponents(cfg)?;
    let dc = derive(&e)?;
    let m = model(cfg)?;
    let grid = RadialGrid::uniform(&m, cfg.f64_or("R_max", 20.0), cfg.usize_or("cells", 2000)?)?;
    let default_initial = if family(cfg) == "euclidean" {
        "barenblatt"
    } else {
        "bump"
    };
    let initial = cfg.str_or("initial", default_initial);
    let needs_profile = initial == "barenblatt" || cfg.get("outer_bc") == Some("dirichlet_exact");
    let profile = if needs_profile {
        if family(cfg) != "euclidean" {
            return config_err("the exact profile lives on the euclidean family only");
        }
        let prof = profile(cfg)?;
        if density(cfg) != Density::power(prof.l) {
            return config_err(
                "the exact profile needs rho = r^-l (leave rho_l, rho_core, rho_coeff unset)",
            );
        }
        Some(prof)
    } else {
        None
    };
    let u0 = match initial {
        "barenblatt" => profile
            .as_ref()
            .expect("profile built above")
            .cell_averages(&grid, 0.0)?,
        "bump" => {
            let half = 0.5 * grid.r_max;
            grid.sample(|r| (1.0 - (r / half).powi(2)).max(0.0).powi(2))
        }
        "zero" => vec![0.0; grid.cells()],
        other => return config_err(format!("unknown initial data `{other}`")),
    };
    let t_ext = profile.map_or(1.0, |p| p.t_ext);
    let t_max = cfg.f64_or("t_max", if profile.is_some() { 1.5 * t_ext } else { 10.0 });
    let outer_bc = match cfg.str_or("outer_bc", "dirichlet_zero") {
        "dirichlet_zero" => OuterBc::DirichletZero,
        "neumann_zero" => OuterBc::NeumannZero,
        "dirichlet_exact" => OuterBc::DirichletExact(profile.expect("profile built above")),
        other => return config_err(format!("unknown outer_bc `{other}`")),
    };
    let mut solver = SolverConfig::new(grid, e.p, e.q, t_max)?.with_outer_bc(outer_bc);
    solver.cfl = cfg.f64_or("cfl", SolverConfig::DEFAULT_CFL);
    solver.ext_tol = cfg.f64_or("ext_tol", SolverConfig::DEFAULT_EXT_TOL);
    solver.floor_eps = cfg.f64_or("floor_eps", SolverConfig::DEFAULT_FLOOR_EPS);
    solver.validate()?;
    let record_default = if profile.is_some() {
        t_ext / 200.0
    } else {
        t_max / 200.0
    };
    let mut options = RunOptions::new(dc.sigma, dc.d, cfg.f64_or("record_every", record_default));
    options.monitor_energy = true;
    options.keep_states = initial == "barenblatt";
    if let Some(w) = cfg.f64_opt("wall_clock") {
        if !(w > 0.0) {
            return config_err("wall_clock must be positive (seconds)");
        }
        options.wall_clock = Some(Duration::from_secs_f64(w));
    }
    if cfg.contains("max_steps") {
        options.max_steps = Some(u64::from(cfg.u32_or("max_steps", 0)?));
    }
    Ok(Simulation {
        solver,
        u0,
        options,
        constants: dc,
        profile,
    })
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sim = simulation(cfg)?;
    let out_path = resolve_out_path(cfg.str_or("out_path", "trace.csv"));
    let outcome = run(&sim.solver, sim.u0.clone(), &sim.options)?;
    write_trace_csv(&out_path, &outcome.trace)?;

    let tr = &outcome.trace;
    let dc = &sim.constants;
    let mut r = String::new();
    let status = match outcome.status {
        RunStatus::Extinct => "extinct",
        RunStatus::HorizonReached => "t_max reached without extinction",
        RunStatus::BudgetExhausted => "budget exhausted",
    };
    let _ = writeln!(r, "status            = {status}");
    let _ = writeln!(
        r,
        "extinction_time   = {}",
        outcome.extinction_time.map_or("none".to_string(), g6)
    );
    let _ = writeln!(r, "final time        = {}", g6(outcome.final_state.t));
    let _ = writeln!(r, "steps             = {}", outcome.steps);
    let _ = writeln!(
        r,
        "records           = {} (written to {})",
        tr.len(),
        out_path.display()
    );
    let _ = writeln!(r, "sigma, D          = {}, {}", g6(dc.sigma), g6(dc.d));
    let phi0 = tr.phi[0];
    let last = tr.len() - 1;
    let _ = writeln!(r, "Phi(0)            = {}", g6(phi0));
    let _ = writeln!(r, "outflow           = {}", g6(tr.outflow[last]));
    let _ = writeln!(
        r,
        "clamped           = {} ({} events)",
        g6(tr.clamped[last]),
        outcome.clamp_events
    );
    let _ = writeln!(r, "mass defect       = {}", g6(outcome.mass_defect()));
    let rel_increase = if phi0 > 0.0 {
        outcome.max_phi_increase / phi0
    } else {
        0.0
    };
    let _ = writeln!(r, "max step dPhi/Phi0 = {}", g6(rel_increase));
    if tr.len() >= 3 {
        match fit_rate(tr) {
            Ok(c) => {
                let _ = writeln!(r, "fitted c*         = {}", g6(c));
                if c > 0.0 {
                    let v = verify_comparison(tr, c)?;
                    let _ = writeln!(
                        r,
                        "Phi <= Psi(c*)    = {}",
                        if v.passed {
                            "holds".to_string()
                        } else {
                            format!(
                                "violated from t = {}",
                                g6(v.first_violation.unwrap_or(f64::NAN))
                            )
                        }
                    );
                }
            }
            Err(e) => {
                let _ = writeln!(r, "fitted c*         = unavailable ({e})");
            }
        }
        let pairs = caccioppoli_pairs(tr, 20);
        let mut worst = f64::NEG_INFINITY;
        let mut passed = 0;
        for &(t1, t2) in &pairs {
            let m = caccioppoli_check(tr, dc.c1, t1, t2, CACCIOPPOLI_TOL)?;
            if m.passed {
                passed += 1;
            }
            if m.phi_t1 > 0.0 {
                worst = worst.max(m.lhs / m.phi_t1);
            }
        }
        let _ = writeln!(
            r,
            "Caccioppoli       = {passed}/{} windows pass (worst lhs/Phi(t1) = {})",
            pairs.len(),
            g6(worst)
        );
    }
    let h = hoelder_step_check(
        &sim.solver.grid,
        &outcome.final_state.u,
        dc.sigma,
        dc.d,
        dc.theta,
        dc.kappa,
    );
    if let Ok(h) = h {
        let _ = writeln!(
            r,
            "Hoelder (final)   = {} <= {}: {}",
            g6(h.lhs),
            g6(h.rhs),
            if h.passed { "holds" } else { "violated" }
        );
    }
    if let Some(prof) = sim.profile {
        let t = outcome.final_state.t;
        let err = prof.relative_l1_error(&sim.solver.grid, &outcome.final_state.u, t)?;
        let _ = writeln!(r, "L1 error vs exact = {} at t = {}", g6(err), g6(t));
        if let Some((worst, at)) =
            worst_l1_error(&prof, &sim.solver.grid, &outcome.states, 0.9 * prof.t_ext)?
        {
            let _ = writeln!(
                r,
                "max L1 error      = {} at t = {} (records with t <= 0.9 T)",
                g6(worst),
                g6(at)
            );
        }
    }
    if let Some(c) = cfg.f64_opt("sobolev_C") {
        let t = extinction_time_bound(phi0, dc.c1, c, dc.sigma, dc.d)?;
        let _ = writeln!(
            r,
            "T prediction      = {} (lower-bound prediction, C = {})",
            g6(t),
            g6(c)
        );
    }
    let code = if outcome.status == RunStatus::Extinct {
        exit::OK
    } else {
        exit::NO_EXTINCTION
    };
    Ok(Outcome { code, report: r })
}

/// Largest relative `L¹(ρ dμ)` error against the exact profile over the
/// recorded states with `t ≤ t_end`, and where it occurs.
pub fn worst_l1_error(
    prof: &BarenblattProfile,
    grid: &RadialGrid,
    states: &[State],
    t_end: f64,
) -> Result<Option<(f64, f64)>, CliError> {
    let mut worst: Option<(f64, f64)> = None;
    for s in states.iter().filter(|s| s.t <= t_end) {
        let e = prof.relative_l1_error(grid, &s.u, s.t)?;
        if worst.is_none_or(|(w, _)| e > w) {
            worst = Some((e, s.t));
        }
    }
    Ok(worst)
}

pub const COMMANDS: [&str; 5] = [
    "params",
    "simulate",
    "verify-exact",
    "finiteness",
    "sobolev-probe",
];

pub fn dispatch(command: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        "params" => cmd_params(cfg),
        "simulate" => cmd_simulate(cfg),
        "verify-exact" => cmd_verify_exact(cfg),
        "finiteness" => cmd_finiteness(cfg),
        "sobolev-probe" => cmd_sobolev_probe(cfg),
        other => config_err(format!("unknown command `{other}`")),
    }
}
