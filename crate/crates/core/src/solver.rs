//! Explicit conservative finite-volume scheme for `ρ ∂ₜu = Δ_p u^q` on a
//! radial grid.
//!
//! Cell `i` is updated by `u_i += dt (F_{i+1/2} − F_{i−1/2}) / (ρ_i m_i)`
//! with the face flux `F = S_μ |g|^{p−2} g`, `g = (w_{i+1} − w_i)/Δr`,
//! `w = u^q`. The flux through `r = 0` vanishes; the outer face follows
//! [`OuterBc`]. Negative values produced by rounding are clamped to zero and
//! the injected mass is accounted for.

use std::time::{Duration, Instant};

use crate::diagnostics::{energy_phi, grad_term, EnergyTrace};
use crate::error::{domain, Error, Result};
use crate::exact::{signed_power, BarenblattProfile};
use crate::geometry::RadialGrid;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OuterBc {
    /// Ghost value `u = 0` one cell beyond `R_max`.
    DirichletZero,
    /// Zero flux through `R_max`.
    NeumannZero,
    /// Ghost value taken from the exact profile at the ghost center.
    DirichletExact(BarenblattProfile),
}

impl OuterBc {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::DirichletZero => "dirichlet_zero",
            Self::NeumannZero => "neumann_zero",
            Self::DirichletExact(_) => "dirichlet_exact",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub grid: RadialGrid,
    pub p: f64,
    pub q: f64,
    pub cfl: f64,
    pub t_max: f64,
    pub ext_tol: f64,
    pub floor_eps: f64,
    pub outer_bc: OuterBc,
}

impl SolverConfig {
    pub const DEFAULT_CFL: f64 = 0.4;
    pub const DEFAULT_EXT_TOL: f64 = 1e-10;
    pub const DEFAULT_FLOOR_EPS: f64 = 1e-12;

    /// Configuration with default `cfl`, `ext_tol`, `floor_eps` and
    /// `dirichlet_zero` at the outer face.
    pub fn new(grid: RadialGrid, p: f64, q: f64, t_max: f64) -> Result<Self> {
        let cfg = Self {
            grid,
            p,
            q,
            cfl: Self::DEFAULT_CFL,
            t_max,
            ext_tol: Self::DEFAULT_EXT_TOL,
            floor_eps: Self::DEFAULT_FLOOR_EPS,
            outer_bc: OuterBc::DirichletZero,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_outer_bc(mut self, bc: OuterBc) -> Self {
        self.outer_bc = bc;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 1.0) || !(self.q > 0.0) {
            return Err(domain(format!(
                "need p > 1 and q > 0 (got p = {}, q = {})",
                self.p, self.q
            )));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(domain(format!("cfl = {} must lie in (0, 1]", self.cfl)));
        }
        if !(self.t_max >= 0.0) {
            return Err(domain(format!(
                "t_max = {} must be non-negative",
                self.t_max
            )));
        }
        if !(self.ext_tol > 0.0) || !(self.floor_eps > 0.0) {
            return Err(domain("ext_tol and floor_eps must be positive"));
        }
        if let Some(i) = self
            .grid
            .rho
            .iter()
            .position(|&r| !(r > 0.0 && r.is_finite()))
        {
            return Err(domain(format!(
                "density must be positive and finite on every cell (cell {i}: {})",
                self.grid.rho[i]
            )));
        }
        Ok(())
    }

    fn ghost(&self, t: f64) -> Option<f64> {
        match self.outer_bc {
            OuterBc::DirichletZero => Some(0.0),
            OuterBc::NeumannZero => None,
            OuterBc::DirichletExact(ref prof) => {
                Some(prof.eval(self.grid.r_max + 0.5 * self.grid.dr, t))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub u: Vec<f64>,
}

impl State {
    pub fn new(u: Vec<f64>) -> Self {
        Self { t: 0.0, u }
    }

    pub fn sup(&self) -> f64 {
        self.u.iter().copied().fold(0.0, f64::max)
    }
}

/// Per-face gradient of `w = u^q` and the larger adjacent value of `u`.
struct Faces {
    g: Vec<f64>,
    ubar: Vec<f64>,
}

fn faces(cfg: &SolverConfig, u: &[f64], t: f64) -> Faces {
    let n = u.len();
    let dr = cfg.grid.dr;
    let w: Vec<f64> = u.iter().map(|&x| pow_q(x, cfg.q)).collect();
    let mut g = vec![0.0; n + 1];
    let mut ubar = vec![0.0; n + 1];
    for f in 1..n {
        g[f] = (w[f] - w[f - 1]) / dr;
        ubar[f] = u[f].max(u[f - 1]);
    }
    if let Some(ghost) = cfg.ghost(t) {
        g[n] = (pow_q(ghost, cfg.q) - w[n - 1]) / dr;
        ubar[n] = ghost.max(u[n - 1]);
    }
    Faces { g, ubar }
}

fn pow_q(x: f64, q: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if q == 0.5 {
        x.sqrt()
    } else {
        x.powf(q)
    }
}

fn flux_from(cfg: &SolverConfig, faces: &Faces) -> Vec<f64> {
    faces
        .g
        .iter()
        .zip(&cfg.grid.face_areas)
        .map(|(&g, &s)| {
            if cfg.p == 2.0 {
                s * g
            } else {
                s * signed_power(g, cfg.p)
            }
        })
        .collect()
}

/// Face fluxes `F_{i+1/2}` for the state `(t, u)`; `N + 1` entries, the
/// first one (the origin) always 0.
pub fn flux_faces(cfg: &SolverConfig, u: &[f64], t: f64) -> Vec<f64> {
    flux_from(cfg, &faces(cfg, u, t))
}

/// Linearised diffusivity of a face, zero where nothing can diffuse.
fn face_diffusivity(cfg: &SolverConfig, g: f64, ubar: f64) -> f64 {
    if ubar <= 0.0 {
        return 0.0;
    }
    let grad_part = if cfg.p == 2.0 {
        1.0
    } else if g == 0.0 {
        // vanishes for p > 2; for p < 2 the face carries no flux to linearise
        return 0.0;
    } else {
        (cfg.p - 1.0).max(1.0) * g.abs().powf(cfg.p - 2.0)
    };
    grad_part * cfg.q.max(1.0) * ubar.max(cfg.floor_eps).powf(cfg.q - 1.0)
}

fn dt_from(cfg: &SolverConfig, state: &State, faces: &Faces) -> Result<f64> {
    let grid = &cfg.grid;
    let a: Vec<f64> = faces
        .g
        .iter()
        .zip(&faces.ubar)
        .zip(&grid.face_areas)
        .map(|((&g, &ub), &s)| s * face_diffusivity(cfg, g, ub))
        .collect();
    let mut dt = f64::INFINITY;
    for i in 0..state.u.len() {
        let load = a[i] + a[i + 1];
        if load > 0.0 {
            dt = dt.min(grid.rho[i] * grid.measures[i] * grid.dr / load);
        }
    }
    if dt.is_infinite() {
        if matches!(cfg.outer_bc, OuterBc::DirichletZero) && state.sup() > cfg.ext_tol {
            return Err(Error::Degenerate(format!(
                "no face diffuses at t = {} although sup u = {}",
                state.t,
                state.sup()
            )));
        }
    } else {
        dt *= cfg.cfl;
    }
    Ok(dt.min((cfg.t_max - state.t).max(0.0)))
}

/// Largest explicit step allowed by the per-cell bound
/// `cfl · ρ_i m_i Δr / Σ_faces S_f a_f`, capped by `t_max − t`.
pub fn stable_dt(cfg: &SolverConfig, state: &State) -> Result<f64> {
    dt_from(cfg, state, &faces(cfg, &state.u, state.t))
}

/// Mass bookkeeping of a single step.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepReport {
    pub dt: f64,
    /// `ρμ`-mass leaving through the outer face.
    pub outflow: f64,
    /// `ρμ`-mass injected by clamping negative values to zero.
    pub clamped: f64,
    pub clamp_events: usize,
}

fn apply(cfg: &SolverConfig, state: &mut State, fluxes: &[f64], dt: f64) -> StepReport {
    let grid = &cfg.grid;
    let n = state.u.len();
    let mut report = StepReport {
        dt,
        outflow: -dt * fluxes[n],
        ..StepReport::default()
    };
    for i in 0..n {
        let weight = grid.rho[i] * grid.measures[i];
        let next = state.u[i] + dt * (fluxes[i + 1] - fluxes[i]) / weight;
        if next < 0.0 {
            report.clamped -= next * weight;
            report.clamp_events += 1;
            state.u[i] = 0.0;
        } else {
            state.u[i] = next;
        }
    }
    state.t += dt;
    report
}

/// One forward-Euler step with a prescribed `dt`.
pub fn step_with_dt(cfg: &SolverConfig, state: &mut State, dt: f64) -> StepReport {
    let fluxes = flux_faces(cfg, &state.u, state.t);
    apply(cfg, state, &fluxes, dt)
}

/// One forward-Euler step with `dt` from [`stable_dt`].
pub fn step(cfg: &SolverConfig, state: &mut State) -> Result<StepReport> {
    step_capped(cfg, state, f64::INFINITY)
}

fn step_capped(cfg: &SolverConfig, state: &mut State, cap: f64) -> Result<StepReport> {
    let f = faces(cfg, &state.u, state.t);
    let dt = dt_from(cfg, state, &f)?.min(cap);
    let fluxes = flux_from(cfg, &f);
    Ok(apply(cfg, state, &fluxes, dt))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    /// Energy exponent `σ` used in the recorded `Φ` and gradient term.
    pub sigma: f64,
    /// `D = 1 − q(p − 1)`.
    pub d: f64,
    /// Recording interval; steps are shortened to land on multiples of it.
    pub record_every: f64,
    pub wall_clock: Option<Duration>,
    pub max_steps: Option<u64>,
    /// Evaluate `Φ` after every step and track its largest increase.
    pub monitor_energy: bool,
    /// Keep a copy of the field at every record.
    pub keep_states: bool,
}

impl RunOptions {
    pub fn new(sigma: f64, d: f64, record_every: f64) -> Self {
        Self {
            sigma,
            d,
            record_every,
            wall_clock: None,
            max_steps: None,
            monitor_energy: false,
            keep_states: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Extinct,
    HorizonReached,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub extinction_time: Option<f64>,
    pub trace: EnergyTrace,
    pub final_state: State,
    pub steps: u64,
    pub clamp_events: usize,
    /// Largest single-step increase of `Φ` (only with `monitor_energy`).
    pub max_phi_increase: f64,
    /// Fields at the record times (only with `keep_states`).
    pub states: Vec<State>,
}

impl RunOutcome {
    /// `Σ ρ m u + outflow − clamped` at the last record minus its initial
    /// value, relative to the initial mass.
    pub fn mass_defect(&self) -> f64 {
        let tr = &self.trace;
        let k = tr.len() - 1;
        let start = tr.mass[0];
        let end = tr.mass[k] + tr.outflow[k] - tr.clamped[k];
        if start == 0.0 {
            end.abs()
        } else {
            (end - start) / start
        }
    }
}

/// Iterates [`step`] from `u0` until `sup u < ext_tol`, `t_max` or the
/// budget is reached, recording the trace every `record_every` and at the
/// final state.
pub fn run(cfg: &SolverConfig, u0: Vec<f64>, opts: &RunOptions) -> Result<RunOutcome> {
    cfg.validate()?;
    if u0.len() != cfg.grid.cells() {
        return Err(domain(format!(
            "initial field has {} values for {} cells",
            u0.len(),
            cfg.grid.cells()
        )));
    }
    if let Some(i) = u0.iter().position(|&x| !(x >= 0.0 && x.is_finite())) {
        return Err(domain(format!(
            "initial value u[{i}] = {} is invalid",
            u0[i]
        )));
    }
    if !(opts.record_every > 0.0) {
        return Err(domain("record_every must be positive"));
    }
    let grid = &cfg.grid;
    let started = Instant::now();
    let mut state = State::new(u0);
    let mut trace = EnergyTrace::new(opts.sigma, opts.d);
    let (mut outflow, mut clamped) = (0.0, 0.0);
    let mut clamp_events = 0;
    let mut states = Vec::new();
    let mut record = |trace: &mut EnergyTrace, s: &State, outflow: f64, clamped: f64| {
        if opts.keep_states {
            states.push(s.clone());
        }
        trace.push(
            s.t,
            energy_phi(grid, &s.u, opts.sigma, opts.d),
            grad_term(grid, &s.u, opts.sigma, cfg.p),
            s.sup(),
            grid.rho_mass(&s.u),
            outflow,
            clamped,
        );
    };
    record(&mut trace, &state, 0.0, 0.0);

    let mut steps = 0u64;
    let mut next_record = 1u64;
    let mut phi_prev = trace.phi[0];
    let mut max_phi_increase = 0.0f64;
    let status = loop {
        if state.sup() < cfg.ext_tol {
            break RunStatus::Extinct;
        }
        if state.t >= cfg.t_max {
            break RunStatus::HorizonReached;
        }
        if opts.max_steps.is_some_and(|m| steps >= m)
            || (steps.is_multiple_of(256) && opts.wall_clock.is_some_and(|w| started.elapsed() >= w))
        {
            break RunStatus::BudgetExhausted;
        }
        let target = next_record as f64 * opts.record_every;
        let cap = (target - state.t).max(0.0);
        let report = step_capped(cfg, &mut state, cap)?;
        if report.dt <= 0.0 {
            // landed exactly on a record time
            if state.t >= target {
                next_record += 1;
                continue;
            }
            return Err(Error::Degenerate(format!(
                "zero time step at t = {}",
                state.t
            )));
        }
        steps += 1;
        outflow += report.outflow;
        clamped += report.clamped;
        clamp_events += report.clamp_events;
        if opts.monitor_energy {
            let phi = energy_phi(grid, &state.u, opts.sigma, opts.d);
            max_phi_increase = max_phi_increase.max(phi - phi_prev);
            phi_prev = phi;
        }
        if state.t >= target * (1.0 - 1e-14) {
            state.t = state.t.max(target);
            while next_record as f64 * opts.record_every <= state.t {
                next_record += 1;
            }
            record(&mut trace, &state, outflow, clamped);
        }
    };
    if trace.times.last() != Some(&state.t) {
        record(&mut trace, &state, outflow, clamped);
    }
    Ok(RunOutcome {
        status,
        extinction_time: (status == RunStatus::Extinct).then_some(state.t),
        trace,
        final_state: state,
        steps,
        clamp_events,
        max_phi_increase,
        states,
    })
}
