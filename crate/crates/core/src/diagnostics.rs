//! Discrete counterparts of the energy estimates behind finite extinction:
//! the energy `Φ = ∫ u^{σ+D} ρ dμ`, the gradient term `∫|∇u^{σ/p}|^p dμ`,
//! the Caccioppoli inequality, the Hölder step, a Sobolev-constant probe and
//! the comparison with `dΨ/dt = −cΨ^{σ/(σ+D)}`.

use crate::error::{domain, Error, Result};
use crate::geometry::RadialGrid;

/// Default tolerance of [`caccioppoli_check`], relative to `Φ(t₁)`.
pub const CACCIOPPOLI_TOL: f64 = 1e-2;
/// Relative rounding slack of [`hoelder_step_check`].
pub const HOELDER_RTOL: f64 = 1e-8;
/// Relative slack of [`verify_comparison`].
pub const COMPARISON_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTrace {
    pub times: Vec<f64>,
    pub phi: Vec<f64>,
    pub grad_term: Vec<f64>,
    pub sup_u: Vec<f64>,
    pub mass: Vec<f64>,
    /// Cumulative outflow through the outer face.
    pub outflow: Vec<f64>,
    /// Cumulative mass injected by clamping.
    pub clamped: Vec<f64>,
    pub sigma: f64,
    pub d: f64,
}

impl EnergyTrace {
    pub fn new(sigma: f64, d: f64) -> Self {
        Self {
            times: Vec::new(),
            phi: Vec::new(),
            grad_term: Vec::new(),
            sup_u: Vec::new(),
            mass: Vec::new(),
            outflow: Vec::new(),
            clamped: Vec::new(),
            sigma,
            d,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn push(
        &mut self,
        t: f64,
        phi: f64,
        grad_term: f64,
        sup_u: f64,
        mass: f64,
        outflow: f64,
        clamped: f64,
    ) {
        self.times.push(t);
        self.phi.push(phi);
        self.grad_term.push(grad_term);
        self.sup_u.push(sup_u);
        self.mass.push(mass);
        self.outflow.push(outflow);
        self.clamped.push(clamped);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest `Φ(t_{k+1}) − Φ(t_k)` between consecutive records (0 if none).
    pub fn max_phi_increase(&self) -> f64 {
        self.phi.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    fn interpolate(&self, values: &[f64], t: f64) -> f64 {
        let k = self.times.partition_point(|&s| s <= t);
        if k == 0 {
            return values[0];
        }
        if k == self.len() {
            return values[k - 1];
        }
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let w = (t - t0) / (t1 - t0);
        values[k - 1] + w * (values[k] - values[k - 1])
    }
}

/// `Σ_i u_i^{σ+D} ρ_i m_i`.
pub fn energy_phi(grid: &RadialGrid, u: &[f64], sigma: f64, d: f64) -> f64 {
    let power = sigma + d;
    u.iter()
        .zip(&grid.rho)
        .zip(&grid.measures)
        .filter(|((&x, _), _)| x > 0.0)
        .map(|((&x, &r), &m)| x.powf(power) * r * m)
        .sum()
}

/// `Σ_{interior faces} S_f Δr |(v_{i+1} − v_i)/Δr|^p` with `v = u^{σ/p}`.
pub fn grad_term(grid: &RadialGrid, u: &[f64], sigma: f64, p: f64) -> f64 {
    let v: Vec<f64> = u.iter().map(|&x| x.max(0.0).powf(sigma / p)).collect();
    p_energy(grid, &v, p)
}

fn p_energy(grid: &RadialGrid, v: &[f64], p: f64) -> f64 {
    let dr = grid.dr;
    v.windows(2)
        .zip(&grid.face_areas[1..])
        .map(|(w, &s)| s * dr * ((w[1] - w[0]) / dr).abs().powf(p))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaccioppoliMargin {
    /// `Φ(t₂) − Φ(t₁) + c₁ ∫_{t₁}^{t₂} grad_term dt`.
    pub lhs: f64,
    pub phi_t1: f64,
    pub passed: bool,
}

/// Discrete Caccioppoli inequality on `[t₁, t₂]` with trapezoidal time
/// quadrature over the recorded instants (values at `t₁`, `t₂` are linearly
/// interpolated). Passes when `lhs ≤ tol·Φ(t₁)`.
pub fn caccioppoli_check(
    trace: &EnergyTrace,
    c1: f64,
    t1: f64,
    t2: f64,
    tol: f64,
) -> Result<CaccioppoliMargin> {
    if trace.is_empty() {
        return Err(Error::Range("empty trace".into()));
    }
    let (first, last) = (trace.times[0], trace.times[trace.len() - 1]);
    if !(t1 < t2) || t1 < first || t2 > last {
        return Err(Error::Range(format!(
            "[{t1}, {t2}] is not a proper sub-interval of the trace range [{first}, {last}]"
        )));
    }
    let mut nodes = vec![(t1, trace.interpolate(&trace.grad_term, t1))];
    for (k, &t) in trace.times.iter().enumerate() {
        if t > t1 && t < t2 {
            nodes.push((t, trace.grad_term[k]));
        }
    }
    nodes.push((t2, trace.interpolate(&trace.grad_term, t2)));
    let integral: f64 = nodes
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum();
    let phi_t1 = trace.interpolate(&trace.phi, t1);
    let phi_t2 = trace.interpolate(&trace.phi, t2);
    let lhs = phi_t2 - phi_t1 + c1 * integral;
    Ok(CaccioppoliMargin {
        lhs,
        phi_t1,
        passed: lhs <= tol * phi_t1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoelderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub passed: bool,
}

/// Grid version of `‖ρ/ω‖_{L^θ(ω dμ)}`: `(Σ (ρ_i/ω_i)^θ ω_i m_i)^{1/θ}`, or
/// `max ρ_i/ω_i` for `θ = ∞`.
pub fn discrete_weight_norm(grid: &RadialGrid, theta: f64) -> f64 {
    let ratios = grid.rho.iter().zip(&grid.omega).map(|(r, w)| r / w);
    if theta.is_infinite() {
        return ratios.fold(0.0, f64::max);
    }
    let sum: f64 = ratios
        .zip(&grid.omega)
        .zip(&grid.measures)
        .map(|((x, w), m)| x.powf(theta) * w * m)
        .sum();
    sum.powf(1.0 / theta)
}

/// `Φ ≤ (Σ v^{pκ} ω m)^{(σ+D)/(σκ)} ‖ρ/ω‖` for `v = u^{σ/p}`, with the grid
/// norm of `ρ/ω`. Requires the conjugate relation
/// `1/θ + (σ+D)/(σκ) = 1`; `θ = ∞` is the case `σκ = σ + D`.
pub fn hoelder_step_check(
    grid: &RadialGrid,
    u: &[f64],
    sigma: f64,
    d: f64,
    theta: f64,
    kappa: f64,
) -> Result<HoelderCheck> {
    let a = (sigma + d) / (sigma * kappa);
    let inv_theta = if theta.is_infinite() {
        0.0
    } else {
        1.0 / theta
    };
    if !((inv_theta + a - 1.0).abs() < 1e-9) {
        return Err(domain(format!(
            "theta = {theta} is not conjugate to sigma*kappa/(sigma+D) = {}",
            1.0 / a
        )));
    }
    let lhs = energy_phi(grid, u, sigma, d);
    let sobolev_side: f64 = u
        .iter()
        .zip(&grid.omega)
        .zip(&grid.measures)
        .filter(|((&x, _), _)| x > 0.0)
        .map(|((&x, &w), &m)| x.powf(sigma * kappa) * w * m)
        .sum();
    let rhs = sobolev_side.powf(a) * discrete_weight_norm(grid, theta);
    Ok(HoelderCheck {
        lhs,
        rhs,
        passed: lhs <= rhs * (1.0 + HOELDER_RTOL),
    })
}

/// Bump profile `v(r) = (1 − (r/R)²)₊^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub radius: f64,
    pub power: f64,
}

impl Bump {
    pub fn eval(&self, r: f64) -> f64 {
        let x = 1.0 - (r / self.radius).powi(2);
        if x <= 0.0 {
            0.0
        } else {
            x.powf(self.power)
        }
    }
}

/// All bumps with radius in `radii` and power in `powers`.
pub fn bump_family(radii: &[f64], powers: &[f64]) -> Vec<Bump> {
    radii
        .iter()
        .flat_map(|&radius| powers.iter().map(move |&power| Bump { radius, power }))
        .collect()
}

/// `(Σ|v|^{pκ} ω m)^{1/κ} / Σ_{interior faces} S_f Δr |∇v|^p` for one field.
pub fn sobolev_ratio(grid: &RadialGrid, v: &[f64], p: f64, kappa: f64) -> Result<f64> {
    let rhs = p_energy(grid, v, p);
    if !(rhs > 0.0) {
        return Err(Error::Degenerate(
            "test field has zero gradient term".into(),
        ));
    }
    let lhs: f64 = v
        .iter()
        .zip(&grid.omega)
        .zip(&grid.measures)
        .map(|((&x, &w), &m)| x.abs().powf(p * kappa) * w * m)
        .sum();
    Ok(lhs.powf(1.0 / kappa) / rhs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeResult {
    /// Lower bound for the Sobolev constant.
    pub c_lower: f64,
    pub best: Bump,
}

/// Largest Sobolev ratio over the family; a lower bound for the constant.
pub fn sobolev_probe(
    grid: &RadialGrid,
    p: f64,
    kappa: f64,
    family: &[Bump],
) -> Result<ProbeResult> {
    let mut best: Option<ProbeResult> = None;
    for bump in family {
        let v = grid.sample(|r| bump.eval(r));
        let ratio = sobolev_ratio(grid, &v, p, kappa).map_err(|_| {
            Error::Degenerate(format!("{bump:?} has zero gradient term on the grid"))
        })?;
        if best.is_none_or(|b| ratio > b.c_lower) {
            best = Some(ProbeResult {
                c_lower: ratio,
                best: *bump,
            });
        }
    }
    best.ok_or_else(|| Error::Degenerate("empty test family".into()))
}

/// The Hölder and Sobolev steps chained on a single state:
/// `Φ ≤ (C·G)^{(σ+D)/σ} ‖ρ/ω‖` where `G` is the gradient term of
/// `v = u^{σ/p}` and `C` the Sobolev ratio of `v` itself.
/// Returns `(Φ, bound)`.
pub fn chained_energy_bound(
    grid: &RadialGrid,
    u: &[f64],
    sigma: f64,
    d: f64,
    p: f64,
    kappa: f64,
    theta: f64,
) -> Result<(f64, f64)> {
    let v: Vec<f64> = u.iter().map(|&x| x.max(0.0).powf(sigma / p)).collect();
    let c = sobolev_ratio(grid, &v, p, kappa)?;
    let g = p_energy(grid, &v, p);
    let phi = energy_phi(grid, u, sigma, d);
    let bound = (c * g).powf((sigma + d) / sigma) * discrete_weight_norm(grid, theta);
    Ok((phi, bound))
}

/// Closed-form solution of `dΨ/dt = −cΨ^{σ/(σ+D)}`, `Ψ(0) = Φ₀`:
/// `Ψ(t) = (Φ₀^{D/(σ+D)} − D/(σ+D)·c·t)₊^{(σ+D)/D}`.
pub fn psi(phi0: f64, c: f64, sigma: f64, d: f64, t: f64) -> f64 {
    let e = d / (sigma + d);
    let base = phi0.powf(e) - e * c * t;
    if base <= 0.0 {
        0.0
    } else {
        base.powf(1.0 / e)
    }
}

/// First zero of [`psi`]: `(σ+D)/(cD)·Φ₀^{D/(σ+D)}`.
pub fn psi_zero_time(phi0: f64, c: f64, sigma: f64, d: f64) -> f64 {
    (sigma + d) / (c * d) * phi0.powf(d / (sigma + d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonVerdict {
    pub passed: bool,
    /// Largest `Φ(t_k) − Ψ(t_k)(1 + tol)` over the trace (≤ 0 when passed).
    pub worst_excess: f64,
    pub first_violation: Option<f64>,
}

/// Checks `Φ(t_k) ≤ Ψ(t_k)(1 + 10⁻⁶)` on every recorded instant.
pub fn verify_comparison(trace: &EnergyTrace, c: f64) -> Result<ComparisonVerdict> {
    if trace.len() < 3 {
        return Err(Error::Range(format!(
            "trace has {} samples, need 3",
            trace.len()
        )));
    }
    if !(c > 0.0) {
        return Err(domain(format!("comparison rate c = {c} must be positive")));
    }
    let (t0, phi0) = (trace.times[0], trace.phi[0]);
    let mut worst = f64::NEG_INFINITY;
    let mut first_violation = None;
    for (&t, &phi) in trace.times.iter().zip(&trace.phi) {
        let bound = psi(phi0, c, trace.sigma, trace.d, t - t0) * (1.0 + COMPARISON_RTOL);
        let excess = phi - bound;
        worst = worst.max(excess);
        if excess > 0.0 && first_violation.is_none() {
            first_violation = Some(t);
        }
    }
    Ok(ComparisonVerdict {
        passed: first_violation.is_none(),
        worst_excess: worst,
        first_violation,
    })
}

/// Largest `c` with `(Φ_k − Φ_{k+1})/Δt ≥ c Φ_k^{σ/(σ+D)}` on every
/// consecutive pair of records with `Φ_k > 0`.
pub fn fit_rate(trace: &EnergyTrace) -> Result<f64> {
    if trace.len() < 3 {
        return Err(Error::Range(format!(
            "trace has {} samples, need 3",
            trace.len()
        )));
    }
    let a = trace.sigma / (trace.sigma + trace.d);
    let mut c = f64::INFINITY;
    for k in 0..trace.len() - 1 {
        let phi = trace.phi[k];
        let dt = trace.times[k + 1] - trace.times[k];
        if phi > 0.0 && dt > 0.0 {
            c = c.min((phi - trace.phi[k + 1]) / (dt * phi.powf(a)));
        }
    }
    if c.is_infinite() {
        return Err(Error::Range(
            "trace has no interval with positive energy".into(),
        ));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Density, WeightedModel};
    use std::f64::consts::PI;

    fn golden_grid() -> RadialGrid {
        let m = WeightedModel::euclidean(3, 2.0)
            .unwrap()
            .with_density(Density::unit())
            .unwrap();
        RadialGrid::uniform(&m, 3.0, 3).unwrap()
    }

    #[test]
    fn golden_energy_terms() {
        let g = golden_grid();
        let u = [1.0, 0.25, 0.0];
        assert!((grad_term(&g, &u, 2.0, 2.0) - 3.25 * PI).abs() < 1e-12);
        // Φ with σ + D = 2.5: 1·4π/3 + 0.25^{2.5}·28π/3
        let want = 4.0 * PI / 3.0 + 0.25f64.powf(2.5) * 28.0 * PI / 3.0;
        assert!((energy_phi(&g, &u, 2.0, 0.5) - want).abs() < 1e-12);
        assert_eq!(energy_phi(&g, &[0.0; 3], 2.0, 0.5), 0.0);
        assert!((energy_phi(&g, &[1.0; 3], 2.0, 0.5) - 36.0 * PI).abs() < 1e-11);
        assert_eq!(grad_term(&g, &[0.3; 3], 2.0, 2.0), 0.0);
    }

    fn trace_from(times: &[f64], phi: &[f64], grad: &[f64]) -> EnergyTrace {
        let mut tr = EnergyTrace::new(2.0, 0.5);
        for k in 0..times.len() {
            tr.push(times[k], phi[k], grad[k], 0.0, 0.0, 0.0, 0.0);
        }
        tr
    }

    #[test]
    fn caccioppoli_ranges_and_zero_trace() {
        let tr = trace_from(&[0.0, 1.0, 2.0], &[0.0; 3], &[0.0; 3]);
        let m = caccioppoli_check(&tr, 0.5, 0.0, 2.0, CACCIOPPOLI_TOL).unwrap();
        assert_eq!(m.lhs, 0.0);
        assert!(m.passed);
        assert!(caccioppoli_check(&tr, 0.5, 1.5, 0.5, CACCIOPPOLI_TOL).is_err());
        assert!(caccioppoli_check(&tr, 0.5, 0.5, 2.5, CACCIOPPOLI_TOL).is_err());
    }

    #[test]
    fn caccioppoli_trapezoid_with_interpolated_ends() {
        // Φ = 10 − t, grad = 2t (linear, so the trapezoid is exact)
        let tr = trace_from(
            &[0.0, 1.0, 2.0, 3.0],
            &[10.0, 9.0, 8.0, 7.0],
            &[0.0, 2.0, 4.0, 6.0],
        );
        let m = caccioppoli_check(&tr, 0.5, 0.5, 2.5, CACCIOPPOLI_TOL).unwrap();
        // −2 + 0.5·(2.5² − 0.5²) = 1
        assert!((m.lhs - 1.0).abs() < 1e-12);
        assert!(!m.passed);
    }

    #[test]
    fn hoelder_zero_field_and_conjugacy() {
        let g = golden_grid();
        let c = hoelder_step_check(&g, &[0.0; 3], 2.0, 0.5, 12.0 / 7.0, 3.0).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        assert!(c.passed);
        assert!(hoelder_step_check(&g, &[0.0; 3], 2.0, 0.5, 2.0, 3.0).is_err());
        // σκ = σ + D: κ = 1.25 with σ = 2
        let s = hoelder_step_check(&g, &[1.0, 0.5, 0.2], 2.0, 0.5, f64::INFINITY, 1.25).unwrap();
        assert!(s.passed);
        assert!(
            (s.lhs - s.rhs).abs() < 1e-10 * s.rhs,
            "ρ/ω constant makes it an equality"
        );
    }

    #[test]
    fn probe_degenerate_cases() {
        let g = golden_grid();
        assert!(matches!(
            sobolev_probe(&g, 2.0, 3.0, &[]),
            Err(Error::Degenerate(_))
        ));
        // a bump narrower than the first center is identically zero on the grid
        let tiny = [Bump {
            radius: 0.1,
            power: 2.0,
        }];
        assert!(matches!(
            sobolev_probe(&g, 2.0, 3.0, &tiny),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn psi_closed_form_endpoints() {
        let (phi0, c, sigma, d) = (3.0, 0.7, 2.0, 0.5);
        assert!((psi(phi0, c, sigma, d, 0.0) - phi0).abs() < 1e-14);
        let t = psi_zero_time(phi0, c, sigma, d);
        assert_eq!(psi(phi0, c, sigma, d, t * (1.0 + 1e-12)), 0.0);
        assert!(psi(phi0, c, sigma, d, t * 0.999) > 0.0);
    }

    #[test]
    fn short_traces_are_rejected() {
        let tr = trace_from(&[0.0, 1.0], &[1.0, 0.5], &[0.0; 2]);
        assert!(matches!(fit_rate(&tr), Err(Error::Range(_))));
        assert!(matches!(verify_comparison(&tr, 1.0), Err(Error::Range(_))));
    }
}
