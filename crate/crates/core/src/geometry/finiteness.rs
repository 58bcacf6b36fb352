use super::log_log_slope;
use super::model::WeightedModel;
use super::quadrature::{integrate, integrate_radial, Tolerance};
use crate::error::{domain, Error, Result};

const NORM_TOL: Tolerance = Tolerance {
    abs: 1e-12,
    rel: 1e-10,
};
const SUP_SAMPLES: usize = 4000;

/// Result of [`finiteness_norm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Finiteness {
    pub theta: f64,
    /// `∫₀^{R_probe} (ρ/ω)^θ ω S_μ dr` for finite `θ`, `sup_{(0,R_probe]} ρ/ω`
    /// for `θ = ∞`.
    pub value: f64,
    /// Power of `r` governing the integrand (or `ρ/ω` when `θ = ∞`) at infinity.
    pub tail_exponent: f64,
    /// Same at the origin.
    pub origin_exponent: f64,
    pub finite: bool,
}

impl Finiteness {
    /// `‖ρ/ω‖` restricted to `(0, R_probe]`.
    pub fn norm(&self) -> f64 {
        if self.theta.is_infinite() {
            self.value
        } else {
            self.value.powf(1.0 / self.theta)
        }
    }
}

/// Verdict on `‖ρ/ω‖_{L^θ(ω dμ)} < ∞` from the analytic tail exponent, with
/// the truncated integral (or supremum) evaluated by quadrature.
pub fn finiteness_norm(model: &WeightedModel, theta: f64, r_probe: f64) -> Result<Finiteness> {
    if !(theta > 1.0) {
        return Err(domain(format!("theta = {theta} must exceed 1")));
    }
    if !(r_probe > 0.0) || !r_probe.is_finite() {
        return Err(domain(format!("R_probe = {r_probe} must be positive")));
    }
    let Some(rho_exp) = model.density_exponents() else {
        return Ok(Finiteness {
            theta,
            value: 0.0,
            tail_exponent: f64::NEG_INFINITY,
            origin_exponent: f64::INFINITY,
            finite: true,
        });
    };
    let omega_exp = model.omega_exponents();
    let area_exp = model.area_exponents();

    if theta.is_infinite() {
        let origin_exponent = rho_exp.origin - omega_exp.origin;
        if origin_exponent < 0.0 {
            return Err(Error::Quadrature(format!(
                "rho/omega behaves like r^{origin_exponent} at r = 0 and is unbounded"
            )));
        }
        let tail_exponent = rho_exp.infinity - omega_exp.infinity;
        let lo = 1e-8 * r_probe;
        let ratio = (r_probe / lo).powf(1.0 / (SUP_SAMPLES - 1) as f64);
        let value = (0..SUP_SAMPLES)
            .map(|k| {
                let r = if k + 1 == SUP_SAMPLES {
                    r_probe
                } else {
                    lo * ratio.powi(k as i32)
                };
                model.rho(r) / model.omega(r)
            })
            .fold(0.0, f64::max);
        return Ok(Finiteness {
            theta,
            value,
            tail_exponent,
            origin_exponent,
            finite: tail_exponent <= 0.0,
        });
    }

    let blend =
        |rho_e: f64, omega_e: f64, area_e: f64| theta * rho_e + (1.0 - theta) * omega_e + area_e;
    let origin_exponent = blend(rho_exp.origin, omega_exp.origin, area_exp.origin);
    let tail_exponent = blend(rho_exp.infinity, omega_exp.infinity, area_exp.infinity);
    let f = integrand(model, theta);

    let value = integrate_radial(&f, r_probe, origin_exponent, NORM_TOL)?.value;
    Ok(Finiteness {
        theta,
        value,
        tail_exponent,
        origin_exponent,
        finite: tail_exponent < -1.0,
    })
}

fn integrand(model: &WeightedModel, theta: f64) -> impl Fn(f64) -> f64 + '_ {
    move |r| {
        let w = model.omega(r);
        (model.rho(r) / w).powf(theta) * w * model.area(r)
    }
}

/// Tail exponent measured numerically: the increments `∫_R^{2R}` of the
/// finiteness integrand for `R = r_start·2^k`, `k < doublings`, are fitted
/// against `R` in log-log scale and the slope, minus one, is returned. For
/// `θ = ∞` the slope of `ρ/ω` itself is returned.
pub fn fitted_tail_exponent(
    model: &WeightedModel,
    theta: f64,
    r_start: f64,
    doublings: usize,
) -> Result<f64> {
    if doublings < 2 {
        return Err(domain("slope fit needs at least two radii"));
    }
    if model.density_exponents().is_none() {
        return Err(domain("model carries no density"));
    }
    let radii: Vec<f64> = (0..doublings)
        .map(|k| r_start * 2f64.powi(k as i32))
        .collect();
    if theta.is_infinite() {
        let ys: Vec<f64> = radii
            .iter()
            .map(|&r| model.rho(r) / model.omega(r))
            .collect();
        return Ok(log_log_slope(&radii, &ys));
    }
    let f = integrand(model, theta);
    let ys = radii
        .iter()
        .map(|&r| Ok(integrate(&f, r, 2.0 * r, NORM_TOL)?.value))
        .collect::<Result<Vec<f64>>>()?;
    Ok(log_log_slope(&radii, &ys) - 1.0)
}
