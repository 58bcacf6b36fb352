//! The self-similar extinction profile on `ℝⁿ` with `ρ = |x|^{−l}`.
//!
//! ```text
//! u(r, t) = s^{(n−l)/κ_l} [C + κ_l^{−1/(p−1)} D/((p−l)q) r^{(p−l)/(p−1)} s^{(p−l)/((p−1)κ_l)}]^{−(p−1)/D}
//! ```
//!
//! with `s = T − t`, extended by zero for `t ≥ T`.

use crate::error::{domain, Error, Result};
use crate::geometry::quadrature::{integrate, integrate_from_origin, integrate_radial, Tolerance};
use crate::geometry::{unit_sphere_area, Density, RadialGrid, WeightedModel};
use crate::params::{euclidean_kappa, fast_diffusion_constant, l_star};

const ENERGY_TOL: Tolerance = Tolerance {
    abs: 1e-14,
    rel: 1e-11,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarenblattProfile {
    pub n: u32,
    pub p: f64,
    pub q: f64,
    pub l: f64,
    pub c: f64,
    pub t_ext: f64,
    pub d: f64,
    pub l_star: f64,
    pub kappa_l: f64,
    time_exp: f64,
    coef: f64,
    r_exp: f64,
    s_exp: f64,
    outer: f64,
}

impl BarenblattProfile {
    pub fn new(n: u32, p: f64, q: f64, l: f64, c: f64, t_ext: f64) -> Result<Self> {
        euclidean_kappa(n, p)?;
        if !(p > 1.0) || !(q > 0.0) {
            return Err(domain(format!(
                "need p > 1 and q > 0 (got p = {p}, q = {q})"
            )));
        }
        let d = fast_diffusion_constant(p, q);
        if !(d > 0.0) {
            return Err(domain(format!("D = {d} must be positive")));
        }
        let ls = l_star(n, p, d);
        if !(l > ls && l < p) {
            return Err(domain(format!("l = {l} must lie in (l*, p) = ({ls}, {p})")));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(domain(format!("C = {c} must be positive")));
        }
        if !(t_ext > 0.0) || !t_ext.is_finite() {
            return Err(domain(format!("T = {t_ext} must be positive")));
        }
        let kappa_l = (1.0 - d) * (l - ls);
        let nf = f64::from(n);
        Ok(Self {
            n,
            p,
            q,
            l,
            c,
            t_ext,
            d,
            l_star: ls,
            kappa_l,
            time_exp: (nf - l) / kappa_l,
            coef: kappa_l.powf(-1.0 / (p - 1.0)) * d / ((p - l) * q),
            r_exp: (p - l) / (p - 1.0),
            s_exp: (p - l) / ((p - 1.0) * kappa_l),
            outer: -(p - 1.0) / d,
        })
    }

    /// `(n, p, q, l, C, T) = (3, 2, 0.5, 1.5, 1, 1)`.
    pub fn default_profile() -> Self {
        Self::new(3, 2.0, 0.5, 1.5, 1.0, 1.0).expect("default profile is admissible")
    }

    /// Copy with a different constant `C`.
    pub fn with_c(&self, c: f64) -> Result<Self> {
        Self::new(self.n, self.p, self.q, self.l, c, self.t_ext)
    }

    /// Coefficient of `r^{(p−l)/(p−1)} s^{…}` inside the bracket.
    pub fn bracket_coefficient(&self) -> f64 {
        self.coef
    }

    /// The scalar `r^{(p−l)/(p−1)} (T−t)^{(p−l)/((p−1)κ_l)}` through which
    /// the bracket depends on `r`; 0 for `t ≥ T`.
    pub fn similarity_variable(&self, r: f64, t: f64) -> f64 {
        let s = self.t_ext - t;
        if s <= 0.0 {
            return 0.0;
        }
        r.powf(self.r_exp) * s.powf(self.s_exp)
    }

    pub fn eval(&self, r: f64, t: f64) -> f64 {
        let s = self.t_ext - t;
        if s <= 0.0 {
            return 0.0;
        }
        let xi = r.powf(self.r_exp) * s.powf(self.s_exp);
        s.powf(self.time_exp) * (self.c + self.coef * xi).powf(self.outer)
    }

    pub fn rho(&self, r: f64) -> f64 {
        r.powf(-self.l)
    }

    /// The Euclidean model carrying this profile's density `r^{−l}`.
    pub fn model(&self) -> Result<WeightedModel> {
        WeightedModel::euclidean(self.n, self.p)?.with_density(Density::power(self.l))
    }

    /// Power of `r` in `u(r, t)` as `r → ∞`, for `t < T`.
    pub fn tail_exponent(&self) -> f64 {
        self.r_exp * self.outer
    }

    /// `ρ∂ₜu − Δ_p u^q` by centred differences.
    pub fn pde_residual(&self, r: f64, t: f64, h_r: f64, h_t: f64) -> Result<f64> {
        if t - h_t >= self.t_ext {
            return Ok(0.0);
        }
        if t + h_t >= self.t_ext {
            return Err(domain(format!(
                "time stencil [{}, {}] crosses T = {}",
                t - h_t,
                t + h_t,
                self.t_ext
            )));
        }
        let u = |r: f64, t: f64| self.eval(r, t);
        radial_pde_residual(
            &u,
            &u,
            &|r| self.rho(r),
            self.n,
            self.p,
            self.q,
            r,
            t,
            h_r,
            h_t,
        )
    }

    /// Residuals at `h_r = h_t = h` for each step, with the least-squares
    /// order of `|residual|` in `h`. The order is `None` in the zero region
    /// `t > T` or when a residual vanishes exactly.
    pub fn residual_study(&self, r: f64, t: f64, steps: &[f64]) -> Result<ResidualStudy> {
        let residuals = steps
            .iter()
            .map(|&h| self.pde_residual(r, t, h, h))
            .collect::<Result<Vec<f64>>>()?;
        let abs: Vec<f64> = residuals.iter().map(|x| x.abs()).collect();
        let order = if steps.len() >= 2 && abs.iter().all(|&x| x > 0.0) {
            Some(crate::geometry::log_log_slope(steps, &abs))
        } else {
            None
        };
        Ok(ResidualStudy { residuals, order })
    }

    /// `∫₀^{R_max} u^{σ+D} ρ dμ` on `ℝⁿ`, refused when the integrand's tail
    /// exponent is `≥ −1`.
    pub fn energy_phi(&self, sigma: f64, t: f64, r_max: f64) -> Result<ExactEnergy> {
        let power = sigma + self.d;
        let nf = f64::from(self.n);
        let tail_exponent = power * self.tail_exponent() - self.l + nf - 1.0;
        if tail_exponent >= -1.0 {
            return Err(Error::Divergence(format!(
                "u^{power} rho dmu decays like r^{tail_exponent} at infinity"
            )));
        }
        if t >= self.t_ext {
            return Ok(ExactEnergy {
                value: 0.0,
                tail_exponent,
            });
        }
        let sphere = unit_sphere_area(self.n);
        let f = |r: f64| self.eval(r, t).powf(power) * r.powf(nf - 1.0 - self.l);
        let value = sphere * integrate_radial(f, r_max, nf - 1.0 - self.l, ENERGY_TOL)?.value;
        Ok(ExactEnergy {
            value,
            tail_exponent,
        })
    }

    /// ρ-weighted cell averages `∫ u ρ dμ / ∫ ρ dμ` over each grid cell.
    pub fn cell_averages(&self, grid: &RadialGrid, t: f64) -> Result<Vec<f64>> {
        let nf = f64::from(self.n);
        let w = |r: f64| r.powf(nf - 1.0 - self.l);
        let origin = nf - 1.0 - self.l;
        let tol = Tolerance {
            abs: 1e-16,
            rel: 1e-11,
        };
        (0..grid.cells())
            .map(|i| {
                let (a, b) = (grid.faces[i], grid.faces[i + 1]);
                let num = |r: f64| self.eval(r, t) * w(r);
                let (top, bottom) = if i == 0 {
                    (
                        integrate_from_origin(num, b, origin, tol)?.value,
                        integrate_from_origin(w, b, origin, tol)?.value,
                    )
                } else {
                    (
                        integrate(num, a, b, tol)?.value,
                        integrate(w, a, b, tol)?.value,
                    )
                };
                Ok(top / bottom)
            })
            .collect()
    }

    /// Relative `L¹(ρ dμ)` distance between a grid field and the profile's
    /// cell averages at time `t`.
    pub fn relative_l1_error(&self, grid: &RadialGrid, u: &[f64], t: f64) -> Result<f64> {
        let exact = self.cell_averages(grid, t)?;
        let weights = grid.rho.iter().zip(&grid.measures).map(|(r, m)| r * m);
        let (mut diff, mut norm) = (0.0, 0.0);
        for ((ui, ei), w) in u.iter().zip(&exact).zip(weights) {
            diff += (ui - ei).abs() * w;
            norm += ei.abs() * w;
        }
        if norm == 0.0 {
            return Ok(if diff == 0.0 { 0.0 } else { f64::INFINITY });
        }
        Ok(diff / norm)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualStudy {
    pub residuals: Vec<f64>,
    pub order: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactEnergy {
    pub value: f64,
    pub tail_exponent: f64,
}

/// Signed power `|x|^{p−2} x`, equal to 0 at `x = 0`.
pub fn signed_power(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.abs().powf(p - 2.0) * x
    }
}

/// `ρ(r)·∂ₜu_time − r^{1−n} ∂_r(r^{n−1} |∂_r w|^{p−2} ∂_r w)`, `w = u_space^q`,
/// using centred differences. Two fields are accepted so that a perturbed
/// time derivative can be paired with the exact spatial operator.
#[allow(clippy::too_many_arguments)]
pub fn radial_pde_residual(
    u_time: &dyn Fn(f64, f64) -> f64,
    u_space: &dyn Fn(f64, f64) -> f64,
    rho: &dyn Fn(f64) -> f64,
    n: u32,
    p: f64,
    q: f64,
    r: f64,
    t: f64,
    h_r: f64,
    h_t: f64,
) -> Result<f64> {
    if !(h_r > 0.0) || !(h_t > 0.0) {
        return Err(domain("difference steps must be positive"));
    }
    if !(r - h_r > 0.0) {
        return Err(domain(format!(
            "radial stencil [{}, {}] reaches r = 0",
            r - h_r,
            r + h_r
        )));
    }
    let n1 = f64::from(n) - 1.0;
    let w = |r: f64| u_space(r, t).powf(q);
    let flux = |rf: f64| {
        let g = (w(rf + 0.5 * h_r) - w(rf - 0.5 * h_r)) / h_r;
        rf.powf(n1) * signed_power(g, p)
    };
    let dt_u = (u_time(r, t + h_t) - u_time(r, t - h_t)) / (2.0 * h_t);
    let div = (flux(r + 0.5 * h_r) - flux(r - 0.5 * h_r)) / h_r / r.powf(n1);
    Ok(rho(r) * dt_u - div)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_profile_values() {
        let b = BarenblattProfile::default_profile();
        assert_eq!(b.d, 0.5);
        assert_eq!(b.l_star, 1.0);
        assert_eq!(b.kappa_l, 0.25);
        assert_eq!(b.bracket_coefficient(), 8.0);
        assert!((b.eval(0.0, 0.0) - 1.0).abs() < 1e-15);
        assert!((b.eval(1.0, 0.0) - 1.0 / 81.0).abs() < 1e-15);
        assert_eq!(b.eval(0.3, 1.0), 0.0);
        assert_eq!(b.eval(0.3, 2.0), 0.0);
        // s = 1/2: s⁶(1 + 8√r s²)^{-2}
        let s: f64 = 0.5;
        let expect = s.powi(6) * (1.0 + 8.0 * 4f64.sqrt() * s * s).powi(-2);
        assert!((b.eval(4.0, 0.5) - expect).abs() < 1e-16);
    }

    #[test]
    fn inadmissible_profiles() {
        assert!(BarenblattProfile::new(3, 2.0, 0.5, 0.5, 1.0, 1.0).is_err());
        assert!(BarenblattProfile::new(3, 2.0, 0.5, 2.0, 1.0, 1.0).is_err());
        assert!(BarenblattProfile::new(2, 2.0, 0.5, 1.5, 1.0, 1.0).is_err());
        assert!(BarenblattProfile::new(3, 2.0, 1.0, 1.5, 1.0, 1.0).is_err());
        assert!(BarenblattProfile::new(3, 2.0, 0.5, 1.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn residual_stencil_guards() {
        let b = BarenblattProfile::default_profile();
        assert!(b.pde_residual(0.005, 0.5, 0.01, 0.01).is_err());
        assert!(b.pde_residual(1.0, 0.995, 0.01, 0.01).is_err());
        assert_eq!(b.pde_residual(1.0, 1.5, 0.01, 0.01).unwrap(), 0.0);
    }

    #[test]
    fn signed_power_at_zero() {
        assert_eq!(signed_power(0.0, 1.5), 0.0);
        assert_eq!(signed_power(-4.0, 2.5), -8.0);
    }

    #[test]
    fn energy_divergence_for_plain_mass() {
        let b = BarenblattProfile::default_profile();
        // σ + D = 1 means ∫ u ρ dμ
        assert!(matches!(
            b.energy_phi(0.5, 0.0, 10.0),
            Err(Error::Divergence(_))
        ));
        let e = b.energy_phi(2.0, 0.0, 10.0).unwrap();
        assert_eq!(e.tail_exponent, -2.0);
        assert!(e.value > 0.0);
        assert_eq!(b.energy_phi(2.0, 1.0, 10.0).unwrap().value, 0.0);
    }
}
