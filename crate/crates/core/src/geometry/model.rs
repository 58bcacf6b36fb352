use std::f64::consts::PI;
use std::fmt;

use super::quadrature::{integrate, Tolerance};
use crate::error::{domain, Result};
use crate::params::euclidean_kappa;

/// Measure of the unit sphere `S^{n−1}` in `ℝⁿ`.
pub fn unit_sphere_area(n: u32) -> f64 {
    // |S^{n+1}| = 2π/n · |S^{n−1}|
    let (mut area, mut k) = if n.is_multiple_of(2) {
        (2.0 * PI, 2)
    } else {
        (4.0 * PI, 3)
    };
    while k < n {
        area *= 2.0 * PI / f64::from(k);
        k += 2;
    }
    area
}

/// Power-law behaviour of a radial function at `r → 0` and `r → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    pub origin: f64,
    pub infinity: f64,
}

impl PowerLaw {
    pub const fn flat() -> Self {
        Self {
            origin: 0.0,
            infinity: 0.0,
        }
    }

    pub const fn uniform(e: f64) -> Self {
        Self {
            origin: e,
            infinity: e,
        }
    }
}

/// Radial density `ρ(r) = coeff · (core² + r²)^{−l/2}`; with `core = 0`
/// this is the pure power `coeff · r^{−l}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    pub coeff: f64,
    pub l: f64,
    pub core: f64,
}

impl Density {
    pub fn power(l: f64) -> Self {
        Self {
            coeff: 1.0,
            l,
            core: 0.0,
        }
    }

    pub fn unit() -> Self {
        Self::power(0.0)
    }

    pub fn zero() -> Self {
        Self {
            coeff: 0.0,
            l: 0.0,
            core: 0.0,
        }
    }

    pub fn with_core(mut self, core: f64) -> Self {
        self.core = core;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.coeff >= 0.0) || !(self.l >= 0.0) || !(self.core >= 0.0) {
            return Err(domain(format!(
                "density needs coeff >= 0, l >= 0, core >= 0 (got {self:?})"
            )));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == 0.0
    }

    pub fn eval(&self, r: f64) -> f64 {
        if self.coeff == 0.0 {
            return 0.0;
        }
        if self.l == 0.0 {
            return self.coeff;
        }
        if self.core == 0.0 {
            self.coeff * r.powf(-self.l)
        } else {
            self.coeff * (self.core * self.core + r * r).powf(-0.5 * self.l)
        }
    }

    pub fn exponents(&self) -> PowerLaw {
        PowerLaw {
            origin: if self.core > 0.0 { 0.0 } else { -self.l },
            infinity: -self.l,
        }
    }
}

/// The conformal factor `a(R)` of `g = a·g_eucl` and the induced change of
/// radius `r(R) = ∫₀^R √a`.
///
/// `a(R) = c R^{−l}` for `R ≥ R₀`; below `R₀` it is the even polynomial
/// `c R₀^{−l} (A + B x² + C x⁴)`, `x = R/R₀`, matching value, first and
/// second derivative at `R₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalFactor {
    pub l: f64,
    pub c: f64,
    pub r0: f64,
    cap: [f64; 3],
    /// Riemannian radius of the sphere `R = R₀`.
    radius_at_r0: f64,
}

impl ConformalFactor {
    pub fn new(l: f64, c: f64, r0: f64) -> Result<Self> {
        if !(0.0..2.0).contains(&l) {
            return Err(domain(format!(
                "conformal exponent l = {l} must lie in [0, 2)"
            )));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(domain(format!(
                "conformal constant c = {c} must be positive"
            )));
        }
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(domain(format!(
                "smoothing radius R0 = {r0} must be positive"
            )));
        }
        let cap = [
            1.0 + (l * l + 6.0 * l) / 8.0,
            -l * (l + 4.0) / 4.0,
            l * (l + 2.0) / 8.0,
        ];
        let mut factor = Self {
            l,
            c,
            r0,
            cap,
            radius_at_r0: 0.0,
        };
        factor.radius_at_r0 = factor.radius_below_r0(r0)?;
        Ok(factor)
    }

    pub fn a(&self, big_r: f64) -> f64 {
        if big_r >= self.r0 {
            self.c * big_r.powf(-self.l)
        } else {
            let x2 = (big_r / self.r0).powi(2);
            let [a, b, c] = self.cap;
            self.c * self.r0.powf(-self.l) * (a + x2 * (b + x2 * c))
        }
    }

    fn radius_below_r0(&self, big_r: f64) -> Result<f64> {
        let tol = Tolerance {
            abs: 1e-15,
            rel: 1e-14,
        };
        Ok(integrate(|s| self.a(s).sqrt(), 0.0, big_r, tol)?.value)
    }

    /// Riemannian radius `r` of the Euclidean sphere of radius `R`.
    pub fn radius(&self, big_r: f64) -> f64 {
        if big_r >= self.r0 {
            let e = 1.0 - 0.5 * self.l;
            self.radius_at_r0 + self.c.sqrt() * (big_r.powf(e) - self.r0.powf(e)) / e
        } else {
            self.radius_below_r0(big_r).unwrap_or(f64::NAN)
        }
    }

    /// Euclidean radius `R(r)`; closed form beyond `R₀`, bisection below.
    pub fn euclidean_radius(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        if r >= self.radius_at_r0 {
            let e = 1.0 - 0.5 * self.l;
            let base = self.r0.powf(e) + (r - self.radius_at_r0) * e / self.c.sqrt();
            return base.powf(1.0 / e);
        }
        let (mut lo, mut hi) = (0.0, self.r0);
        while hi - lo > 1e-13 * hi {
            let mid = 0.5 * (lo + hi);
            if self.radius(mid) < r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn radius_at_smoothing(&self) -> f64 {
        self.radius_at_r0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `(ℝⁿ, g_eucl, dx)`.
    Euclidean,
    /// `g = a g_eucl`, `dμ = a^{p/2} dx` with a conformal factor decaying
    /// like `c R^{−l}`.
    Conformal(ConformalFactor),
    /// Cartan–Hadamard representative with `V(r) = r^α`, `ω ≡ 1`.
    ChPolynomial { alpha: f64 },
    /// Non-negative Ricci representative with `V(r) = r^α`,
    /// `ω = V^{κ−1}/r^{κp}`.
    RicciPolynomial { alpha: f64 },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Euclidean => "euclidean",
            Self::Conformal(_) => "conformal",
            Self::ChPolynomial { .. } => "ch_polynomial",
            Self::RicciPolynomial { .. } => "ricci_polynomial",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A radially symmetric weighted model: area function `S_μ`, Sobolev weight
/// `ω`, Sobolev exponent `κ` and (optionally) a density `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedModel {
    pub n: u32,
    pub p: f64,
    pub kappa: f64,
    pub family: Family,
    pub density: Option<Density>,
    sphere: f64,
}

impl WeightedModel {
    pub fn euclidean(n: u32, p: f64) -> Result<Self> {
        Ok(Self {
            n,
            p,
            kappa: euclidean_kappa(n, p)?,
            family: Family::Euclidean,
            density: None,
            sphere: unit_sphere_area(n),
        })
    }

    /// Conformal model with smoothing radius `R₀ = 1`.
    pub fn conformal(n: u32, p: f64, l: f64, c: f64) -> Result<Self> {
        Self::conformal_with_smoothing(n, p, l, c, 1.0)
    }

    pub fn conformal_with_smoothing(n: u32, p: f64, l: f64, c: f64, r0: f64) -> Result<Self> {
        Ok(Self {
            n,
            p,
            kappa: euclidean_kappa(n, p)?,
            family: Family::Conformal(ConformalFactor::new(l, c, r0)?),
            density: None,
            sphere: unit_sphere_area(n),
        })
    }

    pub fn ch_polynomial(n: u32, p: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(domain(format!(
                "volume exponent alpha = {alpha} must be positive"
            )));
        }
        Ok(Self {
            n,
            p,
            kappa: euclidean_kappa(n, p)?,
            family: Family::ChPolynomial { alpha },
            density: None,
            sphere: 1.0,
        })
    }

    pub fn ricci_polynomial(n: u32, p: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 2.0) || !alpha.is_finite() {
            return Err(domain(format!(
                "reverse doubling exponent alpha = {alpha} must exceed 2"
            )));
        }
        Ok(Self {
            n,
            p,
            kappa: euclidean_kappa(n, p)?,
            family: Family::RicciPolynomial { alpha },
            density: None,
            sphere: 1.0,
        })
    }

    pub fn with_density(mut self, density: Density) -> Result<Self> {
        density.validate()?;
        self.density = Some(density);
        Ok(self)
    }

    pub fn name(&self) -> &'static str {
        self.family.tag()
    }

    fn dim(&self) -> f64 {
        f64::from(self.n)
    }

    /// Area function `S_μ(r)`.
    pub fn area(&self, r: f64) -> f64 {
        let n1 = self.dim() - 1.0;
        match self.family {
            Family::Euclidean => self.sphere * r.powf(n1),
            Family::Conformal(ref cf) => {
                let big_r = cf.euclidean_radius(r);
                self.sphere * cf.a(big_r).powf(0.5 * (self.p - 1.0)) * big_r.powf(n1)
            }
            Family::ChPolynomial { alpha } | Family::RicciPolynomial { alpha } => {
                alpha * r.powf(alpha - 1.0)
            }
        }
    }

    /// Sobolev weight `ω(r)`.
    pub fn omega(&self, r: f64) -> f64 {
        match self.family {
            Family::Euclidean | Family::ChPolynomial { .. } => 1.0,
            Family::Conformal(ref cf) => cf.a(cf.euclidean_radius(r)).powf(-0.5 * self.p),
            Family::RicciPolynomial { alpha } => r.powf(self.ricci_omega_exponent(alpha)),
        }
    }

    fn ricci_omega_exponent(&self, alpha: f64) -> f64 {
        alpha * (self.kappa - 1.0) - self.kappa * self.p
    }

    /// `ρ(r)`; a model without density is treated as `ρ ≡ 0`.
    pub fn rho(&self, r: f64) -> f64 {
        self.density.map_or(0.0, |d| d.eval(r))
    }

    pub fn area_exponents(&self) -> PowerLaw {
        let n1 = self.dim() - 1.0;
        match self.family {
            Family::Euclidean => PowerLaw::uniform(n1),
            Family::Conformal(ref cf) => PowerLaw {
                origin: n1,
                infinity: (2.0 * n1 - cf.l * (self.p - 1.0)) / (2.0 - cf.l),
            },
            Family::ChPolynomial { alpha } | Family::RicciPolynomial { alpha } => {
                PowerLaw::uniform(alpha - 1.0)
            }
        }
    }

    pub fn omega_exponents(&self) -> PowerLaw {
        match self.family {
            Family::Euclidean | Family::ChPolynomial { .. } => PowerLaw::flat(),
            Family::Conformal(ref cf) => PowerLaw {
                origin: 0.0,
                infinity: cf.l * self.p / (2.0 - cf.l),
            },
            Family::RicciPolynomial { alpha } => {
                PowerLaw::uniform(self.ricci_omega_exponent(alpha))
            }
        }
    }

    pub fn density_exponents(&self) -> Option<PowerLaw> {
        match self.density {
            Some(d) if !d.is_zero() => Some(d.exponents()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_areas() {
        assert!((unit_sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((unit_sphere_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn euclidean_basics() {
        let m = WeightedModel::euclidean(3, 2.0).unwrap();
        assert!((m.area(1.0) - 4.0 * PI).abs() < 1e-14);
        assert_eq!(m.kappa, 3.0);
        assert_eq!(m.omega(3.0), 1.0);
        assert!(WeightedModel::euclidean(2, 2.0).is_err());
    }

    #[test]
    fn conformal_l_zero_is_scaled_euclidean() {
        let m = WeightedModel::conformal(3, 2.0, 0.0, 4.0).unwrap();
        // a ≡ 4: r = 2R, S_μ = 4π a^{1/2} R² = 4π·2·(r/2)², ω = a^{−1} = 1/4.
        for &r in &[0.3, 1.0, 5.0, 40.0] {
            let expect = 4.0 * PI * 2.0 * (0.5 * r) * (0.5 * r);
            assert!(((m.area(r) - expect) / expect).abs() < 1e-12);
            assert!((m.omega(r) - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn conformal_factor_is_c2_at_smoothing_radius() {
        let cf = ConformalFactor::new(1.5, 2.0, 1.0).unwrap();
        let h = 1e-4;
        let left = |x: f64| cf.a(x.min(1.0 - 1e-300));
        // value
        assert!((cf.a(1.0 - 1e-12) - cf.a(1.0)).abs() < 1e-9);
        // first derivative from each side
        let dl = (left(1.0 - h) - left(1.0 - 2.0 * h)) / h;
        let dr = (cf.a(1.0 + 2.0 * h) - cf.a(1.0 + h)) / h;
        assert!((dl - dr).abs() < 1e-2, "{dl} {dr}");
        for &x in &[0.0, 0.3, 0.7, 0.999] {
            assert!(cf.a(x) > 0.0);
        }
    }

    #[test]
    fn conformal_radius_inverse() {
        let cf = ConformalFactor::new(1.5, 1.0, 1.0).unwrap();
        for &big_r in &[0.05, 0.5, 0.99, 1.0, 3.0, 1e4] {
            let r = cf.radius(big_r);
            let back = cf.euclidean_radius(r);
            assert!(
                ((back - big_r) / big_r).abs() < 1e-11,
                "{big_r} -> {r} -> {back}"
            );
        }
        // large-R asymptotics r ≈ √c/(1 − l/2) R^{1 − l/2}
        let big_r = 1e12;
        let ratio = cf.radius(big_r) / (big_r.powf(0.25) / 0.25);
        assert!((ratio - 1.0).abs() < 1e-2);
    }

    #[test]
    fn ch_and_ricci_shapes() {
        let ch = WeightedModel::ch_polynomial(3, 2.0, 2.5).unwrap();
        assert!((ch.area(2.0) / ch.area(1.0) - 2f64.powf(1.5)).abs() < 1e-14);
        assert!(WeightedModel::ch_polynomial(3, 2.0, 0.0).is_err());
        let ricci = WeightedModel::ricci_polynomial(3, 2.0, 3.0).unwrap();
        assert_eq!(ricci.omega_exponents().infinity, 0.0);
        assert!((ricci.omega(7.0) - 1.0).abs() < 1e-15);
        assert!(WeightedModel::ricci_polynomial(3, 2.0, 2.0).is_err());
        let ricci4 = WeightedModel::ricci_polynomial(3, 2.0, 4.0).unwrap();
        assert_eq!(ricci4.omega_exponents().infinity, 2.0);
    }

    #[test]
    fn conformal_asymptotic_exponent() {
        let m = WeightedModel::conformal(3, 2.0, 1.5, 1.0).unwrap();
        assert_eq!(m.area_exponents().infinity, 5.0);
        assert!(WeightedModel::conformal(3, 2.0, 2.0, 1.0).is_err());
        assert!(WeightedModel::conformal(3, 2.0, -0.1, 1.0).is_err());
    }
}
