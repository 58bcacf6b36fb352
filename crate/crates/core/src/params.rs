//! Exponent algebra: derived constants and admissibility predicates.
//!
//! All quantities are plain `f64`; an infinite `θ` is represented by
//! `f64::INFINITY`.

use std::fmt;

use crate::error::{domain, Result};

/// Relative slack used when deciding whether `κ − 1 − D/σ` vanishes.
const ZERO_DENOM_RTOL: f64 = 1e-12;

/// The exponent tuple `(n, p, q, ζ, σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    /// Spatial dimension, at least 2.
    pub n: u32,
    /// p-Laplacian exponent, `p > 1`.
    pub p: f64,
    /// Nonlinearity exponent, `q > 0`.
    pub q: f64,
    /// Integrability index of the initial data, `ζ > 1`.
    pub zeta: f64,
    /// Energy exponent; `None` means `σ = σ_min`.
    pub sigma: Option<f64>,
}

impl Exponents {
    pub const DEFAULT_ZETA: f64 = 2.0;

    /// Builds and validates an exponent tuple with `σ` left at its default.
    pub fn new(n: u32, p: f64, q: f64, zeta: f64) -> Result<Self> {
        let e = Self {
            n,
            p,
            q,
            zeta,
            sigma: None,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = Some(sigma);
        self
    }

    /// Checks `n ≥ 2`, `p > 1`, `q > 0`, `ζ > 1`. Does not require `D > 0`.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(domain(format!(
                "dimension n = {} must be at least 2",
                self.n
            )));
        }
        if !(self.p > 1.0) || !self.p.is_finite() {
            return Err(domain(format!("p = {} must satisfy p > 1", self.p)));
        }
        if !(self.q > 0.0) || !self.q.is_finite() {
            return Err(domain(format!("q = {} must satisfy q > 0", self.q)));
        }
        if !(self.zeta > 1.0) || !self.zeta.is_finite() {
            return Err(domain(format!(
                "zeta = {} must satisfy zeta > 1",
                self.zeta
            )));
        }
        if let Some(s) = self.sigma {
            if !s.is_finite() {
                return Err(domain(format!("sigma = {s} must be finite")));
            }
        }
        Ok(())
    }

    /// `D = 1 − q(p − 1)`.
    pub fn d(&self) -> f64 {
        fast_diffusion_constant(self.p, self.q)
    }

    /// Fails unless `D > 0`.
    pub fn require_fast_diffusion(&self) -> Result<f64> {
        let d = self.d();
        if d > 0.0 {
            Ok(d)
        } else {
            Err(domain(format!(
                "D = 1 - q(p-1) = {d} must be positive (p = {}, q = {})",
                self.p, self.q
            )))
        }
    }

    /// Euclidean Sobolev exponent `κ = n/(n − p)`.
    pub fn kappa(&self) -> Result<f64> {
        euclidean_kappa(self.n, self.p)
    }

    /// `σ_min = max(p, pq, ζ − D, D/(κ − 1))`.
    pub fn sigma_min(&self) -> Result<f64> {
        let d = self.require_fast_diffusion()?;
        let kappa = self.kappa()?;
        Ok(sigma_min(self.p, self.q, self.zeta, d, kappa))
    }

    /// `l* = (p − nD)/(1 − D)`.
    pub fn l_star(&self) -> Result<f64> {
        let d = self.require_fast_diffusion()?;
        Ok(l_star(self.n, self.p, d))
    }

    /// `κ_l = (1 − D)(l − l*)`.
    pub fn kappa_l(&self, l: f64) -> Result<f64> {
        let d = self.require_fast_diffusion()?;
        Ok((1.0 - d) * (l - l_star(self.n, self.p, d)))
    }
}

pub fn fast_diffusion_constant(p: f64, q: f64) -> f64 {
    1.0 - q * (p - 1.0)
}

pub fn euclidean_kappa(n: u32, p: f64) -> Result<f64> {
    let nf = f64::from(n);
    if nf > p {
        Ok(nf / (nf - p))
    } else {
        Err(domain(format!("n = {n} must exceed p = {p}")))
    }
}

pub fn l_star(n: u32, p: f64, d: f64) -> f64 {
    (p - f64::from(n) * d) / (1.0 - d)
}

pub fn sigma_min(p: f64, q: f64, zeta: f64, d: f64, kappa: f64) -> f64 {
    p.max(p * q).max(zeta - d).max(d / (kappa - 1.0))
}

/// `θ(σ) = κ/(κ − 1 − D/σ)`, infinite when the denominator vanishes.
pub fn theta(kappa: f64, d: f64, sigma: f64) -> f64 {
    if sigma * (kappa - 1.0) <= d * (1.0 + ZERO_DENOM_RTOL) {
        f64::INFINITY
    } else {
        kappa / (kappa - 1.0 - d / sigma)
    }
}

/// Caccioppoli constant `c₁ = (σ+D)(σ+D−1) 2^{−p} q^{p−1} σ^{−p} p^p`.
pub fn caccioppoli_constant(p: f64, q: f64, sigma: f64, d: f64) -> f64 {
    let s = sigma + d;
    s * (s - 1.0) * 2f64.powf(-p) * q.powf(p - 1.0) * sigma.powf(-p) * p.powf(p)
}

/// A value that depends on an unproven claim. It can be read but is never
/// accepted where a proven bound is required.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conjectural(f64);

impl Conjectural {
    pub fn conjectural_value(&self) -> f64 {
        self.0
    }

    pub fn is_conjectural(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub d: f64,
    pub kappa: f64,
    /// The energy exponent actually used (defaults to `sigma_min`).
    pub sigma: f64,
    pub sigma_min: f64,
    pub theta: f64,
    pub theta_max: f64,
    /// Endpoint of the θ-range under the unproven relaxation
    /// `σ ≥ max(ζ − D, D/(κ − 1))`.
    pub theta_opt: Conjectural,
    pub l_star: f64,
    pub c1: f64,
    n: u32,
    p: f64,
}

impl DerivedConstants {
    pub fn kappa_l(&self, l: f64) -> f64 {
        (1.0 - self.d) * (l - self.l_star)
    }

    pub fn theta_max_is_infinite(&self) -> bool {
        self.theta_max.is_infinite()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Computes every derived scalar for `e`. `σ` defaults to `σ_min`.
pub fn derive(e: &Exponents) -> Result<DerivedConstants> {
    e.validate()?;
    let d = e.require_fast_diffusion()?;
    let kappa = e.kappa()?;
    let s_min = sigma_min(e.p, e.q, e.zeta, d, kappa);
    let sigma = match e.sigma {
        None => s_min,
        Some(s) if s >= s_min => s,
        Some(s) => {
            return Err(domain(format!("sigma = {s} is below sigma_min = {s_min}")));
        }
    };
    let theta_opt = if kappa >= 1.0 / (1.0 - d) {
        kappa / (kappa - 1.0 - d / (e.zeta - d))
    } else {
        f64::INFINITY
    };
    Ok(DerivedConstants {
        d,
        kappa,
        sigma,
        sigma_min: s_min,
        theta: theta(kappa, d, sigma),
        theta_max: theta(kappa, d, s_min),
        theta_opt: Conjectural(theta_opt),
        l_star: l_star(e.n, e.p, d),
        c1: caccioppoli_constant(e.p, e.q, sigma, d),
        n: e.n,
        p: e.p,
    })
}

/// Which term of `σ_min` dominates, as read off the explicit case table for
/// `κ = n/(n − p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaMaxCase {
    /// `σ_min = pq` (requires `q ≥ max(ζ − 1, 1)`).
    PqDominant,
    /// `σ_min = p` (requires `q ≤ min(1, (p + 1 − ζ)/(p − 1))`).
    PDominant,
    /// `σ_min = ζ − D` (requires `(p + 1 − ζ)/(p − 1) ≤ q ≤ ζ − 1`).
    ZetaDominant,
    /// `σ_min = D/(κ − 1)`: `θ_max = ∞`.
    SobolevDominant,
}

impl fmt::Display for ThetaMaxCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::PqDominant => "pq-dominant",
            Self::PDominant => "p-dominant",
            Self::ZetaDominant => "zeta-dominant",
            Self::SobolevDominant => "sobolev-dominant (theta_max = inf)",
        };
        f.write_str(s)
    }
}

/// Evaluates `θ_max` through the four-branch table in `n, p, q, ζ`, which
/// is independent of the `σ_min` route taken by [`derive`].
pub fn theta_max_cases(e: &Exponents) -> Result<(ThetaMaxCase, f64)> {
    e.validate()?;
    let d = e.require_fast_diffusion()?;
    let (n, p, q, zeta) = (f64::from(e.n), e.p, e.q, e.zeta);
    if n <= p {
        return Err(domain(format!("n = {n} must exceed p = {p}")));
    }
    let dnp = d * (n - p);
    let split = (p + 1.0 - zeta) / (p - 1.0);
    let finite = |denominator: f64| p > dnp / denominator;
    let value = |denominator: f64| n / (p - dnp / denominator);

    let case = if q >= (zeta - 1.0).max(1.0) && finite(p * q) {
        Some((ThetaMaxCase::PqDominant, value(p * q)))
    } else if q <= split.min(1.0) && finite(p) {
        Some((ThetaMaxCase::PDominant, value(p)))
    } else if split <= q && q <= zeta - 1.0 && finite(zeta - d) {
        Some((ThetaMaxCase::ZetaDominant, value(zeta - d)))
    } else {
        None
    };
    Ok(case.unwrap_or((ThetaMaxCase::SobolevDominant, f64::INFINITY)))
}

/// One endpoint of an interval on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endpoint {
    pub value: f64,
    pub closed: bool,
}

/// An interval `lower .. upper` with explicit open/closed flags. An
/// interval with `upper = None` is unbounded above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: Endpoint,
    pub upper: Option<Endpoint>,
}

impl Interval {
    pub fn open(a: f64, b: f64) -> Self {
        Self {
            lower: Endpoint {
                value: a,
                closed: false,
            },
            upper: Some(Endpoint {
                value: b,
                closed: false,
            }),
        }
    }

    pub fn closed_open(a: f64, b: f64) -> Self {
        Self {
            lower: Endpoint {
                value: a,
                closed: true,
            },
            upper: Some(Endpoint {
                value: b,
                closed: false,
            }),
        }
    }

    pub fn above(a: f64, closed: bool) -> Self {
        Self {
            lower: Endpoint { value: a, closed },
            upper: None,
        }
    }

    pub fn unbounded_above(&self) -> bool {
        self.upper.is_none()
    }

    pub fn contains(&self, x: f64) -> bool {
        let lower_ok = if self.lower.closed {
            x >= self.lower.value
        } else {
            x > self.lower.value
        };
        let upper_ok = match self.upper {
            None => true,
            Some(u) if u.closed => x <= u.value,
            Some(u) => x < u.value,
        };
        lower_ok && upper_ok
    }

    pub fn is_empty(&self) -> bool {
        match self.upper {
            None => false,
            Some(u) => {
                u.value < self.lower.value
                    || (u.value == self.lower.value && !(u.closed && self.lower.closed))
            }
        }
    }

    /// Intersection with the half-line `[0, ∞)` of admissible density
    /// exponents.
    pub fn clip_nonnegative(self) -> Self {
        if self.lower.value < 0.0 {
            Self {
                lower: Endpoint {
                    value: 0.0,
                    closed: true,
                },
                upper: self.upper,
            }
        } else {
            self
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower.closed { '[' } else { '(' };
        match self.upper {
            None => write!(f, "{open}{}, inf)", self.lower.value),
            Some(u) => {
                let close = if u.closed { ']' } else { ')' };
                write!(f, "{open}{}, {}{close}", self.lower.value, u.value)
            }
        }
    }
}

/// Geometric setting in which the density exponent `l` is constrained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `ℝⁿ` with `ρ = |x|^{−l}` carrying the exact self-similar solution:
    /// `l* < l < p`.
    ExactRn,
    /// Conformally Euclidean weighted model with `a(R) = cR^{−l}` and
    /// `ρ ≡ 1`.
    Conformal,
    /// Cartan–Hadamard manifold with volume growth `V(r) ≃ r^α`.
    CartanHadamard { alpha: f64 },
    /// Non-negative Ricci curvature with reverse doubling exponent `α > 2`.
    Ricci { alpha: f64 },
    /// Known optimal range on `ℝⁿ`.
    RnOptimal,
}

/// Range of `l` for which the finiteness condition holds in `regime`.
/// Empty intervals are returned, not reported as errors.
pub fn admissible_l_range(e: &Exponents, regime: Regime) -> Result<Interval> {
    let dc = derive(&Exponents { sigma: None, ..*e })?;
    let (n, p) = (f64::from(e.n), e.p);
    let theta_max = dc.theta_max;
    let interval = match regime {
        Regime::ExactRn => Interval::open(dc.l_star, p).clip_nonnegative(),
        Regime::Conformal => {
            if theta_max.is_infinite() {
                Interval::closed_open(0.0, 2.0)
            } else {
                Interval::open(2.0 * n / (p * theta_max), 2.0)
            }
        }
        Regime::CartanHadamard { alpha } => {
            if !(alpha > 0.0) {
                return Err(domain(format!("alpha = {alpha} must be positive")));
            }
            if theta_max.is_infinite() {
                Interval::above(0.0, true)
            } else {
                Interval::above(alpha / theta_max, false)
            }
        }
        Regime::Ricci { alpha } => {
            if !(alpha > 2.0) {
                return Err(domain(format!(
                    "alpha = {alpha} must exceed 2 (reverse volume doubling)"
                )));
            }
            let kappa = dc.kappa;
            if theta_max.is_infinite() {
                Interval::above(kappa * p - alpha * (kappa - 1.0), true).clip_nonnegative()
            } else {
                let lower = alpha - kappa * (theta_max - 1.0) * (alpha - p) / theta_max;
                Interval::above(lower, false).clip_nonnegative()
            }
        }
        Regime::RnOptimal => {
            if p >= n * dc.d {
                Interval::above(dc.l_star, false)
            } else {
                Interval::above(0.0, true)
            }
        }
    };
    Ok(interval)
}

/// Upper bound on the extinction time from the energy comparison:
/// `T = (σ+D)/(cD) · Φ₀^{D/(σ+D)}` with `c = c₁ C^{−σ/(σ+D)}`.
pub fn extinction_time_bound(
    phi0: f64,
    c1: f64,
    c_sobolev: f64,
    sigma: f64,
    d: f64,
) -> Result<f64> {
    if !(phi0 >= 0.0) {
        return Err(domain(format!(
            "initial energy {phi0} must be non-negative"
        )));
    }
    if !(c1 > 0.0) {
        return Err(domain(format!(
            "Caccioppoli constant c1 = {c1} must be positive"
        )));
    }
    if !(c_sobolev > 0.0) {
        return Err(domain(format!(
            "Sobolev constant C = {c_sobolev} must be positive"
        )));
    }
    if !(d > 0.0 && d < 1.0) {
        return Err(domain(format!("D = {d} must lie in (0, 1)")));
    }
    if !(sigma > 0.0) {
        return Err(domain(format!("sigma = {sigma} must be positive")));
    }
    let s = sigma + d;
    let c = comparison_rate(c1, c_sobolev, sigma, d);
    Ok(s / (c * d) * phi0.powf(d / s))
}

/// `c = c₁ C^{−σ/(σ+D)}`.
pub fn comparison_rate(c1: f64, c_sobolev: f64, sigma: f64, d: f64) -> f64 {
    c1 * c_sobolev.powf(-sigma / (sigma + d))
}
