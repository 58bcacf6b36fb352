//! Adaptive Gauss–Kronrod (G7/K15) quadrature with geometric grading
//! toward an integrable power singularity at the left endpoint.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SUBDIVISIONS: usize = 4000;

/// Requested accuracy: the error estimate must fall below
/// `max(abs, rel · |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 1e-10,
        }
    }
}

impl Tolerance {
    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut finite = fc.is_finite();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        finite &= f1.is_finite() && f2.is_finite();
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    if !finite {
        return Err(Error::Quadrature(format!(
            "integrand is not finite on [{a}, {b}]"
        )));
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Ok((value, error))
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[a, b]` by bisecting the piece with the largest
/// error estimate until the total estimate meets `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    if !(a < b) {
        return Err(Error::Quadrature(format!("invalid interval [{a}, {b}]")));
    }
    let (value, error) = kronrod15(&f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut splits = 0;
    while total_err > tol.target(total) {
        if splits >= MAX_SUBDIVISIONS {
            return Err(Error::Quadrature(format!(
                "no convergence on [{a}, {b}] after {splits} subdivisions (error {total_err:e})"
            )));
        }
        let worst = heap.pop().expect("heap holds at least one piece");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine resolution
            heap.push(worst);
            break;
        }
        let (v1, e1) = kronrod15(&f, worst.a, mid)?;
        let (v2, e2) = kronrod15(&f, mid, worst.b)?;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        splits += 1;
    }
    // re-sum to shed accumulated update rounding
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let error: f64 = heap.iter().map(|p| p.error).sum();
    Ok(Integral { value, error })
}

/// Integrates `f` over `(0, b]` where `f(r) ≍ r^{origin_exponent}` as
/// `r → 0`. The interval is split at `b/2, b/4, …` and pieces are added
/// until their contribution is negligible.
pub fn integrate_from_origin<F: Fn(f64) -> f64>(
    f: F,
    b: f64,
    origin_exponent: f64,
    tol: Tolerance,
) -> Result<Integral> {
    if !(origin_exponent > -1.0) {
        return Err(Error::Quadrature(format!(
            "integrand behaves like r^{origin_exponent} at r = 0, not integrable"
        )));
    }
    if b == 0.0 {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    if !(b > 0.0) {
        return Err(Error::Quadrature(format!("invalid upper limit {b}")));
    }
    let mut value = 0.0;
    let mut error = 0.0;
    let mut hi = b;
    let mut quiet = 0;
    for k in 0..1100 {
        let lo = 0.5 * hi;
        if lo == 0.0 {
            break;
        }
        let piece = integrate(&f, lo, hi, tol)?;
        value += piece.value;
        error += piece.error;
        if k >= 4 && piece.value.abs() <= 1e-17 * value.abs() + 1e-6 * tol.abs {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        hi = lo;
    }
    Ok(Integral { value, error })
}

/// Integrates over `(0, r_max]`: [`integrate_from_origin`] up to
/// `min(r_max, 1)`, then adaptive pieces `[a, 2a]` out to `r_max`.
pub fn integrate_radial<F: Fn(f64) -> f64>(
    f: F,
    r_max: f64,
    origin_exponent: f64,
    tol: Tolerance,
) -> Result<Integral> {
    let split = r_max.min(1.0);
    let mut total = integrate_from_origin(&f, split, origin_exponent, tol)?;
    let mut a = split;
    while a < r_max {
        let b = (2.0 * a).min(r_max);
        let piece = integrate(&f, a, b, tol)?;
        total.value += piece.value;
        total.error += piece.error;
        a = b;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let i = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, Tolerance::default()).unwrap();
        assert!((i.value - 0.0).abs() < 1e-13);
        let i = integrate(|x| x.powi(6), -1.0, 1.0, Tolerance::default()).unwrap();
        assert!((i.value - 2.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_transcendental() {
        let i = integrate(f64::exp, 0.0, 3.0, Tolerance::default()).unwrap();
        assert!((i.value - (3f64.exp() - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn singular_origin() {
        let i = integrate_from_origin(|r| r.powf(-0.5), 4.0, -0.5, Tolerance::default()).unwrap();
        assert!((i.value - 4.0).abs() < 1e-9, "{}", i.value);
        let i = integrate_from_origin(|r| r.powf(-0.9), 1.0, -0.9, Tolerance::default()).unwrap();
        assert!((i.value - 10.0).abs() < 1e-7, "{}", i.value);
    }

    #[test]
    fn radial_pieces_add_up() {
        let i =
            integrate_radial(|r| r.sqrt() * (-r).exp(), 50.0, 0.5, Tolerance::default()).unwrap();
        // Γ(3/2) = √π/2; the tail beyond 50 is below 1e-20.
        assert!((i.value - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn nonintegrable_origin_is_reported() {
        let e = integrate_from_origin(|r| 1.0 / r, 1.0, -1.0, Tolerance::default());
        assert!(matches!(e, Err(Error::Quadrature(_))));
    }

    #[test]
    fn nan_integrand_is_reported() {
        let e = integrate(
            |x| if x > 0.5 { f64::NAN } else { x },
            0.0,
            1.0,
            Tolerance::default(),
        );
        assert!(e.is_err());
    }
}
