//! Radially symmetric weighted models, radial grids and the `ρ/ω` norm.

mod finiteness;
mod grid;
mod model;
pub mod quadrature;

pub use finiteness::{finiteness_norm, fitted_tail_exponent, Finiteness};
pub use grid::RadialGrid;
pub use model::{unit_sphere_area, ConformalFactor, Density, Family, PowerLaw, WeightedModel};

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power() {
        let xs: Vec<f64> = (0..10).map(|k| 2f64.powi(k)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(-1.7)).collect();
        assert!((log_log_slope(&xs, &ys) + 1.7).abs() < 1e-12);
    }
}
