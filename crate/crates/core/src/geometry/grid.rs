use super::model::WeightedModel;
use super::quadrature::{integrate, integrate_from_origin, Tolerance};
use crate::error::{domain, Result};

const CELL_TOL: Tolerance = Tolerance {
    abs: 1e-14,
    rel: 1e-12,
};

/// Uniform radial grid on `[0, R_max]` carrying the cell `μ`-measures and
/// the measure-weighted cell averages of `ρ` and `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub r_max: f64,
    pub dr: f64,
    /// `N + 1` faces, `faces[0] = 0`, `faces[N] = R_max`.
    pub faces: Vec<f64>,
    pub centers: Vec<f64>,
    /// `S_μ` at each face; the origin face carries area 0.
    pub face_areas: Vec<f64>,
    /// `m_i = ∫_cell S_μ dr`.
    pub measures: Vec<f64>,
    /// `ρ_i = ∫_cell ρ S_μ dr / m_i`; all zero when the model has no density.
    pub rho: Vec<f64>,
    /// `ω_i = ∫_cell ω S_μ dr / m_i`.
    pub omega: Vec<f64>,
}

impl RadialGrid {
    pub fn uniform(model: &WeightedModel, r_max: f64, cells: usize) -> Result<Self> {
        if cells < 3 {
            return Err(domain(format!("grid needs at least 3 cells (got {cells})")));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(domain(format!("R_max = {r_max} must be positive")));
        }
        let dr = r_max / cells as f64;
        let faces: Vec<f64> = (0..=cells)
            .map(|i| if i == cells { r_max } else { i as f64 * dr })
            .collect();
        let centers = faces.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let mut face_areas: Vec<f64> = faces.iter().map(|&r| model.area(r)).collect();
        face_areas[0] = 0.0;

        let area_origin = model.area_exponents().origin;
        let omega_origin = area_origin + model.omega_exponents().origin;
        let rho_origin = model.density_exponents().map(|e| area_origin + e.origin);

        let cell_integral = |f: &dyn Fn(f64) -> f64, i: usize, origin: f64| -> Result<f64> {
            let (a, b) = (faces[i], faces[i + 1]);
            let value = if i == 0 {
                integrate_from_origin(f, b, origin, CELL_TOL)?.value
            } else {
                integrate(f, a, b, CELL_TOL)?.value
            };
            Ok(value)
        };

        let mut measures = Vec::with_capacity(cells);
        let mut rho = Vec::with_capacity(cells);
        let mut omega = Vec::with_capacity(cells);
        for i in 0..cells {
            let m = cell_integral(&|r| model.area(r), i, area_origin)?;
            if !(m > 0.0) {
                return Err(domain(format!("cell {i} has non-positive measure {m}")));
            }
            measures.push(m);
            omega.push(cell_integral(&|r| model.omega(r) * model.area(r), i, omega_origin)? / m);
            rho.push(match rho_origin {
                Some(origin) => cell_integral(&|r| model.rho(r) * model.area(r), i, origin)? / m,
                None => 0.0,
            });
        }
        Ok(Self {
            r_max,
            dr,
            faces,
            centers,
            face_areas,
            measures,
            rho,
            omega,
        })
    }

    pub fn cells(&self) -> usize {
        self.centers.len()
    }

    /// `Σ_i ρ_i m_i u_i`.
    pub fn rho_mass(&self, u: &[f64]) -> f64 {
        u.iter()
            .zip(&self.rho)
            .zip(&self.measures)
            .map(|((u, r), m)| u * r * m)
            .sum()
    }

    /// Cell values `f(r_i)` sampled at the centers.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.centers.iter().map(|&r| f(r)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::model::Density;
    use std::f64::consts::PI;

    #[test]
    fn euclidean_measures_are_shell_volumes() {
        let m = WeightedModel::euclidean(3, 2.0).unwrap();
        let g = RadialGrid::uniform(&m, 3.0, 3).unwrap();
        for (i, &mi) in g.measures.iter().enumerate() {
            let (a, b) = (i as f64, i as f64 + 1.0);
            let expect = 4.0 * PI / 3.0 * (b.powi(3) - a.powi(3));
            assert!(((mi - expect) / expect).abs() < 1e-12);
        }
        assert_eq!(g.face_areas[0], 0.0);
        assert!((g.face_areas[2] - 16.0 * PI).abs() < 1e-12);
        assert!(g.rho.iter().all(|&r| r == 0.0));
        assert!(g.omega.iter().all(|&w| (w - 1.0).abs() < 1e-12));
    }

    #[test]
    fn singular_density_is_cell_averaged() {
        let m = WeightedModel::euclidean(3, 2.0)
            .unwrap()
            .with_density(Density::power(1.5))
            .unwrap();
        let g = RadialGrid::uniform(&m, 1.0, 4).unwrap();
        // ∫₀^{1/4} r^{−1.5}·4πr² dr / (4π/3·(1/4)³) = (2/3)(1/4)^{1.5} / ((1/3)(1/4)³)
        let expect = 2.0 * 0.25f64.powf(1.5) / 0.25f64.powi(3);
        assert!(((g.rho[0] - expect) / expect).abs() < 1e-9, "{}", g.rho[0]);
    }

    #[test]
    fn rejects_tiny_grids() {
        let m = WeightedModel::euclidean(3, 2.0).unwrap();
        assert!(RadialGrid::uniform(&m, 1.0, 2).is_err());
        assert!(RadialGrid::uniform(&m, 0.0, 10).is_err());
    }
}
