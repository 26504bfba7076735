//! Representation matrices and the functionals defined on them.
//!
//! A representation of a graph on `n` vertices is an `r×n` matrix whose
//! column `v` is the position of vertex `v`. For unit columns the energy
//! `Σ_{uv∈E} ‖r(u) − r(v)‖²` equals `2·e(G) − 2·ρ(G, r)`, where
//! `ρ(G, r) = Σ_{uv∈E} ⟨r(u), r(v)⟩`.

mod drawing;
mod montecarlo;
mod svg;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{sym_eigen, Matrix, DEFAULT_EIGEN_TOL};

pub use drawing::{numerical_rank, principal_axes, project, random_projection, spectral_drawing};
pub use montecarlo::{
    projection_expectation_check, projection_expectation_check_with, AngleBin, ProjectionCheck,
};
pub use svg::{render_svg, RenderStyle, MARGIN_FRACTION, VERTEX_RADIUS, VIEWPORT};

/// Columns are vertex positions.
pub type RepresentationMatrix = Matrix;

fn check_columns(g: &Graph, r: &Matrix) -> Result<()> {
    if r.cols() == g.n() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: g.n(), found: r.cols() })
    }
}

fn column_dot(r: &Matrix, u: usize, v: usize) -> f64 {
    (0..r.rows()).map(|k| r.get(k, u) * r.get(k, v)).sum()
}

/// `ρ(G, r)`: sum over edges of the inner products of endpoint columns.
pub fn rho_edges(g: &Graph, r: &Matrix) -> Result<f64> {
    check_columns(g, r)?;
    Ok(g.edges().iter().map(|e| column_dot(r, e.0, e.1)).sum())
}

/// `½ Σ_k r_k A r_kᵀ` over the rows `r_k`; agrees with [`rho_edges`].
pub fn rho_rows(g: &Graph, r: &Matrix) -> Result<f64> {
    check_columns(g, r)?;
    let mut total = 0.0;
    for k in 0..r.rows() {
        let row = r.row(k);
        let quad: f64 = (0..g.n())
            .map(|v| row[v] * g.neighbors(v).iter().map(|&u| row[u]).sum::<f64>())
            .sum();
        total += quad;
    }
    Ok(0.5 * total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyValue {
    /// Direct sum of squared edge lengths.
    pub energy: f64,
    /// Whether every column is unit within the tolerance, i.e. whether
    /// `energy = 2·e(G) − 2·ρ` applies.
    pub unit: bool,
}

pub fn energy(g: &Graph, r: &Matrix, tol: f64) -> Result<EnergyValue> {
    check_columns(g, r)?;
    let energy = g
        .edges()
        .iter()
        .map(|e| (0..r.rows()).map(|k| (r.get(k, e.0) - r.get(k, e.1)).powi(2)).sum::<f64>())
        .sum();
    let unit = validate(g, r)?.residual_unit <= tol;
    Ok(EnergyValue { energy, unit })
}

/// Distance of a representation from being unit and barycentre-0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Validation {
    /// `max_v |‖r(v)‖² − 1|`.
    pub residual_unit: f64,
    /// `‖Σ_v r(v)‖²`, which is `J∙X` for `X = RᵀR`.
    pub residual_barycentre: f64,
}

impl Validation {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.residual_unit <= tol && self.residual_barycentre <= tol
    }
}

pub fn validate(g: &Graph, r: &Matrix) -> Result<Validation> {
    check_columns(g, r)?;
    let residual_unit = (0..r.cols()).map(|v| (column_dot(r, v, v) - 1.0).abs()).fold(0.0, f64::max);
    let residual_barycentre = (0..r.rows()).map(|k| r.row(k).iter().sum::<f64>().powi(2)).sum();
    Ok(Validation { residual_unit, residual_barycentre })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoReport {
    pub rho: f64,
    pub energy: f64,
    /// `λ₂·v(G)/2`, present for regular graphs.
    pub upper_bound: Option<f64>,
    pub residual_unit: f64,
    pub residual_barycentre: f64,
}

pub fn rho_report(g: &Graph, r: &Matrix) -> Result<RhoReport> {
    let rho = rho_edges(g, r)?;
    let Validation { residual_unit, residual_barycentre } = validate(g, r)?;
    let upper_bound = if g.is_regular() && g.n() >= 2 {
        let spectral = sym_eigen(&g.adjacency_matrix(), DEFAULT_EIGEN_TOL)?;
        spectral.second().map(|l2| l2 * g.n() as f64 / 2.0)
    } else {
        None
    };
    Ok(RhoReport {
        rho,
        energy: energy(g, r, f64::INFINITY)?.energy,
        upper_bound,
        residual_unit,
        residual_barycentre,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use std::f64::consts::PI;

    pub fn k2_antipodal() -> (Graph, Matrix) {
        (Graph::complete(2), Matrix::from_rows(&[vec![1.0, -1.0]]))
    }

    pub fn c4_square() -> (Graph, Matrix) {
        let g = Graph::cycle(4).unwrap();
        let r = Matrix::from_rows(&[vec![1.0, 0.0, -1.0, 0.0], vec![0.0, 1.0, 0.0, -1.0]]);
        (g, r)
    }

    pub fn k3_equilateral() -> (Graph, Matrix) {
        let angles = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];
        let r = Matrix::from_rows(&[angles.map(f64::cos).to_vec(), angles.map(f64::sin).to_vec()]);
        (Graph::complete(3), r)
    }
}
