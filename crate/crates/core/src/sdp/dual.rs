use serde::Serialize;

use super::PrimalSolution;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{sym_eigen, SymMatrix, DEFAULT_EIGEN_TOL};

/// Slack allowed on the smallest eigenvalue of `M` when validating.
pub const CERTIFICATE_TOL: f64 = 1e-8;

/// Multipliers `(y, y₀)` with `M = −½A + diag(y) + y₀J`. When `M ⪰ 0`,
/// `Σ y_v` bounds every feasible primal objective from above.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualCertificate {
    pub y: Vec<f64>,
    pub y0: f64,
    pub dual_objective: f64,
    pub min_eig_m: f64,
    #[serde(skip)]
    pub(crate) n: usize,
    #[serde(skip)]
    pub(crate) fingerprint: u64,
}

impl DualCertificate {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.min_eig_m >= -tol
    }
}

/// Builds `M` for the given multipliers and records its smallest eigenvalue.
/// No validity check is made.
pub fn certificate_from_multipliers(g: &Graph, y: &[f64], y0: f64) -> Result<DualCertificate> {
    let n = g.n();
    if y.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: y.len() });
    }
    let mut m = g.adjacency_matrix().scale(-0.5).add_scaled(y0, &SymMatrix::ones(n))?;
    m.add_diagonal(y);
    let spectral = sym_eigen(&m, DEFAULT_EIGEN_TOL)?;
    Ok(DualCertificate {
        y: y.to_vec(),
        y0,
        dual_objective: y.iter().sum(),
        min_eig_m: spectral.values.last().copied().unwrap_or(0.0),
        n,
        fingerprint: g.fingerprint(),
    })
}

/// `(λ₁, λ₂)` of a regular connected graph.
fn top_two(g: &Graph) -> Result<(f64, f64)> {
    if !g.is_regular() {
        return Err(Error::NotRegular);
    }
    if g.n() < 2 {
        return Err(Error::TrivialGraph);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let spectral = sym_eigen(&g.adjacency_matrix(), DEFAULT_EIGEN_TOL)?;
    Ok((spectral.values[0], spectral.values[1]))
}

/// `y_v = λ₂/2`, `y₀ = (λ₁ − λ₂)/(2n)`, with dual objective `λ₂·n/2`.
///
/// On `𝟏`, `M` has eigenvalue `(λ₂ − λ₁)/2 + n·y₀ = 0`; on the other
/// eigenvectors of `A` it has `(λ₂ − λᵢ)/2 ≥ 0`.
pub fn dual_certificate_regular(g: &Graph) -> Result<DualCertificate> {
    let (l1, l2) = top_two(g)?;
    let n = g.n() as f64;
    let cert = certificate_from_multipliers(g, &vec![l2 / 2.0; g.n()], (l1 - l2) / (2.0 * n))?;
    if !cert.is_valid(CERTIFICATE_TOL) {
        return Err(Error::CertificateInvalid { min_eig: cert.min_eig_m });
    }
    Ok(cert)
}

/// `y_v = λ₂/2 + 1`, `y₀ = (λ₁ − λ₂)/(2n)`, for which every eigenvalue of
/// `M` is at least 1.
pub fn strict_feasible_point(g: &Graph) -> Result<DualCertificate> {
    let (l1, l2) = top_two(g)?;
    let n = g.n() as f64;
    let cert = certificate_from_multipliers(g, &vec![l2 / 2.0 + 1.0; g.n()], (l1 - l2) / (2.0 * n))?;
    if cert.min_eig_m < 1.0 - CERTIFICATE_TOL {
        return Err(Error::CertificateInvalid { min_eig: cert.min_eig_m });
    }
    Ok(cert)
}

/// Dual minus primal objective.
pub fn duality_gap(p: &PrimalSolution, d: &DualCertificate) -> Result<f64> {
    if p.fingerprint != d.fingerprint {
        return Err(Error::GraphMismatch { primal: p.factor.cols(), dual: d.n });
    }
    Ok(d.dual_objective - p.objective)
}

/// `λ₂·v(G)/2`, an upper bound on `ρ` for regular graphs. For disconnected
/// graphs `λ₂ = λ₁` and the bound is `d·n/2`.
pub fn upper_bound_regular(g: &Graph) -> Result<f64> {
    if !g.is_regular() {
        return Err(Error::NotRegular);
    }
    if g.n() < 2 {
        return Err(Error::TrivialGraph);
    }
    let spectral = sym_eigen(&g.adjacency_matrix(), DEFAULT_EIGEN_TOL)?;
    Ok(spectral.values[1] * g.n() as f64 / 2.0)
}
