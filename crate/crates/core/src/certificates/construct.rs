use std::collections::BTreeSet;

use serde::Serialize;

use super::{bad_edges, edge_pairing, maximum_edge_pairing, nilli_identities, nilli_vector, weight_repair};
use super::{pair_distance, EdgePairing, WeightProfile};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::linalg::Matrix;
use crate::par::{map_indexed, Execution};
use crate::representation::{rho_edges, validate};

/// Largest column deviation from unit norm tolerated in a constructed matrix.
const UNIT_TOL: f64 = 1e-9;

const ROUNDOFF: f64 = 1e-12;

/// `(n/2)·(2√(d−1) − (2√(d−1)−1)/(k+1))`.
pub fn girth_lower_bound(n: usize, d: usize, k: usize) -> f64 {
    let root = 2.0 * ((d as f64) - 1.0).sqrt();
    n as f64 / 2.0 * (root - (root - 1.0) / (k as f64 + 1.0))
}

/// Smallest `k` with `(2√(d−1) − 1)/(k+1) ≤ ε/2`.
pub fn choose_k(d: usize, epsilon: f64) -> Result<usize> {
    if epsilon.is_nan() || epsilon <= 0.0 || d < 2 {
        return Err(Error::InvalidArgument(format!("need d >= 2 and epsilon > 0, got d = {d}, epsilon = {epsilon}")));
    }
    let excess = 2.0 * ((d as f64) - 1.0).sqrt() - 1.0;
    let k = (2.0 * excess / epsilon - 1.0).ceil().max(0.0) as usize;
    // Guard against the ceiling landing one short through roundoff.
    Ok(if excess / (k as f64 + 1.0) > epsilon / 2.0 { k + 1 } else { k })
}

/// `√(2d(k+1))`.
fn scale(d: usize, k: usize) -> f64 {
    (2.0 * d as f64 * (k as f64 + 1.0)).sqrt()
}

/// Nilli rows for the given pairs, divided by `t`, with their `wAwᵀ`.
fn nilli_rows(g: &Graph, pairs: &[(Edge, Edge)], k: usize, exec: Execution) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    let t = scale(d, k);
    let built = map_indexed(exec, pairs.len(), |i| {
        let (e, ebar) = pairs[i];
        let w = nilli_vector(g, e, ebar, k)?;
        let quad = nilli_identities(g, &w).quad;
        let row: Vec<f64> = w.to_dense(g.n()).iter().map(|x| x / t).collect();
        Ok((row, quad))
    });
    let mut rows = Vec::with_capacity(pairs.len());
    let mut quads = Vec::with_capacity(pairs.len());
    for item in built {
        let (row, quad) = item?;
        rows.push(row);
        quads.push(quad);
    }
    Ok((rows, quads))
}

fn check_unit(m: &Matrix) -> Result<()> {
    for v in 0..m.cols() {
        let norm_sq: f64 = (0..m.rows()).map(|k| m.get(k, v).powi(2)).sum();
        if (norm_sq - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit { vertex: v, norm_sq });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GirthRepresentation {
    /// One row `w_i/t` per pair.
    pub matrix: Matrix,
    pub rho: f64,
    /// `(n/2)(2√(d−1) − (2√(d−1)−1)/(k+1))`.
    pub closed_form: f64,
    pub pairing: EdgePairing,
}

/// Unit barycentre-0 representation from a perfect edge pairing, for a
/// regular graph of girth above `2k+2`.
pub fn girth_representation(g: &Graph, k: usize) -> Result<GirthRepresentation> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if let Some(girth) = g.girth() {
        if girth <= pair_distance(k) {
            return Err(Error::GirthTooSmall { girth, required: pair_distance(k) });
        }
    }
    let pairing = edge_pairing(g, k)?;
    let (rows, _) = nilli_rows(g, &pairing.pairs, k, Execution::default())?;
    let matrix = Matrix::from_rows(&rows);
    check_unit(&matrix)?;
    Ok(GirthRepresentation {
        rho: rho_edges(g, &matrix)?,
        closed_form: girth_lower_bound(g.n(), d, k),
        matrix,
        pairing,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomRegularCertificate {
    /// Nilli rows for the good pairs followed by the repair rows.
    pub matrix: Matrix,
    /// Exact `ρ` of `matrix`.
    pub rho: f64,
    pub k: usize,
    /// Pairs found by the maximum matching, out of `e(G)`.
    pub paired: usize,
    pub perfect_pairing: bool,
    /// Pairs with neither edge bad; these give the Nilli rows.
    pub good_pairs: usize,
    pub bad_edges: usize,
    pub repair_rows: usize,
    /// `½ Σ_{i∈I} w_i A w_iᵀ / t²`, the Nilli rows' share of `ρ`.
    pub nilli_rho: f64,
    /// Whether some repair row joins two adjacent vertices, in which case
    /// `rho` falls below `nilli_rho`.
    pub repair_touches_edge: bool,
    pub residual_unit: f64,
    pub residual_barycentre: f64,
}

/// Representation from Nilli rows on good edge pairs, completed to unit
/// columns with repair rows `(+g(uv) at u, −g(uv) at v)`.
///
/// A perfect pairing may not exist at small sizes; the construction then
/// uses a maximum matching and treats unmatched edges like bad ones.
pub fn random_regular_representation(g: &Graph, k: usize) -> Result<RandomRegularCertificate> {
    random_regular_representation_with(g, k, Execution::default())
}

pub fn random_regular_representation_with(g: &Graph, k: usize, exec: Execution) -> Result<RandomRegularCertificate> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    let pairing = maximum_edge_pairing(g, k, exec);
    let bad: BTreeSet<_> = bad_edges(g, k)?.into_iter().collect();
    let good: Vec<_> =
        pairing.pairs.iter().copied().filter(|(e, ebar)| !bad.contains(e) && !bad.contains(ebar)).collect();
    let (mut rows, quads) = nilli_rows(g, &good, k, exec)?;
    let t_sq = scale(d, k).powi(2);
    let nilli_rho = quads.iter().sum::<f64>() / (2.0 * t_sq);

    let n = g.n();
    let mut deficiency = vec![1.0; n];
    for row in &rows {
        for (f, x) in deficiency.iter_mut().zip(row) {
            *f -= x * x;
        }
    }
    if let Some(v) = deficiency.iter().position(|&f| f < -UNIT_TOL) {
        return Err(Error::NotUnit { vertex: v, norm_sq: 1.0 - deficiency[v] });
    }
    // Roundoff-level deficiencies would only add noise rows.
    deficiency.iter_mut().filter(|f| f.abs() <= ROUNDOFF).for_each(|f| *f = 0.0);
    let repair = weight_repair(&WeightProfile::new(deficiency)?);
    let mut repair_touches_edge = false;
    for &(u, v, w) in &repair.weights {
        let mut row = vec![0.0; n];
        row[u] = w;
        row[v] = -w;
        rows.push(row);
        repair_touches_edge |= g.has_edge(u, v);
    }
    let matrix = if rows.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(&rows) };
    let check = validate(g, &matrix)?;
    Ok(RandomRegularCertificate {
        rho: rho_edges(g, &matrix)?,
        k,
        paired: pairing.pairs.len(),
        perfect_pairing: pairing.is_perfect(),
        good_pairs: good.len(),
        bad_edges: bad.len(),
        repair_rows: repair.weights.len(),
        nilli_rho,
        repair_touches_edge,
        residual_unit: check.residual_unit,
        residual_barycentre: check.residual_barycentre,
        matrix,
    })
}

/// Summary of a random-regular certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub k: usize,
    pub paired: usize,
    pub good_pairs: usize,
    pub bad_edges: usize,
    pub rho_certificate: f64,
    /// [`girth_lower_bound`] at this `(n, d, k)`.
    pub girth_bound: f64,
    pub upper_bound: Option<f64>,
}

impl RandomRegularCertificate {
    pub fn report(&self, g: &Graph, upper_bound: Option<f64>) -> CertificateReport {
        CertificateReport {
            k: self.k,
            paired: self.paired,
            good_pairs: self.good_pairs,
            bad_edges: self.bad_edges,
            rho_certificate: self.rho,
            girth_bound: girth_lower_bound(g.n(), g.regular_degree().unwrap_or(0), self.k),
            upper_bound,
        }
    }
}
