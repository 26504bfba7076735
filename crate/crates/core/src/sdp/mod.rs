//! Low-rank solver for
//!
//! ```text
//! maximize ½A∙X  subject to  X_vv = 1,  J∙X = 0,  X ⪰ 0
//! ```
//!
//! with `X = RᵀR`, plus dual certificates for regular graphs.
//!
//! Columns of `R` are updated one at a time to the exact maximizer of the
//! augmented Lagrangian
//!
//! ```text
//! L(R) = ρ(G, R) − ⟨μ, s⟩ − (σ/2)‖s‖²,   s = Σ_v r(v)
//! ```
//!
//! over the unit sphere, which is `normalize(Σ_{u∼v} r(u) − μ − σ(s − r(v)))`.
//! Between rounds the multiplier moves to `μ + σs` and σ grows while the
//! barycentre residual `‖s‖² = J∙X` is not shrinking fast enough.

mod dual;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::par::{map_indexed, sub_seed, Execution};
use crate::representation::{rho_edges, validate};

pub use dual::{
    certificate_from_multipliers, dual_certificate_regular, duality_gap, strict_feasible_point,
    upper_bound_regular, DualCertificate, CERTIFICATE_TOL,
};

/// Columns whose update direction is shorter than this are left in place.
const FLAT_DIRECTION: f64 = 1e-14;

/// σ grows unless the barycentre residual dropped below this fraction of
/// its previous value.
const SUFFICIENT_DECREASE: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    /// Rows of the factor; `None` means [`default_rank`].
    pub rank: Option<usize>,
    pub tol_feas: f64,
    /// Relative change of the Lagrangian below which a round stops.
    pub tol_obj: f64,
    pub max_outer: usize,
    /// Sweeps over all columns per round.
    pub max_inner: usize,
    pub penalty_init: f64,
    pub penalty_growth: f64,
    pub restarts: usize,
    pub seed: u64,
    /// How restarts are scheduled; the result does not depend on it.
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            rank: None,
            tol_feas: 1e-8,
            tol_obj: 1e-9,
            max_outer: 50,
            max_inner: 500,
            penalty_init: 1.0,
            penalty_growth: 2.0,
            restarts: 3,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

/// `⌈√(2n)⌉ + 1`.
pub fn default_rank(n: usize) -> usize {
    (2.0 * n as f64).sqrt().ceil() as usize + 1
}

impl SolverOptions {
    pub fn rank_for(&self, n: usize) -> usize {
        self.rank.unwrap_or_else(|| default_rank(n))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidOptions(msg.into()));
        if self.rank == Some(0) {
            return bad("rank must be at least 1");
        }
        if !(self.tol_feas > 0.0 && self.tol_obj > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.penalty_init.is_nan() || self.penalty_init <= 0.0 {
            return bad("initial penalty must be positive");
        }
        if self.penalty_growth.is_nan() || self.penalty_growth <= 1.0 {
            return bad("penalty growth must exceed 1");
        }
        if self.max_outer == 0 || self.max_inner == 0 || self.restarts == 0 {
            return bad("iteration caps and restart count must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimalSolution {
    /// The factor `R`; `X = RᵀR`.
    pub factor: Matrix,
    /// `ρ(G, R) = ½A∙X` after the final column normalization.
    pub objective: f64,
    pub residual_unit: f64,
    /// `J∙X`.
    pub residual_barycentre: f64,
    /// Coordinate sweeps performed by the winning restart.
    pub iterations: usize,
    pub converged: bool,
    pub rank: usize,
    /// Index of the winning restart.
    pub restart: usize,
    #[serde(skip)]
    pub(crate) fingerprint: u64,
}

/// Lagrangian values after every sweep, one list per round.
pub type SweepTrace = Vec<Vec<f64>>;

struct Run {
    cols: Vec<f64>,
    iterations: usize,
    converged: bool,
    barycentre: f64,
    trace: SweepTrace,
}

struct State<'a> {
    g: &'a Graph,
    rank: usize,
    /// Column `v` is `cols[v*rank..(v+1)*rank]`.
    cols: Vec<f64>,
    sum: Vec<f64>,
    mu: Vec<f64>,
    sigma: f64,
}

impl State<'_> {
    fn col(&self, v: usize) -> &[f64] {
        &self.cols[v * self.rank..(v + 1) * self.rank]
    }

    fn recompute_sum(&mut self) {
        let r = self.rank;
        self.sum.iter_mut().for_each(|x| *x = 0.0);
        for c in self.cols.chunks_exact(r) {
            self.sum.iter_mut().zip(c).for_each(|(s, x)| *s += x);
        }
    }

    fn barycentre(&self) -> f64 {
        self.sum.iter().map(|x| x * x).sum()
    }

    fn lagrangian(&self) -> f64 {
        let rho: f64 = self
            .g
            .edges()
            .iter()
            .map(|e| self.col(e.0).iter().zip(self.col(e.1)).map(|(a, b)| a * b).sum::<f64>())
            .sum();
        let lin: f64 = self.mu.iter().zip(&self.sum).map(|(a, b)| a * b).sum();
        rho - lin - 0.5 * self.sigma * self.barycentre()
    }

    fn sweep(&mut self, dir: &mut [f64]) {
        let r = self.rank;
        for v in 0..self.g.n() {
            for (k, d) in dir.iter_mut().enumerate() {
                *d = -self.mu[k] - self.sigma * (self.sum[k] - self.cols[v * r + k]);
            }
            for &u in self.g.neighbors(v) {
                dir.iter_mut().zip(&self.cols[u * r..(u + 1) * r]).for_each(|(d, x)| *d += x);
            }
            let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < FLAT_DIRECTION {
                continue;
            }
            for (k, d) in dir.iter().enumerate() {
                let new = d / norm;
                self.sum[k] += new - self.cols[v * r + k];
                self.cols[v * r + k] = new;
            }
        }
    }
}

fn random_columns(n: usize, rank: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols = Vec::with_capacity(n * rank);
    for _ in 0..n {
        loop {
            let c: Vec<f64> = (0..rank).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                cols.extend(c.iter().map(|x| x / norm));
                break;
            }
        }
    }
    cols
}

fn run(g: &Graph, rank: usize, opts: &SolverOptions, seed: u64, keep_trace: bool) -> Run {
    let n = g.n();
    let mut st = State {
        g,
        rank,
        cols: random_columns(n, rank, seed),
        sum: vec![0.0; rank],
        mu: vec![0.0; rank],
        sigma: opts.penalty_init,
    };
    st.recompute_sum();
    let mut dir = vec![0.0; rank];
    let mut iterations = 0;
    let mut trace = Vec::new();
    let mut converged = false;
    let mut previous_bary = f64::INFINITY;
    let mut barycentre = st.barycentre();

    for _ in 0..opts.max_outer {
        let mut round = Vec::new();
        let mut prev = st.lagrangian();
        let mut stalled = false;
        for _ in 0..opts.max_inner {
            st.sweep(&mut dir);
            iterations += 1;
            let cur = st.lagrangian();
            if keep_trace {
                round.push(cur);
            }
            if (cur - prev).abs() <= opts.tol_obj * cur.abs().max(1.0) {
                stalled = true;
                break;
            }
            prev = cur;
        }
        trace.push(round);
        // Incremental updates drift; start each round from an exact sum.
        st.recompute_sum();
        barycentre = st.barycentre();
        if stalled && barycentre <= opts.tol_feas * n as f64 {
            converged = true;
            break;
        }
        for (m, s) in st.mu.iter_mut().zip(&st.sum) {
            *m += st.sigma * s;
        }
        if barycentre > SUFFICIENT_DECREASE * previous_bary {
            st.sigma *= opts.penalty_growth;
        }
        previous_bary = barycentre;
    }
    Run { cols: st.cols, iterations, converged, barycentre, trace }
}

fn to_factor(cols: &[f64], n: usize, rank: usize) -> Matrix {
    let mut m = Matrix::zeros(rank, n);
    for v in 0..n {
        let c = &cols[v * rank..(v + 1) * rank];
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (k, x) in c.iter().enumerate() {
            m.set(k, v, x / norm);
        }
    }
    m
}

pub fn solve_primal(g: &Graph, opts: &SolverOptions) -> Result<PrimalSolution> {
    solve(g, opts, false).map(|(s, _)| s)
}

/// As [`solve_primal`], also returning the Lagrangian after every sweep of
/// the winning restart.
pub fn solve_primal_traced(g: &Graph, opts: &SolverOptions) -> Result<(PrimalSolution, SweepTrace)> {
    solve(g, opts, true)
}

fn solve(g: &Graph, opts: &SolverOptions, keep_trace: bool) -> Result<(PrimalSolution, SweepTrace)> {
    if g.n() < 2 {
        return Err(Error::TrivialGraph);
    }
    opts.validate()?;
    let n = g.n();
    let rank = opts.rank_for(n);
    let runs = map_indexed(opts.execution, opts.restarts, |i| {
        let run = run(g, rank, opts, sub_seed(opts.seed, i as u64), keep_trace);
        let factor = to_factor(&run.cols, n, rank);
        let objective = rho_edges(g, &factor).expect("factor has one column per vertex");
        (run, factor, objective)
    });

    // Converged runs first, then larger objective, then smaller residual.
    let mut best = 0;
    for i in 1..runs.len() {
        let (a, _, oa) = &runs[i];
        let (b, _, ob) = &runs[best];
        let tie = (oa - ob).abs() <= 1e-12 * (1.0 + ob.abs());
        let better = (a.converged && !b.converged)
            || (a.converged == b.converged && ((!tie && oa > ob) || (tie && a.barycentre < b.barycentre)));
        if better {
            best = i;
        }
    }
    let (run, factor, objective) = runs.into_iter().nth(best).expect("at least one restart");
    let v = validate(g, &factor)?;
    let solution = PrimalSolution {
        objective,
        residual_unit: v.residual_unit,
        residual_barycentre: v.residual_barycentre,
        iterations: run.iterations,
        converged: run.converged,
        rank,
        restart: best,
        fingerprint: g.fingerprint(),
        factor,
    };
    Ok((solution, run.trace))
}

/// Solution summary with the optional regular-graph certificate attached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionReport {
    pub objective: f64,
    pub upper_bound: Option<f64>,
    pub gap: Option<f64>,
    pub residual_unit: f64,
    pub residual_barycentre: f64,
    pub rank: usize,
    pub iterations: usize,
    pub converged: bool,
    pub factor: Matrix,
}

impl SolutionReport {
    pub fn new(p: &PrimalSolution, d: Option<&DualCertificate>) -> Result<Self> {
        let gap = d.map(|d| duality_gap(p, d)).transpose()?;
        Ok(SolutionReport {
            objective: p.objective,
            upper_bound: d.map(|d| d.dual_objective),
            gap,
            residual_unit: p.residual_unit,
            residual_barycentre: p.residual_barycentre,
            rank: p.rank,
            iterations: p.iterations,
            converged: p.converged,
            factor: p.factor.clone(),
        })
    }
}

#[cfg(test)]
mod tests;
