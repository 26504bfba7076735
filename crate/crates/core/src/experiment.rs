//! Sweeps over random regular graphs: short-cycle counts, `λ₂`, the
//! Nilli-vector certificate and the solver optimum, sample by sample.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::certificates::{random_regular_representation_with, pair_distance};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{sym_eigen, DEFAULT_EIGEN_TOL};
use crate::par::{map_indexed, Execution};
use crate::sdp::{solve_primal, SolverOptions};

/// Slack allowed in `certificate ≤ solver ≤ λ₂·n/2`.
pub const SANDWICH_TOL: f64 = 1e-6;

/// Expected number of `j`-cycles in a random `d`-regular graph as `n → ∞`:
/// `(d−1)^j / (2j)`.
pub fn expected_cycle_count(d: usize, j: usize) -> f64 {
    ((d as f64) - 1.0).powi(j as i32) / (2.0 * j as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub d: usize,
    pub count: usize,
    pub k: usize,
    /// Sample `i` uses seed `seed + i`.
    pub seed: u64,
    /// Longest cycle length counted; `None` means `2k+2`.
    pub max_cycle: Option<usize>,
    pub spectrum: bool,
    pub certificate: bool,
    pub solver: Option<SolverOptions>,
    pub execution: Execution,
}

impl ExperimentConfig {
    pub fn new(n: usize, d: usize, count: usize, k: usize, seed: u64) -> Self {
        ExperimentConfig {
            n,
            d,
            count,
            k,
            seed,
            max_cycle: None,
            spectrum: true,
            certificate: true,
            solver: Some(SolverOptions::default()),
            execution: Execution::default(),
        }
    }

    pub fn cycle_bound(&self) -> usize {
        self.max_cycle.unwrap_or_else(|| pair_distance(self.k)).max(3)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub index: usize,
    pub seed: u64,
    /// Cycle counts by length, for every length from 3 to the bound.
    pub cycles: BTreeMap<usize, u64>,
    pub lambda2: Option<f64>,
    pub upper_bound: Option<f64>,
    pub certificate_rho: Option<f64>,
    /// Why the certificate could not be built, if it failed.
    pub certificate_error: Option<String>,
    pub solver_rho: Option<f64>,
    pub solver_converged: Option<bool>,
    /// `certificate ≤ solver ≤ upper bound` over whichever values exist.
    pub sandwich_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: usize,
}

impl Estimate {
    pub fn from_values(values: &[f64]) -> Option<Estimate> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 { values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
        Some(Estimate { mean, standard_error: (var / n).sqrt(), samples: values.len() })
    }

    /// Distance from `target` in standard errors; infinite when the error
    /// is zero and the mean misses.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.standard_error
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleStatistic {
    pub length: usize,
    pub observed: Estimate,
    pub expected: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub cycles: Vec<CycleStatistic>,
    pub lambda2: Option<Estimate>,
    /// Solver `ρ` divided by `n/2`.
    pub solver_normalized: Option<Estimate>,
    pub certificate_normalized: Option<Estimate>,
    pub sandwich_violations: usize,
    pub certificate_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Experiment {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    pub samples: Vec<Sample>,
    pub summary: Summary,
}

fn run_sample(cfg: &ExperimentConfig, index: usize) -> Result<Sample> {
    let seed = cfg.seed.wrapping_add(index as u64);
    let g = Graph::random_regular(cfg.n, cfg.d, seed)?;
    let bound = cfg.cycle_bound();
    let census = g.count_cycles_upto(bound)?;
    let cycles = (3..=bound).map(|j| (j, census.count(j))).collect();

    let lambda2 = if cfg.spectrum {
        Some(sym_eigen(&g.adjacency_matrix(), DEFAULT_EIGEN_TOL)?.values[1])
    } else {
        None
    };
    let upper_bound = lambda2.map(|l| l * cfg.n as f64 / 2.0);

    let (certificate_rho, certificate_error) = if cfg.certificate {
        // Inner loops stay sequential; the samples already run in parallel.
        match random_regular_representation_with(&g, cfg.k, Execution::Sequential) {
            Ok(c) => (Some(c.rho), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };

    let (solver_rho, solver_converged) = match &cfg.solver {
        Some(opts) => {
            let opts = SolverOptions { seed, execution: Execution::Sequential, ..opts.clone() };
            let p = solve_primal(&g, &opts)?;
            (Some(p.objective), Some(p.converged))
        }
        None => (None, None),
    };

    let chain: Vec<f64> = [certificate_rho, solver_rho, upper_bound].into_iter().flatten().collect();
    let sandwich_ok = chain.windows(2).all(|w| w[0] <= w[1] + SANDWICH_TOL);
    Ok(Sample {
        index,
        seed,
        cycles,
        lambda2,
        upper_bound,
        certificate_rho,
        certificate_error,
        solver_rho,
        solver_converged,
        sandwich_ok,
    })
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment> {
    if cfg.count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    if cfg.n * cfg.d % 2 == 1 {
        return Err(Error::DegreeParity { n: cfg.n, d: cfg.d });
    }
    let samples = map_indexed(cfg.execution, cfg.count, |i| run_sample(cfg, i)).into_iter().collect::<Result<Vec<_>>>()?;

    let half_n = cfg.n as f64 / 2.0;
    let cycles = (3..=cfg.cycle_bound())
        .map(|j| {
            let values: Vec<f64> = samples.iter().map(|s| s.cycles[&j] as f64).collect();
            let observed = Estimate::from_values(&values).expect("count > 0");
            let expected = expected_cycle_count(cfg.d, j);
            CycleStatistic { length: j, z: observed.z_score(expected), observed, expected }
        })
        .collect();
    let collect = |f: &dyn Fn(&Sample) -> Option<f64>| {
        Estimate::from_values(&samples.iter().filter_map(f).collect::<Vec<_>>())
    };
    let summary = Summary {
        cycles,
        lambda2: collect(&|s| s.lambda2),
        solver_normalized: collect(&|s| s.solver_rho.map(|r| r / half_n)),
        certificate_normalized: collect(&|s| s.certificate_rho.map(|r| r / half_n)),
        sandwich_violations: samples.iter().filter(|s| !s.sandwich_ok).count(),
        certificate_failures: samples.iter().filter(|s| s.certificate_error.is_some()).count(),
    };
    Ok(Experiment { n: cfg.n, d: cfg.d, k: cfg.k, seed: cfg.seed, samples, summary })
}
