//! Monte Carlo check that a random 2-dimensional projection shrinks squared
//! lengths in `ℝⁿ` by `2/n` on average.

use std::f64::consts::FRAC_PI_2;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::random_projection;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::par::{map_indexed, sub_seed, Execution};

const CHUNK: usize = 1024;
const ANGLE_BINS: usize = 18;

/// One bin of the histogram of the angle between the segment and the
/// projection plane, as densities on `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleBin {
    pub lo: f64,
    pub hi: f64,
    pub empirical: f64,
    /// Bin average of `(n−2)·cos α·sin^{n−3} α`.
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionCheck {
    pub n: usize,
    pub x: f64,
    pub trials: usize,
    pub empirical_mean: f64,
    /// `(2/n)·x²`.
    pub predicted: f64,
    pub standard_error: f64,
    pub angles: Vec<AngleBin>,
}

impl ProjectionCheck {
    pub fn deviation(&self) -> f64 {
        (self.empirical_mean - self.predicted).abs()
    }

    pub fn within_standard_errors(&self, sigmas: f64) -> bool {
        self.deviation() <= sigmas * self.standard_error
    }

    pub fn relative_error(&self) -> f64 {
        if self.predicted == 0.0 {
            self.deviation()
        } else {
            self.deviation() / self.predicted
        }
    }
}

struct Partial {
    sum: f64,
    sum_sq: f64,
    bins: [u64; ANGLE_BINS],
}

pub fn projection_expectation_check(n: usize, x: f64, trials: usize, seed: u64) -> Result<ProjectionCheck> {
    projection_expectation_check_with(n, x, trials, seed, Execution::default())
}

/// Trials are split into fixed chunks with their own seed streams and summed
/// in chunk order, so the result does not depend on `exec`.
pub fn projection_expectation_check_with(
    n: usize,
    x: f64,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<ProjectionCheck> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n });
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidArgument(format!("segment length must be finite and non-negative, got {x}")));
    }
    let mut segment = Matrix::zeros(n, 2);
    segment.set(0, 1, x);
    let bin_width = FRAC_PI_2 / ANGLE_BINS as f64;

    let chunks = trials.div_ceil(CHUNK);
    let partials = map_indexed(exec, chunks, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, c as u64));
        let count = CHUNK.min(trials - c * CHUNK);
        let mut p = Partial { sum: 0.0, sum_sq: 0.0, bins: [0; ANGLE_BINS] };
        for _ in 0..count {
            let proj = random_projection(&segment, 2, rng.next_u64());
            let len_sq = (0..2).map(|k| (proj.get(k, 1) - proj.get(k, 0)).powi(2)).sum::<f64>();
            p.sum += len_sq;
            p.sum_sq += len_sq * len_sq;
            if x > 0.0 {
                let alpha = (len_sq.sqrt() / x).min(1.0).acos();
                let bin = ((alpha / bin_width) as usize).min(ANGLE_BINS - 1);
                p.bins[bin] += 1;
            }
        }
        p
    });

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut bins = [0u64; ANGLE_BINS];
    for p in &partials {
        sum += p.sum;
        sum_sq += p.sum_sq;
        bins.iter_mut().zip(p.bins).for_each(|(b, c)| *b += c);
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = if trials > 1 { ((sum_sq - t * mean * mean) / (t - 1.0)).max(0.0) } else { 0.0 };

    // The angle has CDF sin^{n−2} α on [0, π/2].
    let cdf = |a: f64| a.sin().powi(n as i32 - 2);
    let angles = (0..ANGLE_BINS)
        .map(|i| {
            let lo = i as f64 * bin_width;
            let hi = lo + bin_width;
            AngleBin {
                lo,
                hi,
                empirical: bins[i] as f64 / (t * bin_width),
                predicted: (cdf(hi) - cdf(lo)) / bin_width,
            }
        })
        .collect();

    Ok(ProjectionCheck {
        n,
        x,
        trials,
        empirical_mean: mean,
        predicted: 2.0 * x * x / n as f64,
        standard_error: (var / t).sqrt(),
        angles,
    })
}
