//! Bayesian optimization over a fixed candidate library.
//!
//! The objective of a molecule is `|y - target|`, minimized. Each round fits
//! the GP to the observed objectives (standardized to zero mean and unit
//! variance), scores every unobserved candidate by expected improvement and
//! queries the best one. The random baseline replaces the acquisition by a
//! uniform choice and shares the initial design, so the two can be compared
//! pairwise.

use rand::seq::{index, IteratorRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use super::gp::{sq_dist, IncrementalGp};
use super::stats::median;
use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lengthscale {
    /// Median pairwise Euclidean distance over the initial design.
    MedianHeuristic,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoConfig {
    pub init_points: usize,
    pub rounds: usize,
    pub lengthscale: Lengthscale,
    pub noise_variance: f64,
    pub target_value: f64,
    pub seed: u64,
}

impl BoConfig {
    pub fn new(target_value: f64, seed: u64) -> Self {
        Self {
            init_points: 10,
            rounds: 150,
            lengthscale: Lengthscale::MedianHeuristic,
            noise_variance: 1e-4,
            target_value,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        if self.init_points == 0 || self.rounds == 0 {
            return Err(EvalError::InvalidConfig("init_points and rounds must be positive".into()));
        }
        if !(self.noise_variance > 0.0) {
            return Err(EvalError::InvalidConfig("noise_variance must be positive".into()));
        }
        if let Lengthscale::Fixed(l) = self.lengthscale {
            if !(l > 0.0 && l.is_finite()) {
                return Err(EvalError::InvalidConfig(format!("lengthscale {l} must be positive")));
            }
        }
        if !self.target_value.is_finite() {
            return Err(EvalError::InvalidConfig("target_value must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acquisition {
    ExpectedImprovement,
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoTrace {
    /// Best objective after each round's query.
    pub best_distance_per_round: Vec<f64>,
    /// Sum of `best_distance_per_round`.
    pub auc: f64,
    /// Set when the library ran out before all rounds were played.
    pub truncated: bool,
    /// Library indices in query order, initial design first.
    pub queried: Vec<usize>,
}

/// Expected improvement below `best` for a Gaussian posterior.
pub fn expected_improvement(mean: f64, variance: f64, best: f64) -> f64 {
    let gap = best - mean;
    if variance <= 0.0 {
        return gap.max(0.0);
    }
    let sd = variance.sqrt();
    let z = gap / sd;
    let n = Normal::standard();
    (gap * n.cdf(z) + sd * n.pdf(z)).max(0.0)
}

fn median_pairwise_distance(points: &[&[f64]]) -> f64 {
    let mut ds = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            ds.push(sq_dist(points[i], points[j]).sqrt());
        }
    }
    match median(&ds) {
        Some(m) if m > 0.0 => m,
        _ => 1.0,
    }
}

fn standardize(values: &[f64]) -> Vec<f64> {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let sd = if var > 0.0 { var.sqrt() } else { 1.0 };
    values.iter().map(|v| (v - mean) / sd).collect()
}

/// Runs one optimization over `library` (feature vectors) with labels
/// `values`.
pub fn bo_run(library: &[Vec<f64>], values: &[f64], cfg: &BoConfig, acquisition: Acquisition) -> Result<BoTrace, EvalError> {
    cfg.validate()?;
    if library.len() != values.len() {
        return Err(EvalError::LengthMismatch(library.len(), values.len()));
    }
    if library.len() < cfg.init_points {
        return Err(EvalError::InvalidConfig(format!(
            "library of {} is smaller than the {} initial points",
            library.len(),
            cfg.init_points
        )));
    }
    let objective: Vec<f64> = values.iter().map(|y| (y - cfg.target_value).abs()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let init = index::sample(&mut rng, library.len(), cfg.init_points).into_vec();

    let lengthscale = match cfg.lengthscale {
        Lengthscale::Fixed(l) => l,
        Lengthscale::MedianHeuristic => {
            let pts: Vec<&[f64]> = init.iter().map(|&i| library[i].as_slice()).collect();
            median_pairwise_distance(&pts)
        }
    };
    let mut gp = IncrementalGp::new(library, lengthscale, cfg.noise_variance)?;
    let mut observed = vec![false; library.len()];
    let mut best = f64::INFINITY;
    for &i in &init {
        if acquisition == Acquisition::ExpectedImprovement {
            gp.observe(i)?;
        }
        observed[i] = true;
        best = best.min(objective[i]);
    }
    let mut queried = init;
    let mut trace = Vec::with_capacity(cfg.rounds);
    let mut truncated = false;
    for _ in 0..cfg.rounds {
        let pick = match acquisition {
            Acquisition::Random => (0..library.len()).filter(|&i| !observed[i]).choose(&mut rng),
            Acquisition::ExpectedImprovement => {
                let obs_obj: Vec<f64> = gp.observed().iter().map(|&i| objective[i]).collect();
                let z = standardize(&obs_obj);
                let z_best = z.iter().copied().fold(f64::INFINITY, f64::min);
                let cands: Vec<usize> = (0..library.len()).filter(|&i| !observed[i]).collect();
                let pred = gp.predict_many(&z, &cands)?;
                let mut pick: Option<(usize, f64)> = None;
                for (k, &c) in cands.iter().enumerate() {
                    let ei = expected_improvement(pred.means[k], pred.variances[k], z_best);
                    if !ei.is_finite() {
                        return Err(EvalError::Numeric(format!("non-finite acquisition at candidate {c}")));
                    }
                    // strict comparison keeps the lowest index on ties
                    if pick.is_none_or(|(_, e)| ei > e) {
                        pick = Some((c, ei));
                    }
                }
                pick.map(|(c, _)| c)
            }
        };
        let Some(c) = pick else {
            truncated = true;
            break;
        };
        if acquisition == Acquisition::ExpectedImprovement {
            gp.observe(c)?;
        }
        observed[c] = true;
        queried.push(c);
        best = best.min(objective[c]);
        trace.push(best);
    }
    Ok(BoTrace {
        auc: trace.iter().sum(),
        best_distance_per_round: trace,
        truncated,
        queried,
    })
}
