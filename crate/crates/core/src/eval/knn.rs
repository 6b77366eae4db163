//! k-nearest-neighbor regression.

use super::features::{Distance, Features};
use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnnConfig {
    pub k: usize,
    pub distance: Distance,
}

impl KnnConfig {
    pub fn new(k: usize, distance: Distance) -> Self {
        Self { k, distance }
    }
}

impl Default for KnnConfig {
    fn default() -> Self {
        Self {
            k: 5,
            distance: Distance::Cosine,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Labeled {
    pub features: Features,
    pub y: f64,
}

/// Unweighted mean label of the `k` nearest training points. Ties in
/// distance go to the lower training index.
pub fn knn_predict(train: &[Labeled], query: &Features, cfg: &KnnConfig) -> Result<f64, EvalError> {
    check_k(train.len(), cfg.k)?;
    let mut ds = train
        .iter()
        .enumerate()
        .map(|(i, t)| Ok((query.distance(&t.features, cfg.distance)?, i)))
        .collect::<Result<Vec<(f64, usize)>, EvalError>>()?;
    let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    if cfg.k < ds.len() {
        ds.select_nth_unstable_by(cfg.k - 1, cmp);
    }
    Ok(ds[..cfg.k].iter().map(|&(_, i)| train[i].y).sum::<f64>() / cfg.k as f64)
}

fn check_k(n_train: usize, k: usize) -> Result<(), EvalError> {
    if k == 0 || k > n_train {
        return Err(EvalError::InvalidConfig(format!(
            "k = {k} must be in 1..={n_train} (training set size)"
        )));
    }
    Ok(())
}

/// Mean absolute error of [`knn_predict`] over `test`.
pub fn knn_mae(train: &[Labeled], test: &[Labeled], cfg: &KnnConfig) -> Result<f64, EvalError> {
    check_k(train.len(), cfg.k)?;
    if test.is_empty() {
        return Err(EvalError::Degenerate("empty test set".into()));
    }
    let mut total = 0.0;
    for t in test {
        total += (knn_predict(train, &t.features, cfg)? - t.y).abs();
    }
    Ok(total / test.len() as f64)
}
