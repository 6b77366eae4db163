//! Evaluation harness: perturbation ladders with edit-distance labels,
//! correlation statistics, k-NN regression, Gaussian-process Bayesian
//! optimization, and a random molecule generator for desk-scale corpora.

pub mod bo;
pub mod corpus;
pub mod features;
pub mod ged;
pub mod gp;
pub mod knn;
pub mod perturb;
pub mod stats;

use thiserror::Error;

use crate::encoder::EncodeError;
use crate::morgan::MorganError;

pub use bo::{bo_run, expected_improvement, Acquisition, BoConfig, BoTrace, Lengthscale};
pub use corpus::{generate_corpus, GeneratorConfig};
pub use features::{Distance, Features, Representation};
pub use ged::{build_ged_dataset, ged_correlation, ged_correlation_with, GedDataset, GedLadderConfig, GedPair};
pub use gp::{gp_fit_predict, GpPrediction};
pub use knn::{knn_mae, KnnConfig, Labeled};
pub use perturb::perturb_all;
pub use stats::{median, pearson, sign_test, spearman};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Morgan(#[from] MorganError),
}
