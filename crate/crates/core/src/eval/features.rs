//! Representations under evaluation and their distances.

use crate::encoder::Encoder;
use crate::hdc::cosine_slices;
use crate::molgraph::MolGraph;
use crate::morgan::{morgan_encode, tanimoto, BitFingerprint, MorganConfig};

use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    /// `1 - cos`
    Cosine,
    /// `1 - tanimoto`
    Tanimoto,
}

/// A molecule's representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Features {
    Dense(Vec<f64>),
    Bits(BitFingerprint),
}

impl Features {
    pub fn distance(&self, other: &Features, metric: Distance) -> Result<f64, EvalError> {
        match (self, other, metric) {
            (Features::Dense(a), Features::Dense(b), Distance::Cosine) => {
                if a.len() != b.len() {
                    return Err(EvalError::LengthMismatch(a.len(), b.len()));
                }
                Ok(1.0 - cosine_slices(a, b).value)
            }
            (Features::Bits(a), Features::Bits(b), Distance::Tanimoto) => Ok(1.0 - tanimoto(a, b)?),
            _ => Err(EvalError::InvalidConfig(format!(
                "{metric:?} distance does not apply to these features"
            ))),
        }
    }

    /// Real-valued view; bits map to `{0, 1}`.
    pub fn to_dense(&self) -> Vec<f64> {
        match self {
            Features::Dense(v) => v.clone(),
            Features::Bits(b) => b.to_dense(),
        }
    }
}

/// Fingerprint function under evaluation.
#[derive(Debug, Clone)]
pub enum Representation {
    Hdf(Encoder),
    Morgan(MorganConfig),
}

impl Representation {
    pub fn name(&self) -> &'static str {
        match self {
            Representation::Hdf(_) => "hdf",
            Representation::Morgan(_) => "morgan",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Representation::Hdf(e) => e.config().dim,
            Representation::Morgan(c) => c.nbits,
        }
    }

    /// Cosine for HDF, Tanimoto for Morgan.
    pub fn natural_distance(&self) -> Distance {
        match self {
            Representation::Hdf(_) => Distance::Cosine,
            Representation::Morgan(_) => Distance::Tanimoto,
        }
    }

    pub fn featurize(&self, g: &MolGraph) -> Result<Features, EvalError> {
        Ok(match self {
            Representation::Hdf(e) => Features::Dense(e.encode(g)?.vector.into_vec()),
            Representation::Morgan(c) => Features::Bits(morgan_encode(c, g)?),
        })
    }
}
