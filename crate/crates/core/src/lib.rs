//! Training-free molecular fingerprints built from holographic reduced
//! representations and message passing over heavy-atom graphs, together with
//! a hashed circular fingerprint baseline and an evaluation harness
//! (edit-distance correlation, k-NN regression, GP Bayesian optimization).

pub mod data;
pub mod encoder;
pub mod eval;
mod hashing;
pub mod hdc;
pub mod molgraph;
pub mod morgan;

pub use encoder::{Encoder, EncoderConfig, Fingerprint, FingerprintRecord};
pub use hdc::{HyperVector, SeededGenerator};
pub use molgraph::{parse_smiles, AtomRecord, Bond, BondOrder, Element, MolGraph};
pub use morgan::{BitFingerprint, BitFingerprintRecord, MorganConfig};
