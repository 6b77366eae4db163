//! Hyperdimensional fingerprint encoder.
//!
//! Each atom starts as the binding of three dictionary vectors (element,
//! hydrogen count, heavy degree). `L` rounds of message passing replace every
//! state by the normalized sum of its bindings with the neighbor states.
//! Per-atom histories are summed and normalized, summed over atoms into a
//! structural readout, and finally merged with a fractional-power encoding of
//! graph size and diameter.
//!
//! [`Encoder::encode`] runs the whole pipeline in Fourier space (one inverse
//! transform per molecule). The free functions [`init_node`],
//! [`message_pass`], [`node_aggregate`], [`readout`] and [`global_attrs`]
//! are the same steps in real space; [`Encoder::encode_stepwise`] chains them
//! and is kept as a cross-check for the fast path.

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hdc::{self, spectral, FpeBase, HdcError, HyperVector, SeededGenerator};
use crate::molgraph::{AtomRecord, Element, MolGraph};

/// Largest hydrogen count and heavy degree covered by the dictionaries.
pub const MAX_DICT_INDEX: usize = 8;
pub const MIN_DIM: usize = 8;
pub const MAX_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EncodeError {
    #[error("invalid encoder configuration: {0}")]
    InvalidConfig(String),
    #[error("{dictionary} dictionary has no entry for {value} (max {MAX_DICT_INDEX})")]
    OutOfDictionary { dictionary: &'static str, value: usize },
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("molecule has no atoms")]
    EmptyMolecule,
    #[error(transparent)]
    Hdc(#[from] HdcError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncoderConfig {
    pub dim: usize,
    pub depth: usize,
    pub master_seed: u64,
    pub sigma_size: f64,
    pub sigma_diam: f64,
    pub include_global_attrs: bool,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        Self {
            dim: 1024,
            depth: 2,
            master_seed: 42,
            sigma_size: 1.0,
            sigma_diam: 1.0,
            include_global_attrs: true,
        }
    }
}

impl EncoderConfig {
    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), EncodeError> {
        if self.dim < MIN_DIM {
            return Err(EncodeError::InvalidConfig(format!(
                "dim {} is below the minimum of {MIN_DIM}",
                self.dim
            )));
        }
        if self.depth > MAX_DEPTH {
            return Err(EncodeError::InvalidConfig(format!(
                "depth {} exceeds the maximum of {MAX_DEPTH}",
                self.depth
            )));
        }
        for (name, sigma) in [("sigma_size", self.sigma_size), ("sigma_diam", self.sigma_diam)] {
            if !(sigma.is_finite() && sigma > 0.0) {
                return Err(EncodeError::InvalidConfig(format!("{name} must be positive, got {sigma}")));
            }
        }
        Ok(())
    }
}

/// The fixed random symbols of one encoder: element, hydrogen-count and
/// heavy-degree dictionaries plus the two FPE bases.
#[derive(Debug, Clone)]
pub struct DictionarySet {
    atom: Vec<HyperVector>,
    hs: Vec<HyperVector>,
    bonds: Vec<HyperVector>,
    fpe_size: FpeBase,
    fpe_diam: FpeBase,
    atom_spectra: Vec<Vec<Complex64>>,
    hs_spectra: Vec<Vec<Complex64>>,
    bonds_spectra: Vec<Vec<Complex64>>,
}

fn element_slot(e: Element) -> usize {
    Element::ALL.iter().position(|&x| x == e).unwrap_or(0)
}

impl DictionarySet {
    /// Every entry is drawn from its own labeled stream (`atom:<symbol>`,
    /// `hs:<n>`, `bonds:<n>`, `fpe:size`, `fpe:diam`) under the master seed.
    pub fn new(config: &EncoderConfig) -> Result<Self, EncodeError> {
        config.validate()?;
        let gen = SeededGenerator::new(config.master_seed);
        let d = config.dim;
        let atom = Element::ALL
            .iter()
            .map(|e| hdc::random_hv(&gen, &format!("atom:{}", e.symbol()), d))
            .collect::<Result<Vec<_>, _>>()?;
        let hs = (0..=MAX_DICT_INDEX)
            .map(|n| hdc::random_hv(&gen, &format!("hs:{n}"), d))
            .collect::<Result<Vec<_>, _>>()?;
        let bonds = (0..=MAX_DICT_INDEX)
            .map(|n| hdc::random_hv(&gen, &format!("bonds:{n}"), d))
            .collect::<Result<Vec<_>, _>>()?;
        let fpe_size = FpeBase::new(&gen, "fpe:size", d, config.sigma_size)?;
        let fpe_diam = FpeBase::new(&gen, "fpe:diam", d, config.sigma_diam)?;
        let spectra = |vs: &[HyperVector]| vs.iter().map(|v| spectral::forward(v.as_slice())).collect();
        Ok(Self {
            atom_spectra: spectra(&atom),
            hs_spectra: spectra(&hs),
            bonds_spectra: spectra(&bonds),
            atom,
            hs,
            bonds,
            fpe_size,
            fpe_diam,
        })
    }

    pub fn dim(&self) -> usize {
        self.fpe_size.dim()
    }

    pub fn atom(&self, element: Element) -> &HyperVector {
        &self.atom[element_slot(element)]
    }

    pub fn hs(&self, h_count: usize) -> Result<&HyperVector, EncodeError> {
        self.hs.get(h_count).ok_or(EncodeError::OutOfDictionary {
            dictionary: "hydrogen-count",
            value: h_count,
        })
    }

    pub fn bonds(&self, degree: usize) -> Result<&HyperVector, EncodeError> {
        self.bonds.get(degree).ok_or(EncodeError::OutOfDictionary {
            dictionary: "bond-count",
            value: degree,
        })
    }

    pub fn fpe_size(&self) -> &FpeBase {
        &self.fpe_size
    }

    pub fn fpe_diam(&self) -> &FpeBase {
        &self.fpe_diam
    }

    fn init_spectrum(&self, atom: &AtomRecord, degree: usize) -> Result<Vec<Complex64>, EncodeError> {
        let h = usize::from(atom.h_count);
        self.hs(h)?;
        self.bonds(degree)?;
        let a = &self.atom_spectra[element_slot(atom.element)];
        let hs = &self.hs_spectra[h];
        let b = &self.bonds_spectra[degree];
        Ok(a.iter().zip(hs).zip(b).map(|((x, y), z)| x * y * z).collect())
    }
}

/// Initial node state: `atom[e] (*) hs[h] (*) bonds[degree]`.
pub fn init_node(dicts: &DictionarySet, atom: &AtomRecord, degree: usize) -> Result<HyperVector, EncodeError> {
    let e = dicts.atom(atom.element);
    let h = dicts.hs(usize::from(atom.h_count))?;
    let b = dicts.bonds(degree)?;
    Ok(hdc::bind(&hdc::bind(e, h)?, b)?)
}

/// One synchronous round: `h_i <- normalize(sum_j h_i (*) h_j)` over the
/// neighbors `j` of `i`. Atoms without neighbors keep their state.
pub fn message_pass(g: &MolGraph, states: &[HyperVector]) -> Result<Vec<HyperVector>, EncodeError> {
    if states.len() != g.atom_count() {
        return Err(EncodeError::Shape {
            expected: g.atom_count(),
            got: states.len(),
        });
    }
    (0..g.atom_count())
        .map(|i| {
            let messages = g
                .neighbors(i)
                .map(|j| hdc::bind(&states[i], &states[j]))
                .collect::<Result<Vec<_>, _>>()?;
            if messages.is_empty() {
                Ok(states[i].clone())
            } else {
                Ok(hdc::normalize(&hdc::bundle(&messages)?))
            }
        })
        .collect()
}

/// `h_i = normalize(sum_l h_i^(l))` for each atom's history.
pub fn node_aggregate(histories: &[Vec<HyperVector>]) -> Result<Vec<HyperVector>, EncodeError> {
    let expected = histories.first().map_or(0, Vec::len);
    histories
        .iter()
        .map(|history| {
            if history.len() != expected || history.is_empty() {
                return Err(EncodeError::Shape {
                    expected: expected.max(1),
                    got: history.len(),
                });
            }
            Ok(hdc::normalize(&hdc::bundle(history)?))
        })
        .collect()
}

/// Structural readout: plain sum of node embeddings.
pub fn readout(nodes: &[HyperVector]) -> Result<HyperVector, EncodeError> {
    if nodes.is_empty() {
        return Err(EncodeError::EmptyMolecule);
    }
    Ok(hdc::bundle(nodes)?)
}

/// Bundle of the FPE encodings of heavy-atom count and diameter.
pub fn global_attrs(dicts: &DictionarySet, g: &MolGraph) -> Result<HyperVector, EncodeError> {
    let size = dicts.fpe_size.encode(g.atom_count() as f64)?;
    let diam = dicts.fpe_diam.encode(f64::from(g.diameter()))?;
    Ok(hdc::bundle(&[size, diam])?)
}

/// Unit-norm fingerprint plus the configuration that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Fingerprint {
    pub vector: HyperVector,
    pub config: EncoderConfig,
}

/// One JSON Lines record of the encode output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FingerprintRecord {
    pub smiles: String,
    pub dim: usize,
    pub depth: usize,
    pub seed: u64,
    pub fp: Vec<f64>,
}

impl Fingerprint {
    pub fn to_record(&self, smiles: &str) -> FingerprintRecord {
        FingerprintRecord {
            smiles: smiles.to_string(),
            dim: self.config.dim,
            depth: self.config.depth,
            seed: self.config.master_seed,
            fp: self.vector.as_slice().to_vec(),
        }
    }

    pub fn cosine(&self, other: &Fingerprint) -> Result<f64, HdcError> {
        hdc::cosine_sim(&self.vector, &other.vector)
    }
}

/// An encoder with its dictionaries built once; immutable and `Sync`.
#[derive(Debug, Clone)]
pub struct Encoder {
    config: EncoderConfig,
    dicts: DictionarySet,
}

impl Encoder {
    pub fn new(config: EncoderConfig) -> Result<Self, EncodeError> {
        let dicts = DictionarySet::new(&config)?;
        Ok(Self { config, dicts })
    }

    pub fn config(&self) -> &EncoderConfig {
        &self.config
    }

    pub fn dictionaries(&self) -> &DictionarySet {
        &self.dicts
    }

    /// Encodes `g` entirely in Fourier space. Binding is a product of
    /// spectra, so `sum_j h_i (*) h_j = h_i (*) sum_j h_j`, and norms come
    /// from Parseval's identity.
    pub fn encode(&self, g: &MolGraph) -> Result<Fingerprint, EncodeError> {
        let n = g.atom_count();
        if n == 0 {
            return Err(EncodeError::EmptyMolecule);
        }
        let d = self.config.dim;
        let mut states = (0..n)
            .map(|i| self.dicts.init_spectrum(&g.atoms()[i], g.degree(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut history = states.clone();
        let mut neighbor_sum = vec![Complex64::new(0.0, 0.0); d];

        for _ in 0..self.config.depth {
            let next: Vec<Vec<Complex64>> = (0..n)
                .map(|i| {
                    if g.degree(i) == 0 {
                        return states[i].clone();
                    }
                    neighbor_sum.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
                    for j in g.neighbors(i) {
                        for (acc, s) in neighbor_sum.iter_mut().zip(&states[j]) {
                            *acc += s;
                        }
                    }
                    let mut out: Vec<Complex64> =
                        states[i].iter().zip(&neighbor_sum).map(|(a, b)| a * b).collect();
                    spectral::normalize_in_place(&mut out);
                    out
                })
                .collect();
            for (h, s) in history.iter_mut().zip(&next) {
                for (acc, x) in h.iter_mut().zip(s) {
                    *acc += x;
                }
            }
            states = next;
        }

        let mut structural = vec![Complex64::new(0.0, 0.0); d];
        for mut h in history {
            spectral::normalize_in_place(&mut h);
            for (acc, x) in structural.iter_mut().zip(&h) {
                *acc += x;
            }
        }
        spectral::normalize_in_place(&mut structural);

        if self.config.include_global_attrs {
            let size = self.dicts.fpe_size.spectrum(n as f64);
            let diam = self.dicts.fpe_diam.spectrum(f64::from(g.diameter()));
            let mut attrs: Vec<Complex64> = size.iter().zip(&diam).map(|(a, b)| a + b).collect();
            spectral::normalize_in_place(&mut attrs);
            for (acc, x) in structural.iter_mut().zip(&attrs) {
                *acc += x;
            }
        }

        let vector = hdc::normalize(&spectral::inverse_real(structural)?);
        Ok(Fingerprint {
            vector,
            config: self.config,
        })
    }

    /// Same fingerprint as [`Encoder::encode`], computed step by step in real
    /// space with the public pipeline functions.
    pub fn encode_stepwise(&self, g: &MolGraph) -> Result<Fingerprint, EncodeError> {
        let n = g.atom_count();
        let mut states = (0..n)
            .map(|i| init_node(&self.dicts, &g.atoms()[i], g.degree(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut histories: Vec<Vec<HyperVector>> = states.iter().map(|s| vec![s.clone()]).collect();
        for _ in 0..self.config.depth {
            states = message_pass(g, &states)?;
            for (h, s) in histories.iter_mut().zip(&states) {
                h.push(s.clone());
            }
        }
        let nodes = node_aggregate(&histories)?;
        let r = hdc::normalize(&readout(&nodes)?);
        let merged = if self.config.include_global_attrs {
            let attrs = hdc::normalize(&global_attrs(&self.dicts, g)?);
            &r + &attrs
        } else {
            r
        };
        Ok(Fingerprint {
            vector: hdc::normalize(&merged),
            config: self.config,
        })
    }
}

/// Convenience wrapper that builds the dictionaries and encodes one graph.
pub fn encode(config: &EncoderConfig, g: &MolGraph) -> Result<Fingerprint, EncodeError> {
    Encoder::new(*config)?.encode(g)
}
