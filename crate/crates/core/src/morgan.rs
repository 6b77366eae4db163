//! Morgan-lite: a hashed circular fingerprint.
//!
//! Atom identifiers start from a hash of local invariants and are rehashed
//! `radius` times from the sorted `(bond order, neighbor identifier)` list.
//! Every identifier of every round sets bit `id mod nbits`; duplicate
//! environments are not pruned.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hashing::fnv1a_words;
use crate::molgraph::{AtomRecord, MolGraph};

pub const MIN_BITS: usize = 8;
pub const MAX_RADIUS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorganError {
    #[error("invalid Morgan configuration: {0}")]
    InvalidConfig(String),
    #[error("fingerprint length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorganConfig {
    pub radius: usize,
    pub nbits: usize,
}

impl Default for MorganConfig {
    fn default() -> Self {
        Self { radius: 2, nbits: 1024 }
    }
}

impl MorganConfig {
    pub fn new(radius: usize, nbits: usize) -> Result<Self, MorganError> {
        let cfg = Self { radius, nbits };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), MorganError> {
        if self.nbits < MIN_BITS {
            return Err(MorganError::InvalidConfig(format!(
                "nbits {} is below the minimum of {MIN_BITS}",
                self.nbits
            )));
        }
        if self.radius > MAX_RADIUS {
            return Err(MorganError::InvalidConfig(format!(
                "radius {} exceeds the maximum of {MAX_RADIUS}",
                self.radius
            )));
        }
        Ok(())
    }
}

/// Fixed-length bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitFingerprint {
    words: Vec<u64>,
    nbits: usize,
}

impl BitFingerprint {
    pub fn new(nbits: usize) -> Self {
        Self {
            words: vec![0; nbits.div_ceil(64)],
            nbits,
        }
    }

    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn set(&mut self, bit: usize) {
        assert!(bit < self.nbits, "bit {bit} out of range");
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    pub fn get(&self, bit: usize) -> bool {
        bit < self.nbits && (self.words[bit / 64] >> (bit % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.nbits).filter(|&b| self.get(b)).collect()
    }

    pub fn from_ones(nbits: usize, ones: &[usize]) -> Self {
        let mut fp = Self::new(nbits);
        for &b in ones {
            fp.set(b);
        }
        fp
    }

    /// The bits as a `{0, 1}` real vector.
    pub fn to_dense(&self) -> Vec<f64> {
        (0..self.nbits).map(|b| if self.get(b) { 1.0 } else { 0.0 }).collect()
    }

    fn check_len(&self, other: &Self) -> Result<(), MorganError> {
        if self.nbits != other.nbits {
            return Err(MorganError::LengthMismatch(self.nbits, other.nbits));
        }
        Ok(())
    }
}

/// One JSON Lines record of the Morgan encode output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitFingerprintRecord {
    pub smiles: String,
    pub nbits: usize,
    pub radius: usize,
    pub bits: Vec<usize>,
}

impl BitFingerprintRecord {
    pub fn new(smiles: &str, config: &MorganConfig, fp: &BitFingerprint) -> Self {
        Self {
            smiles: smiles.to_string(),
            nbits: config.nbits,
            radius: config.radius,
            bits: fp.ones(),
        }
    }
}

/// Identifier from `(atomic number, heavy degree, h count, formal charge,
/// isotope)`; the isotope is always 0.
pub fn atom_invariant(atom: &AtomRecord, degree: usize) -> u64 {
    fnv1a_words(&[
        u64::from(atom.element.atomic_number()),
        degree as u64,
        u64::from(atom.h_count),
        atom.formal_charge as i64 as u64,
        0,
    ])
}

/// All identifiers generated for `g`, round by round (`radius + 1` rounds of
/// one identifier per atom).
pub fn morgan_identifiers(config: &MorganConfig, g: &MolGraph) -> Vec<u64> {
    let n = g.atom_count();
    let mut ids: Vec<u64> = (0..n).map(|i| atom_invariant(&g.atoms()[i], g.degree(i))).collect();
    let mut all = ids.clone();
    let mut env: Vec<(u64, u64)> = Vec::new();
    let mut words: Vec<u64> = Vec::new();
    for _ in 0..config.radius {
        let next: Vec<u64> = (0..n)
            .map(|i| {
                env.clear();
                env.extend(g.neighbor_bonds(i).map(|(j, order)| (order.code(), ids[j])));
                env.sort_unstable();
                words.clear();
                words.push(ids[i]);
                for &(o, id) in &env {
                    words.push(o);
                    words.push(id);
                }
                fnv1a_words(&words)
            })
            .collect();
        all.extend_from_slice(&next);
        ids = next;
    }
    all
}

pub fn morgan_encode(config: &MorganConfig, g: &MolGraph) -> Result<BitFingerprint, MorganError> {
    config.validate()?;
    let mut fp = BitFingerprint::new(config.nbits);
    for id in morgan_identifiers(config, g) {
        fp.set((id % config.nbits as u64) as usize);
    }
    Ok(fp)
}

/// `|a & b| / |a | b|`, and 1 when both are empty.
pub fn tanimoto(a: &BitFingerprint, b: &BitFingerprint) -> Result<f64, MorganError> {
    a.check_len(b)?;
    let (mut inter, mut union) = (0u32, 0u32);
    for (x, y) in a.words.iter().zip(&b.words) {
        inter += (x & y).count_ones();
        union += (x | y).count_ones();
    }
    if union == 0 {
        return Ok(1.0);
    }
    Ok(f64::from(inter) / f64::from(union))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::parse_smiles;
    use std::collections::HashSet;

    fn fp(s: &str, radius: usize, nbits: usize) -> BitFingerprint {
        morgan_encode(&MorganConfig::new(radius, nbits).unwrap(), &parse_smiles(s).unwrap()).unwrap()
    }

    #[test]
    fn methane_sets_one_bit() {
        assert_eq!(fp("C", 0, 1024).count_ones(), 1);
    }

    #[test]
    fn permutation_invariant() {
        assert_eq!(fp("CCO", 2, 1024), fp("OCC", 2, 1024));
        assert_eq!(fp("c1ccccc1O", 3, 64), fp("Oc1ccccc1", 3, 64));
    }

    #[test]
    fn bits_accumulate_with_radius() {
        let r1 = fp("CCO", 1, 1024);
        let r2 = fp("CCO", 2, 1024);
        assert!(r2.count_ones() >= r1.count_ones());
        for b in r1.ones() {
            assert!(r2.get(b));
        }
    }

    #[test]
    fn invariants_distinguish_degree() {
        let g = parse_smiles("CC(C)C").unwrap();
        // atom 0 has degree 1, atom 1 degree 3
        assert_ne!(atom_invariant(&g.atoms()[0], 1), atom_invariant(&g.atoms()[1], 3));
        let mut c = g.atoms()[1];
        c.h_count = 2;
        assert_ne!(atom_invariant(&c, 2), atom_invariant(&c, 3));
        assert_eq!(atom_invariant(&g.atoms()[0], 1), atom_invariant(&g.atoms()[2], 1));
    }

    #[test]
    fn folding_loses_information() {
        let g = parse_smiles("CC(C)Cc1ccc(cc1)C(C)C(=O)OCCN(C)C(=O)c1ccncc1").unwrap();
        let cfg = MorganConfig::new(2, 32).unwrap();
        let distinct: HashSet<u64> = morgan_identifiers(&cfg, &g).into_iter().collect();
        assert!(distinct.len() > 32);
        assert!(morgan_encode(&cfg, &g).unwrap().count_ones() < distinct.len());
    }

    #[test]
    fn tanimoto_cases() {
        let x = BitFingerprint::from_ones(8, &[1, 4]);
        assert_eq!(tanimoto(&x, &x).unwrap(), 1.0);
        let y = BitFingerprint::from_ones(8, &[2, 5]);
        assert_eq!(tanimoto(&x, &y).unwrap(), 0.0);
        let a = BitFingerprint::from_ones(8, &[0, 1]);
        let b = BitFingerprint::from_ones(8, &[0, 2]);
        assert!((tanimoto(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let e = BitFingerprint::new(8);
        assert_eq!(tanimoto(&e, &e).unwrap(), 1.0);
        assert_eq!(
            tanimoto(&e, &BitFingerprint::new(16)),
            Err(MorganError::LengthMismatch(8, 16))
        );
    }

    #[test]
    fn config_validation() {
        assert!(MorganConfig::new(2, 7).is_err());
        assert!(MorganConfig::new(9, 64).is_err());
        assert!(MorganConfig::new(8, 8).is_ok());
    }

    #[test]
    fn record_lists_set_bits_ascending() {
        let cfg = MorganConfig::new(1, 64).unwrap();
        let f = fp("CCO", 1, 64);
        let rec = BitFingerprintRecord::new("CCO", &cfg, &f);
        assert!(rec.bits.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(BitFingerprint::from_ones(64, &rec.bits), f);
    }
}
