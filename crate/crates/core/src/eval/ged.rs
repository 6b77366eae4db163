//! Edit-distance ladders and the correlation between representation
//! distance and edit distance.
//!
//! A ladder explores perturbations breadth-first from a seed molecule. Level
//! `k` holds molecules first reached after `k` edits, so the path length is
//! an upper bound on the true graph edit distance. Each level is sampled
//! down to a frontier cap before expanding it, which keeps deep ladders
//! tractable.

use std::collections::HashSet;

use log::warn;
use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::hdc::SeededGenerator;
use crate::molgraph::{Element, MolGraph};

use super::features::{Distance, Representation};
use super::perturb::{perturb_all, DEFAULT_ELEMENTS};
use super::stats::pearson;
use super::EvalError;

pub const MAX_LADDER_DEPTH: usize = 8;
pub const MIN_PAIRS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct GedPair {
    pub mol_a: MolGraph,
    pub mol_b: MolGraph,
    /// Number of edits along the generation path, at least 1.
    pub edit_distance: usize,
    /// Index of the seed molecule in the input list.
    pub seed_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GedLadderConfig {
    pub max_depth: usize,
    pub pairs_per_seed: usize,
    pub rng_seed: u64,
    pub elements: Vec<Element>,
    /// Molecules kept per level for further expansion.
    pub frontier_cap: usize,
}

impl Default for GedLadderConfig {
    fn default() -> Self {
        Self {
            max_depth: 6,
            pairs_per_seed: 200,
            rng_seed: 0,
            elements: DEFAULT_ELEMENTS.to_vec(),
            frontier_cap: 48,
        }
    }
}

impl GedLadderConfig {
    pub fn validate(&self) -> Result<(), EvalError> {
        if self.max_depth == 0 || self.max_depth > MAX_LADDER_DEPTH {
            return Err(EvalError::InvalidConfig(format!(
                "max_depth must be in 1..={MAX_LADDER_DEPTH}, got {}",
                self.max_depth
            )));
        }
        if self.pairs_per_seed == 0 || self.frontier_cap == 0 {
            return Err(EvalError::InvalidConfig("pairs_per_seed and frontier_cap must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GedDataset {
    pub pairs: Vec<GedPair>,
    pub warnings: Vec<String>,
}

/// Levels `1..=max_depth` of the ladder from `seed`.
fn ladder<R: Rng>(seed: &MolGraph, cfg: &GedLadderConfig, rng: &mut R) -> Vec<Vec<MolGraph>> {
    let mut seen: HashSet<u64> = HashSet::from([seed.invariant_signature()]);
    let mut frontier = vec![seed.clone()];
    let mut levels = Vec::with_capacity(cfg.max_depth);
    for _ in 0..cfg.max_depth {
        let mut next = Vec::new();
        for g in &frontier {
            for m in perturb_all(g, &cfg.elements) {
                if seen.insert(m.invariant_signature()) {
                    next.push(m);
                }
            }
        }
        if next.len() > cfg.frontier_cap {
            let keep = index::sample(rng, next.len(), cfg.frontier_cap).into_vec();
            let mut keep_sorted = keep;
            keep_sorted.sort_unstable();
            next = keep_sorted.into_iter().map(|i| next[i].clone()).collect();
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.clone());
        frontier = next;
    }
    levels
}

/// Builds `(seed, descendant)` pairs for every seed. Pairs are spread
/// round-robin over depths; a ladder that runs out of molecules yields fewer
/// pairs and a warning. Deterministic given the seeds and `rng_seed`.
pub fn build_ged_dataset(seeds: &[MolGraph], cfg: &GedLadderConfig) -> Result<GedDataset, EvalError> {
    cfg.validate()?;
    let gen = SeededGenerator::new(cfg.rng_seed);
    let mut out = GedDataset::default();
    for (k, seed) in seeds.iter().enumerate() {
        let mut rng = gen.rng(&format!("ged:{k}"));
        let mut levels = ladder(seed, cfg, &mut rng);
        if levels.is_empty() {
            let msg = format!("seed {k} has no valid perturbations; skipped");
            warn!("{msg}");
            out.warnings.push(msg);
            continue;
        }
        for level in &mut levels {
            level.shuffle(&mut rng);
        }
        let mut taken = 0;
        let mut cursor = vec![0usize; levels.len()];
        while taken < cfg.pairs_per_seed {
            let mut progressed = false;
            for (d, level) in levels.iter().enumerate() {
                if taken == cfg.pairs_per_seed {
                    break;
                }
                if cursor[d] < level.len() {
                    out.pairs.push(GedPair {
                        mol_a: seed.clone(),
                        mol_b: level[cursor[d]].clone(),
                        edit_distance: d + 1,
                        seed_index: k,
                    });
                    cursor[d] += 1;
                    taken += 1;
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
        if taken < cfg.pairs_per_seed {
            let msg = format!(
                "seed {k}: ladder exhausted after {taken} of {} requested pairs",
                cfg.pairs_per_seed
            );
            warn!("{msg}");
            out.warnings.push(msg);
        }
    }
    Ok(out)
}

/// `|pearson|` between `pair_distance` over the pairs and their edit
/// distances.
pub fn ged_correlation_with<F>(pairs: &[GedPair], mut pair_distance: F) -> Result<f64, EvalError>
where
    F: FnMut(&GedPair) -> Result<f64, EvalError>,
{
    if pairs.len() < MIN_PAIRS {
        return Err(EvalError::InvalidConfig(format!(
            "need at least {MIN_PAIRS} pairs, got {}",
            pairs.len()
        )));
    }
    if let Some(p) = pairs.iter().find(|p| p.edit_distance == 0) {
        return Err(EvalError::InvalidConfig(format!(
            "pair from seed {} has edit distance 0",
            p.seed_index
        )));
    }
    let ds = pairs.iter().map(&mut pair_distance).collect::<Result<Vec<_>, _>>()?;
    let geds: Vec<f64> = pairs.iter().map(|p| p.edit_distance as f64).collect();
    Ok(pearson(&ds, &geds)?.abs())
}

/// [`ged_correlation_with`] using a representation and distance metric.
pub fn ged_correlation(pairs: &[GedPair], rep: &Representation, distance: Distance) -> Result<f64, EvalError> {
    ged_correlation_with(pairs, |p| {
        let a = rep.featurize(&p.mol_a)?;
        let b = rep.featurize(&p.mol_b)?;
        a.distance(&b, distance)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::{Encoder, EncoderConfig};
    use crate::eval::stats::spearman;
    use crate::molgraph::parse_smiles;
    use crate::morgan::MorganConfig;

    fn cfg(pairs: usize) -> GedLadderConfig {
        GedLadderConfig {
            max_depth: 3,
            pairs_per_seed: pairs,
            rng_seed: 7,
            frontier_cap: 12,
            ..GedLadderConfig::default()
        }
    }

    #[test]
    fn depth_one_pairs_are_single_perturbations() {
        let seed = parse_smiles("CC(=O)O").unwrap();
        let ds = build_ged_dataset(std::slice::from_ref(&seed), &cfg(30)).unwrap();
        let one_edit: HashSet<u64> = perturb_all(&seed, &DEFAULT_ELEMENTS)
            .iter()
            .map(MolGraph::invariant_signature)
            .collect();
        let depth1: Vec<_> = ds.pairs.iter().filter(|p| p.edit_distance == 1).collect();
        assert!(!depth1.is_empty());
        for p in depth1 {
            assert!(one_edit.contains(&p.mol_b.invariant_signature()));
            assert_eq!(p.mol_a, seed);
        }
        assert!(ds.pairs.iter().all(|p| (1..=3).contains(&p.edit_distance)));
    }

    #[test]
    fn exhausted_ladder_warns() {
        // methane with only C/N/O: N, O, then nothing new
        let c = GedLadderConfig {
            elements: vec![Element::C, Element::N, Element::O],
            ..cfg(200)
        };
        let ds = build_ged_dataset(&[parse_smiles("C").unwrap()], &c).unwrap();
        assert_eq!(ds.pairs.len(), 2);
        assert_eq!(ds.warnings.len(), 1);
    }

    #[test]
    fn seed_without_perturbations_is_skipped() {
        let c = GedLadderConfig {
            elements: vec![Element::C],
            ..cfg(5)
        };
        let ds = build_ged_dataset(&[parse_smiles("C").unwrap(), parse_smiles("CCC").unwrap()], &c).unwrap();
        assert!(ds.warnings[0].contains("seed 0"));
        assert!(ds.pairs.iter().all(|p| p.seed_index == 1));
    }

    #[test]
    fn deterministic_given_rng_seed() {
        let seeds = [parse_smiles("CCOC(=O)C").unwrap(), parse_smiles("c1ccccc1N").unwrap()];
        let a = build_ged_dataset(&seeds, &cfg(40)).unwrap();
        let b = build_ged_dataset(&seeds, &cfg(40)).unwrap();
        assert_eq!(a, b);
        let c = build_ged_dataset(&seeds, &GedLadderConfig { rng_seed: 8, ..cfg(40) }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_deep_ladders() {
        let c = GedLadderConfig { max_depth: 9, ..cfg(5) };
        assert!(build_ged_dataset(&[], &c).is_err());
    }

    #[test]
    fn oracle_distance_correlates_perfectly() {
        let ds = build_ged_dataset(&[parse_smiles("CCCCO").unwrap()], &cfg(30)).unwrap();
        let r = ged_correlation_with(&ds.pairs, |p| Ok(p.edit_distance as f64)).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        assert!(ged_correlation_with(&ds.pairs[..5], |p| Ok(p.edit_distance as f64)).is_err());
    }

    #[test]
    fn zero_edit_pairs_rejected() {
        let g = parse_smiles("CC").unwrap();
        let pairs: Vec<GedPair> = (0..10)
            .map(|i| GedPair {
                mol_a: g.clone(),
                mol_b: g.clone(),
                edit_distance: usize::from(i > 0),
                seed_index: 0,
            })
            .collect();
        assert!(ged_correlation_with(&pairs, |_| Ok(0.0)).is_err());
    }

    #[test]
    fn hdf_distance_grows_with_edits() {
        let c = GedLadderConfig {
            max_depth: 6,
            pairs_per_seed: 120,
            ..GedLadderConfig::default()
        };
        let ds = build_ged_dataset(&[parse_smiles("CC(C)Cc1ccc(cc1)C(C)C(=O)O").unwrap()], &c).unwrap();
        let rep = Representation::Hdf(Encoder::new(EncoderConfig::default()).unwrap());
        let mut ds_hdf = Vec::new();
        let mut geds = Vec::new();
        for p in &ds.pairs {
            let a = rep.featurize(&p.mol_a).unwrap();
            let b = rep.featurize(&p.mol_b).unwrap();
            ds_hdf.push(a.distance(&b, Distance::Cosine).unwrap());
            geds.push(p.edit_distance as f64);
        }
        assert!(spearman(&ds_hdf, &geds).unwrap() > 0.0);
        let morgan = Representation::Morgan(MorganConfig::default());
        let r = ged_correlation(&ds.pairs, &morgan, Distance::Tanimoto).unwrap();
        assert!((0.0..=1.0).contains(&r));
    }
}
