//! Random molecule generator for self-generated corpora.
//!
//! Molecules grow from a single carbon by random steps: attach an atom
//! (mostly carbon, occasionally a double or triple bond), attach a benzene or
//! pyridine ring, or close a ring of five or more atoms. Every step is
//! checked against the valence model and rejected if it fails. Results are
//! deduplicated by invariant signature.

use std::collections::HashSet;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::molgraph::{AtomRecord, Bond, BondOrder, Element, MolGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub min_atoms: usize,
    pub max_atoms: usize,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            min_atoms: 4,
            max_atoms: 24,
            seed: 0,
        }
    }
}

const ELEMENTS: [(Element, u32); 8] = [
    (Element::C, 64),
    (Element::N, 12),
    (Element::O, 12),
    (Element::S, 3),
    (Element::F, 4),
    (Element::Cl, 3),
    (Element::Br, 1),
    (Element::P, 1),
];

struct Builder {
    atoms: Vec<AtomRecord>,
    bonds: Vec<Bond>,
    graph: MolGraph,
}

impl Builder {
    fn new() -> Self {
        let atoms = vec![AtomRecord::organic(Element::C, false)];
        let graph = MolGraph::from_parts(atoms.clone(), Vec::new()).expect("methane is valid");
        Self {
            atoms,
            bonds: Vec::new(),
            graph,
        }
    }

    fn try_commit(&mut self, atoms: Vec<AtomRecord>, bonds: Vec<Bond>) -> bool {
        match MolGraph::from_parts(atoms.clone(), bonds.clone()) {
            Ok(g) => {
                self.atoms = atoms;
                self.bonds = bonds;
                self.graph = g;
                true
            }
            Err(_) => false,
        }
    }

    fn sites(&self, min_h: u8) -> Vec<usize> {
        (0..self.atoms.len())
            .filter(|&i| self.graph.atoms()[i].h_count >= min_h)
            .collect()
    }

    fn add_atom<R: Rng>(&mut self, rng: &mut R, elements: &WeightedIndex<u32>) -> bool {
        let element = ELEMENTS[elements.sample(rng)].0;
        let order = match rng.random_range(0..100) {
            0..=84 => BondOrder::Single,
            85..=96 => BondOrder::Double,
            _ => BondOrder::Triple,
        };
        let need = order.value() as u8;
        let Some(&site) = self.sites(need).choose(rng) else {
            return false;
        };
        let mut atoms = self.atoms.clone();
        let mut bonds = self.bonds.clone();
        atoms.push(AtomRecord::organic(element, false));
        bonds.push(Bond::new(site, atoms.len() - 1, order));
        self.try_commit(atoms, bonds)
    }

    fn add_ring<R: Rng>(&mut self, rng: &mut R) -> bool {
        let Some(&site) = self.sites(1).choose(rng) else {
            return false;
        };
        let nitrogen_at = if rng.random_bool(0.3) { rng.random_range(1..6) } else { 0 };
        let base = self.atoms.len();
        let mut atoms = self.atoms.clone();
        let mut bonds = self.bonds.clone();
        for k in 0..6 {
            let e = if k == nitrogen_at && k != 0 { Element::N } else { Element::C };
            atoms.push(AtomRecord::organic(e, true));
            bonds.push(Bond::new(base + k, base + (k + 1) % 6, BondOrder::Aromatic));
        }
        bonds.push(Bond::new(site, base, BondOrder::Single));
        self.try_commit(atoms, bonds)
    }

    fn close_ring<R: Rng>(&mut self, rng: &mut R) -> bool {
        let dist = self.graph.distance_matrix();
        let sites: Vec<usize> = self.sites(1).into_iter().filter(|&i| !self.atoms[i].aromatic).collect();
        let mut pairs = Vec::new();
        for (x, &i) in sites.iter().enumerate() {
            for &j in &sites[x + 1..] {
                if (4..=6).contains(&dist[i][j]) {
                    pairs.push((i, j));
                }
            }
        }
        let Some(&(i, j)) = pairs.choose(rng) else {
            return false;
        };
        let mut bonds = self.bonds.clone();
        bonds.push(Bond::new(i, j, BondOrder::Single));
        self.try_commit(self.atoms.clone(), bonds)
    }
}

/// One random molecule with a heavy-atom count in the configured range
/// (it may overshoot by up to five atoms when a ring lands last).
pub fn random_molecule<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> MolGraph {
    let elements = WeightedIndex::new(ELEMENTS.iter().map(|&(_, w)| w)).expect("positive weights");
    let target = rng.random_range(cfg.min_atoms.max(1)..=cfg.max_atoms.max(cfg.min_atoms.max(1)));
    let mut b = Builder::new();
    let mut stalls = 0;
    while b.atoms.len() < target && stalls < 50 {
        let room = target - b.atoms.len();
        let ok = match rng.random_range(0..100) {
            0..=11 if room >= 6 => b.add_ring(rng),
            12..=19 => b.close_ring(rng),
            _ => b.add_atom(rng, &elements),
        };
        stalls = if ok { 0 } else { stalls + 1 };
    }
    b.graph
}

/// `n` distinct random molecules, deterministic given `cfg.seed`.
pub fn generate_corpus(n: usize, cfg: &GeneratorConfig) -> Vec<MolGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let g = random_molecule(&mut rng, cfg);
        if seen.insert(g.invariant_signature()) {
            out.push(g);
        }
    }
    out
}
