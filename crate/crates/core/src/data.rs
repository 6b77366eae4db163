//! Bundled reference corpus of drug-like and common organic molecules.

use crate::molgraph::{parse_smiles, MolGraph};

const CORPUS: &str = include_str!("../data/corpus.smi");

/// SMILES strings of the bundled corpus.
pub fn corpus_smiles() -> impl Iterator<Item = &'static str> {
    CORPUS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// The bundled corpus, parsed.
pub fn corpus() -> Vec<MolGraph> {
    corpus_smiles()
        .map(|s| parse_smiles(s).unwrap_or_else(|e| panic!("bundled SMILES {s}: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn every_entry_parses() {
        for s in corpus_smiles() {
            if let Err(e) = parse_smiles(s) {
                panic!("{s}: {e}");
            }
        }
        assert!(corpus_smiles().count() >= 100);
    }

    #[test]
    fn entries_are_mostly_distinct() {
        let distinct: HashSet<u64> = corpus().iter().map(MolGraph::invariant_signature).collect();
        assert!(distinct.len() > 100);
    }
}
