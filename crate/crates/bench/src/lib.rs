//! Shared fixtures for the benchmarks.

use hdfp_core::eval::{generate_corpus, GeneratorConfig};
use hdfp_core::MolGraph;

/// A fixed set of generated molecules.
pub fn molecules(n: usize) -> Vec<MolGraph> {
    generate_corpus(n, &GeneratorConfig { seed: 1, ..GeneratorConfig::default() })
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixture_is_stable() {
        assert_eq!(super::molecules(10), super::molecules(10));
    }
}
