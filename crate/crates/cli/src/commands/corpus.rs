use std::io::Write;

use hdfp_core::eval::{generate_corpus, GeneratorConfig};
use hdfp_core::molgraph::to_smiles;

use super::create_output;
use crate::args::{GenCorpusArgs, GeneratedProperty};
use crate::error::{CliError, Result};

pub fn gen_corpus(a: &GenCorpusArgs) -> Result<usize> {
    if a.min_atoms == 0 || a.min_atoms > a.max_atoms {
        return Err(CliError::config("need 1 <= --min-atoms <= --max-atoms"));
    }
    let cfg = GeneratorConfig {
        min_atoms: a.min_atoms,
        max_atoms: a.max_atoms,
        seed: a.seed,
    };
    let mols = generate_corpus(a.n, &cfg);
    let mut out = create_output(&a.out)?;
    let mut write = || -> std::io::Result<()> {
        for g in &mols {
            let smiles = to_smiles(g);
            match a.property {
                GeneratedProperty::None => writeln!(out, "{smiles}")?,
                GeneratedProperty::Wiener => writeln!(out, "{smiles}\t{}", g.wiener_index())?,
                GeneratedProperty::Hetero => writeln!(out, "{smiles}\t{}", g.heteroatom_fraction())?,
            }
        }
        out.flush()
    };
    write().map_err(|e| CliError::io(&a.out, e))?;
    Ok(mols.len())
}
