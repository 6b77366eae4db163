//! Command implementations. Each returns after its output file is complete;
//! manifests are written by [`crate::run_command`].

mod bo;
mod corpus;
mod encode;
mod ged;
mod knn;

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use hdfp_core::encoder::{Encoder, EncoderConfig};
use hdfp_core::eval::Representation;
use hdfp_core::molgraph::io::{records, MoleculeRecord};
use hdfp_core::{parse_smiles, MolGraph, MorganConfig};

use crate::args::PropertySource;
use crate::error::{CliError, Result};

pub use bo::bo_run;
pub use corpus::gen_corpus;
pub use encode::{encode, resolve_encode};
pub use ged::ged_bench;
pub use knn::knn_eval;

pub(crate) fn open_input(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| CliError::io(path, e))
}

pub(crate) fn create_output(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

pub(crate) struct Molecule {
    pub record: MoleculeRecord,
    pub graph: MolGraph,
}

/// Reads and parses every molecule; any bad line is an input error.
pub(crate) fn load_molecules(path: &Path) -> Result<Vec<Molecule>> {
    let mut out = Vec::new();
    for rec in records(open_input(path)?) {
        let record = rec.map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let graph = parse_smiles(&record.smiles)
            .map_err(|e| CliError::input(format!("{}: line {}: {e}", path.display(), record.line)))?;
        out.push(Molecule { record, graph });
    }
    Ok(out)
}

pub(crate) fn labels(path: &Path, mols: &[Molecule], source: PropertySource) -> Result<Vec<f64>> {
    mols.iter()
        .map(|m| match source {
            PropertySource::Column => m.record.property.ok_or_else(|| {
                CliError::input(format!("{}: line {}: missing property value", path.display(), m.record.line))
            }),
            PropertySource::Wiener => Ok(m.graph.wiener_index() as f64),
            PropertySource::Hetero => Ok(m.graph.heteroatom_fraction()),
        })
        .collect()
}

/// HDF and Morgan representations at a matched size and depth.
pub(crate) fn representations(dim: usize, depth: usize, seed: u64) -> Result<(Representation, Representation)> {
    let cfg = EncoderConfig {
        dim,
        depth,
        master_seed: seed,
        ..EncoderConfig::default()
    };
    let hdf = Encoder::new(cfg).map_err(|e| CliError::config(e.to_string()))?;
    let morgan = MorganConfig::new(depth, dim).map_err(|e| CliError::config(e.to_string()))?;
    Ok((Representation::Hdf(hdf), Representation::Morgan(morgan)))
}
