use std::io::Write;

use hdfp_core::eval::ged::MIN_PAIRS;
use hdfp_core::eval::{build_ged_dataset, ged_correlation_with, Features, GedLadderConfig, GedPair, Representation};
use log::warn;
use rayon::prelude::*;

use super::{create_output, load_molecules, representations};
use crate::args::GedBenchArgs;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GedRow {
    pub dataset: String,
    pub representation: &'static str,
    pub dim: usize,
    pub correlation: f64,
}

fn correlation(pairs: &[GedPair], rep: &Representation) -> Result<f64> {
    // every pair of a dataset shares its seed molecule
    let seed: Features = rep.featurize(&pairs[0].mol_a)?;
    let metric = rep.natural_distance();
    Ok(ged_correlation_with(pairs, |p| seed.distance(&rep.featurize(&p.mol_b)?, metric))?)
}

/// One perturbation ladder per seed molecule; one row per dataset,
/// dimension and representation.
pub fn ged_bench(a: &GedBenchArgs) -> Result<Vec<GedRow>> {
    if a.dims.is_empty() {
        return Err(CliError::config("--dims is empty"));
    }
    let reps = a
        .dims
        .iter()
        .map(|&d| representations(d, a.depth, a.seed))
        .collect::<Result<Vec<_>>>()?;
    let cfg = GedLadderConfig {
        max_depth: a.ladder_depth,
        pairs_per_seed: a.pairs,
        rng_seed: a.rng_seed,
        frontier_cap: a.frontier_cap,
        ..GedLadderConfig::default()
    };
    cfg.validate().map_err(|e| CliError::config(e.to_string()))?;
    let seeds: Vec<_> = load_molecules(&a.input)?.into_iter().map(|m| m.graph).collect();
    if seeds.is_empty() {
        return Err(CliError::input(format!("{}: no seed molecules", a.input.display())));
    }
    let dataset = build_ged_dataset(&seeds, &cfg)?;
    let mut by_seed: Vec<Vec<GedPair>> = vec![Vec::new(); seeds.len()];
    for p in dataset.pairs {
        by_seed[p.seed_index].push(p);
    }
    let usable: Vec<(usize, Vec<GedPair>)> = by_seed
        .into_iter()
        .enumerate()
        .filter(|(k, pairs)| {
            let ok = pairs.len() >= MIN_PAIRS;
            if !ok && !pairs.is_empty() {
                warn!("seed {k}: only {} pairs, need {MIN_PAIRS}; skipped", pairs.len());
            }
            ok
        })
        .collect();
    if usable.is_empty() {
        return Err(CliError::input("no seed produced enough pairs"));
    }
    let rows: Vec<Vec<GedRow>> = usable
        .par_iter()
        .map(|(k, pairs)| {
            let mut rows = Vec::new();
            for (dim, (hdf, morgan)) in a.dims.iter().zip(&reps) {
                for rep in [hdf, morgan] {
                    rows.push(GedRow {
                        dataset: format!("seed-{k}"),
                        representation: rep.name(),
                        dim: *dim,
                        correlation: correlation(pairs, rep)?,
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<GedRow> = rows.into_iter().flatten().collect();
    let mut out = create_output(&a.out)?;
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "dataset,representation,dim,correlation")?;
        for r in &rows {
            writeln!(out, "{},{},{},{}", r.dataset, r.representation, r.dim, r.correlation)?;
        }
        out.flush()
    };
    write().map_err(|e| CliError::io(&a.out, e))?;
    Ok(rows)
}
