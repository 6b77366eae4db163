use std::io::Write;

use hdfp_core::eval::{bo_run as run_trace, Acquisition, BoConfig, BoTrace, Lengthscale};
use log::warn;
use rayon::prelude::*;

use super::{create_output, labels, load_molecules, representations};
use crate::args::{BoRep, BoRunArgs};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BoResult {
    pub seed: u64,
    pub trace: BoTrace,
}

fn rep_name(rep: BoRep) -> &'static str {
    match rep {
        BoRep::Hdf => "hdf",
        BoRep::Morgan => "morgan",
        BoRep::Random => "random",
    }
}

/// One trace per repetition, written as per-round rows followed by an `auc`
/// row for that repetition.
pub fn bo_run(a: &BoRunArgs) -> Result<Vec<BoResult>> {
    if a.repetitions == 0 {
        return Err(CliError::config("--repetitions must be positive"));
    }
    let base = BoConfig {
        init_points: a.init_points,
        rounds: a.rounds,
        lengthscale: a.lengthscale.map_or(Lengthscale::MedianHeuristic, Lengthscale::Fixed),
        noise_variance: a.noise,
        target_value: a.target,
        seed: a.seed,
    };
    base.validate()?;
    let (hdf, morgan) = representations(a.dim, a.depth, a.encoder_seed)?;
    let mols = load_molecules(&a.input)?;
    let ys = labels(&a.input, &mols, a.property)?;
    if mols.len() <= a.init_points + a.rounds {
        return Err(CliError::config(format!(
            "library of {} molecules must exceed init points plus rounds ({})",
            mols.len(),
            a.init_points + a.rounds
        )));
    }
    let (library, acquisition): (Vec<Vec<f64>>, Acquisition) = match a.rep {
        BoRep::Random => (vec![Vec::new(); mols.len()], Acquisition::Random),
        BoRep::Hdf | BoRep::Morgan => {
            let rep = if a.rep == BoRep::Hdf { &hdf } else { &morgan };
            let feats = mols
                .par_iter()
                .map(|m| rep.featurize(&m.graph).map(|f| f.to_dense()))
                .collect::<Result<_, _>>()?;
            (feats, Acquisition::ExpectedImprovement)
        }
    };
    let results: Vec<BoResult> = (0..a.repetitions as u64)
        .into_par_iter()
        .map(|r| {
            let seed = a.seed.wrapping_add(r);
            let trace = run_trace(&library, &ys, &BoConfig { seed, ..base }, acquisition)?;
            Ok(BoResult { seed, trace })
        })
        .collect::<Result<_>>()?;
    let name = rep_name(a.rep);
    let mut out = create_output(&a.out)?;
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "seed,representation,dim,round,best_distance")?;
        for res in &results {
            if res.trace.truncated {
                warn!("seed {}: library exhausted after {} rounds", res.seed, res.trace.best_distance_per_round.len());
            }
            for (round, d) in res.trace.best_distance_per_round.iter().enumerate() {
                writeln!(out, "{},{name},{},{},{d}", res.seed, a.dim, round + 1)?;
            }
            writeln!(out, "{},{name},{},auc,{}", res.seed, a.dim, res.trace.auc)?;
        }
        out.flush()
    };
    write().map_err(|e| CliError::io(&a.out, e))?;
    Ok(results)
}
