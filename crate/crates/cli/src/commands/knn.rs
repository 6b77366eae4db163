use std::io::Write;

use hdfp_core::eval::{knn_mae, median, Features, KnnConfig, Labeled, Representation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{create_output, labels, load_molecules, representations};
use crate::args::KnnEvalArgs;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct KnnRow {
    pub representation: &'static str,
    pub dim: usize,
    pub k: usize,
    /// MAE for representation rows, `MAE_morgan / MAE_hdf` for ratio rows.
    pub value: f64,
}

/// Index split for split number `s`.
fn split(n: usize, n_train: usize, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let test = idx.split_off(n_train);
    (idx, test)
}

fn mae(rep: &Representation, feats: &[Features], ys: &[f64], train: &[usize], test: &[usize], k: usize) -> Result<f64> {
    let pick = |ii: &[usize]| -> Vec<Labeled> {
        ii.iter()
            .map(|&i| Labeled {
                features: feats[i].clone(),
                y: ys[i],
            })
            .collect()
    };
    Ok(knn_mae(&pick(train), &pick(test), &KnnConfig::new(k, rep.natural_distance()))?)
}

/// MAE of k-NN regression for both representations at every dimension, and
/// the ratio `MAE_morgan / MAE_hdf` (above 1 when HDF predicts better).
/// With several splits every value is the median over splits.
pub fn knn_eval(a: &KnnEvalArgs) -> Result<Vec<KnnRow>> {
    if !(a.train_fraction > 0.0 && a.train_fraction < 1.0) {
        return Err(CliError::config("--train-fraction must be in (0, 1)"));
    }
    if a.splits == 0 || a.k == 0 || a.dims.is_empty() {
        return Err(CliError::config("--splits, --k and --dims must be non-empty"));
    }
    let reps = a
        .dims
        .iter()
        .map(|&d| representations(d, a.depth, a.seed))
        .collect::<Result<Vec<_>>>()?;
    let mols = load_molecules(&a.input)?;
    let ys = labels(&a.input, &mols, a.property)?;
    let n = mols.len();
    let n_train = (n as f64 * a.train_fraction).floor() as usize;
    if n_train == 0 || n_train == n {
        return Err(CliError::config(format!("{n} molecules cannot be split at {}", a.train_fraction)));
    }
    if a.k > n_train {
        return Err(CliError::config(format!("k = {} exceeds the training split of {n_train}", a.k)));
    }
    let splits: Vec<_> = (0..a.splits as u64)
        .map(|s| split(n, n_train, a.split_seed.wrapping_add(s)))
        .collect();
    let mut rows = Vec::new();
    for (dim, (hdf, morgan)) in a.dims.iter().zip(&reps) {
        let featurize = |rep: &Representation| -> Result<Vec<Features>> {
            Ok(mols.par_iter().map(|m| rep.featurize(&m.graph)).collect::<Result<_, _>>()?)
        };
        let (fh, fm) = (featurize(hdf)?, featurize(morgan)?);
        let mut mh = Vec::new();
        let mut mm = Vec::new();
        let mut ratios = Vec::new();
        let mut degenerate = false;
        for (train, test) in &splits {
            let h = mae(hdf, &fh, &ys, train, test, a.k)?;
            let m = mae(morgan, &fm, &ys, train, test, a.k)?;
            let ratio = if h > 0.0 {
                m / h
            } else {
                degenerate = true;
                if m > 0.0 { f64::INFINITY } else { 1.0 }
            };
            mh.push(h);
            mm.push(m);
            ratios.push(ratio);
        }
        let med = |v: &[f64]| median(v).expect("at least one split");
        rows.push(KnnRow { representation: "hdf", dim: *dim, k: a.k, value: med(&mh) });
        rows.push(KnnRow { representation: "morgan", dim: *dim, k: a.k, value: med(&mm) });
        rows.push(KnnRow {
            representation: if degenerate { "ratio-degenerate" } else { "ratio" },
            dim: *dim,
            k: a.k,
            value: med(&ratios),
        });
    }
    let mut out = create_output(&a.out)?;
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "representation,dim,k,mae")?;
        for r in &rows {
            writeln!(out, "{},{},{},{}", r.representation, r.dim, r.k, r.value)?;
        }
        out.flush()
    };
    write().map_err(|e| CliError::io(&a.out, e))?;
    Ok(rows)
}
