use std::io::Write;

use hdfp_core::encoder::{Encoder, EncoderConfig};
use hdfp_core::molgraph::io::{records, MoleculeRecord};
use hdfp_core::morgan::{morgan_encode, BitFingerprintRecord};
use hdfp_core::{parse_smiles, MorganConfig};
use log::warn;
use rayon::prelude::*;

use super::{create_output, open_input};
use crate::args::{EncodeArgs, RepKind};
use crate::error::{CliError, Result};

const CHUNK: usize = 2048;

/// Checks flag combinations and fills in defaults for the chosen
/// representation.
pub fn resolve_encode(a: &EncodeArgs) -> Result<EncodeArgs> {
    let mut r = a.clone();
    match a.rep {
        RepKind::Hdf => {
            if a.radius.is_some() {
                return Err(CliError::config("--radius applies to --rep morgan only"));
            }
            let d = EncoderConfig::default();
            r.depth = Some(a.depth.unwrap_or(d.depth));
            r.sigma_size = Some(a.sigma_size.unwrap_or(d.sigma_size));
            r.sigma_diam = Some(a.sigma_diam.unwrap_or(d.sigma_diam));
            encoder_config(&r).validate().map_err(|e| CliError::config(e.to_string()))?;
        }
        RepKind::Morgan => {
            if a.depth.is_some() || a.sigma_size.is_some() || a.sigma_diam.is_some() || a.no_global_attrs {
                return Err(CliError::config(
                    "--depth, --sigma-size, --sigma-diam and --no-global-attrs apply to --rep hdf only",
                ));
            }
            r.radius = Some(a.radius.unwrap_or(MorganConfig::default().radius));
            morgan_config(&r).validate().map_err(|e| CliError::config(e.to_string()))?;
        }
    }
    Ok(r)
}

fn encoder_config(a: &EncodeArgs) -> EncoderConfig {
    let d = EncoderConfig::default();
    EncoderConfig {
        dim: a.dim,
        depth: a.depth.unwrap_or(d.depth),
        master_seed: a.seed,
        sigma_size: a.sigma_size.unwrap_or(d.sigma_size),
        sigma_diam: a.sigma_diam.unwrap_or(d.sigma_diam),
        include_global_attrs: !a.no_global_attrs,
    }
}

fn morgan_config(a: &EncodeArgs) -> MorganConfig {
    MorganConfig {
        radius: a.radius.unwrap_or(MorganConfig::default().radius),
        nbits: a.dim,
    }
}

enum Backend {
    Hdf(Encoder),
    Morgan(MorganConfig),
}

impl Backend {
    fn line(&self, rec: &MoleculeRecord) -> Result<String, String> {
        let g = parse_smiles(&rec.smiles).map_err(|e| e.to_string())?;
        let json = match self {
            Backend::Hdf(enc) => {
                let fp = enc.encode(&g).map_err(|e| e.to_string())?;
                serde_json::to_string(&fp.to_record(&rec.smiles))
            }
            Backend::Morgan(cfg) => {
                let fp = morgan_encode(cfg, &g).map_err(|e| e.to_string())?;
                serde_json::to_string(&BitFingerprintRecord::new(&rec.smiles, cfg, &fp))
            }
        };
        json.map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeSummary {
    pub written: usize,
    pub failed: usize,
}

/// Streams the input in chunks; each chunk is encoded in parallel and
/// written in input order.
pub fn encode(a: &EncodeArgs) -> Result<EncodeSummary> {
    let backend = match a.rep {
        RepKind::Hdf => Backend::Hdf(Encoder::new(encoder_config(a)).map_err(|e| CliError::config(e.to_string()))?),
        RepKind::Morgan => Backend::Morgan(morgan_config(a)),
    };
    let reader = open_input(&a.input)?;
    let mut out = create_output(&a.out)?;
    let mut summary = EncodeSummary { written: 0, failed: 0 };
    let mut chunk: Vec<MoleculeRecord> = Vec::with_capacity(CHUNK);
    let mut flush = |chunk: &mut Vec<MoleculeRecord>, summary: &mut EncodeSummary| -> Result<()> {
        let lines: Vec<Result<String, String>> = chunk.par_iter().map(|r| backend.line(r)).collect();
        for (rec, line) in chunk.iter().zip(lines) {
            match line {
                Ok(text) => {
                    writeln!(out, "{text}").map_err(|e| CliError::io(&a.out, e))?;
                    summary.written += 1;
                }
                Err(msg) => {
                    warn!("{}: line {}: {msg}", a.input.display(), rec.line);
                    summary.failed += 1;
                }
            }
        }
        chunk.clear();
        Ok(())
    };
    for rec in records(reader) {
        chunk.push(rec.map_err(|e| CliError::input(format!("{}: {e}", a.input.display())))?);
        if chunk.len() == CHUNK {
            flush(&mut chunk, &mut summary)?;
        }
    }
    flush(&mut chunk, &mut summary)?;
    drop(flush);
    out.flush().map_err(|e| CliError::io(&a.out, e))?;
    if a.strict && summary.failed > 0 {
        return Err(CliError::input(format!("{} of {} lines failed", summary.failed, summary.failed + summary.written)));
    }
    Ok(summary)
}
