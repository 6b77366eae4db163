use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "hdfp", version, about = "Hyperdimensional molecular fingerprints")]
pub struct Cli {
    /// Worker threads for data-parallel steps (defaults to all cores).
    #[arg(long, env = "HDFP_THREADS", global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Encode a molecule list into JSON Lines fingerprints.
    Encode(EncodeArgs),
    /// Correlation between fingerprint distance and edit distance on
    /// perturbation ladders grown from seed molecules.
    GedBench(GedBenchArgs),
    /// k-NN regression error of both representations and their ratio.
    KnnEval(KnnEvalArgs),
    /// Bayesian optimization traces over a molecule library.
    BoRun(BoRunArgs),
    /// Write a random molecule list.
    GenCorpus(GenCorpusArgs),
    /// Re-run a command from its manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Hdf,
    Morgan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoRep {
    Hdf,
    Morgan,
    Random,
}

/// Where molecule labels come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertySource {
    /// The second column of the input file.
    Column,
    /// Wiener index of the heavy-atom graph.
    Wiener,
    /// Fraction of heavy atoms that are not carbon.
    Hetero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratedProperty {
    None,
    Wiener,
    Hetero,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EncodeArgs {
    /// Molecule list (`SMILES[<TAB>property]` per line).
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "hdf")]
    pub rep: RepKind,
    /// Vector length (HDF dimension or Morgan bit count).
    #[arg(long, default_value_t = 1024)]
    pub dim: usize,
    /// Message-passing rounds (HDF only).
    #[arg(long)]
    pub depth: Option<usize>,
    /// Neighborhood radius (Morgan only).
    #[arg(long)]
    pub radius: Option<usize>,
    /// Master seed for the HDF dictionaries.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub sigma_size: Option<f64>,
    #[arg(long)]
    pub sigma_diam: Option<f64>,
    #[arg(long)]
    pub no_global_attrs: bool,
    /// Exit with an input error if any line fails to parse.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GedBenchArgs {
    /// Seed molecules, one per line.
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "32,128,512,2048")]
    pub dims: Vec<usize>,
    /// HDF depth and Morgan radius.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Deepest ladder level (edit count).
    #[arg(long, default_value_t = 6)]
    pub ladder_depth: usize,
    /// Pairs sampled per seed molecule.
    #[arg(long, default_value_t = 200)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    /// Ladder molecules kept per level.
    #[arg(long, default_value_t = 48)]
    pub frontier_cap: usize,
    /// Master seed for the HDF dictionaries.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct KnnEvalArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "32,64,128,256")]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub split_seed: u64,
    #[arg(long, default_value_t = 0.8)]
    pub train_fraction: f64,
    /// Random splits; reported values are medians over splits.
    #[arg(long, default_value_t = 1)]
    pub splits: usize,
    #[arg(long, value_enum, default_value = "column")]
    pub property: PropertySource,
    /// HDF depth and Morgan radius.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Master seed for the HDF dictionaries.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct BoRunArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Property value to approach.
    #[arg(long, allow_negative_numbers = true)]
    pub target: f64,
    #[arg(long, value_enum, default_value = "hdf")]
    pub rep: BoRep,
    #[arg(long, default_value_t = 64)]
    pub dim: usize,
    /// HDF depth and Morgan radius.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[arg(long, default_value_t = 150)]
    pub rounds: usize,
    #[arg(long, default_value_t = 10)]
    pub init_points: usize,
    #[arg(long, default_value_t = 10)]
    pub repetitions: usize,
    /// Seed of the first repetition; repetition `r` uses `seed + r`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Master seed for the HDF dictionaries.
    #[arg(long, default_value_t = 42)]
    pub encoder_seed: u64,
    #[arg(long, default_value_t = 1e-4)]
    pub noise: f64,
    /// Fixed kernel lengthscale; median pairwise distance of the initial
    /// design when absent.
    #[arg(long)]
    pub lengthscale: Option<f64>,
    #[arg(long, value_enum, default_value = "column")]
    pub property: PropertySource,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GenCorpusArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub min_atoms: usize,
    #[arg(long, default_value_t = 24)]
    pub max_atoms: usize,
    /// Property column to append.
    #[arg(long, value_enum, default_value = "wiener")]
    pub property: GeneratedProperty,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Write to this path instead of the recorded output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
