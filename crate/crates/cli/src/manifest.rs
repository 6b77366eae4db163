//! Run manifests: a JSON record of the resolved configuration of a command,
//! written next to its output. Replaying a manifest re-runs the command with
//! the same configuration.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{BoRunArgs, Command, EncodeArgs, GedBenchArgs, GenCorpusArgs, KnnEvalArgs};
use crate::error::{CliError, Result};

pub const TOOL: &str = "hdfp";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub master_seed: Option<u64>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    /// Resolved arguments of the command.
    pub config: Value,
}

/// `<output>.manifest.json`
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn to_value<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("arguments serialize")
}

impl RunManifest {
    pub fn for_command(command: &Command) -> Option<Self> {
        let (name, seed, inputs, output, config) = match command {
            Command::Encode(a) => ("encode", Some(a.seed), vec![a.input.clone()], &a.out, to_value(a)),
            Command::GedBench(a) => ("ged-bench", Some(a.seed), vec![a.input.clone()], &a.out, to_value(a)),
            Command::KnnEval(a) => ("knn-eval", Some(a.seed), vec![a.input.clone()], &a.out, to_value(a)),
            Command::BoRun(a) => ("bo-run", Some(a.encoder_seed), vec![a.input.clone()], &a.out, to_value(a)),
            Command::GenCorpus(a) => ("gen-corpus", Some(a.seed), vec![], &a.out, to_value(a)),
            Command::Replay(_) => return None,
        };
        Some(Self {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: name.to_string(),
            master_seed: seed,
            inputs,
            outputs: vec![output.clone()],
            config,
        })
    }

    /// Rebuilds the command, optionally redirecting its output.
    pub fn to_command(&self, out: Option<PathBuf>) -> Result<Command> {
        fn parse<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
            serde_json::from_value(v.clone()).map_err(|e| CliError::input(format!("manifest config: {e}")))
        }
        let mut cmd = match self.command.as_str() {
            "encode" => Command::Encode(parse::<EncodeArgs>(&self.config)?),
            "ged-bench" => Command::GedBench(parse::<GedBenchArgs>(&self.config)?),
            "knn-eval" => Command::KnnEval(parse::<KnnEvalArgs>(&self.config)?),
            "bo-run" => Command::BoRun(parse::<BoRunArgs>(&self.config)?),
            "gen-corpus" => Command::GenCorpus(parse::<GenCorpusArgs>(&self.config)?),
            other => return Err(CliError::input(format!("manifest names unknown command '{other}'"))),
        };
        if let Some(path) = out {
            match &mut cmd {
                Command::Encode(a) => a.out = path,
                Command::GedBench(a) => a.out = path,
                Command::KnnEval(a) => a.out = path,
                Command::BoRun(a) => a.out = path,
                Command::GenCorpus(a) => a.out = path,
                Command::Replay(_) => unreachable!(),
            }
        }
        Ok(cmd)
    }

    pub fn write(&self) -> Result<PathBuf> {
        let path = manifest_path(&self.outputs[0]);
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let m: Self = serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        if m.tool != TOOL {
            return Err(CliError::input(format!("{}: not an {TOOL} manifest", path.display())));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{GeneratedProperty, RepKind};

    #[test]
    fn manifest_path_appends_suffix() {
        assert_eq!(manifest_path(Path::new("out/fp.jsonl")), PathBuf::from("out/fp.jsonl.manifest.json"));
    }

    #[test]
    fn round_trips_through_json() {
        let cmd = Command::Encode(EncodeArgs {
            input: "in.smi".into(),
            out: "out.jsonl".into(),
            rep: RepKind::Morgan,
            dim: 256,
            depth: None,
            radius: Some(3),
            seed: 7,
            sigma_size: None,
            sigma_diam: None,
            no_global_attrs: false,
            strict: true,
        });
        let m = RunManifest::for_command(&cmd).unwrap();
        let back: RunManifest = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back.to_command(None).unwrap(), cmd);
        let Command::Encode(redirected) = back.to_command(Some("other.jsonl".into())).unwrap() else {
            panic!("wrong command");
        };
        assert_eq!(redirected.out, PathBuf::from("other.jsonl"));
    }

    #[test]
    fn rejects_unknown_command() {
        let mut m = RunManifest::for_command(&Command::GenCorpus(GenCorpusArgs {
            out: "x.smi".into(),
            n: 3,
            seed: 0,
            min_atoms: 4,
            max_atoms: 8,
            property: GeneratedProperty::None,
        }))
        .unwrap();
        m.command = "nope".into();
        assert!(m.to_command(None).is_err());
    }
}
