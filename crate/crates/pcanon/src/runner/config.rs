use super::RunError;
use crate::intersection::Mode;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GcmSource {
    Preset(String),
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Main,
    Simple,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Symbolic,
    EvalOnes,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::EvalOnes => Mode::EvalOnes,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Verify {
    Fast,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub gcm: GcmSource,
    pub p: u64,
    pub parabolic: Vec<usize>,
    pub length_limit: Option<usize>,
    /// Only these columns are emitted; everything below them is computed.
    pub elements: Vec<String>,
    pub algorithm: Algorithm,
    pub mode: Option<ModeArg>,
    pub verify: Verify,
    pub checkpoint: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub with_h: bool,
    pub threads: usize,
    pub braid_imports: Vec<PathBuf>,
    /// Directory receiving one file per stored braid matrix.
    pub braid_export: Option<PathBuf>,
    pub derive_braids: bool,
    pub symmetries: bool,
    pub stars: bool,
    pub liberal_order_six: bool,
    pub prune: bool,
    /// Stop after this many newly computed elements, leaving the checkpoint for a resume.
    pub stop_after: Option<usize>,
    pub cap: usize,
}

impl RunConfig {
    pub fn preset(name: &str, p: u64, algorithm: Algorithm) -> Self {
        RunConfig {
            gcm: GcmSource::Preset(name.to_string()),
            p,
            parabolic: Vec::new(),
            length_limit: None,
            elements: Vec::new(),
            algorithm,
            mode: None,
            verify: Verify::Fast,
            checkpoint: None,
            output: None,
            format: Format::Tsv,
            with_h: false,
            threads: 1,
            braid_imports: Vec::new(),
            braid_export: None,
            derive_braids: true,
            symmetries: true,
            stars: true,
            liberal_order_six: false,
            prune: true,
            stop_after: None,
            cap: 500_000,
        }
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: &str| Err(RunError::Config(m.to_string()));
        if !self.parabolic.is_empty() && self.algorithm != Algorithm::Main {
            return bad("a nonempty parabolic subset requires the main algorithm");
        }
        if self.mode.is_some() && self.algorithm == Algorithm::Main {
            return bad("the leaf evaluation mode applies to the simple algorithm only");
        }
        if self.threads == 0 {
            return bad("thread count must be positive");
        }
        Ok(())
    }

    pub fn simple_mode(&self) -> Mode {
        self.mode.map(Mode::from).unwrap_or(Mode::EvalOnes)
    }
}
