use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::{Cli, Format, SeqArgs};
use crate::CliError;

/// Defaults read from a TOML file.
#[derive(Deserialize, Debug, Default, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub caps: Caps,
    pub sequence: Option<SeqConfig>,
}

#[derive(Deserialize, Debug, Default, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub stage: Option<usize>,
    pub multiplier: Option<u64>,
}

#[derive(Deserialize, Debug, Default, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SeqConfig {
    #[serde(default)]
    pub prefix: Vec<String>,
    #[serde(default)]
    pub period: Vec<String>,
    pub lacunary: Option<String>,
}

/// Effective settings after merging the file with the flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub stage_cap: usize,
    pub mult_cap: u64,
    pub sequence: Option<SeqArgs>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::usage(format!("bad config: {e}")))
    }
}

pub fn resolve(cli: &Cli) -> Result<Settings, CliError> {
    let file = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let stage_cap = cli.stage_cap.or(file.caps.stage).unwrap_or(dimgroup::limitgroup::DEFAULT_STAGE_CAP);
    let mult_cap = cli.mult_cap.or(file.caps.multiplier).unwrap_or(dimgroup::limitgroup::DEFAULT_MULT_CAP);
    if stage_cap == 0 || mult_cap == 0 {
        return Err(CliError::usage("caps must be positive"));
    }
    let sequence = file.sequence.map(|s| SeqArgs { prefix: s.prefix, period: s.period, lacunary: s.lacunary });
    Ok(Settings {
        format: cli.format.or(file.format).unwrap_or(Format::Human),
        out: cli.out.clone().or(file.out),
        stage_cap,
        mult_cap,
        sequence,
    })
}
