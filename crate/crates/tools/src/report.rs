//! Machine-readable run reports.
//!
//! A report embeds the run configuration, the seed, the tool version and the
//! digest of every input file. Serialization goes through ordered maps and
//! fixed struct layouts, so identical runs produce identical bytes.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::format::sha256_hex;

pub const TOOL: &str = "segal";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

/// The parameters of one run. Output paths are left out so that reports of
/// identical runs written to different places compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upto: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterate: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tabulate: Option<bool>,
    pub budget: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &Path, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(bytes),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub exit_code: u8,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub result: Value,
    /// Lines for the text format.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(config: RunConfig, inputs: Vec<InputDigest>) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            seed: config.seed,
            config,
            inputs,
            status: Status::Pass,
            error: None,
            result: Value::Null,
            summary: Vec::new(),
        }
    }

    pub fn failed(&mut self, error: &CliError) {
        self.status = Status::Error;
        self.error = Some(ErrorInfo {
            kind: error.kind(),
            exit_code: error.exit_code(),
            message: error.to_string(),
        });
        self.summary
            .push(format!("error ({}): {error}", error.kind()));
    }

    pub fn exit_code(&self) -> u8 {
        match (&self.status, &self.error) {
            (Status::Pass, _) => 0,
            (Status::Fail, _) => 1,
            (Status::Error, Some(e)) => e.exit_code,
            (Status::Error, None) => 2,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Text => {
                let status = match self.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Error => "ERROR",
                };
                let mut out = format!("{} {}: {status}\n", TOOL, self.config.command);
                for line in &self.summary {
                    out.push_str("  ");
                    out.push_str(line);
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes `contents` through a temporary file in the destination directory
/// and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(path, e))?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        fs::set_permissions(tmp.path(), fs::Permissions::from_mode(0o644))
            .map_err(|e| CliError::io(path, e))?;
    }
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn read_input(path: &Path) -> CliResult<(Vec<u8>, InputDigest)> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let digest = InputDigest::new(path, &bytes);
    Ok((bytes, digest))
}
