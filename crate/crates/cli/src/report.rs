use serde::Serialize;
use serde_json::Value;

/// A finished run: echoed inputs, results, timing and version.
#[derive(Serialize, Debug)]
pub struct Report {
    pub command: &'static str,
    pub version: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub passed: bool,
    pub seconds: f64,
    /// Human-readable rendering, printed without `--json`.
    #[serde(skip)]
    pub text: String,
}

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or input data; exit code 2.
    Usage(String),
    Internal(anyhow::Error),
}

impl From<squish_core::Error> for Failure {
    fn from(e: squish_core::Error) -> Self {
        use squish_core::Error::*;
        match e {
            Parse(_)
            | InvalidPartition(_)
            | DoesNotFit { .. }
            | OddBox { .. }
            | UnsupportedOrder(_)
            | NotSimplyConnected
            | NotALoop(_)
            | Io { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}
