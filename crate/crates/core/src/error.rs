use std::path::PathBuf;

use thiserror::Error;

use crate::dls::TableError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("header mismatch: expected `{expected}`, found `{found}`")]
    Header { expected: String, found: String },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    /// A field value broke a record invariant.
    #[error("{}{field}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Invalid {
        line: Option<u64>,
        field: &'static str,
        message: String,
    },

    #[error("line {line}: duplicate match_id `{match_id}`")]
    DuplicateMatch { line: u64, match_id: String },

    #[error("{}snapshot references unknown match_id `{match_id}`", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    OrphanSnapshot { line: Option<u64>, match_id: String },

    #[error("match `{match_id}` over {over}: {message}")]
    Snapshot {
        match_id: String,
        over: u8,
        message: String,
    },

    #[error("match `{match_id}` has no snapshots")]
    MissingSnapshots { match_id: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error(transparent)]
    Table(#[from] TableError),

    #[error("no snapshots selected by {0}")]
    EmptySelection(String),

    #[error("no qualifying snapshots for {0}")]
    NoQualifyingSnapshots(String),

    #[error("failing percentage undefined for {team} in scenario {scenario}: no matches with that outcome")]
    UndefinedScore { team: String, scenario: String },

    #[error("no team has at least {min_matches} qualifying matches for scenario {scenario}")]
    NoQualifyingTeams { scenario: String, min_matches: u32 },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
