//! Configuration, file formats and the command implementations behind the
//! `tubefit` binary.

mod commands;
mod config;
mod files;

use thiserror::Error;

use crate::oracle::OracleError;
use crate::retrieval::RetrievalError;

pub use commands::{cmd_forward, cmd_modes, cmd_retrieve, cmd_roundtrip, write_sidecar, ForwardMethod, Outcome};
pub use config::{
    BranchSetting, GeometrySection, MaterialSection, MediumSection, OracleSection, RetrievalSection, RoundtripSection, RunConfig,
    SweepSection,
};
pub use files::{read_results, read_scattering, write_results, write_scattering, ResultRow, RESULT_HEADER, SCATTERING_HEADER};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Input { line: Option<u64>, message: String },
    #[error("no data rows")]
    NoData,
    #[error(transparent)]
    Retrieval(#[from] RetrievalError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for bad input or configuration, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Retrieval(e) => match e {
                RetrievalError::Data(_)
                | RetrievalError::EmptySweep
                | RetrievalError::NonMonotone { .. }
                | RetrievalError::AboveCutoff { .. }
                | RetrievalError::SingularMeasurement { .. }
                | RetrievalError::Geometry(_) => 1,
                _ => 2,
            },
            Self::Oracle(e) => match e {
                OracleError::Geometry(_)
                | OracleError::ResolutionInfeasible { .. }
                | OracleError::ThicknessUnresolved { .. }
                | OracleError::Frequency(_)
                | OracleError::AboveCutoff { .. } => 1,
                _ => 2,
            },
            _ => 1,
        }
    }
}
