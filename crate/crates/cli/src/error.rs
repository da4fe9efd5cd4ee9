use mindiam::imprecise::ImpreciseError;
use mindiam::lp::LpError;
use mindiam::mindcs::MinDcsError;
use std::path::PathBuf;

/// Everything the front end can fail with. Each variant has a stable
/// [`code`](CliError::code) and process exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    InvalidJson {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at `{path}`: {message}")]
    SchemaViolation { path: String, message: String },
    #[error("region {region} is not in counter-clockwise order")]
    NotCcw { region: usize },
    #[error("region {region} is not convex")]
    NotConvex { region: usize },
    #[error("color class {class} is empty")]
    EmptyColorClass { class: usize },
    #[error("`{path}` has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        path: String,
        expected: usize,
        found: usize,
    },
    #[error("region {region}: {message}")]
    InvalidRegion { region: usize, message: String },
    #[error("`{command}` needs {expected}")]
    WrongModel {
        command: &'static str,
        expected: &'static str,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    MinDcs(#[from] MinDcsError),
    #[error(transparent)]
    Imprecise(#[from] ImpreciseError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::InvalidJson { .. } => "InvalidJson",
            CliError::SchemaViolation { .. } => "SchemaViolation",
            CliError::NotCcw { .. } => "NotCCW",
            CliError::NotConvex { .. } => "NotConvex",
            CliError::EmptyColorClass { .. } => "EmptyColorClass",
            CliError::DimensionMismatch { .. } => "DimensionMismatch",
            CliError::InvalidRegion { .. } => "InvalidRegion",
            CliError::WrongModel { .. } => "WrongModel",
            CliError::Usage(_) => "Usage",
            CliError::Io { .. } => "Io",
            CliError::MinDcs(MinDcsError::GridTooFine(_))
            | CliError::Imprecise(ImpreciseError::GridTooFine(_)) => "GridTooFine",
            CliError::MinDcs(MinDcsError::OracleTooLarge { .. })
            | CliError::Imprecise(ImpreciseError::OracleTooLarge { .. }) => "OracleTooLarge",
            CliError::MinDcs(_) | CliError::Imprecise(_) | CliError::Lp(_) => "SolverError",
        }
    }

    /// Process exit status; 0 is success, 2 is left to argument parsing.
    pub fn exit_code(&self) -> i32 {
        match self.code() {
            "InvalidJson" => 10,
            "SchemaViolation" => 11,
            "NotCCW" => 12,
            "NotConvex" => 13,
            "EmptyColorClass" => 14,
            "DimensionMismatch" => 15,
            "InvalidRegion" => 16,
            "WrongModel" => 17,
            "Usage" => 18,
            "Io" => 19,
            "GridTooFine" => 20,
            "OracleTooLarge" => 21,
            _ => 22,
        }
    }
}
