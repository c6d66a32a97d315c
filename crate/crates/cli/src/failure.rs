use hhf_core::Error;

/// Exit statuses. Usage errors reported by clap also exit with 2.
pub mod code {
    pub const INVALID_PARAMS: u8 = 2;
    pub const IO: u8 = 3;
    pub const DEGENERATE: u8 = 4;
    pub const EXACT_NONE: u8 = 5;
    pub const NEEDS_DISTINCT_COLUMNS: u8 = 6;
    pub const TOO_LARGE: u8 = 7;
    pub const AMBIGUOUS: u8 = 8;
}

#[derive(Debug)]
pub enum Failure {
    InvalidParams(String),
    Io(anyhow::Error),
    Degenerate(String),
    ExactNone,
    NeedsDistinctColumns,
    TooLarge(String),
    Ambiguous(usize),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::InvalidParams(_) => code::INVALID_PARAMS,
            Failure::Io(_) => code::IO,
            Failure::Degenerate(_) => code::DEGENERATE,
            Failure::ExactNone => code::EXACT_NONE,
            Failure::NeedsDistinctColumns => code::NEEDS_DISTINCT_COLUMNS,
            Failure::TooLarge(_) => code::TOO_LARGE,
            Failure::Ambiguous(_) => code::AMBIGUOUS,
        }
    }

    /// Single-line diagnostic.
    pub fn message(&self) -> String {
        match self {
            Failure::InvalidParams(m) => format!("invalid parameters: {m}"),
            Failure::Io(e) => format!("{e:#}"),
            Failure::Degenerate(m) => m.clone(),
            Failure::ExactNone => "no Householder generator reproduces Y with a binary X".into(),
            Failure::NeedsDistinctColumns => Error::NeedsDistinctColumns.to_string(),
            Failure::TooLarge(m) => m.clone(),
            Failure::Ambiguous(count) => Error::Ambiguous { count: *count }.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateInput | Error::Unrecoverable => Failure::Degenerate(e.to_string()),
            Error::NeedsDistinctColumns => Failure::NeedsDistinctColumns,
            Error::TooLarge { .. } => Failure::TooLarge(e.to_string()),
            Error::Ambiguous { count } => Failure::Ambiguous(count),
            other => Failure::InvalidParams(other.to_string()),
        }
    }
}
