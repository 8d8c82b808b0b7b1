use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed notation: {0}")]
    MalformedNotation(String),
    #[error("inconsistent diagram: {0}")]
    InconsistentDiagram(String),
    #[error("degenerate diagram: {0}")]
    DegenerateDiagram(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not stabilized: {0}")]
    NotStabilized(String),
}

impl Error {
    /// Short machine-readable kind, used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedNotation(_) => "MalformedNotation",
            Error::InconsistentDiagram(_) => "InconsistentDiagram",
            Error::DegenerateDiagram(_) => "DegenerateDiagram",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NotStabilized(_) => "NotStabilized",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Error::MalformedNotation(s)
            | Error::InconsistentDiagram(s)
            | Error::DegenerateDiagram(s)
            | Error::InvalidParameter(s)
            | Error::BudgetExceeded(s)
            | Error::NotStabilized(s) => s.clone(),
        }
    }
}
