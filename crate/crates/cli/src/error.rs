use relrep_core::algebra::ValidationReport;
use relrep_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },

    #[error("{what}: parse error: {msg}")]
    Parse { what: String, line: usize, column: usize, msg: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("validation failed:\n{}", render_report(.0).trim_end())]
    Invalid(ValidationReport),

    #[error("{0}")]
    Rejected(String),

    #[error("{0}")]
    Budget(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 1 validation, 2 parse, 3 budget or cap, 4 internal invariant.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Rejected(_) => 1,
            CliError::Read { .. } | CliError::Parse { .. } | CliError::Schema(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Write { .. } | CliError::Internal(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidAlgebra(r) | Error::InvalidGenerators(r) => CliError::Invalid(r),
            Error::NotResiduated { .. }
            | Error::InvalidSemilattice
            | Error::InvalidGoal { .. }
            | Error::NotKnownExistsWin { .. }
            | Error::IllegalMove(_) => CliError::Rejected(e.to_string()),
            Error::MalformedInput(_)
            | Error::MalformedPrenetwork(_)
            | Error::MalformedCertificate(_)
            | Error::FormulaSyntax { .. }
            | Error::UnboundVariable(_)
            | Error::BaseMismatch => CliError::Schema(e.to_string()),
            Error::SizeCapExceeded { .. } | Error::DepthCapExceeded { .. } | Error::BudgetExhausted(_) => {
                CliError::Budget(e.to_string())
            }
            Error::Internal(_) => CliError::Internal(e.to_string()),
        }
    }
}

pub fn render_report(r: &ValidationReport) -> String {
    let mut out = String::new();
    for v in &r.violations {
        out.push_str(&format!("  {} fails at {:?}\n", v.law, v.witness));
    }
    if r.suppressed > 0 {
        out.push_str(&format!("  ... and {} more\n", r.suppressed));
    }
    out
}
