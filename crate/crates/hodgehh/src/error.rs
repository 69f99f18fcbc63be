use hodgehh_core::Error as CoreError;

/// Everything a job can fail with, grouped by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Budget(_) => "budget",
            CliError::Io(_) => "io",
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Budget(_) => CliError::Budget(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Exit status for a finished job: `0` when every checked property held, `4` when one failed.
pub fn exit_status(outcome: &CliResult<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 4,
        Err(e) => e.exit_code() as u8,
    }
}

pub(crate) fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{ModelCheckReport, Report};

    #[test]
    fn statuses() {
        assert_eq!(exit_status(&Ok(true)), 0);
        assert_eq!(exit_status(&Ok(false)), 4);
        assert_eq!(exit_status(&Err(validation("x"))), 2);
        assert_eq!(exit_status(&Err(CoreError::Budget("x".into()).into())), 3);
        assert_eq!(exit_status(&Err(CoreError::Unsupported("x".into()).into())), 2);
    }

    #[test]
    fn a_mismatched_instance_fails_the_report() {
        let instance = crate::report::ModelInstance {
            arity: 2,
            bound: 1,
            holim: Vec::new(),
            bounded: Vec::new(),
            comparison_is_iso: false,
            split_injection: true,
            fiber: Vec::new(),
            passed: false,
        };
        let report = ModelCheckReport { schema: String::new(), space: "circle".into(), max_arity: 2, instances: vec![instance] };
        assert_eq!(exit_status(&Ok(report.passed())), 4);
    }
}
