use polydiv::Error;

/// Failures are split by exit code: malformed input (bad syntax in a session
/// file or argument, an unresolved name) exits 2, while operations the
/// calculus itself rejects exit 1 with the error on the diagnostic stream.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(Error),
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> CliError {
        CliError::Parse(msg.into())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e)
    }
}
