use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid integral spec: {0}")]
    InvalidSpec(String),

    #[error("no closed form for {0}")]
    MissingClosedForm(String),

    #[error("malformed ring element: {0}")]
    MalformedElement(String),

    #[error("value leaves Q[X, Y]: {0}")]
    NotInQxy(String),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
