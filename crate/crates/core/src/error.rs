use thiserror::Error;

/// Problems turning text into a supersense or a label.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("unknown label `{0}`")]
    Unknown(String),
    #[error("malformed label `{0}`")]
    Malformed(String),
    #[error("special label combined with a construal in `{0}`")]
    SpecialWithConstrual(String),
    #[error("unknown construction context `{0}`")]
    UnknownContext(String),
}

impl LabelError {
    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            LabelError::Unknown(_) => "E_UNKNOWN_LABEL",
            _ => "E_FORMAT",
        }
    }
}
