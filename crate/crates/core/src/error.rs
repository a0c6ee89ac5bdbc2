use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric: entry ({row},{col}) differs from ({col},{row})")]
    Asymmetric { row: usize, col: usize },

    #[error("form is degenerate: {0}")]
    Singular(String),

    #[error("rank-0 forms are not supported")]
    EmptyForm,

    #[error("matrix is not an isometry of the form: AᵀQA ≠ Q")]
    NotAnIsometry,

    #[error("isometry has determinant {0}, expected ±1")]
    NonUnimodularIsometry(String),

    #[error("isotropic reflection vector: b(v,v) = 0")]
    IsotropicVector,

    #[error("spin flag {asserted} contradicts the parity of the form (even = {even}); set override_spin to force it")]
    SpinParityMismatch { asserted: bool, even: bool },

    #[error("invalid product dimension n = {0}: must be at least 1")]
    InvalidDimension(u64),

    #[error("invalid hypersurface degree {0}: {1}")]
    InvalidDegree(u64, &'static str),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("generator mode {mode} is incompatible with this form: {reason}")]
    IncompatibleMode { mode: &'static str, reason: String },

    #[error("invalid input: {0}")]
    Parse(String),

    /// Raised when a corner block of an isometry in a Sylvester frame is
    /// singular. Cannot happen for genuine isometries.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension_mismatch",
            Error::Asymmetric { .. } => "asymmetric",
            Error::Singular(_) => "singular",
            Error::EmptyForm => "empty_form",
            Error::NotAnIsometry => "not_an_isometry",
            Error::NonUnimodularIsometry(_) => "non_unimodular_isometry",
            Error::IsotropicVector => "isotropic_vector",
            Error::SpinParityMismatch { .. } => "spin_parity_mismatch",
            Error::InvalidDimension(_) => "invalid_n",
            Error::InvalidDegree(..) => "invalid_degree",
            Error::UnknownEntry(_) => "unknown_catalog_entry",
            Error::IncompatibleMode { .. } => "incompatible_mode",
            Error::Parse(_) => "invalid_input",
            Error::Internal(_) => "internal",
        }
    }
}
