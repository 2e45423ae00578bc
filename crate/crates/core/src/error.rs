use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures raised by the numeric kernel and the analysis layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes do not fit the operation.
    Dimension { op: &'static str, detail: String },
    /// A NaN or infinite value was offered as a matrix entry.
    NonFinite { row: usize, col: usize },
    NotHermitian { deviation: f64, tol: f64 },
    NotSymmetric { deviation: f64, tol: f64 },
    NotAntisymmetric { deviation: f64, tol: f64 },
    NotPositive { min_eigenvalue: f64, tol: f64 },
    NotNormalized { trace: f64 },
    ModeOutOfRange { index: usize, mode_count: usize },
    /// Mode exchange was requested for distinguishable particles.
    ExchangeForbidden,
    EmptyCoefficients,
    ZeroCoefficients,
    /// A quantity that must be real came out with a sizeable imaginary part,
    /// or an iteration failed to settle.
    Numeric(String),
}

impl Error {
    /// True for violations of a documented input contract, as opposed to
    /// shape errors or numeric breakdowns.
    pub fn is_contract_violation(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. }
                | Error::NotSymmetric { .. }
                | Error::NotAntisymmetric { .. }
                | Error::NotPositive { .. }
                | Error::NotNormalized { .. }
                | Error::ModeOutOfRange { .. }
                | Error::ExchangeForbidden
                | Error::EmptyCoefficients
                | Error::ZeroCoefficients
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { op, detail } => write!(f, "{op}: dimension mismatch ({detail})"),
            Error::NonFinite { row, col } => write!(f, "non-finite entry at ({row}, {col})"),
            Error::NotHermitian { deviation, tol } => {
                write!(f, "matrix is not Hermitian: deviation {deviation:e} exceeds {tol:e}")
            }
            Error::NotSymmetric { deviation, tol } => {
                write!(f, "matrix is not symmetric: deviation {deviation:e} exceeds {tol:e}")
            }
            Error::NotAntisymmetric { deviation, tol } => {
                write!(f, "matrix is not antisymmetric: deviation {deviation:e} exceeds {tol:e}")
            }
            Error::NotPositive { min_eigenvalue, tol } => write!(
                f,
                "matrix is not positive semidefinite: eigenvalue {min_eigenvalue:e} below -{tol:e}"
            ),
            Error::NotNormalized { trace } => write!(f, "density matrix has trace {trace} (expected 1)"),
            Error::ModeOutOfRange { index, mode_count } => {
                write!(f, "mode index {index} out of range for {mode_count} modes")
            }
            Error::ExchangeForbidden => {
                f.write_str("mode exchange is undefined for distinguishable particles")
            }
            Error::EmptyCoefficients => f.write_str("coefficient list is empty"),
            Error::ZeroCoefficients => f.write_str("all coefficients are zero"),
            Error::Numeric(msg) => write!(f, "numeric failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
