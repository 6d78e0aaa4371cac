use core::fmt;

/// Everything that can go wrong below the CLI layer.
///
/// `Domain` covers argument preconditions, `Pole` an evaluation exactly on a
/// pole of the underlying function, `Divergent` a series with no finite value,
/// and `NonConvergence` a series or quadrature that failed to reach the
/// requested tolerance within its term budget where partial results are not
/// acceptable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Argument outside the documented domain.
    Domain(&'static str),
    /// Evaluation point sits on a pole.
    Pole(&'static str),
    /// The requested series diverges; no finite answer exists.
    Divergent(&'static str),
    /// Budget exhausted before the tolerance was met.
    NonConvergence(&'static str),
    /// Table lookup past the precomputed range.
    IndexOutOfRange { index: usize, max: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Pole(msg) => write!(f, "pole: {msg}"),
            Error::Divergent(msg) => write!(f, "divergent: {msg}"),
            Error::NonConvergence(msg) => write!(f, "did not converge: {msg}"),
            Error::IndexOutOfRange { index, max } => {
                write!(f, "index {index} out of range (max {max})")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
