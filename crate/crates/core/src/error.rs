use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("qubit index {index} out of range for a {n}-qubit system")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("qubit index {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("operator is not a projector (deviation {0:e})")]
    NotProjector(f64),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("term has spectral norm {0} > 1")]
    TermNormTooLarge(f64),
    #[error("operator acts on {got} qubits, limit is {limit}")]
    LocalityExceeded { got: usize, limit: usize },
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("net index out of range")]
    IndexOutOfRange,
    #[error("pseudo-net check rejected the matrix (‖B−I‖ = {deviation:e} > {threshold:e})")]
    CheckRejected { deviation: f64, threshold: f64 },
    #[error("source vectors are not orthogonal (overlap {0:e})")]
    NonOrthogonal(f64),
    #[error("operator is not diagonal in the computational basis")]
    NotDiagonal,
    #[error("assignment does not satisfy the formula")]
    Unsatisfying,
    #[error("measurement operator has an eigenvalue outside [0, 1]: {0}")]
    InvalidMeasurement(f64),
}
