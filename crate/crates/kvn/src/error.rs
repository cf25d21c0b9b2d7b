//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KvnError {
    /// Two states (or a state and an operator) disagree on grid layout.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// An operator references an axis the state does not carry.
    #[error("axis `{0}` not present in state")]
    AxisNotFound(String),

    /// A precondition on input data was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter is out of its allowed range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Expectation of a supposedly self-adjoint operator came out complex.
    #[error("self-adjointness violation: imaginary part {imag:e} exceeds {tol:e}")]
    SelfAdjointness { imag: f64, tol: f64 },

    /// Probability mass crept within the guard band of a periodic boundary.
    #[error("boundary guard violated on axis `{axis}` at t={time}: mass {mass:e} >= {limit:e}")]
    GuardViolation {
        axis: String,
        time: f64,
        mass: f64,
        limit: f64,
    },

    /// Conditioning was requested on an outcome of (numerically) zero probability.
    #[error("outcome `{0}` has probability below 1e-12; conditional state undefined")]
    ZeroProbabilityOutcome(String),

    /// POVM/Kraus reconstruction produced objects violating their invariants.
    #[error("extraction failure: {0}")]
    ExtractionFailure(String),

    /// Expression text could not be parsed.
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },

    /// Expression references a symbol outside the generator alphabet.
    #[error("unknown symbol `{symbol}` at offset {offset}")]
    UnknownSymbol { symbol: String, offset: usize },

    /// A symbolic operation exceeded the polynomial degree bound.
    #[error("degree overflow: degree {degree} exceeds bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },

    /// Scenario configuration failed validation.
    #[error("config error: {0}")]
    Config(String),

    /// Scenario name is not one of the known scenarios.
    #[error("unknown scenario `{name}`; known scenarios: {known}")]
    UnknownScenario { name: String, known: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, KvnError>;
