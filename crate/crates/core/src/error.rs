use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed rational literal `{0}`")]
    ParseRational(String),
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial of degree {0} has no roots to certify")]
    ConstantPolynomial(usize),
    #[error("expected a polynomial of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("root certification did not succeed below {0} bits of precision")]
    PrecisionExhausted(u32),
    #[error("grid must be strictly increasing")]
    GridNotIncreasing,
    #[error("no closed-form region is known for (m, n) = ({m}, {n})")]
    NoClosedForm { m: u32, n: u32 },
    #[error("0F3 parameter {0} is a nonpositive integer; resonant case, use select_fundamental_system")]
    ResonantParameter(String),
    #[error("series did not reach the requested tolerance within {0} terms")]
    SeriesTermCap(usize),
    #[error("solution kind {0} cannot be evaluated numerically")]
    UnsupportedSolutionKind(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
