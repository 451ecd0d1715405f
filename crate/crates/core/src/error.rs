use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum PadiqError {
    #[error("base {0} is not prime")]
    NotPrime(u64),
    #[error("digit precision must be at least 1")]
    ZeroPrecision,
    #[error("configuration mismatch: left is {0}, right is {1}")]
    ConfigMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} is divisible by p = {1}")]
    DenominatorNotCoprime(String, u64),
    #[error("digit {digit} out of range for base {p}")]
    DigitOutOfRange { digit: u64, p: u64 },
    #[error("grid would contain {cells} cells, exceeding the limit of {limit}")]
    GridTooLarge { cells: u128, limit: u64 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("ball of radius p^{radius_exp} is not resolvable on a grid with N={n}, M={m}")]
    BallNotResolvable { radius_exp: i64, n: u32, m: u32 },
    #[error("plane wave frequency not representable: |h xi|_p = p^{got} exceeds p^{max}")]
    WaveNotRepresentable { got: i64, max: i64 },
    #[error("empirical counts are all zero")]
    AllZeroCounts,
    #[error("operator is not Hermitian (max |H - H*| = {0:.3e})")]
    NotHermitian(f64),
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("expected a {expected}-axis grid, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("density is not normalized: integral = {0}")]
    UnnormalizedDensity(f64),
    #[error("state is not normalized: norm = {0}")]
    UnnormalizedState(f64),
    #[error("{0} is not a fixed point of x^{1} at this precision")]
    NotFixedPoint(String, u64),
    #[error("evolution needs at least two time samples")]
    TooFewTimeSamples,
    #[error("no commuting subset of size {0} in the observable family")]
    NoCommutingSubset(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid config key `{0}`")]
    UnknownKey(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, PadiqError>;
