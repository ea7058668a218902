use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{what}: needs {needed}, cap is {cap} (see CCDIM_CAPS)")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u32 },
    #[error("the zero code is not a valid [n,k] code")]
    ZeroCode,
    #[error("generator has rank {rank} but {rows} rows (strict mode)")]
    RankDeficient { rank: usize, rows: usize },
    #[error("the dual of a full-space [n,n] code is the zero code")]
    DualOfFullSpace,
    #[error("shortening on the given coordinates leaves only the zero codeword")]
    ShortenedToZero,
    #[error("cannot puncture every coordinate")]
    PunctureEverything,
    #[error("infeasible construction: {0}")]
    Infeasible(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal cross-check failed: {0}")]
    InternalCheck(String),
}
