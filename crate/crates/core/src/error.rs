use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("prime table requested with limit {0} < 2")]
    EmptyPrimeTable(u64),

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("cannot parse decimal {0:?}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument within {0} of the pole at s = 1")]
    PoleProximity(String),

    #[error("a = 1 is a separate case; use {0}")]
    Redirect(&'static str),

    #[error("sign could not be certified; at least {required_digits} digits required")]
    PrecisionEscalation { required_digits: u32 },

    #[error("bracket [{lo}, {hi}] has no certified sign change")]
    NoSignChange { lo: String, hi: String },

    #[error("lattice rows are linearly dependent")]
    DependentRows,

    #[error("floor of {0} is ambiguous at working precision")]
    PrecisionInsufficient(String),

    #[error("no reduced row carries the sentinel coordinate; parameters too weak")]
    NoSentinelRow,

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("iterate left the admissible region: {0}")]
    OutOfRegion(String),

    #[error("no turning point: {0}")]
    NoTurningPoint(String),

    #[error("contour passes too close to zero: {0}")]
    ZeroOnContour(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
