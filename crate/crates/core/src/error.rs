use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("division by an element indistinguishable from zero at the working precision")]
    DivisionByZeroAtPrecision,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("seed is not a simple root modulo p")]
    NoSimpleRoot,
    #[error("element is not a square")]
    NotASquare,
    #[error("element has odd valuation")]
    OddValuation,
    #[error("seed does not reduce to a root: {0}")]
    BadSeed(String),
    #[error("Newton-Hensel condition v(f) > 2 v(f') fails at the seed")]
    HenselConditionFailed,

    #[error("element is not a 1-unit")]
    NotAOneUnit,

    #[error("curve is singular")]
    SingularCurve,
    #[error("Hasse bound violated: trace {trace} over F_{q}")]
    HasseViolation { trace: i64, q: u64 },
    #[error("curve is not ordinary at p (p divides the trace)")]
    NotOrdinary,
    #[error("point is not in the subgroup generated by the given generator")]
    NotInSubgroup,

    #[error("discriminant {0} is not one of the nine class-number-one values")]
    UnsupportedDiscriminant(i64),
    #[error("{p} does not split in Q(sqrt({d}))")]
    NotSplit { d: i64, p: u64 },
    #[error("trace {trace} is incompatible with p = {p} and D = {d}")]
    TraceMismatch { d: i64, p: u64, trace: i64 },
    #[error("no associate is congruent to 1 mod 3")]
    NoPrimaryRepresentative,
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("prime {0} is excluded for this formula")]
    BadPrime(u64),
    #[error("4p = u^2 - Dv^2 has no solution for p = {p}, D = {d}")]
    NotRepresentable { d: i64, p: u64 },

    #[error("point is not in the formal group (it does not reduce to O)")]
    NotInFormalGroup,
    #[error("curve parameter is in the wrong residue class: {0}")]
    WrongResidueClass(String),
    #[error("division-polynomial root is not liftable from the reduction")]
    NotSimpleRoot,
    #[error("connected-etale splitting could not be matched at precision")]
    SplitAssumptionViolated,

    #[error("point has finite order")]
    TorsionPoint,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("internal consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("malformed dataset: {0}")]
    BadDataset(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
