use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("conductor mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported conductor {0} (supported: 1..=120)")]
    UnsupportedOrder(u32),
    #[error("cannot lift from conductor {from} to {to}: {from} does not divide {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coincident points")]
    CoincidentPoints,
    #[error("duplicate point at positions {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("point set is empty")]
    EmptySet,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("brute-force guard: C({n}, {k}) = {subsets} exceeds the bound {bound}")]
    GuardExceeded { n: usize, k: usize, subsets: u128, bound: u128 },
    #[error("pattern is not a subset of the polygon")]
    NotSubset,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("excluded angle: {0}")]
    ExcludedAngle(String),
    #[error("resample budget exhausted after {attempts} attempts (last rejection: {last})")]
    BudgetExhausted { attempts: u32, last: String },
    #[error("size cap exceeded: {size} points requested, cap is {cap}")]
    SizeCap { size: String, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}
