use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order {order} is not a multiple of {needed}")]
    OrderTooSmall { order: u32, needed: u32 },
    #[error("ramification {from} does not divide {to}")]
    RamDivisibility { from: u32, to: u32 },
    #[error("element is indistinguishable from zero at precision {0}")]
    ZeroAtPrecision(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs an exact element")]
    Inexact,
    #[error("element is not generic")]
    NotGeneric,
    #[error("leading coefficient has no {n}-th root in Q(zeta_{order}); enlarge cyclotomic order")]
    NoRoot { n: u32, order: u32 },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
