use thiserror::Error;

/// Which direction of a multiplication table failed the Latin-square check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableLine {
    Row,
    Column,
}

impl std::fmt::Display for TableLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableLine::Row => write!(f, "row"),
            TableLine::Column => write!(f, "column"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("table is not a Latin square: {kind} {index} repeats an entry")]
    NotLatinSquare { kind: TableLine, index: usize },

    #[error("multiplication is not associative: ({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("table has no two-sided identity element")]
    NoIdentity,

    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },

    #[error("generator {generator} is not a permutation of 0..{degree}")]
    NotAPermutation { generator: usize, degree: usize },

    #[error("closure exceeded the element bound {bound}")]
    ClosureBoundExceeded { bound: usize },

    #[error("invalid construction parameters: {0}")]
    InvalidParameters(String),

    #[error("orders {a} and {b} are not coprime")]
    NotCoprime { a: usize, b: usize },

    #[error("cover relation disagrees with the prime-index rule: {0}")]
    ShortcutMismatch(String),

    #[error("edge-count sum is not an integer: {numerator}/{denominator}")]
    NonIntegerSum { numerator: u64, denominator: u64 },

    #[error("order {order} is outside the catalog range 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("cannot parse group spec `{spec}`: {reason}")]
    BadGroupSpec { spec: String, reason: String },

    #[error("malformed group file: {0}")]
    FileFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
