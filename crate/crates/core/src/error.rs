use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("no data rows")]
    NoData,

    #[error("row {row}: expected {expected} columns, found {found}")]
    RowWidth {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("row {row}, column {col}: cannot parse {token:?} as a number")]
    NonNumeric {
        row: usize,
        col: usize,
        token: String,
    },

    #[error("row {row}, column {col}: value {value} outside [0, 1]")]
    OutOfRange {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two design points coincide, so a nearest-neighbor distance is zero.
    #[error("zero-distance: points {0} and {1} coincide")]
    ZeroDistance(usize, usize),

    /// A bounded kernel left the density estimate at zero for some point.
    #[error("degenerate-kernel: estimated density is zero at point {0}")]
    DegenerateKernel(usize),

    #[error("degenerate design: {0}")]
    DegenerateDesign(String),

    #[error("dimension {d} exceeds the {max}-entry prime base table")]
    BaseTableExceeded { d: usize, max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
