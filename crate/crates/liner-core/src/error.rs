use thiserror::Error;

/// Everything that can go wrong across the crate: liner validation,
/// budget-bounded searches, algebra-table checks, and construction inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinerError {
    #[error("line {line} refers to point {point}, but the liner has {point_count} points")]
    IndexOutOfRange {
        line: usize,
        point: usize,
        point_count: usize,
    },

    #[error("line {index} has {len} distinct points; every line needs at least 2")]
    ShortLine { index: usize, len: usize },

    #[error("points {a} and {b} lie on no common line")]
    PairUncovered { a: usize, b: usize },

    #[error("points {a} and {b} lie on two distinct lines ({line1} and {line2})")]
    PairMultiplyCovered {
        a: usize,
        b: usize,
        line1: usize,
        line2: usize,
    },

    #[error("the two points must be distinct (got {point} twice)")]
    EqualPoints { point: usize },

    #[error("the liner has no lines (fewer than 2 points)")]
    NoLines,

    #[error("{what} exceeded its budget of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("rank undecided: no seed of size <= {budget} suffices and greedy is not licensed")]
    RankUndecided { budget: usize },

    #[error("precondition violated: {reason}")]
    PreconditionViolated { reason: String },

    #[error("not a Steiner liner: line {line} has {len} points")]
    NotSteiner { line: usize, len: usize },

    #[error("operation is not idempotent: {x} o {x} != {x}")]
    NotIdempotent { x: usize },

    #[error("operation is not commutative: {x} o {y} != {y} o {x}")]
    NotCommutative { x: usize, y: usize },

    #[error("operation is not involutory: ({x} o {y}) o {y} != {x}")]
    NotInvolutory { x: usize, y: usize },

    #[error("multiplication table is not a group: {reason}")]
    NotAGroup { reason: String },

    #[error("group element {x} does not have order dividing 3")]
    NotExponent3 { x: usize },

    #[error("the three points do not form a triangle (rank != 3)")]
    NotATriangle,

    #[error("construction needs at least {min} points, got {n}")]
    TooSmall { n: usize, min: usize },

    #[error("no finite field of order {q} is available (prime powers up to 16)")]
    UnsupportedFieldOrder { q: usize },

    #[error("embedded table failed to decode: {reason}")]
    TableCorrupt { reason: String },

    #[error("invalid liner input: {reason}")]
    InvalidFormat { reason: String },
}

pub type Result<T, E = LinerError> = std::result::Result<T, E>;
