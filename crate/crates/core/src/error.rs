use thiserror::Error;

/// Errors raised by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not a Latin square: value {value} repeats in {line}")]
    NotLatin { line: String, value: usize },
    #[error("no two-sided identity element")]
    NoUnit,
    #[error("element {0} is not a two-sided identity")]
    UnitMismatch(usize),
    #[error("element {element} has no two-sided inverse")]
    TwoSidedInverseMissing { element: usize },
    #[error("powers of element {element} depend on bracketing")]
    NotPowerAssociative { element: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group closure exceeded budget of {budget} elements")]
    ClosureBudgetExceeded { budget: usize },
    #[error("input loop is not a group")]
    NotAGroup,
    #[error("input loop is not right Bol")]
    NotRightBol,
    #[error("squares are not central at extension step {depth}")]
    CentralSquaresLost { depth: usize },
    #[error("map does not send T/V lines to T/V lines: {0}")]
    NotALineMap(String),
    #[error("set of permutations is not sharply transitive")]
    NotSharplyTransitive,
    #[error("not a loop folder: {0}")]
    NotAFolder(String),
    #[error("quandle is not involutory")]
    NotInvolutory,
    #[error("coset enumeration exceeded budget of {budget} cosets ({defined} defined)")]
    CosetBudgetExceeded { budget: usize, defined: usize },
    #[error("search exceeded node budget of {budget}")]
    SearchBudgetExceeded { budget: u64 },
    #[error("loop {name} is outside the census population: {reason}")]
    PopulationFilterViolated { name: String, reason: String },
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("loop {name}: {source}")]
    InLoop { name: String, source: Box<Error> },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
