//! Error types shared by every layer of the library.
//!
//! Validation errors carry element indices as witnesses; callers that know
//! the element names render them for display.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Which argument slot of a two-variable map a violation occurred in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a partial order: {reason} (witness {witness:?})")]
    NotAPartialOrder {
        reason: &'static str,
        witness: Vec<usize>,
    },

    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),

    #[error("no bottom element")]
    NoBottom,

    #[error("map does not preserve joins (witness subset {subset:?})")]
    NotASupMap { subset: Vec<usize> },

    #[error("endomap is not idempotent (witness element {0})")]
    NotIdempotent(usize),

    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("unit law fails at element {0}")]
    UnitFails(usize),

    #[error("multiplication does not distribute over joins on the {side} at element {elem} with subset {subset:?}")]
    NotDistributive {
        side: Side,
        elem: usize,
        subset: Vec<usize>,
    },

    #[error("not a monoid: {0}")]
    NotAMonoid(String),

    #[error("unit action fails at module element {0}")]
    UnitActionFails(usize),

    #[error("action associativity fails at (m={0}, a={1}, b={2})")]
    ActionAssociativityFails(usize, usize, usize),

    #[error("not a bimorphism in the {side} variable (witness {witness:?})")]
    NotABimorphism { side: Side, witness: Vec<usize> },

    #[error("not a quantale morphism: {0}")]
    NotAQuantaleMorphism(String),

    #[error("not a module morphism (witness m={0}, a={1})")]
    NotAModuleMorphism(usize, usize),

    #[error("matrix shapes do not compose")]
    ShapeMismatch,

    #[error("operands live over different quantales")]
    QuantaleMismatch,

    #[error("budget exceeded: needs {needed} elements, allowed {allowed}")]
    BudgetExceeded { needed: usize, allowed: usize },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("check `{check}` failed: {witness}")]
    CheckFailed { check: String, witness: String },
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::UnknownSuite(_)
            | Error::UnknownName(_)
            | Error::InvalidArgument(_) => 2,
            Error::BudgetExceeded { .. } => 3,
            _ => 1,
        }
    }
}
