use thiserror::Error;

use crate::space::Component;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operands live on incompatible ambient spaces")]
    SpaceMismatch,
    #[error("operands refer to different conditional expectations")]
    CondExpMismatch,
    #[error("length {got} does not match space size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("finite space must have between 1 and {max} points, got {got}")]
    InvalidSize { max: usize, got: usize },
    #[error("weight of point {point} must be strictly positive")]
    NonPositiveWeight { point: usize },
    #[error("weight of point {point} is negative")]
    NegativeWeight { point: usize },
    #[error("all weights are zero")]
    AllWeightsZero,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("vector is not block-constant on block {block}")]
    NotBlockConstant { block: usize },
    #[error("the root of {value} is not rational")]
    NonRationalRoot { value: String },
    #[error("fractional power of a negative entry at point {point}")]
    NegativeBase { point: usize },
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("vector is not dominated by any multiple of the bound (point {point})")]
    NotDominated { point: usize },
    #[error("expected a positive vector (negative at point {point})")]
    NotPositive { point: usize },
    #[error("charge is not additive on the disjoint pair {p} and {q}")]
    NotAdditive { p: Component, q: Component },
    #[error("charge table does not assign a value to component {0}")]
    MissingComponent(Component),
    #[error("charge is not T-absolutely continuous (witness component {witness})")]
    NotAbsolutelyContinuous { witness: Component },
    #[error("functional is not R(T)-homogeneous (witness atom {atom})")]
    NotHomogeneous { atom: usize },
    #[error("not a weak order unit of the form required: {0}")]
    InvalidUnit(String),
    #[error("charges are defined on components of different weak order units")]
    UnitMismatch,
    #[error("enumeration over {points} points exceeds the configured bound {bound}")]
    TooLarge { points: usize, bound: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}
