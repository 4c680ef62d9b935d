//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by exact and numeric operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Division of scalars by zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A partition argument was not weakly decreasing.
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<u32>),
    /// Two operands live in different ambient dimensions.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    /// Exact polynomial division left a remainder (internal arithmetic bug).
    #[error("polynomial not divisible by the linear form")]
    NonDivisible,
    /// Evaluation requested with a parameter still symbolic.
    #[error("symbolic parameter remaining in evaluation")]
    SymbolicParameterRemaining,
    /// A root list is not closed under its own reflections.
    #[error("root set is not closed under its reflections")]
    NotClosed,
    /// A root system contains a line with more than two roots.
    #[error("root system is not reduced")]
    NotReduced,
    /// A requested system needs irrational coordinates (H3, H4, generic I2(m)).
    #[error("root system requires irrational coordinates: {0}")]
    IrrationalCoordinates(String),
    /// Unknown or unsupported type/rank combination.
    #[error("unsupported root system type: {0}")]
    UnsupportedType(String),
    /// Group enumeration would exceed the element cap.
    #[error("group order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: u128, cap: u128 },
    /// A matrix does not belong to the reflection group.
    #[error("element is not in the reflection group")]
    NotInGroup,
    /// Numeric multiplicity lies in the singular set for this operation.
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    /// A Pochhammer denominator involving gamma_kappa vanished.
    #[error("singular gamma denominator: {0}")]
    SingularGamma(String),
    /// The one-class closed form was requested for a multi-class system.
    #[error("root system has more than one reflection class")]
    NotOneClass,
    /// An exchange-step denominator vanished at numeric kappa.
    #[error("spectral separation failure at i={index}, alpha={alpha:?}")]
    SeparationFailure { index: usize, alpha: Vec<u32> },
    /// Composition arguments of different lengths.
    #[error("composition length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    /// A three-term recurrence hit a vanishing denominator.
    #[error("recurrence pole: {0}")]
    RecurrencePole(String),
    /// A closed-form denominator vanished (documented exceptional case).
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    /// A certified tail bound cannot reach the requested tolerance.
    #[error("tolerance unreachable: needed more than {cap} kernel terms")]
    ToleranceUnreachable { cap: usize },
    /// A Gamma factor was evaluated at a pole.
    #[error("gamma pole at argument {0}")]
    GammaPole(f64),
    /// Text input did not match the scalar/polynomial grammar.
    #[error("parse error: {0}")]
    Parse(String),
    /// Symbolic mode supports at most two multiplicity parameters.
    #[error("too many symbolic parameters: {0} classes, max 2")]
    TooManyParameters(usize),
    /// A verification suite name did not match any known suite.
    #[error("unknown verification suite: {0}")]
    UnknownSuite(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
