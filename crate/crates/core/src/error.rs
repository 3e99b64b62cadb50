use std::fmt;

/// Errors raised by the algebra, locus and combinatorics routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A denominator evaluated to zero under a specialization.
    DenominatorVanishes,
    /// `q1^a q2^b = 1` for the witness pair in a context declared generic.
    GenericityViolation { a: u32, b: u32 },
    /// A torsion context whose declared pair is not a (minimal) torsion pair.
    TorsionViolation { a: u32, b: u32, reason: String },
    /// Two coordinates of an evaluation point coincide (pole of `1/Δ`).
    DistinctnessViolation { i: usize, j: usize },
    /// A coordinate is zero where a Laurent monomial or the `(ℂ*)^n` chart needs it nonzero.
    ZeroCoordinate { index: usize },
    ArityMismatch { expected: usize, found: usize },
    /// An exact division left a remainder. Always an internal bug.
    InexactDivision,
    /// A numerator that is not invariant under transposition of variables.
    NotSymmetric,
    /// `rewrite_step` called on a pair that already satisfies the normal-form condition.
    NotApplicable { position: usize },
    /// The rewriting budget ran out and the elimination fallback could not recover.
    Divergence { steps: usize },
    /// A grid subset in which some non-root vertex has no parent present.
    NotAdmissible,
    /// Two grid vertices were mapped to the same coordinate.
    CoordinateCollision { first: (u32, u32), second: (u32, u32) },
    /// A multiplicity condition failed on a sampled generator.
    ConditionFailure { condition: String, sample: usize, value: String },
    MalformedPath(String),
    Parse(String),
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DenominatorVanishes => write!(f, "denominator vanishes at the specialization"),
            Error::GenericityViolation { a, b } => {
                write!(f, "genericity violated: q1^{a} * q2^{b} = 1")
            }
            Error::TorsionViolation { a, b, reason } => {
                write!(f, "torsion pair ({a},{b}) rejected: {reason}")
            }
            Error::DistinctnessViolation { i, j } => {
                write!(f, "coordinates z{} and z{} coincide", i + 1, j + 1)
            }
            Error::ZeroCoordinate { index } => write!(f, "coordinate z{} is zero", index + 1),
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            Error::InexactDivision => write!(f, "internal error: inexact division"),
            Error::NotSymmetric => write!(f, "numerator is not symmetric"),
            Error::NotApplicable { position } => {
                write!(f, "word is already normal at position {position}")
            }
            Error::Divergence { steps } => write!(f, "rewriting did not terminate after {steps} steps"),
            Error::NotAdmissible => write!(f, "subset is not admissible"),
            Error::CoordinateCollision { first, second } => write!(
                f,
                "vertices ({},{}) and ({},{}) map to the same coordinate",
                first.0, first.1, second.0, second.1
            ),
            Error::ConditionFailure { condition, sample, value } => {
                write!(f, "condition {condition} failed on sample {sample}: value {value}")
            }
            Error::MalformedPath(msg) => write!(f, "malformed Dyck path: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
