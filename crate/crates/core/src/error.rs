use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("the rationals cannot be enumerated")]
    NotEnumerable,

    #[error("modulus {0} is not a supported prime")]
    NonPrimeModulus(u64),

    #[error("classification routines need characteristic != 2, 3 (got {0})")]
    ClassificationCharUnsupported(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("algebra is not commutative")]
    NotCommutative,

    #[error("algebra is not a Jacobi-Jordan algebra")]
    NotJacobiJordan,

    #[error("action does not satisfy the JJ module axiom")]
    NotAModule,

    #[error("action operators do not pairwise anticommute")]
    ActionNotAnticommuting,

    #[error("invalid crossed system: {0}")]
    InvalidCrossedSystem(String),

    #[error("invalid semidirect system: {0}")]
    InvalidSemidirectSystem(String),

    #[error("linear map is not an algebra map")]
    NotAlgebraMap,

    #[error("linear map is not surjective")]
    NotSurjective,

    #[error("map is not a section of the projection")]
    NotSection,

    #[error("linear functional violates lambda(a.b) = -2 lambda(a) lambda(b)")]
    InvalidLambda,

    #[error("invalid co-flag datum: {0}")]
    InvalidCoflagDatum(String),

    #[error("element is not in the Leibniz center")]
    NotCentral,

    #[error("alpha must be nonzero")]
    ZeroAlpha,

    #[error("central element must be nonzero")]
    ZeroCentral,

    #[error("Leibniz center is zero")]
    EmptyCenter,

    #[error("search cap {cap} exceeded after {explored} candidates")]
    CapExceeded { cap: u64, explored: u64 },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown basis name `{name}` at {line}:{column}")]
    UnknownBasisName {
        line: usize,
        column: usize,
        name: String,
    },
}
