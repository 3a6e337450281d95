use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("characteristic 2 is not supported")]
    CharTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not square-free")]
    NotSquareFree(i64),
    #[error("{0} is a square, Q(sqrt {0}) is not a field")]
    IsSquare(i64),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,

    // quadratic spaces
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("a quadratic space needs dimension at least 1")]
    EmptySpace,
    #[error("diagonal coefficient {0} is zero, the form is degenerate")]
    ZeroDiagonal(usize),
    #[error("no anisotropic form of dimension {0} exists over a finite field")]
    NoAnisotropicForm(usize),
    #[error("encountered a nonzero isotropic vector {0} in E")]
    IsotropicVectorEncountered(String),

    // cycles
    #[error("objects live over different quadratic spaces")]
    SpaceMismatch,
    #[error("the zero function is not a cycle")]
    ZeroFunction,
    #[error("cycle is not a circle (a = 0)")]
    NotACircle,
    #[error("cycle is not a line")]
    NotALine,
    #[error("cycle is not isotropic")]
    NotIsotropic,

    // transforms
    #[error("mirror cycle is isotropic")]
    IsotropicMirror,
    #[error("circle has size zero")]
    ZeroSizeCircle,
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("matrix is singular")]
    SingularMatrix,

    // pencils
    #[error("cycles are linearly dependent")]
    DependentCycles,
    #[error("pencil has no isotropic members over this field")]
    NoRationalMembers,

    // lorentz
    #[error("zero vector")]
    ZeroVector,

    // projective line
    #[error("quadric is degenerate")]
    DegenerateQuadric,
    #[error("pencil of quadrics is singular")]
    SingularPencil,

    // nine-point
    #[error("points are collinear")]
    Collinear,
    #[error("altitudes are degenerate: side direction is self-orthogonal")]
    DegenerateAltitudes,
    #[error("orthocenter lies on a side line")]
    OrthocenterOnSide,
    #[error("conic is degenerate")]
    DegenerateConic,
    #[error("pencil restricted to the line is singular")]
    SingularRestriction,
    #[error("only {found} usable pencil members found, need {needed}")]
    NotEnoughSamples { found: usize, needed: usize },
    #[error("pole locus verification failed")]
    PoleLocusMismatch,
    #[error("conic is not a circle")]
    NotCircular,
    #[error("diagonal line pair is parallel")]
    ParallelDiagonalPair,
}
