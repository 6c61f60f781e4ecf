use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("iota is not an involution at half-edge {0}")]
    NotInvolution(usize),
    #[error("{name} is not a permutation of 0..{n}")]
    NotPermutation { name: &'static str, n: usize },
    #[error("iota and sigma do not act transitively ({orbits} orbits)")]
    NotTransitive { orbits: usize },
    #[error("vertices {0} and {1} have the same position")]
    CoincidentVertices(usize, usize),
    #[error("images of edges through half-edges {0} and {1} overlap in their interiors")]
    EdgeInteriorOverlap(usize, usize),
    #[error("closed edge through half-edge {0} is a loop")]
    LoopEdge(usize),
    #[error("sigma does not list the half-edges at vertex {0} in anticlockwise order")]
    RotationMismatch(usize),
    #[error("Euler relation fails: |V|-|E|+|R|+|F| = {0}")]
    EulerViolation(i64),
    #[error("half-edge {0} has a non-finite or missing value")]
    NonFinite(usize),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("phase is not antisymmetric on half-edges {0} and {1}")]
    PhaseNotAntisymmetric(usize, usize),
    #[error("upsilon at half-edge {0} is not positive")]
    UpsilonNotPositive(usize),
    #[error("closed half-edge {0} has zero length")]
    ZeroLengthEdge(usize),
    #[error("graph has no closed edges")]
    NoClosedEdges,
    #[error("graph is not horizontally rigid (rank {rank} < {expected})")]
    NotRigid { rank: usize, expected: usize },
    #[error("phases are not vertically rigid (rank {rank} < {expected})")]
    NotVerticallyRigid { rank: usize, expected: usize },
    #[error("graph is not balanced (residual {0:e})")]
    NotBalanced(f64),
    #[error("phase function is not balanced (residual {0:e})")]
    PhaseNotBalanced(f64),
    #[error("Newton iteration diverged at eps = {eps} (residual {residual:e})")]
    NewtonDivergence { eps: f64, residual: f64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("vertex {0} has fewer than two edges pointing to the left")]
    LeftEdgeLemmaFailure(usize),
    #[error("graph is not a simple line arrangement")]
    NotLineArrangement,
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by the mathematical content of a well-formed input, as
    /// opposed to malformed files or I/O.
    pub fn is_mathematical(&self) -> bool {
        !matches!(
            self,
            Error::Io(_) | Error::SchemaViolation(_) | Error::UnknownExample(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
