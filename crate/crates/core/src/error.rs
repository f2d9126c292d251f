use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("edge {u}-{v} has non-positive weight")]
    NonPositiveWeight { u: String, v: String },

    #[error("duplicate edge {u}-{v} (encode multiplicity in the weight)")]
    DuplicateEdge { u: String, v: String },

    #[error("function has no value at vertex `{0}`")]
    MissingValue(String),

    #[error("neighborhood of `{0}` is truncated; materialize a larger ball")]
    TruncatedNeighborhood(String),

    #[error("invalid exponent q = {0}")]
    InvalidExponent(f64),

    #[error("rational mode requires tolerance 0")]
    NonzeroExactTolerance,

    #[error("function is negative at `{vertex}`")]
    Negative { vertex: String },

    #[error("function is not subharmonic at `{vertex}` (laplacian {laplacian})")]
    NotSubharmonic { vertex: String, laplacian: String },

    #[error("degenerate cutoff: need 0 < r < R - 1, got r = {r}, R = {outer}")]
    DegenerateCutoff { r: usize, outer: usize },

    #[error("ball of radius {required} around `{center}` exceeds the materialized graph")]
    BallExceedsGraph { center: String, required: usize },

    #[error("domain too large for the available data: needs halo depth {required}")]
    HaloDepth { required: usize },

    #[error("support of the test function leaks outside the known domain at `{0}`")]
    SupportLeak(String),

    #[error("no boundary data: the domain has an empty boundary")]
    NoBoundary,

    #[error("domain is disconnected; stranded component contains {0:?}")]
    DisconnectedDomain(Vec<String>),

    #[error("no boundary value at `{0}`")]
    MissingBoundaryValue(String),

    #[error("iterative solver did not converge after {iterations} sweeps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("internal solver defect: {0}")]
    SolverDefect(String),

    #[error("radius {requested} exceeds the cap {cap} for family `{family}`")]
    RadiusCap {
        family: String,
        requested: usize,
        cap: usize,
    },

    #[error("family `{0}` has no certified lower bound on vertex measures")]
    NoMeasureBound(String),

    #[error("function vanishes identically; ratio undefined")]
    ZeroFunction,

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("unsupported lattice dimension {0}")]
    UnsupportedDimension(usize),

    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("cannot parse `{0}` as a scalar")]
    ParseScalar(String),

    #[error("non-finite value {0}")]
    NonFinite(f64),

    #[error("need at least two radii, got {0}")]
    InsufficientRadii(usize),

    #[error("generator `{family}` failed: {source}")]
    Generator {
        family: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
