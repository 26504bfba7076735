use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("edge ({}, {}) is not in the graph", .0.0, .0.1)]
    EdgeNotInGraph(Edge),
    #[error("cycle enumeration exceeded its budget of {budget} expansions")]
    BudgetExceeded { budget: u64 },
    #[error("n * d must be even (n = {n}, d = {d})")]
    DegreeParity { n: usize, d: usize },
    #[error("no simple pairing found after {attempts} restarts")]
    RejectionLimit { attempts: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("eigensolver did not converge (off-diagonal residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },
    #[error("zero vector")]
    ZeroVector,

    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not connected")]
    NotConnected,
    #[error("requested {requested} dimensions but at most {available} are available")]
    InsufficientDimension { requested: usize, available: usize },
    #[error("dimension {n} is too small (need at least 3)")]
    DimensionTooSmall { n: usize },
    #[error("representation must have exactly 2 rows to render, found {rows}")]
    WrongDimension { rows: usize },
    #[error("graph needs at least two vertices")]
    TrivialGraph,
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dual certificate invalid: min eigenvalue of M is {min_eig:e}")]
    CertificateInvalid { min_eig: f64 },
    #[error("primal solution and certificate refer to different graphs ({primal} vs {dual} vertices)")]
    GraphMismatch { primal: usize, dual: usize },

    #[error("edges {} and {} are at distance {distance}, need at least {required}", fmt_edge(.e), fmt_edge(.ebar))]
    TooClose { e: Edge, ebar: Edge, distance: usize, required: usize },
    #[error("no perfect edge pairing at radius {k}: matched {matched} of {edges} edges")]
    NoPairing { k: usize, matched: usize, edges: usize },
    #[error("girth {girth} is too small, need girth > {required}")]
    GirthTooSmall { girth: usize, required: usize },
    #[error("column {vertex} has squared norm {norm_sq}, expected 1")]
    NotUnit { vertex: usize, norm_sq: f64 },
    #[error("weight profile violates f(v) <= f(V)/2 at vertex {vertex}")]
    StarViolated { vertex: usize },
}

fn fmt_edge(e: &Edge) -> String {
    format!("({}, {})", e.0, e.1)
}
