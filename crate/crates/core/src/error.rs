use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("graph must have at least two vertices")]
    EmptyGraph,
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) has non-positive or non-finite weight")]
    NonpositiveWeight(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("linear solve failed: {0}")]
    SingularSolve(String),
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),
    #[error("eigensolver did not converge")]
    EigensolveFailure,
    #[error("spectral measure is zero; cannot normalize")]
    ZeroMeasure,
    #[error("operation not defined for operator kind {0}")]
    WrongOperatorKind(String),
    #[error("chain is periodic (bipartite graph); relaxation time is infinite")]
    BipartiteChain,
    #[error("target set is empty")]
    EmptyTarget,
    #[error("graph is bipartite; energy efficiency is zero")]
    BipartiteGraph,
    #[error("vertex sequence is not an edge-simple path: {0}")]
    NotAPath(String),
    #[error("selection threshold below the bottom of the spectrum")]
    EmptySelection,
    #[error("envelope is not monotone: {0}")]
    NonMonotoneEnvelope(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("growth constants not certified: {0}")]
    UncertifiedGrowth(String),
    #[error("graph failed the transitivity screen: {0}")]
    NotTransitive(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bad generator spec: {0}")]
    BadSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
