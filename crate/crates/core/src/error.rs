use thiserror::Error;

use crate::spectra::MatrixKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has {found} vertices but the ambient complete graph only has {ambient}")]
    SubgraphTooLarge { found: usize, ambient: usize },

    #[error("operation requires at least one vertex")]
    EmptyGraph,

    #[error("graph order {0} exceeds the dense storage limit")]
    TooLarge(usize),

    #[error("operation requires at least {needed} vertices, got {found}")]
    TooFewVertices { needed: usize, found: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("spectra of different kinds: {0:?} vs {1:?}")]
    KindMismatch(MatrixKind, MatrixKind),

    #[error("rule requires a Laplacian spectrum ending in zero: {0}")]
    NotLaplacian(String),

    #[error("rule spectrum has {rule} values but the graph has {graph} vertices")]
    LengthMismatch { rule: usize, graph: usize },

    #[error("input graphs differ: (n, m) = ({n1}, {m1}) vs ({n2}, {m2})")]
    MismatchedPair { n1: usize, m1: usize, n2: usize, m2: usize },

    #[error("recipe {recipe} requires connected inputs")]
    Disconnected { recipe: String },

    #[error("recipe {recipe} can never be satisfied: spectral bound {bound} is not positive")]
    ConditionUnsatisfiable { recipe: String, bound: f64 },

    #[error("precondition of {recipe} fails at p = {p}: {clause}")]
    PreconditionFailed { recipe: String, p: usize, clause: String },

    #[error("recipe {0} has no printed closed form")]
    NoClosedForm(String),

    #[error("input pair is not L-equienergetic: |LE difference| = {diff:e}")]
    NotEquienergeticInput { diff: f64 },

    #[error("multi-join needs at least two pairs, got {0}")]
    TooFewPairs(usize),

    #[error("graphs have different orders: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("unknown recipe id `{0}`")]
    UnknownRecipe(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
