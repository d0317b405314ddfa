use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("N={n} has {edges} edges, above the enumeration limit of {limit}")]
    TooManyEdges { n: u32, edges: usize, limit: usize },

    #[error("orientation has {got} bits but the graph has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },

    #[error("digraph is not strongly connected")]
    NotStronglyConnected,

    #[error("coefficient does not fit in 128 bits")]
    CoefficientOverflow,

    #[error("cell N={n}, rho={rho}: {source}")]
    Cell {
        n: u32,
        rho: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
