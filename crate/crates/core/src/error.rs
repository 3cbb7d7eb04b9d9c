use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("colour {colour} is not valid for a {colours}-coloured graph")]
    InvalidColour { colour: usize, colours: usize },

    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("operation needs a {expected}-coloured graph, got {found} colours")]
    WrongArity { expected: usize, found: usize },

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("not a dipole: {0}")]
    NotADipole(String),

    #[error("generalized dipole does not match the graph: {0}")]
    StaleDipole(String),

    #[error("not a rho-pair: {0}")]
    NotARhoPair(String),

    #[error("switching the rho-pair disconnects the graph")]
    SwitchDisconnects,

    #[error("rigidification exceeded {0} steps")]
    RigidifyLimit(usize),

    #[error("move sequence ({k}, {i}) is not in the sequence set")]
    InvalidSequence { k: usize, i: usize },

    #[error("class {class} carries conflicting names {first:?} and {second:?}")]
    NameConflict { class: usize, first: String, second: String },

    #[error("invalid gluing: {0}")]
    Gluing(String),

    #[error("invalid file: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Short stable identifier, used by the command-line tool for
    /// machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidColour { .. } => "invalid-colour",
            Error::VertexOutOfRange { .. } => "vertex-out-of-range",
            Error::Disconnected => "disconnected",
            Error::WrongArity { .. } => "wrong-arity",
            Error::MalformedGraph(_) => "malformed-graph",
            Error::Parse { .. } => "parse",
            Error::NotADipole(_) => "not-a-dipole",
            Error::StaleDipole(_) => "stale-dipole",
            Error::NotARhoPair(_) => "not-a-rho-pair",
            Error::SwitchDisconnects => "switch-disconnects",
            Error::RigidifyLimit(_) => "rigidify-limit",
            Error::InvalidSequence { .. } => "invalid-sequence",
            Error::NameConflict { .. } => "name-conflict",
            Error::Gluing(_) => "gluing",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
            Error::Internal(_) => "internal",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
