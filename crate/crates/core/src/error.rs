use thiserror::Error;

/// Errors raised anywhere in the compile pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),

    #[error("{message}, line {line}")]
    Parse { line: usize, message: String },

    #[error("capacity: circuit needs {qubits} qubits but the tape holds {ions} ions")]
    Capacity { qubits: usize, ions: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unschedulable: gate {gate} spans {distance} slots, head covers {head_size}")]
    Unschedulable {
        gate: usize,
        distance: usize,
        head_size: usize,
    },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("generator: {0}")]
    Generator(String),

    #[error("oracle budget exceeded: {0}")]
    OracleOverflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
