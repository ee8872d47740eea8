use std::path::PathBuf;

use crate::channel::Point3;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero distance between user and antenna at ({x}, {y}, {z})")]
    Singularity { x: f64, y: f64, z: f64 },

    #[error("swarm initialization failed: {0}")]
    Initialization(String),

    #[error("no feasible placement found (best penalized fitness {best_fitness:.3} dB)")]
    NoFeasiblePlacement {
        best_fitness: f64,
        candidate: Vec<Point3>,
    },

    #[error("selecting {n} of {g} candidates is infeasible")]
    InfeasibleSelection { n: usize, g: usize },

    #[error("enumeration of C({g},{n}) = {count} placements exceeds the budget of {budget}")]
    EnumerationBudget {
        g: usize,
        n: usize,
        count: u128,
        budget: u128,
    },

    #[error("unknown scheme id `{0}`")]
    UnknownScheme(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
