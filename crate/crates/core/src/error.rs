use thiserror::Error;

/// Errors shared by every model and estimator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: out-of-range generators, broken distance oracles,
    /// singular matrices, mismatched ambient groups and the like.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured budget (degree cap, census cap, integer width) was exceeded.
    /// `partial` carries whatever estimate was available before the cap hit.
    #[error("resource limit exceeded: {message}")]
    Resource {
        message: String,
        raw_degree: Option<u64>,
        partial: Option<f64>,
        /// Degree sequence computed before the cap was hit, if any.
        sequence: Vec<u64>,
    },

    /// The requested operation has no exact implementation for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Composition over the current prime degenerated (all-zero triple);
    /// the computation should be repeated at a different prime.
    #[error("degenerate reduction modulo {prime}; retry at another prime")]
    BadPrime { prime: u64 },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource {
            message: msg.into(),
            raw_degree: None,
            partial: None,
            sequence: Vec::new(),
        }
    }

    pub fn degree_cap(msg: impl Into<String>, raw_degree: u64) -> Self {
        Error::Resource {
            message: msg.into(),
            raw_degree: Some(raw_degree),
            partial: None,
            sequence: Vec::new(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }

    /// Attaches a partial estimate to a resource error; other variants pass through.
    pub fn with_partial(self, estimate: f64) -> Self {
        match self {
            Error::Resource {
                message,
                raw_degree,
                sequence,
                ..
            } => Error::Resource {
                message,
                raw_degree,
                partial: Some(estimate),
                sequence,
            },
            other => other,
        }
    }

    /// Attaches the degree sequence computed so far to a resource error.
    pub fn with_sequence(self, degrees: Vec<u64>) -> Self {
        match self {
            Error::Resource {
                message,
                raw_degree,
                partial,
                ..
            } => Error::Resource {
                message,
                raw_degree,
                partial,
                sequence: degrees,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
