use std::fmt;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument outside the domain of an operation (negative cost input,
    /// NaN objective, unknown edge, mismatched partition, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed or inconsistent input data (instance files, CSV files,
    /// stored results).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The candidate graph does not connect all nodes.
    #[error("network is disconnected: {}", Components(.components))]
    Disconnected { components: Vec<Vec<usize>> },

    #[error("I/O error on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

struct Components<'a>(&'a [Vec<usize>]);

impl fmt::Display for Components<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} components", self.0.len())?;
        for (i, c) in self.0.iter().enumerate() {
            let ids: Vec<String> = c.iter().map(|id| id.to_string()).collect();
            write!(f, "{} {{{}}}", if i == 0 { ":" } else { "," }, ids.join(", "))?;
        }
        Ok(())
    }
}
