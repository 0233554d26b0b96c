use std::fmt;
use std::path::Path;

use handelman::graph::{generate, Family, WeightMode, WeightedGraph};
use handelman::Error;

#[derive(Debug)]
pub enum CliError {
    Io(String, std::io::Error),
    Lib(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    /// 2 for bad input, 1 for failures during computation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 2,
            CliError::Lib(e) => match e {
                Error::Parse { .. }
                | Error::BadRational(_)
                | Error::Json(_)
                | Error::InvalidParameter(_)
                | Error::InvalidGraph(_)
                | Error::InvalidVertex { .. }
                | Error::TooManyVertices(_)
                | Error::OrderOutOfRange { .. } => 2,
                _ => 1,
            },
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

/// Reads a graph file, or generates a family when `source` is not a file.
pub fn load_graph(source: &str, mode: Option<WeightMode>, seed: u64) -> Result<WeightedGraph, CliError> {
    let path = Path::new(source);
    let g = if path.exists() {
        WeightedGraph::parse(&read_file(path)?)?
    } else {
        let source = if source.starts_with("random:") && source.matches(':').count() == 2 {
            format!("{source}:{seed}")
        } else {
            source.to_string()
        };
        match source.parse::<Family>() {
            Ok(family) => return Ok(generate(&family, mode.unwrap_or_default())?),
            Err(_) => {
                return Err(CliError::Io(
                    source,
                    std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or graph family"),
                ))
            }
        }
    };
    Ok(match mode {
        Some(WeightMode::Unit) => WeightedGraph::unit(g.graph().clone()),
        Some(m) => g.reweighted(g.node_weights().to_vec(), m)?,
        None => g,
    })
}
