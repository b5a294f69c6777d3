//! Graph arguments: named families, bundled datasets or edge-list files.

use std::fs;

use modlex::io::{parse_edge_list_with_warnings, Dataset};
use modlex::{Error, Graph};

/// A loaded graph and any warnings from parsing it.
pub struct Loaded {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Reads an edge list from `path`, or from stdin when `path` is `-`.
pub fn read_edge_list(path: &str) -> Result<Loaded, CliError> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Usage(format!("stdin: {e}")))?
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?
    };
    let parsed = parse_edge_list_with_warnings(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    Ok(Loaded { graph: parsed.graph, warnings: parsed.warnings })
}

pub fn dataset(name: &str) -> Result<Graph, CliError> {
    let d = Dataset::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = Dataset::ALL.iter().map(|d| d.name()).collect();
        CliError::Usage(format!("unknown dataset `{name}` (known: {})", known.join(", ")))
    })?;
    d.graph().map_err(CliError::Lib)
}

/// `K<n>`, `C<n>`, `P<n>`, `E<n>` (edgeless), a dataset name, or an edge-list path.
pub fn graph_spec(spec: &str) -> Result<Loaded, CliError> {
    let plain = |graph| Ok(Loaded { graph, warnings: Vec::new() });
    if let Some(d) = Dataset::from_name(spec) {
        return plain(d.graph().map_err(CliError::Lib)?);
    }
    let mut chars = spec.chars();
    if let (Some(kind), rest) = (chars.next(), chars.as_str()) {
        if let Ok(n) = rest.parse::<usize>() {
            match kind {
                'K' => return plain(Graph::complete(n)),
                'P' => return plain(Graph::path(n)),
                'E' => return plain(Graph::empty(n)),
                'C' => return plain(Graph::cycle(n).map_err(|_| CliError::Usage(format!("{spec}: cycles need n >= 3")))?),
                _ => {}
            }
        }
    }
    read_edge_list(spec)
}

/// Comma- or space-separated vertex ids.
pub fn id_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("invalid vertex id `{t}`"))))
        .collect()
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Lib(Error),
}

impl CliError {
    /// 2 for usage and parse errors, 4 for an exhausted budget, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Lib(Error::Parse { .. }) => 2,
            CliError::Lib(Error::BudgetExceeded) => 4,
            CliError::Lib(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Parse(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}
