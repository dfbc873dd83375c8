use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::{VertexId, MAX_VERTICES};

/// Coordinate-list edge array. Also the wire form of update batches.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl EdgeList {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let el = EdgeList { n, edges };
        el.validate()?;
        Ok(el)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_VERTICES {
            return Err(Error::malformed(format!(
                "{} vertices exceeds the supported maximum {MAX_VERTICES}",
                self.n
            )));
        }
        if let Some(&(u, v)) = self
            .edges
            .iter()
            .find(|&&(u, v)| u as usize >= self.n || v as usize >= self.n)
        {
            return Err(Error::malformed(format!(
                "edge ({u}, {v}) has an endpoint >= n = {}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Parses the text format: one `u v` pair per line, `#` and `%` lines
    /// are comments. A comment of the form `# vertices N` fixes the vertex
    /// count; otherwise it is one past the largest endpoint.
    pub fn read_text(reader: impl BufRead, origin: &Path) -> Result<Self> {
        let mut edges = Vec::new();
        let mut declared: Option<usize> = None;
        let mut max_id: Option<u64> = None;
        let parse_err = |line: usize, message: String| Error::Parse {
            path: origin.to_path_buf(),
            line,
            message,
        };
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix('#').or_else(|| t.strip_prefix('%')) {
                let mut words = rest.split_whitespace();
                if words.next() == Some("vertices") {
                    let n = words
                        .next()
                        .and_then(|w| w.parse::<usize>().ok())
                        .ok_or_else(|| parse_err(lineno, "bad vertex-count header".into()))?;
                    declared = Some(n);
                }
                continue;
            }
            let mut words = t.split_whitespace();
            let mut endpoint = |what: &str| -> Result<u64> {
                let w = words
                    .next()
                    .ok_or_else(|| parse_err(lineno, format!("missing {what} endpoint")))?;
                let id = w
                    .parse::<u64>()
                    .map_err(|_| parse_err(lineno, format!("unparsable vertex id {w:?}")))?;
                if id >= MAX_VERTICES as u64 {
                    return Err(parse_err(lineno, format!("vertex id {id} out of range")));
                }
                Ok(id)
            };
            let u = endpoint("source")?;
            let v = endpoint("target")?;
            if let Some(extra) = words.next() {
                return Err(parse_err(lineno, format!("unexpected token {extra:?}")));
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u as VertexId, v as VertexId));
        }
        let implied = max_id.map_or(0, |m| m as usize + 1);
        let n = match declared {
            Some(n) if n < implied => {
                return Err(Error::malformed(format!(
                    "{}: header declares {n} vertices but ids reach {}",
                    origin.display(),
                    implied - 1
                )))
            }
            Some(n) => n,
            None => implied,
        };
        Ok(EdgeList { n, edges })
    }

    pub fn write_text(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "# vertices {}", self.n)?;
        for &(u, v) in &self.edges {
            writeln!(w, "{u} {v}")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_text(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_text(BufWriter::new(File::create(path)?))
    }
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<EdgeList> {
    let path = path.as_ref();
    let file = File::open(path)?;
    EdgeList::read_text(BufReader::new(file), path)
}
