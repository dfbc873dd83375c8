use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use super::edge_list::{load_edge_list, EdgeList};
use crate::error::{Error, Result};
use crate::{VertexId, MAX_VERTICES};

/// Leading bytes of the binary CSR format.
pub const BINARY_MAGIC: &[u8; 4] = b"GCN1";

/// Symmetric, unweighted graph in compressed sparse row form.
///
/// Each vertex's neighbor range `targets[offsets[v]..offsets[v + 1]]` is
/// strictly increasing, and `(u, v)` is stored iff `(v, u)` is.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u64>,
    targets: Vec<VertexId>,
}

impl Graph {
    pub fn num_vertices(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    /// Number of directed edges (twice the undirected edge count).
    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    /// Position of the first neighbor of `v` in [`Graph::targets`].
    #[inline]
    pub fn edge_start(&self, v: VertexId) -> usize {
        self.offsets[v as usize] as usize
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.num_vertices() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_vertices() as VertexId)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Flattens back to a coordinate list holding every directed edge.
    pub fn to_edge_list(&self) -> EdgeList {
        let mut edges = Vec::with_capacity(self.num_edges());
        for u in 0..self.num_vertices() as VertexId {
            edges.extend(self.neighbors(u).iter().map(|&v| (u, v)));
        }
        EdgeList {
            n: self.num_vertices(),
            edges,
        }
    }

    /// Undirected edges with `u < v`, each once.
    pub fn undirected_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut edges = Vec::with_capacity(self.num_edges() / 2);
        for u in 0..self.num_vertices() as VertexId {
            edges.extend(self.neighbors(u).iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        edges
    }

    /// Checks the structural invariants; used on untrusted binary input.
    pub fn check(&self) -> Result<()> {
        let n = self.num_vertices();
        if self.offsets.is_empty() || self.offsets[0] != 0 {
            return Err(Error::malformed("offsets must start at 0"));
        }
        if *self.offsets.last().unwrap() as usize != self.targets.len() {
            return Err(Error::malformed("last offset must equal the edge count"));
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::malformed("offsets must be nondecreasing"));
        }
        for u in 0..n as VertexId {
            let nbrs = self.neighbors(u);
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::malformed(format!("neighbors of {u} not strictly increasing")));
            }
            for &v in nbrs {
                if v as usize >= n || v == u {
                    return Err(Error::malformed(format!("bad edge ({u}, {v})")));
                }
                if !self.has_edge(v, u) {
                    return Err(Error::malformed(format!("edge ({u}, {v}) has no reverse")));
                }
            }
        }
        Ok(())
    }

    pub fn write_binary(&self, w: impl Write) -> Result<()> {
        let mut w = BufWriter::new(w);
        w.write_all(BINARY_MAGIC)?;
        w.write_u64::<LittleEndian>(self.num_vertices() as u64)?;
        w.write_u64::<LittleEndian>(self.num_edges() as u64)?;
        for &o in &self.offsets {
            w.write_u64::<LittleEndian>(o)?;
        }
        for &t in &self.targets {
            w.write_u32::<LittleEndian>(t)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_binary(r: impl Read) -> Result<Self> {
        let mut r = BufReader::new(r);
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != BINARY_MAGIC {
            return Err(Error::malformed("missing GCN1 magic"));
        }
        let n = r.read_u64::<LittleEndian>()? as usize;
        let m = r.read_u64::<LittleEndian>()? as usize;
        if n > MAX_VERTICES {
            return Err(Error::malformed(format!("vertex count {n} too large")));
        }
        let mut offsets = vec![0u64; n + 1];
        r.read_u64_into::<LittleEndian>(&mut offsets)?;
        let mut targets = vec![0u32; m];
        r.read_u32_into::<LittleEndian>(&mut targets)?;
        let g = Graph { offsets, targets };
        g.check()?;
        Ok(g)
    }

    pub fn save_binary(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_binary(File::create(path)?)
    }
}

/// Builds a symmetric CSR graph: both directions materialized, self-loops
/// dropped, parallel edges merged, neighbor ranges sorted.
pub fn build_csr(el: &EdgeList) -> Result<Graph> {
    el.validate()?;
    let n = el.n;
    let mut degree = vec![0u64; n + 1];
    for &(u, v) in &el.edges {
        if u != v {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
    }
    let mut offsets = vec![0u64; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + degree[v];
    }
    let mut cursor: Vec<u64> = offsets[..n].to_vec();
    let mut targets = vec![0 as VertexId; offsets[n] as usize];
    for &(u, v) in &el.edges {
        if u != v {
            targets[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }
    }
    drop(cursor);

    // sort + dedup each range, compacting in place
    let mut write = 0usize;
    let mut new_offsets = vec![0u64; n + 1];
    for v in 0..n {
        let (lo, hi) = (offsets[v] as usize, offsets[v + 1] as usize);
        targets[lo..hi].sort_unstable();
        let mut last: Option<VertexId> = None;
        for i in lo..hi {
            let t = targets[i];
            if last != Some(t) {
                targets[write] = t;
                write += 1;
                last = Some(t);
            }
        }
        new_offsets[v + 1] = write as u64;
    }
    targets.truncate(write);
    targets.shrink_to_fit();
    Ok(Graph {
        offsets: new_offsets,
        targets,
    })
}

/// Loads either format, sniffing the binary magic.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let mut f = File::open(path)?;
    let mut head = [0u8; 4];
    let got = f.read(&mut head)?;
    if got == 4 && &head == BINARY_MAGIC {
        return Graph::read_binary(File::open(path)?);
    }
    build_csr(&load_edge_list(path)?)
}
