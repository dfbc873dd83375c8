//! Synthetic graph generators. All of them are deterministic per seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::EdgeList;
use crate::error::{Error, Result};
use crate::{VertexId, MAX_VERTICES};

/// Graph500 quadrant probabilities.
pub const RMAT_DEFAULT: (f64, f64, f64) = (0.57, 0.19, 0.19);

/// Quadrant probabilities used by the incremental experiments.
pub const RMAT_STREAM: (f64, f64, f64) = (0.5, 0.1, 0.1);

// Per-level multiplicative jitter applied to each quadrant probability.
const RMAT_NOISE: f64 = 0.1;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Recursive-matrix generator: `edge_factor * 2^scale` samples over
/// `2^scale` vertices. Quadrant probabilities are jittered by up to ±10%
/// independently at every recursion level, then renormalized.
pub fn gen_rmat(scale: u32, edge_factor: usize, a: f64, b: f64, c: f64, seed: u64) -> Result<EdgeList> {
    if scale == 0 || scale > 30 {
        return Err(Error::config(format!("rmat scale must be in 1..=30, got {scale}")));
    }
    if [a, b, c].iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::config("rmat probabilities must lie in [0, 1]"));
    }
    if a + b + c > 1.0 + 1e-12 {
        return Err(Error::config(format!(
            "rmat probabilities sum to {} > 1",
            a + b + c
        )));
    }
    let d = (1.0 - a - b - c).max(0.0);
    let n = 1usize << scale;
    let m = edge_factor * n;
    let mut rng = rng(seed);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (mut u, mut v) = (0u32, 0u32);
        for level in (0..scale).rev() {
            let mut jitter = |p: f64| p * (1.0 - RMAT_NOISE + 2.0 * RMAT_NOISE * rng.random::<f64>());
            let (pa, pb, pc, pd) = (jitter(a), jitter(b), jitter(c), jitter(d));
            let total = pa + pb + pc + pd;
            let r = rng.random::<f64>() * total;
            let bit = 1u32 << level;
            if r < pa {
            } else if r < pa + pb {
                v |= bit;
            } else if r < pa + pb + pc {
                u |= bit;
            } else {
                u |= bit;
                v |= bit;
            }
        }
        edges.push((u, v));
    }
    Ok(EdgeList { n, edges })
}

/// Barabási–Albert preferential attachment. Vertex `v` arrives with
/// `min(attach, v)` edges to distinct earlier vertices chosen with
/// probability proportional to their degree, so the result is connected.
pub fn gen_ba(n: usize, attach: usize, seed: u64) -> Result<EdgeList> {
    if attach == 0 {
        return Err(Error::config("attach must be at least 1"));
    }
    if n <= attach {
        return Err(Error::config(format!("need n > attach, got n={n}, attach={attach}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::config("too many vertices"));
    }
    let mut rng = rng(seed);
    // every edge endpoint, so a uniform pick is degree-proportional
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * n * attach);
    let mut edges = Vec::with_capacity(n * attach);
    let mut chosen: Vec<VertexId> = Vec::with_capacity(attach);
    for v in 1..n as VertexId {
        chosen.clear();
        if (v as usize) <= attach {
            chosen.extend(0..v);
        } else {
            while chosen.len() < attach {
                let t = endpoints[rng.random_range(0..endpoints.len())];
                if !chosen.contains(&t) {
                    chosen.push(t);
                }
            }
        }
        for &t in &chosen {
            edges.push((v, t));
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    Ok(EdgeList { n, edges })
}

pub fn path(n: usize) -> EdgeList {
    let edges = (1..n as VertexId).map(|v| (v - 1, v)).collect();
    EdgeList { n, edges }
}

/// `rows x cols` 4-connected grid, row-major ids.
pub fn grid(rows: usize, cols: usize) -> EdgeList {
    let id = |r: usize, c: usize| (r * cols + c) as VertexId;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    EdgeList {
        n: rows * cols,
        edges,
    }
}

/// Star centered at vertex 0.
pub fn star(n: usize) -> EdgeList {
    let edges = (1..n as VertexId).map(|v| (0, v)).collect();
    EdgeList { n, edges }
}

pub fn clique(n: usize) -> EdgeList {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            edges.push((u, v));
        }
    }
    EdgeList { n, edges }
}

/// Erdős–Rényi G(n, p) over unordered pairs, sampled by geometric skips.
pub fn gnp(n: usize, p: f64, seed: u64) -> EdgeList {
    let mut edges = Vec::new();
    if n < 2 || p <= 0.0 {
        return EdgeList { n, edges };
    }
    let mut rng = rng(seed);
    let total = (n as u64) * (n as u64 - 1) / 2;
    let log_q = (1.0 - p.min(1.0 - 1e-12)).ln();
    let mut idx: u64 = 0;
    let mut row: u64 = 1;
    let mut row_start: u64 = 0;
    loop {
        let r: f64 = rng.random::<f64>();
        let skip = if p >= 1.0 { 0 } else { ((1.0 - r).ln() / log_q).floor() as u64 };
        idx = match idx.checked_add(skip) {
            Some(i) if i < total => i,
            _ => break,
        };
        // pair index -> (row, col) with col < row
        while idx >= row_start + row {
            row_start += row;
            row += 1;
        }
        edges.push(((idx - row_start) as VertexId, row as VertexId));
        idx += 1;
        if idx >= total {
            break;
        }
    }
    EdgeList { n, edges }
}

/// `count` disjoint components of `size` vertices each. Each component is a
/// random spanning tree plus `extra` random chords, and vertex ids are
/// interleaved across components so that no component occupies a
/// contiguous id range.
pub fn disjoint_components(count: usize, size: usize, extra: usize, seed: u64) -> EdgeList {
    let n = count * size;
    let mut rng = rng(seed);
    let id = |comp: usize, local: usize| (local * count + comp) as VertexId;
    let mut edges = Vec::new();
    for comp in 0..count {
        for local in 1..size {
            let parent = rng.random_range(0..local);
            edges.push((id(comp, local), id(comp, parent)));
        }
        if size > 1 {
            for _ in 0..extra {
                let a = rng.random_range(0..size);
                let b = rng.random_range(0..size);
                edges.push((id(comp, a), id(comp, b)));
            }
        }
    }
    EdgeList { n, edges }
}

/// Disjoint union of two edge lists; ids of `b` are shifted past `a`.
pub fn disjoint_union(a: &EdgeList, b: &EdgeList) -> EdgeList {
    let shift = a.n as VertexId;
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
    EdgeList {
        n: a.n + b.n,
        edges,
    }
}
