//! Graph ingestion and the CSR representation used by the stream ISA.
//!
//! Each vertex carries, besides its sorted neighbor list, a *bound offset*:
//! the index of the smallest neighbor larger than the vertex itself. The
//! prefix of the list below that offset is exactly the set of neighbors with
//! smaller IDs, which is what symmetry-broken enumeration and nested
//! intersection consume.

mod sparse;

pub use sparse::{
    load_frostt, load_matrix_market, load_sparse_vector, SparseLines, SparseMatrix, SparseTensor,
    SparseVector,
};

use std::collections::BTreeMap;
use std::io::BufRead;

use thiserror::Error;

/// In-band end-of-stream sentinel; `2^32 - 1` is therefore not a legal vertex ID.
pub const EOS: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: vertex ID {id} out of range (2^32-1 is reserved)")]
    VertexRange { line: usize, id: u64 },
    #[error("vertex {0} out of bounds")]
    VertexBounds(u32),
    #[error("duplicate coordinate ({0}, {1})")]
    DuplicateCoordinate(u64, u64),
    #[error("non-finite value at line {0}")]
    NonFinite(usize),
    #[error("{0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Undirected graph in CSR form with per-vertex bound offsets.
///
/// Invariants established by every constructor: neighbor lists are strictly
/// increasing, self-loop free, and symmetric (`u ∈ N(v) ⇔ v ∈ N(u)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    edges: Vec<u32>,
    bound_offsets: Vec<u32>,
    labels: Option<Vec<u32>>,
}

impl Graph {
    /// Builds a graph from undirected edge pairs over vertex IDs `0..n`
    /// where `n = max(id) + 1`. Duplicates and self-loops are dropped,
    /// missing reverse edges are added.
    pub fn from_undirected_edges(edges: &[(u32, u32)]) -> Graph {
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0);
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                continue;
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        Self::from_adjacency(adj)
    }

    fn from_adjacency(mut adj: Vec<Vec<u32>>) -> Graph {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        let mut edges = Vec::new();
        offsets.push(0);
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edges.extend_from_slice(list);
            offsets.push(edges.len());
        }
        let bound_offsets = (0..adj.len())
            .map(|v| {
                let list = &edges[offsets[v]..offsets[v + 1]];
                list.partition_point(|&u| u < v as u32) as u32
            })
            .collect();
        Graph {
            offsets,
            edges,
            bound_offsets,
            labels: None,
        }
    }

    pub fn num_vertices(&self) -> u32 {
        (self.offsets.len() - 1) as u32
    }

    /// Number of directed edge slots, i.e. the length of the CSR edge array.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of undirected edges.
    pub fn num_undirected_edges(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.edges[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    /// Index of the smallest neighbor of `v` that is larger than `v`;
    /// equivalently the length of the prefix of `N(v)` below `v`.
    pub fn bound_offset(&self, v: u32) -> Result<usize, GraphError> {
        if v >= self.num_vertices() {
            return Err(GraphError::VertexBounds(v));
        }
        Ok(self.bound_offsets[v as usize] as usize)
    }

    /// Neighbors of `v` strictly below `v`, as a slice of the CSR edge array.
    pub fn neighbors_below(&self, v: u32) -> &[u32] {
        let off = self.bound_offsets[v as usize] as usize;
        &self.neighbors(v)[..off]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Byte offset of vertex `v`'s neighbor list within the edge array.
    pub fn edge_list_start(&self, v: u32) -> usize {
        self.offsets[v as usize]
    }

    pub fn edges_flat(&self) -> &[u32] {
        &self.edges
    }

    pub fn bound_offsets_flat(&self) -> &[u32] {
        &self.bound_offsets
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: u32) -> Option<u32> {
        self.labels.as_ref().map(|l| l[v as usize])
    }

    pub fn set_labels(&mut self, labels: Vec<u32>) -> Result<(), GraphError> {
        if labels.len() != self.num_vertices() as usize {
            return Err(GraphError::Format(format!(
                "label count {} does not match vertex count {}",
                labels.len(),
                self.num_vertices()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Relabels vertices in descending degree order (stable on ties).
    /// Off by default everywhere; exposed for experiments.
    pub fn relabel_by_degree_desc(&self) -> Graph {
        let n = self.num_vertices() as usize;
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        // order[new] = old; invert
        let mut rename = vec![0u32; n];
        for (new_id, &old) in order.iter().enumerate() {
            rename[old as usize] = new_id as u32;
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for old_v in 0..n as u32 {
            let new_v = rename[old_v as usize];
            adj[new_v as usize] = self
                .neighbors(old_v)
                .iter()
                .map(|&u| rename[u as usize])
                .collect();
        }
        let mut g = Graph::from_adjacency(adj);
        if let Some(labels) = &self.labels {
            let mut new_labels = vec![0u32; n];
            for old_v in 0..n {
                new_labels[rename[old_v] as usize] = labels[old_v];
            }
            g.labels = Some(new_labels);
        }
        g
    }

    /// Serializes as a SNAP-style edge list, one undirected edge per line.
    /// Isolated vertices are kept alive as self-loop lines so that a reload
    /// reproduces the identical CSR.
    pub fn dump_edge_list(&self) -> String {
        let mut out = String::new();
        for v in 0..self.num_vertices() {
            for &u in self.neighbors(v) {
                if v < u {
                    out.push_str(&format!("{} {}\n", v, u));
                }
            }
            if self.neighbors(v).is_empty() {
                out.push_str(&format!("{} {}\n", v, v));
            }
        }
        out
    }
}

/// Parses a whitespace-separated edge list with `#`/`%` comment lines.
/// Vertex IDs are compacted to `0..n` preserving numeric order; edges are
/// deduplicated, symmetrized, and stripped of self-loops.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    let mut ids: Vec<u64> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let (a, b) = match (it.next(), it.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("expected two vertex IDs, got `{trimmed}`"),
                })
            }
        };
        if it.next().is_some() {
            return Err(GraphError::Parse {
                line: line_no,
                msg: format!("trailing tokens after edge: `{trimmed}`"),
            });
        }
        let parse = |s: &str| -> Result<u64, GraphError> {
            s.parse::<u64>().map_err(|_| GraphError::Parse {
                line: line_no,
                msg: format!("invalid vertex ID `{s}`"),
            })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        for id in [u, v] {
            if id >= u64::from(EOS) {
                return Err(GraphError::VertexRange { line: line_no, id });
            }
        }
        ids.push(u);
        ids.push(v);
        raw_edges.push((u, v));
    }
    ids.sort_unstable();
    ids.dedup();
    let compact: BTreeMap<u64, u32> = ids
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i as u32))
        .collect();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); ids.len()];
    for (u, v) in raw_edges {
        let (cu, cv) = (compact[&u], compact[&v]);
        if cu == cv {
            continue;
        }
        adj[cu as usize].push(cv);
        adj[cv as usize].push(cu);
    }
    Ok(Graph::from_adjacency(adj))
}

/// Parses a `vertex label` sidecar file (an optional leading `label` token
/// per line is accepted). Vertex IDs refer to the compacted graph.
pub fn load_labels<R: BufRead>(reader: R, g: &mut Graph) -> Result<(), GraphError> {
    let mut labels = vec![0u32; g.num_vertices() as usize];
    let mut seen = vec![false; g.num_vertices() as usize];
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.first() == Some(&"label") {
            tokens.remove(0);
        }
        if tokens.len() != 2 {
            return Err(GraphError::Parse {
                line: line_no,
                msg: format!("expected `vertex label`, got `{trimmed}`"),
            });
        }
        let v: u32 = tokens[0].parse().map_err(|_| GraphError::Parse {
            line: line_no,
            msg: format!("invalid vertex `{}`", tokens[0]),
        })?;
        let l: u32 = tokens[1].parse().map_err(|_| GraphError::Parse {
            line: line_no,
            msg: format!("invalid label `{}`", tokens[1]),
        })?;
        if v >= g.num_vertices() {
            return Err(GraphError::VertexBounds(v));
        }
        labels[v as usize] = l;
        seen[v as usize] = true;
    }
    if !seen.iter().all(|&s| s) {
        return Err(GraphError::Format(
            "label file does not cover every vertex".into(),
        ));
    }
    g.set_labels(labels)
}

/// Complete graph on `k` vertices.
pub fn complete(k: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in (u + 1)..k {
            edges.push((u, v));
        }
    }
    Graph::from_undirected_edges(&edges)
}

/// Path 0-1-...-(n-1).
pub fn path(n: u32) -> Graph {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::from_undirected_edges(&edges)
}

/// Star with center 0 and `leaves` leaf vertices.
pub fn star(leaves: u32) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
    Graph::from_undirected_edges(&edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn load(s: &str) -> Graph {
        load_edge_list(Cursor::new(s)).unwrap()
    }

    #[test]
    fn k3_from_cycle() {
        let g = load("0 1\n1 2\n2 0");
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.neighbors(2), &[0, 1]);
    }

    #[test]
    fn dedup_and_symmetrize() {
        let g = load("0 1\n0 1\n1 0");
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
    }

    #[test]
    fn self_loop_dropped_but_vertex_kept() {
        let g = load("5 5");
        assert_eq!(g.num_vertices(), 1);
        assert!(g.neighbors(0).is_empty());
    }

    #[test]
    fn compaction_preserves_numeric_order() {
        let g = load("10 3\n7 10");
        // ids 3,7,10 -> 0,1,2
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.neighbors(2), &[0, 1]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = load("# header\n% more\n\n0 1\n");
        assert_eq!(g.num_undirected_edges(), 1);
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = load_edge_list(Cursor::new("0 1\nbogus\n")).unwrap_err();
        match err {
            GraphError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn eos_id_rejected() {
        let s = format!("0 {}", u32::MAX);
        assert!(matches!(
            load_edge_list(Cursor::new(s)).unwrap_err(),
            GraphError::VertexRange { .. }
        ));
    }

    #[test]
    fn bound_offset_examples() {
        let k3 = complete(3);
        assert_eq!(k3.bound_offset(2).unwrap(), 2);
        assert_eq!(k3.bound_offset(0).unwrap(), 0);
        let p3 = path(3);
        assert_eq!(p3.bound_offset(1).unwrap(), 1);
        assert!(k3.bound_offset(7).is_err());
    }

    #[test]
    fn bound_offset_splits_list() {
        let g = complete(6);
        for v in 0..6 {
            let off = g.bound_offset(v).unwrap();
            let nbrs = g.neighbors(v);
            assert!(nbrs[..off].iter().all(|&u| u < v));
            assert!(nbrs[off..].iter().all(|&u| u > v));
        }
    }

    #[test]
    fn dump_reload_round_trip() {
        let g = load("5 5\n0 1\n1 2\n9 0");
        let g2 = load(&g.dump_edge_list());
        assert_eq!(g, g2);
    }

    #[test]
    fn edge_slots_twice_undirected() {
        let g = complete(5);
        assert_eq!(g.num_edges(), 2 * g.num_undirected_edges());
        assert_eq!(g.num_undirected_edges(), 10);
    }

    #[test]
    fn degree_relabel() {
        let g = load("0 1\n0 2\n0 3\n3 4\n");
        let r = g.relabel_by_degree_desc();
        // old 0 (deg 3) becomes 0, old 3 (deg 2) becomes 1
        assert_eq!(r.degree(0), 3);
        assert_eq!(r.degree(1), 2);
        assert_eq!(r.num_undirected_edges(), g.num_undirected_edges());
    }
}
