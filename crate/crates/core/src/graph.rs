//! Simple undirected graphs over an indexed vertex set.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// A plain Grassmann graph vertex.
    Grassmann,
    /// (e+1)-subspace of V not contained in H.
    A,
    /// (e-1)-subspace of H.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexLabel {
    Index(usize),
    Subspace { family: Family, space: Subspace },
    Block(usize),
}

impl VertexLabel {
    pub fn subspace(&self) -> Option<&Subspace> {
        match self {
            VertexLabel::Subspace { space, .. } => Some(space),
            _ => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Index(i) => write!(f, "{i}"),
            VertexLabel::Subspace { family: Family::Grassmann, space } => write!(f, "{space}"),
            VertexLabel::Subspace { family, space } => write!(f, "{family:?}:{space}"),
            VertexLabel::Block(i) => write!(f, "block {i}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    adj: Vec<Vec<u32>>,
    bits: Vec<Vec<u64>>,
}

impl Graph {
    /// Builds a graph from undirected edges. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(labels: Vec<VertexLabel>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::OutOfRange(format!("edge ({u}, {v}) in a graph on {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph::from_adjacency(labels, adj))
    }

    pub fn unlabeled(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Graph::from_edges((0..n).map(VertexLabel::Index).collect(), edges)
    }

    /// Builds the graph whose edges are the pairs `i < j` with `adjacent(i, j)`.
    /// Rows are evaluated in parallel; the result does not depend on scheduling.
    pub fn from_predicate<F>(labels: Vec<VertexLabel>, adjacent: F) -> Graph
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let n = labels.len();
        let upper: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|i| (i + 1..n).filter(|&j| adjacent(i, j)).map(|j| j as u32).collect())
            .collect();
        let mut adj = vec![Vec::new(); n];
        for (i, row) in upper.iter().enumerate() {
            for &j in row {
                adj[i].push(j);
                adj[j as usize].push(i as u32);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph::from_adjacency(labels, adj)
    }

    fn from_adjacency(labels: Vec<VertexLabel>, adj: Vec<Vec<u32>>) -> Graph {
        let n = labels.len();
        let words = n.div_ceil(64);
        let bits = adj
            .iter()
            .map(|list| {
                let mut row = vec![0u64; words];
                for &j in list {
                    row[j as usize / 64] |= 1 << (j % 64);
                }
                row
            })
            .collect();
        Graph { labels, adj, bits }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// The common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, u: usize) -> &VertexLabel {
        &self.labels[u]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v as usize > u).map(move |&v| (u, v as usize)))
    }

    /// Same adjacency, ignoring labels.
    pub fn same_adjacency(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Graph> {
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.labels.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .into_par_iter()
            .map(|u| {
                let nb = &self.adj[u];
                nb.iter()
                    .enumerate()
                    .map(|(i, &a)| nb[i + 1..].iter().filter(|&&b| self.is_adjacent(a as usize, b as usize)).count())
                    .sum()
            })
            .collect()
    }
}
