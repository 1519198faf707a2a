//! Simple undirected graphs with an optional bar/cable/strut edge labeling.

mod generators;
mod graph6;
pub mod subspace;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use generators::{
    cayley_z2, complete, cycle, kneser, kneser_vertices, petersen, q_kneser, q_kneser_vertices,
    CayleySpec,
};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_lines};
pub(crate) use generators::gf2_rank;

/// Hard cap on the number of vertices of any constructed graph.
pub const MAX_VERTICES: usize = 1_000_000;

/// Role of an edge in a tensegrity graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Inner product held fixed.
    Bar,
    /// Inner product may only grow.
    Cable,
    /// Inner product may only shrink.
    Strut,
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored as one bitset row per vertex. Edge labels are
/// optional; an unlabeled graph behaves as if every edge were a strut.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<BTreeMap<(usize, usize), EdgeKind>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("labels", &self.labels)
            .finish()
    }
}

/// Outcome of the split-graph recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitPartition {
    Split {
        clique: Vec<usize>,
        independent: Vec<usize>,
    },
    NotSplit,
}

impl SplitPartition {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitPartition::Split { .. })
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Resource(format!(
                "{n} vertices exceeds the cap of {MAX_VERTICES}"
            )));
        }
        let words = n.div_ceil(64).max(1);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
            labels: None,
        })
    }

    /// Builds a graph from an edge list. Loops are rejected; repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// `u ≃ v`: equal or adjacent.
    #[inline]
    pub fn is_close(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.rows[u * self.words..(u + 1) * self.words];
        row.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u * self.words..(u + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut it = (0..self.n).map(|u| self.degree(u));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Attaches a bar/cable/strut label to every edge.
    pub fn with_labels(mut self, labels: BTreeMap<(usize, usize), EdgeKind>) -> Result<Self> {
        let mut normalized = BTreeMap::new();
        for ((u, v), kind) in labels {
            let key = (u.min(v), u.max(v));
            if !self.has_edge(key.0, key.1) {
                return Err(invalid(format!("label on non-edge ({u},{v})")));
            }
            if normalized.insert(key, kind).is_some_and(|old| old != kind) {
                return Err(invalid(format!("edge ({u},{v}) carries two labels")));
            }
        }
        if let Some((u, v)) = self.edges().find(|e| !normalized.contains_key(e)) {
            return Err(invalid(format!("edge ({u},{v}) is unlabeled")));
        }
        self.labels = Some(normalized);
        Ok(self)
    }

    /// Same graph with every edge labeled `kind`.
    pub fn with_uniform_labels(&self, kind: EdgeKind) -> Self {
        let labels = self.edges().map(|e| (e, kind)).collect();
        Graph {
            labels: Some(labels),
            ..self.clone()
        }
    }

    pub fn labels(&self) -> Option<&BTreeMap<(usize, usize), EdgeKind>> {
        self.labels.as_ref()
    }

    /// Label of edge `uv`; unlabeled graphs report every edge as a strut.
    pub fn edge_kind(&self, u: usize, v: usize) -> Option<EdgeKind> {
        if !self.has_edge(u, v) {
            return None;
        }
        Some(match &self.labels {
            Some(map) => map[&(u.min(v), u.max(v))],
            None => EdgeKind::Strut,
        })
    }

    pub fn has_cables(&self) -> bool {
        self.labels
            .as_ref()
            .is_some_and(|m| m.values().any(|&k| k == EdgeKind::Cable))
    }

    /// True when both graphs have the same vertex count and edge set (labels ignored).
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.n == other.n && self.rows == other.rows
    }

    /// The complement graph (labels are dropped).
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size as an existing graph");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced on `vertices` (in the given order); labels are kept.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.n) {
            return Err(invalid(format!("vertex {v} out of range")));
        }
        let mut g = Graph::empty(vertices.len())?;
        let mut labels = BTreeMap::new();
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(a, b);
                    if let Some(kind) = self.labels.as_ref().map(|m| m[&(u.min(v), u.max(v))]) {
                        labels.insert((a, b), kind);
                    }
                }
            }
        }
        if self.labels.is_some() {
            g.labels = Some(labels);
        }
        Ok(g)
    }

    /// `G ∖ N[v]`: the subgraph induced on vertices neither equal nor adjacent to `v`.
    /// Returns the subgraph and the original index of each of its vertices.
    pub fn induced_delete_closed_nbhd(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        if v >= self.n {
            return Err(invalid(format!("vertex {v} out of range for n = {}", self.n)));
        }
        let kept: Vec<usize> = (0..self.n).filter(|&u| !self.is_close(u, v)).collect();
        Ok((self.induced_subgraph(&kept)?, kept))
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(invalid("not a permutation of the vertex set"));
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        if let Some(map) = &self.labels {
            g.labels = Some(
                map.iter()
                    .map(|(&(u, v), &k)| ((perm[u].min(perm[v]), perm[u].max(perm[v])), k))
                    .collect(),
            );
        }
        Ok(g)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(a, &u)| {
            vertices[a + 1..].iter().all(|&v| u != v && self.has_edge(u, v))
        })
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(a, &u)| {
            vertices[a + 1..].iter().all(|&v| u != v && !self.has_edge(u, v))
        })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Split-graph recognition by the Hammer–Simeone degree-sequence test.
    ///
    /// With degrees sorted `d_1 ≥ … ≥ d_n` and `m = max{i : d_i ≥ i − 1}`, the graph
    /// is split iff `Σ_{i≤m} d_i = m(m−1) + Σ_{i>m} d_i`; the `m` highest-degree
    /// vertices then form the clique side.
    pub fn split_partition(&self) -> SplitPartition {
        let mut order: Vec<usize> = (0..self.n).collect();
        let deg = self.degrees();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        let m = order
            .iter()
            .enumerate()
            .filter(|&(i, &v)| deg[v] + 1 > i)
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0);
        let head: usize = order[..m].iter().map(|&v| deg[v]).sum();
        let tail: usize = order[m..].iter().map(|&v| deg[v]).sum();
        if head != m * m.saturating_sub(1) + tail {
            return SplitPartition::NotSplit;
        }
        let mut clique = order[..m].to_vec();
        let mut independent = order[m..].to_vec();
        clique.sort_unstable();
        independent.sort_unstable();
        debug_assert!(self.is_clique(&clique) && self.is_independent(&independent));
        SplitPartition::Split {
            clique,
            independent,
        }
    }

    pub fn is_split(&self) -> bool {
        self.split_partition().is_split()
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), each sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut r = Vec::new();
        let p: Vec<usize> = (0..self.n).collect();
        self.bron_kerbosch(&mut r, p, Vec::new(), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.has_edge(u, v)).count())
            .expect("p is nonempty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !self.has_edge(pivot, v)).collect();
        let mut p = p;
        for v in candidates {
            let np = p.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}
