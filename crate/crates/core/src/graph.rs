//! Finite simple graphs with named vertices.
//!
//! A [`Graph`] is immutable once built. Vertices keep the order in which they
//! were declared; edges are stored as index pairs `(i, j)` with `i < j`,
//! sorted, so iteration order is deterministic everywhere downstream.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest vertex count accepted by the bitmask kernels.
pub const MASK_VERTEX_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// Families produced by [`Graph::standard`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Cycle,
    Complete,
    Path,
    DisjointEdges,
}

/// Outcome of [`Graph::subgraph_relation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgraphRelation {
    NotSubgraph,
    Subgraph,
    InducedSubgraph,
}

impl SubgraphRelation {
    pub fn is_subgraph(self) -> bool {
        !matches!(self, SubgraphRelation::NotSubgraph)
    }
}

impl Graph {
    /// Builds a graph from vertex names and edges given by name.
    ///
    /// Rejects duplicate vertices, loops and edges naming unknown vertices.
    /// Repeated edges collapse into one.
    pub fn new<S, T>(vertices: &[S], edges: &[(T, T)]) -> Result<Graph>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut index = BTreeMap::new();
        let mut names = Vec::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref();
            if index.insert(v.to_string(), names.len()).is_some() {
                return Err(Error::Graph(format!("duplicate vertex {v:?}")));
            }
            names.push(v.to_string());
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(Error::Graph(format!("loop at vertex {a:?}")));
            }
            let i = *index
                .get(a)
                .ok_or_else(|| Error::Graph(format!("unknown endpoint {a:?}")))?;
            let j = *index
                .get(b)
                .ok_or_else(|| Error::Graph(format!("unknown endpoint {b:?}")))?;
            pairs.push((i, j));
        }
        Ok(Self::from_parts(names, index, pairs))
    }

    /// Builds a graph from vertex names and index pairs. Pairs must be loop-free
    /// and in range; callers inside the crate guarantee that.
    pub(crate) fn from_indexed(names: Vec<String>, pairs: Vec<(usize, usize)>) -> Graph {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Self::from_parts(names, index, pairs)
    }

    fn from_parts(names: Vec<String>, index: BTreeMap<String, usize>, pairs: Vec<(usize, usize)>) -> Graph {
        let mut edges: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(i, j)| if i < j { (i, j) } else { (j, i) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adj = alloc::vec![Vec::new(); names.len()];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            names,
            index,
            edges,
            adj,
        }
    }

    /// Canonical members of the standard families, on vertices `x1..`.
    pub fn standard(kind: StandardKind, n: usize) -> Result<Graph> {
        let min = if kind == StandardKind::Cycle { 3 } else { 1 };
        if n < min {
            return Err(Error::Graph(format!("{kind:?} needs n >= {min}, got {n}")));
        }
        let count = if kind == StandardKind::DisjointEdges { 2 * n } else { n };
        let names = (1..=count).map(|i| format!("x{i}")).collect();
        let pairs = match kind {
            StandardKind::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            StandardKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
            StandardKind::Complete => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
            StandardKind::DisjointEdges => (0..n).map(|i| (2 * i, 2 * i + 1)).collect(),
        };
        Ok(Self::from_indexed(names, pairs))
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        Self::standard(StandardKind::Cycle, n)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        Self::standard(StandardKind::Complete, n)
    }

    pub fn path(n: usize) -> Result<Graph> {
        Self::standard(StandardKind::Path, n)
    }

    pub fn disjoint_edges(n: usize) -> Result<Graph> {
        Self::standard(StandardKind::DisjointEdges, n)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// Sorted index pairs `(i, j)`, `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_names(&self) -> Vec<(&str, &str)> {
        self.edges.iter().map(|&(i, j)| (self.name(i), self.name(j))).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::Graph(format!("vertex {name:?} not in graph")))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn has_edge_named(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge(i, j),
            _ => false,
        }
    }

    /// Position of an edge in [`Graph::edges`].
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&key).ok()
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let pairs = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.has_edge(i, j))
            .collect();
        Self::from_indexed(self.names.clone(), pairs)
    }

    /// Induced subgraph on `keep`, preserving this graph's vertex order.
    pub fn induced_subgraph<S: AsRef<str>>(&self, keep: &[S]) -> Result<Graph> {
        let mut selected = alloc::vec![false; self.vertex_count()];
        for name in keep {
            selected[self.require_index(name.as_ref())?] = true;
        }
        Ok(self.induced_by_flags(&selected))
    }

    pub(crate) fn induced_by_flags(&self, selected: &[bool]) -> Graph {
        let mut remap = alloc::vec![usize::MAX; self.vertex_count()];
        let mut names = Vec::new();
        for (v, _) in selected.iter().enumerate().filter(|(_, s)| **s) {
            remap[v] = names.len();
            names.push(self.names[v].clone());
        }
        let pairs = self
            .edges
            .iter()
            .filter(|&&(i, j)| selected[i] && selected[j])
            .map(|&(i, j)| (remap[i], remap[j]))
            .collect();
        Self::from_indexed(names, pairs)
    }

    /// Spanning subgraph keeping only the listed edges (by index into `edges()`).
    pub(crate) fn with_edge_subset(&self, edge_ids: &[usize]) -> Graph {
        let pairs = edge_ids.iter().map(|&e| self.edges[e]).collect();
        Self::from_indexed(self.names.clone(), pairs)
    }

    /// Open or closed neighborhood of a vertex set, in vertex order.
    pub fn neighborhood<S: AsRef<str>>(&self, set: &[S], closed: bool) -> Result<Vec<String>> {
        let mut member = alloc::vec![false; self.vertex_count()];
        let mut seeds = Vec::with_capacity(set.len());
        for name in set {
            seeds.push(self.require_index(name.as_ref())?);
        }
        for &s in &seeds {
            for &u in self.neighbors(s) {
                member[u] = true;
            }
            if closed {
                member[s] = true;
            }
        }
        Ok(member
            .iter()
            .enumerate()
            .filter(|(_, m)| **m)
            .map(|(v, _)| self.names[v].clone())
            .collect())
    }

    /// How `self` sits inside `host`, comparing vertices by name.
    pub fn subgraph_relation(&self, host: &Graph) -> SubgraphRelation {
        let mut map = Vec::with_capacity(self.vertex_count());
        for name in &self.names {
            match host.index_of(name) {
                Some(v) => map.push(v),
                None => return SubgraphRelation::NotSubgraph,
            }
        }
        if self.edges.iter().any(|&(i, j)| !host.has_edge(map[i], map[j])) {
            return SubgraphRelation::NotSubgraph;
        }
        let n = map.len();
        for i in 0..n {
            for j in i + 1..n {
                if host.has_edge(map[i], map[j]) && !self.has_edge(i, j) {
                    return SubgraphRelation::Subgraph;
                }
            }
        }
        SubgraphRelation::InducedSubgraph
    }

    /// Adjacency as bitmasks, one `u64` per vertex.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.vertex_count() > MASK_VERTEX_LIMIT {
            return Err(Error::LimitExceeded(format!(
                "{} vertices exceeds the {MASK_VERTEX_LIMIT}-vertex kernel limit",
                self.vertex_count()
            )));
        }
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &u| m | (1u64 << u)))
            .collect())
    }

    /// Same graph with vertices renamed through `rename`; must stay injective.
    pub fn relabel<F: Fn(&str) -> String>(&self, rename: F) -> Result<Graph> {
        let names: Vec<String> = self.names.iter().map(|n| rename(n)).collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(i, j)| (names[i].clone(), names[j].clone()))
            .collect();
        Graph::new(&names, &edges)
    }

    /// Equality up to vertex order: same vertex names, same named edges.
    pub fn same_as(&self, other: &Graph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.subgraph_relation(other) == SubgraphRelation::InducedSubgraph
    }
}
