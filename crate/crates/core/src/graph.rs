//! Simple undirected graphs with stable integer vertices, the generators for
//! stars, complete graphs, Cartesian/strong products, and the star prism
//! family with deleted rungs.
//!
//! The star prism on `2n` vertices is the Cartesian product of the star of
//! order `n` with a single edge: two copies of the star joined by `n` "rung"
//! edges, one per vertex pair `i <-> i'`. Internally the first copy occupies
//! indices `0..n`, the second `n..2n`, so vertex `i` is paired with `i + n`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Immutable simple undirected graph. Degrees and adjacency lists are cached
/// at construction; every operation downstream is a pure function of this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Build from an edge list. Rejects self-loops, duplicate edges, and
    /// endpoints outside `0..vertex_count`.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) outside vertex range 0..{vertex_count}"
                )));
            }
            let edge = (u.min(v), u.max(v));
            if !normalized.insert(edge) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({u}, {v})")));
            }
        }
        let edges: Vec<(usize, usize)> = normalized.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let degrees = adjacency.iter().map(Vec::len).collect();
        Ok(Graph {
            vertex_count,
            edges,
            adjacency,
            degrees,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// New graph with the listed edges removed; vertex set unchanged.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Result<Graph> {
        let drop: BTreeSet<(usize, usize)> =
            removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for edge in &drop {
            if self.edges.binary_search(edge).is_err() {
                return Err(Error::InvalidParameter(format!(
                    "edge ({}, {}) not present",
                    edge.0, edge.1
                )));
            }
        }
        let kept = self.edges.iter().copied().filter(|e| !drop.contains(e));
        let mut g = Graph::new(self.vertex_count, kept)?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Breadth-first distances from `start`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        dist[start] = Some(0);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// All-pairs shortest-path matrix. Errors on disconnected input.
    pub fn distance_matrix(&self) -> Result<Vec<Vec<usize>>> {
        let mut rows = Vec::with_capacity(self.vertex_count);
        for v in 0..self.vertex_count {
            let dist = self.bfs_distances(v);
            let row: Option<Vec<usize>> = dist.into_iter().collect();
            rows.push(row.ok_or(Error::Disconnected)?);
        }
        Ok(rows)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }
}

/// Star of order `n`: vertex 0 is the center, adjacent to all others.
pub fn star(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("star requires order >= 1".into()));
    }
    Graph::new(n, (1..n).map(|leaf| (0, leaf)))
}

/// Complete graph of order `n`.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("complete graph requires order >= 1".into()));
    }
    Graph::new(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))))
}

/// Cartesian product: `(u1, v1) ~ (u2, v2)` iff one coordinate is equal and
/// the other pair is an edge.
///
/// Vertex `(u, v)` maps to index `v * |G| + u`, so all of `G x {v0}` comes
/// first. For a two-vertex second factor this yields the stacked two-copy
/// layout whose mirror pairing is a fixed shift by `|G|`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(Error::InvalidParameter("product factors must be nonempty".into()));
    }
    let gn = g.vertex_count();
    let index = |u: usize, v: usize| v * gn + u;
    let mut edges = Vec::new();
    for v in 0..h.vertex_count() {
        for &(u1, u2) in g.edges() {
            edges.push((index(u1, v), index(u2, v)));
        }
    }
    for u in 0..gn {
        for &(v1, v2) in h.edges() {
            edges.push((index(u, v1), index(u, v2)));
        }
    }
    Graph::new(gn * h.vertex_count(), edges)
}

/// Strong product: union of the Cartesian adjacency rule and the rule where
/// both coordinate pairs are edges.
pub fn strong_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(Error::InvalidParameter("product factors must be nonempty".into()));
    }
    let gn = g.vertex_count();
    let index = |u: usize, v: usize| v * gn + u;
    let mut edges = Vec::new();
    for v in 0..h.vertex_count() {
        for &(u1, u2) in g.edges() {
            edges.push((index(u1, v), index(u2, v)));
        }
    }
    for u in 0..gn {
        for &(v1, v2) in h.edges() {
            edges.push((index(u, v1), index(u, v2)));
        }
    }
    for &(u1, u2) in g.edges() {
        for &(v1, v2) in h.edges() {
            edges.push((index(u1, v1), index(u2, v2)));
            edges.push((index(u1, v2), index(u2, v1)));
        }
    }
    Graph::new(gn * h.vertex_count(), edges)
}

/// Parameters identifying one member of the rung-deleted star prism family:
/// prism size `n` and the set of deleted rungs, named by the 1-based star
/// vertex whose rung `i <-> i'` is removed (1 is the center).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    n: usize,
    deleted: BTreeSet<usize>,
}

impl FamilySpec {
    pub fn new(n: usize, deleted: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("family requires n >= 2".into()));
        }
        let deleted: BTreeSet<usize> = deleted.into_iter().collect();
        if let Some(&bad) = deleted.iter().find(|&&i| i < 1 || i > n) {
            return Err(Error::InvalidParameter(format!(
                "rung index {bad} outside 1..={n}"
            )));
        }
        if deleted.len() == n {
            return Err(Error::DisconnectedFamily(n));
        }
        Ok(FamilySpec { n, deleted })
    }

    pub fn intact(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn deleted(&self) -> &BTreeSet<usize> {
        &self.deleted
    }

    /// Number of deleted rungs.
    pub fn r(&self) -> usize {
        self.deleted.len()
    }

    /// Whether the center rung `1 <-> 1'` is among the deleted edges.
    pub fn center_deleted(&self) -> bool {
        self.deleted.contains(&1)
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    /// Construct the graph: the star prism with the selected rungs removed.
    /// Always connected, since at least one rung survives and each star copy
    /// is connected. Labels follow the `1..n`, `1'..n'` convention.
    pub fn build(&self) -> Graph {
        let base = cartesian_product(
            &star(self.n).expect("n >= 2"),
            &complete(2).expect("K_2"),
        )
        .expect("nonempty factors");
        let removed: Vec<(usize, usize)> = self
            .deleted
            .iter()
            .map(|&i| (i - 1, i - 1 + self.n))
            .collect();
        let graph = base.without_edges(&removed).expect("rungs exist in the prism");
        let labels = (0..2 * self.n)
            .map(|v| {
                if v < self.n {
                    format!("{}", v + 1)
                } else {
                    format!("{}'", v - self.n + 1)
                }
            })
            .collect();
        graph.with_labels(labels).expect("one label per vertex")
    }
}

/// Edge-list JSON form shared by the CLI and test fixtures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n_vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<std::collections::BTreeMap<String, String>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n_vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels: g.labels.as_ref().map(|labels| {
                labels
                    .iter()
                    .enumerate()
                    .map(|(v, l)| (v.to_string(), l.clone()))
                    .collect()
            }),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Graph> {
        let graph = Graph::new(json.n_vertices, json.edges.iter().map(|e| (e[0], e[1])))?;
        match json.labels {
            None => Ok(graph),
            Some(map) => {
                let mut labels = vec![String::new(); json.n_vertices];
                for (key, value) in map {
                    let v: usize = key
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad vertex key {key:?}")))?;
                    if v >= json.n_vertices {
                        return Err(Error::Malformed(format!("label for missing vertex {v}")));
                    }
                    labels[v] = value;
                }
                graph.with_labels(labels)
            }
        }
    }
}
