//! Undirected simple graphs and the combinatorial machinery built on them:
//! minors, contractions, 2-sum decomposition, partial k-trees, Laman counts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod contract;
pub mod decompose;
pub mod ktree;
pub mod laman;
pub mod minor;
pub mod paths;
pub mod reduction;
pub mod realizable3d;

pub use contract::{contract_edge, ContractionSequence, ContractionStep, MergeRecord};
pub use decompose::{
    decompose_all, minimal_components_containing, two_sum_decompose, Component, Hinge, TwoSumDecomposition,
};
pub use ktree::{
    complete_to_k_tree, is_k_tree, is_partial_k_tree, is_partial_two_tree, is_two_tree, k_tree_completion,
    KTreeCompletion,
};
pub use laman::{laman_classify, pebble_game, LamanClass, LamanTag};
pub use minor::{find_minor_model, has_minor, MinorModel, MAX_TARGET_VERTICES};
pub use paths::disjoint_paths;
pub use realizable3d::{complement_matching, contraction_reduction_to_k5_or_k222, is_three_realizable, MinorTarget};
pub use reduction::{restricted_contraction_reduction, BaseCase, Reduction};

/// Opaque vertex identifier.
pub type Vertex = usize;

/// An unordered pair of distinct vertices, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(Vertex, Vertex)", into = "(Vertex, Vertex)")]
pub struct VertexPair {
    u: Vertex,
    v: Vertex,
}

impl VertexPair {
    /// Panics if `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Self::try_new(a, b).unwrap_or_else(|| panic!("vertex pair needs distinct endpoints, got ({a},{a})"))
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Self { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Self { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        [self.u, self.v]
    }
}

impl TryFrom<(Vertex, Vertex)> for VertexPair {
    type Error = String;
    fn try_from((a, b): (Vertex, Vertex)) -> std::result::Result<Self, String> {
        Self::try_new(a, b).ok_or_else(|| format!("degenerate pair ({a},{b})"))
    }
}

impl From<VertexPair> for (Vertex, Vertex) {
    fn from(p: VertexPair) -> Self {
        (p.u, p.v)
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Serde adapter writing a `BTreeMap<VertexPair, T>` as a list of
/// `[pair, value]` entries, since JSON object keys must be strings.
pub mod pair_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::VertexPair;

    pub fn serialize<T: Serialize, S: Serializer>(m: &BTreeMap<VertexPair, T>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, T: Deserialize<'de>, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<VertexPair, T>, D::Error> {
        Ok(Vec::<(VertexPair, T)>::deserialize(d)?.into_iter().collect())
    }
}

/// Simple undirected graph on an ordered vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<Vertex>,
    edges: Vec<VertexPair>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { vertices: g.vertices().collect(), edges: g.edges().collect() }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut g = Graph::with_vertices(r.vertices);
        for e in r.edges {
            g.add_pair(e);
        }
        Ok(g)
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v);
        }
        g
    }

    /// Builds a graph from an edge list. Endpoints are added as vertices;
    /// repeated edges are merged.
    pub fn from_edges(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Self::new();
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds the edge `(a, b)`, creating endpoints as needed. Returns whether
    /// the edge is new.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<bool> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        self.adj.entry(b).or_default();
        let fresh = self.adj.entry(a).or_default().insert(b);
        self.adj.get_mut(&b).expect("endpoint inserted above").insert(a);
        Ok(fresh)
    }

    pub fn add_pair(&mut self, e: VertexPair) -> bool {
        self.add_edge(e.u, e.v).expect("pairs have distinct endpoints")
    }

    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        let removed = self.adj.get_mut(&a).map(|n| n.remove(&b)).unwrap_or(false);
        if removed {
            self.adj.get_mut(&b).expect("symmetric adjacency").remove(&a);
        }
        removed
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        let Some(nbrs) = self.adj.remove(&v) else {
            return false;
        };
        for w in nbrs {
            self.adj.get_mut(&w).expect("symmetric adjacency").remove(&v);
        }
        true
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn has_pair(&self, e: VertexPair) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    /// Edges in lexicographic order of their canonical pairs.
    pub fn edges(&self) -> impl Iterator<Item = VertexPair> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, n)| n.range(u + 1..).map(move |&v| VertexPair { u, v }))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Non-adjacent vertex pairs in lexicographic order.
    pub fn non_edges(&self) -> Vec<VertexPair> {
        let vs: Vec<Vertex> = self.vertices().collect();
        let mut out = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                if !self.has_edge(a, b) {
                    out.push(VertexPair { u: a, v: b });
                }
            }
        }
        out
    }

    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, n)| (v, n.iter().copied().filter(|w| keep.contains(w)).collect()))
            .collect();
        Graph { adj }
    }

    /// `self ∪ pairs`: adds each pair as an edge.
    pub fn with_pairs<'a>(&self, pairs: impl IntoIterator<Item = &'a VertexPair>) -> Graph {
        let mut g = self.clone();
        for p in pairs {
            g.add_pair(*p);
        }
        g
    }

    /// `self` with each listed pair removed if present.
    pub fn without_pairs<'a>(&self, pairs: impl IntoIterator<Item = &'a VertexPair>) -> Graph {
        let mut g = self.clone();
        for p in pairs {
            g.remove_edge(p.u(), p.v());
        }
        g
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let comp = self.reachable_from(s, &BTreeSet::new());
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn reachable_from(&self, start: Vertex, blocked: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if !blocked.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        let d = Dense::from_graph(self);
        if d.len() == 0 {
            return true;
        }
        let mut seen = vec![false; d.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &d.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == d.len()
    }

    /// Is `edges` exactly the edge set of `self` (ignoring vertex sets)?
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.edges().eq(other.edges())
    }

    /// Complete graph on vertices `1..=n`.
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::with_vertices(1..=n);
        for a in 1..=n {
            for b in a + 1..=n {
                g.add_edge(a, b).expect("distinct");
            }
        }
        g
    }

    /// Path `1 - 2 - … - n`.
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::with_vertices(1..=n);
        for a in 1..n {
            g.add_edge(a, a + 1).expect("distinct");
        }
        g
    }

    /// Cycle `1 - 2 - … - n - 1`.
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n, 1).expect("distinct");
        }
        g
    }

    pub fn k4() -> Graph {
        Graph::complete(4)
    }

    pub fn k5() -> Graph {
        Graph::complete(5)
    }

    /// The octahedron K2,2,2 on `1..=6` with parts {1,5}, {2,4}, {3,6}.
    pub fn k222() -> Graph {
        let parts = [[1, 5], [2, 4], [3, 6]];
        let mut g = Graph::with_vertices(1..=6);
        for (i, p) in parts.iter().enumerate() {
            for q in &parts[i + 1..] {
                for &a in p {
                    for &b in q {
                        g.add_edge(a, b).expect("distinct");
                    }
                }
            }
        }
        g
    }

    /// Graph with `e` removed; panics if `e` is not an edge.
    pub fn without_pair(&self, e: VertexPair) -> Graph {
        let mut g = self.clone();
        assert!(g.remove_edge(e.u, e.v), "{e} is not an edge");
        g
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        let es: Vec<String> = self.edges().map(|e| e.to_string()).collect();
        write!(f, "V={{{}}} E={{{}}}", vs.join(","), es.join(","))
    }
}

/// Index-based adjacency snapshot used by the linear-time routines.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub ids: Vec<Vertex>,
    pub adj: Vec<Vec<usize>>,
}

impl Dense {
    pub fn from_graph(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let adj = g
            .adj
            .values()
            .map(|n| n.iter().map(|w| ids.binary_search(w).expect("vertex present")).collect())
            .collect();
        Dense { ids, adj }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }
}
