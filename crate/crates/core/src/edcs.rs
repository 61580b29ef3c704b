//! Euclidean distance constraint systems: a graph with distance labels.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Graph, Result, Vertex, VertexPair};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Weight {
    Point(f64),
    Interval(f64, f64),
}

impl Weight {
    pub fn lo(&self) -> f64 {
        match *self {
            Weight::Point(d) => d,
            Weight::Interval(l, _) => l,
        }
    }

    pub fn hi(&self) -> f64 {
        match *self {
            Weight::Point(d) => d,
            Weight::Interval(_, r) => r,
        }
    }

    /// An interval with `lo < hi`; `[d, d]` counts as a point.
    pub fn is_genuine_interval(&self) -> bool {
        self.lo() < self.hi()
    }

    pub fn as_point(&self) -> Option<f64> {
        (!self.is_genuine_interval()).then(|| self.lo())
    }

    pub fn contains(&self, d: f64, tol: f64) -> bool {
        d >= self.lo() - tol && d <= self.hi() + tol
    }

    fn check(&self, edge: VertexPair) -> Result<()> {
        let (l, r) = (self.lo(), self.hi());
        if !l.is_finite() || !r.is_finite() {
            return Err(Error::BadWeight { edge, reason: "not finite".into() });
        }
        if l < 0.0 {
            return Err(Error::BadWeight { edge, reason: "negative".into() });
        }
        if l > r {
            return Err(Error::BadInterval { edge, lo: l, hi: r });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EdcsRepr")]
pub struct Edcs {
    graph: Graph,
    #[serde(with = "crate::graph::pair_map")]
    weights: BTreeMap<VertexPair, Weight>,
    params: BTreeSet<VertexPair>,
    dim: usize,
}

#[derive(Deserialize)]
struct EdcsRepr {
    graph: Graph,
    #[serde(with = "crate::graph::pair_map")]
    weights: BTreeMap<VertexPair, Weight>,
    params: BTreeSet<VertexPair>,
    dim: usize,
}

impl TryFrom<EdcsRepr> for Edcs {
    type Error = Error;

    fn try_from(r: EdcsRepr) -> Result<Self> {
        Edcs::new(r.graph, r.weights, r.params, r.dim)
    }
}

impl Edcs {
    /// Validates that every edge carries exactly one weight, weights are
    /// finite and nonnegative, and every parameter is a non-edge.
    pub fn new(
        graph: Graph,
        weights: BTreeMap<VertexPair, Weight>,
        params: BTreeSet<VertexPair>,
        dim: usize,
    ) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::UnsupportedDimension(dim));
        }
        for e in graph.edges() {
            weights.get(&e).ok_or(Error::BadWeight { edge: e, reason: "missing".into() })?.check(e)?;
        }
        if let Some(&e) = weights.keys().find(|e| !graph.has_pair(**e)) {
            return Err(Error::EdgeNotFound(e));
        }
        for p in &params {
            for v in p.endpoints() {
                if !graph.has_vertex(v) {
                    return Err(Error::VertexNotFound(v));
                }
            }
            if graph.has_pair(*p) {
                return Err(Error::BadParameterSet(format!("{p} is an edge")));
            }
        }
        Ok(Edcs { graph, weights, params, dim })
    }

    /// Point-valued system built from `(u, v, δ)` triples, no parameters.
    pub fn from_distances(dim: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, f64)>) -> Result<Self> {
        let mut graph = Graph::new();
        let mut weights = BTreeMap::new();
        for (a, b, d) in edges {
            graph.add_edge(a, b)?;
            weights.insert(VertexPair::new(a, b), Weight::Point(d));
        }
        Edcs::new(graph, weights, BTreeSet::new(), dim)
    }

    pub fn with_params(mut self, params: impl IntoIterator<Item = VertexPair>) -> Result<Self> {
        self.params = params.into_iter().collect();
        Edcs::new(self.graph, self.weights, self.params, self.dim)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &BTreeMap<VertexPair, Weight> {
        &self.weights
    }

    pub fn weight(&self, e: VertexPair) -> Option<Weight> {
        self.weights.get(&e).copied()
    }

    /// The fixed length of `e`, if it is a point-valued edge.
    pub fn distance(&self, e: VertexPair) -> Option<f64> {
        self.weight(e).and_then(|w| w.as_point())
    }

    pub fn params(&self) -> &BTreeSet<VertexPair> {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_intervals(&self) -> bool {
        self.weights.values().any(Weight::is_genuine_interval)
    }

    /// Point distances for every edge; fails on the first genuine interval.
    pub fn point_distances(&self) -> Result<BTreeMap<VertexPair, f64>> {
        self.weights
            .iter()
            .map(|(&e, w)| w.as_point().map(|d| (e, d)).ok_or(Error::IntervalWeights))
            .collect()
    }
}
