//! Edge contraction and recorded contraction sequences.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex, VertexPair};
use crate::error::{Error, Result};

/// Which vertex survived a contraction and which one was absorbed into it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeRecord {
    pub survivor: Vertex,
    pub absorbed: Vertex,
}

/// Contracts `e`, keeping its smaller endpoint.
pub fn contract_edge(g: &Graph, e: VertexPair) -> Result<(Graph, MergeRecord)> {
    contract_edge_into(g, e, e.u())
}

/// Contracts `e` so that `survivor` (an endpoint of `e`) keeps its identity.
/// Parallel edges are merged and the self-loop is dropped.
pub fn contract_edge_into(g: &Graph, e: VertexPair, survivor: Vertex) -> Result<(Graph, MergeRecord)> {
    let mut h = g.clone();
    let rec = contract_in_place(&mut h, e, survivor)?;
    Ok((h, rec))
}

pub(crate) fn contract_in_place(g: &mut Graph, e: VertexPair, survivor: Vertex) -> Result<MergeRecord> {
    if !g.has_pair(e) {
        return Err(Error::EdgeNotFound(e));
    }
    let absorbed = e.other(survivor).ok_or(Error::VertexNotFound(survivor))?;
    let nbrs: Vec<Vertex> = g.neighbors(absorbed).collect();
    g.remove_vertex(absorbed);
    for w in nbrs {
        if w != survivor {
            g.add_edge(survivor, w)?;
        }
    }
    Ok(MergeRecord { survivor, absorbed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ContractionStep {
    /// Contract `edge` of the current graph; `survivor` keeps its id.
    Contract { edge: VertexPair, survivor: Vertex },
    /// Delete a vertex that has no incident edges.
    RemoveIsolated { vertex: Vertex },
}

/// A recorded sequence of contractions applied to a source graph.
///
/// Vertex ids are stable: every intermediate vertex is named after one of
/// the original vertices merged into it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionSequence {
    pub steps: Vec<ContractionStep>,
    /// Original vertex → vertex of the final graph. Vertices whose class was
    /// removed as isolated are absent.
    pub vertex_map: BTreeMap<Vertex, Vertex>,
}

impl ContractionSequence {
    pub fn identity(source: &Graph) -> Self {
        Self { steps: Vec::new(), vertex_map: source.vertices().map(|v| (v, v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Contracts `e` in `current` and records the step.
    pub fn contract(&mut self, current: &mut Graph, e: VertexPair, survivor: Vertex) -> Result<()> {
        let rec = contract_in_place(current, e, survivor)?;
        for img in self.vertex_map.values_mut() {
            if *img == rec.absorbed {
                *img = rec.survivor;
            }
        }
        self.steps.push(ContractionStep::Contract { edge: e, survivor });
        Ok(())
    }

    /// Removes an isolated vertex of `current` and records the step.
    pub fn remove_isolated(&mut self, current: &mut Graph, v: Vertex) -> Result<()> {
        if !current.has_vertex(v) {
            return Err(Error::VertexNotFound(v));
        }
        if current.degree(v) != 0 {
            return Err(Error::BadParameter(format!("vertex {v} is not isolated")));
        }
        current.remove_vertex(v);
        self.vertex_map.retain(|_, img| *img != v);
        self.steps.push(ContractionStep::RemoveIsolated { vertex: v });
        Ok(())
    }

    /// Merges every vertex of `class` into `into` by contracting along
    /// edges of `current`. The class together with `into` must induce a
    /// connected subgraph.
    pub fn merge_class(
        &mut self,
        current: &mut Graph,
        class: &std::collections::BTreeSet<Vertex>,
        into: Vertex,
    ) -> Result<()> {
        let mut pending: std::collections::BTreeSet<Vertex> = class.iter().copied().filter(|&v| v != into).collect();
        while !pending.is_empty() {
            let next = pending.iter().copied().find(|&v| current.has_edge(v, into));
            let Some(v) = next else {
                return Err(Error::BadParameter(format!("vertex class not connected to {into}")));
            };
            pending.remove(&v);
            self.contract(current, VertexPair::new(v, into), into)?;
        }
        Ok(())
    }

    /// Applies the steps to `source` and returns the final graph.
    pub fn replay(&self, source: &Graph) -> Result<Graph> {
        let mut g = source.clone();
        for step in &self.steps {
            match *step {
                ContractionStep::Contract { edge, survivor } => {
                    contract_in_place(&mut g, edge, survivor)?;
                }
                ContractionStep::RemoveIsolated { vertex } => {
                    if g.degree(vertex) != 0 || !g.remove_vertex(vertex) {
                        return Err(Error::VertexNotFound(vertex));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Final vertex that `v` was merged into, if its class survived.
    pub fn image(&self, v: Vertex) -> Option<Vertex> {
        self.vertex_map.get(&v).copied()
    }

    /// Image of an edge of the source: `None` if it collapsed or was removed.
    pub fn edge_image(&self, e: VertexPair) -> Option<VertexPair> {
        VertexPair::try_new(self.image(e.u())?, self.image(e.v())?)
    }

    /// Edges of `source` whose endpoints were merged into one vertex.
    pub fn collapsed_edges(&self, source: &Graph) -> Vec<VertexPair> {
        source
            .edges()
            .filter(|e| matches!((self.image(e.u()), self.image(e.v())), (Some(a), Some(b)) if a == b))
            .collect()
    }
}

#[cfg(test)]
impl Graph {
    fn clone_with_ids(&self, ids: &[Vertex]) -> Graph {
        let mut g = Graph::with_vertices(ids.iter().copied());
        for e in self.edges() {
            g.add_edge(ids[e.u() - 1], ids[e.v() - 1]).unwrap();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contracting_triangle_gives_edge() {
        let (h, rec) = contract_edge(&Graph::complete(3), VertexPair::new(1, 2)).unwrap();
        assert_eq!(h, Graph::complete(2).clone_with_ids(&[1, 3]));
        assert_eq!(rec, MergeRecord { survivor: 1, absorbed: 2 });
    }

    #[test]
    fn contracting_k4_merges_parallel_edges() {
        let (h, _) = contract_edge(&Graph::k4(), VertexPair::new(3, 4)).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn pendant_edge_of_path() {
        let (h, _) = contract_edge(&Graph::path(3), VertexPair::new(2, 3)).unwrap();
        assert_eq!(h, Graph::path(2));
    }

    #[test]
    fn missing_edge_is_an_error() {
        let e = VertexPair::new(1, 3);
        assert_eq!(contract_edge(&Graph::path(3), e).unwrap_err(), Error::EdgeNotFound(e));
    }

    #[test]
    fn sequence_replays() {
        let src = Graph::cycle(5);
        let mut cur = src.clone();
        let mut seq = ContractionSequence::identity(&src);
        seq.contract(&mut cur, VertexPair::new(1, 2), 1).unwrap();
        seq.contract(&mut cur, VertexPair::new(3, 4), 4).unwrap();
        assert_eq!(seq.replay(&src).unwrap(), cur);
        assert_eq!(cur, Graph::from_edges([(1, 4), (4, 5), (5, 1)]).unwrap());
        assert_eq!(seq.image(2), Some(1));
        assert_eq!(seq.image(3), Some(4));
        assert_eq!(seq.collapsed_edges(&src), vec![VertexPair::new(1, 2), VertexPair::new(3, 4)]);
    }
}
