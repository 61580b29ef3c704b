//! Contraction-only reduction of `(G, f)` to one of the two base cases:
//!
//! * Base case 1: K4 minus `f` on `{v1, v2, w1, w2}`.
//! * Base case 2: base case 1 plus vertices `u_1 … u_m` (m ≥ 1), each
//!   adjacent to exactly `v1` and `v2`.
//!
//! The reduction exists iff some minimal 2-sum component of `G ∪ f`
//! containing `f` is not a partial 2-tree. The construction follows the
//! induction on `|V|`: collapse everything outside one offending component,
//! then either split at a cut vertex between `v1` and `v2` and recurse on
//! one side, or take two disjoint `v1`–`v2` paths and collapse the rest onto
//! them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::contract::ContractionSequence;
use super::paths::disjoint_paths;
use super::{is_partial_two_tree, minimal_components_containing, Graph, Vertex, VertexPair};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum BaseCase {
    One { v: VertexPair, w: VertexPair },
    Two { v: VertexPair, w: VertexPair, u: Vec<Vertex> },
}

impl BaseCase {
    /// Recognises a base case with `f = (v1, v2)`.
    pub fn identify(g: &Graph, f: VertexPair) -> Option<BaseCase> {
        let (v1, v2) = (f.u(), f.v());
        if !g.has_vertex(v1) || !g.has_vertex(v2) || g.has_pair(f) {
            return None;
        }
        let (mut w, mut u) = (Vec::new(), Vec::new());
        for x in g.vertices().filter(|&x| x != v1 && x != v2) {
            let nb: Vec<Vertex> = g.neighbors(x).collect();
            if nb == [v1, v2] {
                u.push(x);
            } else {
                w.push(x);
            }
        }
        let [w1, w2] = w[..] else { return None };
        let needed = [(v1, w1), (v1, w2), (v2, w1), (v2, w2), (w1, w2)];
        if !needed.iter().all(|&(a, b)| g.has_edge(a, b)) || g.edge_count() != 5 + 2 * u.len() {
            return None;
        }
        let w = VertexPair::new(w1, w2);
        Some(if u.is_empty() { BaseCase::One { v: f, w } } else { BaseCase::Two { v: f, w, u } })
    }

    pub fn f(&self) -> VertexPair {
        match self {
            BaseCase::One { v, .. } | BaseCase::Two { v, .. } => *v,
        }
    }

    pub fn w(&self) -> VertexPair {
        match self {
            BaseCase::One { w, .. } | BaseCase::Two { w, .. } => *w,
        }
    }

    pub fn u(&self) -> &[Vertex] {
        match self {
            BaseCase::One { .. } => &[],
            BaseCase::Two { u, .. } => u,
        }
    }
}

/// A contraction sequence together with the base case it reaches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub sequence: ContractionSequence,
    pub base: BaseCase,
}

/// Reduces `g` to a base case for the non-edge `f`, or returns `None` when
/// every minimal 2-sum component of `g ∪ f` containing `f` is a partial
/// 2-tree. Components of `g` that do not reach `f` are collapsed and then
/// removed as isolated vertices.
pub fn restricted_contraction_reduction(g: &Graph, f: VertexPair) -> Result<Option<Reduction>> {
    for x in f.endpoints() {
        if !g.has_vertex(x) {
            return Err(Error::VertexNotFound(x));
        }
    }
    if g.has_pair(f) {
        return Err(Error::NotANonEdge(f));
    }
    if offending_component(g, &g.vertex_set(), f.u(), f.v()).is_none() {
        return Ok(None);
    }
    let mut current = g.clone();
    let mut seq = ContractionSequence::identity(g);
    let scope = g.vertex_set();
    reduce(&mut current, &mut seq, scope, f.u(), f.v())?;
    let base = BaseCase::identify(&current, f)
        .unwrap_or_else(|| panic!("reduction of {g} on {f} ended at {current}, not a base case"));
    debug_assert_eq!(seq.replay(g).as_ref(), Ok(&current));
    Ok(Some(Reduction { sequence: seq, base }))
}

/// Vertex set of the first minimal component of `g[scope] ∪ (a, b)`
/// containing `(a, b)` that is not a partial 2-tree.
fn offending_component(g: &Graph, scope: &BTreeSet<Vertex>, a: Vertex, b: Vertex) -> Option<BTreeSet<Vertex>> {
    let f = VertexPair::new(a, b);
    let h = g.induced(scope).with_pairs([&f]);
    minimal_components_containing(&h, f)
        .expect("endpoints are in scope")
        .into_iter()
        .find(|c| !is_partial_two_tree(c))
        .map(|c| c.vertex_set())
}

fn reduce(current: &mut Graph, seq: &mut ContractionSequence, scope: BTreeSet<Vertex>, v1: Vertex, v2: Vertex) -> Result<()> {
    let core = offending_component(current, &scope, v1, v2)
        .ok_or_else(|| Error::BadParameter(format!("no offending component for ({v1},{v2})")))?;

    // Collapse every piece of the scope outside the offending component.
    let outside: BTreeSet<Vertex> = scope.iter().copied().filter(|v| !core.contains(v)).collect();
    let mut blocked = core.clone();
    blocked.extend(current.vertices().filter(|v| !scope.contains(v)));
    let mut seen = BTreeSet::new();
    for &s in &outside {
        if seen.contains(&s) {
            continue;
        }
        let piece = current.reachable_from(s, &blocked);
        seen.extend(piece.iter().copied());
        let attach: BTreeSet<Vertex> =
            piece.iter().flat_map(|&x| current.neighbors(x)).filter(|y| core.contains(y)).collect();
        let rep = *piece.iter().next().expect("nonempty");
        let both = attach.contains(&v1) && attach.contains(&v2);
        if both {
            // A piece hanging on f itself becomes a vertex adjacent to v1 and v2.
            debug_assert_eq!(attach.len(), 2);
            seq.merge_class(current, &piece, rep)?;
        } else if let Some(&a) = attach.iter().next() {
            debug_assert!(attach.len() <= 2, "piece attached outside a hinge");
            seq.merge_class(current, &piece, a)?;
        } else {
            seq.merge_class(current, &piece, rep)?;
            seq.remove_isolated(current, rep)?;
        }
    }

    let d = current.induced(&core);
    let paths = disjoint_paths(&d, v1, v2, 2);
    if paths.len() >= 2 {
        two_paths(current, seq, &core, v1, v2, &paths)
    } else {
        cut_vertex(current, seq, &d, v1, v2)
    }
}

/// Fewer than two disjoint paths: some vertex `v3` separates `v1` from `v2`.
/// Recurse on a side whose union with its new non-edge is still offending,
/// then collapse the other side (with `v3`) onto the far endpoint.
fn cut_vertex(current: &mut Graph, seq: &mut ContractionSequence, d: &Graph, v1: Vertex, v2: Vertex) -> Result<()> {
    let v3 = d
        .vertices()
        .filter(|&x| x != v1 && x != v2)
        .find(|&x| !d.reachable_from(v1, &BTreeSet::from([x])).contains(&v2))
        .ok_or_else(|| Error::BadParameter("no separating vertex".into()))?;
    let blocked = BTreeSet::from([v3]);
    let mut side1 = d.reachable_from(v1, &blocked);
    side1.insert(v3);
    let mut side2 = d.reachable_from(v2, &blocked);
    side2.insert(v3);
    if offending_component(current, &side1, v1, v3).is_some() {
        reduce(current, seq, side1, v1, v3)?;
        seq.merge_class(current, &side2, v2)
    } else {
        reduce(current, seq, side2, v3, v2)?;
        seq.merge_class(current, &side1, v1)
    }
}

/// Two disjoint paths `v1 t… v2` and `v1 z… v2`: shrink each to one vertex,
/// shrink the rest of the component into single vertices `q`, and fold each
/// `q` into `t`, `z`, `v1` or `v2`, keeping those adjacent to `v1` and `v2`
/// only.
fn two_paths(
    current: &mut Graph,
    seq: &mut ContractionSequence,
    core: &BTreeSet<Vertex>,
    v1: Vertex,
    v2: Vertex,
    paths: &[Vec<Vertex>],
) -> Result<()> {
    let inner = |p: &Vec<Vertex>| -> BTreeSet<Vertex> { p[1..p.len() - 1].iter().copied().collect() };
    let (t, z) = (paths[0][1], paths[1][1]);
    seq.merge_class(current, &inner(&paths[0]), t)?;
    seq.merge_class(current, &inner(&paths[1]), z)?;
    let scope: BTreeSet<Vertex> = core.iter().copied().filter(|&v| current.has_vertex(v)).collect();
    let frame = BTreeSet::from([v1, v2, t, z]);
    let mut blocked: BTreeSet<Vertex> = current.vertices().filter(|v| !scope.contains(v)).collect();
    blocked.extend(frame.iter().copied());
    let rest: Vec<Vertex> = scope.iter().copied().filter(|v| !frame.contains(v)).collect();
    let mut seen = BTreeSet::new();
    for s in rest {
        if seen.contains(&s) {
            continue;
        }
        let piece = current.reachable_from(s, &blocked);
        seen.extend(piece.iter().copied());
        seq.merge_class(current, &piece, s)?;
        let q = s;
        let into = if current.has_edge(q, t) {
            Some(t)
        } else if current.has_edge(q, z) {
            Some(z)
        } else {
            match (current.has_edge(q, v1), current.has_edge(q, v2)) {
                (true, true) => None,
                (true, false) => Some(v1),
                (false, true) => Some(v2),
                (false, false) => return Err(Error::BadParameter(format!("vertex {q} detached from the frame"))),
            }
        };
        if let Some(target) = into {
            seq.contract(current, VertexPair::new(q, target), target)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc1() -> Graph {
        Graph::from_edges([(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn base_case_one_is_fixed() {
        let r = restricted_contraction_reduction(&bc1(), VertexPair::new(1, 2)).unwrap().unwrap();
        assert!(r.sequence.is_empty());
        assert_eq!(r.base, BaseCase::One { v: VertexPair::new(1, 2), w: VertexPair::new(3, 4) });
    }

    #[test]
    fn subdivided_base_case_needs_one_contraction() {
        let mut g = bc1();
        g.remove_edge(1, 3);
        g.add_edge(1, 7).unwrap();
        g.add_edge(7, 3).unwrap();
        let r = restricted_contraction_reduction(&g, VertexPair::new(1, 2)).unwrap().unwrap();
        assert_eq!(r.sequence.len(), 1);
        assert!(matches!(r.base, BaseCase::One { .. }));
    }

    #[test]
    fn path_has_no_reduction() {
        assert_eq!(restricted_contraction_reduction(&Graph::path(3), VertexPair::new(1, 3)).unwrap(), None);
        let e = VertexPair::new(1, 2);
        assert_eq!(restricted_contraction_reduction(&Graph::path(3), e).unwrap_err(), Error::NotANonEdge(e));
    }

    #[test]
    fn extra_pieces_on_f_become_u_vertices() {
        let mut g = bc1();
        g.add_edge(1, 5).unwrap();
        g.add_edge(5, 6).unwrap();
        g.add_edge(6, 2).unwrap();
        g.add_edge(10, 11).unwrap();
        let r = restricted_contraction_reduction(&g, VertexPair::new(1, 2)).unwrap().unwrap();
        assert_eq!(r.base.u(), &[5]);
        assert_eq!(r.sequence.replay(&g).unwrap().vertex_count(), 5);
    }

    #[test]
    fn cut_vertex_case() {
        // K4 on {1,3,4,5} minus (1,5), then 5 joined to 2 through a path.
        let g = Graph::from_edges([(1, 3), (1, 4), (3, 4), (3, 5), (4, 5), (5, 6), (6, 2)]).unwrap();
        let r = restricted_contraction_reduction(&g, VertexPair::new(1, 2)).unwrap().unwrap();
        assert_eq!(r.sequence.image(5), Some(2));
        assert!(matches!(r.base, BaseCase::One { .. }));
    }
}
