//! Which graphs and parameter sets give single-interval, convex, linear
//! polytope Cayley configuration spaces.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::edcs::{Edcs, Weight};
use crate::graph::{
    complete_to_k_tree, decompose_all, is_partial_two_tree, is_three_realizable, is_two_tree, laman_classify,
    minimal_components_containing, LamanTag, TwoSumDecomposition,
};
use crate::{Error, Graph, Result, Vertex, VertexPair};

/// A minimal 2-sum component containing `param` that is not a partial 2-tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Offending {
    pub param: VertexPair,
    pub component: Graph,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleInterval {
    pub holds: bool,
    pub offending: Vec<Graph>,
}

/// The connected, convex and linear-polytope properties coincide, so one
/// flag backs all three accessors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportView", from = "ReportView")]
pub struct CharacterizationReport {
    linear_polytope: bool,
    pub generically_complete: bool,
    pub witnesses: Vec<Offending>,
    pub suggested_f: Option<BTreeSet<VertexPair>>,
}

impl CharacterizationReport {
    pub fn always_single_interval(&self) -> bool {
        self.linear_polytope
    }

    pub fn always_convex(&self) -> bool {
        self.linear_polytope
    }

    pub fn always_linear_polytope(&self) -> bool {
        self.linear_polytope
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct ReportView {
    always_single_interval: bool,
    always_convex: bool,
    always_linear_polytope: bool,
    generically_complete: bool,
    witnesses: Vec<Offending>,
    suggested_f: Option<BTreeSet<VertexPair>>,
}

impl From<CharacterizationReport> for ReportView {
    fn from(r: CharacterizationReport) -> Self {
        ReportView {
            always_single_interval: r.linear_polytope,
            always_convex: r.linear_polytope,
            always_linear_polytope: r.linear_polytope,
            generically_complete: r.generically_complete,
            witnesses: r.witnesses,
            suggested_f: r.suggested_f,
        }
    }
}

impl From<ReportView> for CharacterizationReport {
    fn from(v: ReportView) -> Self {
        CharacterizationReport {
            linear_polytope: v.always_linear_polytope,
            generically_complete: v.generically_complete,
            witnesses: v.witnesses,
            suggested_f: v.suggested_f,
        }
    }
}

fn require_non_edge(g: &Graph, f: VertexPair) -> Result<()> {
    for v in f.endpoints() {
        if !g.has_vertex(v) {
            return Err(Error::VertexNotFound(v));
        }
    }
    if g.has_pair(f) {
        return Err(Error::NotANonEdge(f));
    }
    Ok(())
}

/// Does `f` range over a single interval for every distance assignment?
pub fn single_interval_nonedge(g: &Graph, f: VertexPair) -> Result<SingleInterval> {
    require_non_edge(g, f)?;
    let offending: Vec<Graph> = minimal_components_containing(&g.with_pairs([&f]), f)?
        .into_iter()
        .filter(|c| !is_partial_two_tree(c))
        .collect();
    Ok(SingleInterval { holds: offending.is_empty(), offending })
}

pub fn check_parameter_set(g: &Graph, params: &BTreeSet<VertexPair>) -> Result<CharacterizationReport> {
    if params.is_empty() {
        return Err(Error::BadParameterSet("empty".into()));
    }
    for &f in params {
        require_non_edge(g, f).map_err(|e| Error::BadParameterSet(e.to_string()))?;
    }
    let h = g.with_pairs(params);
    let mut witnesses = Vec::new();
    let mut all_two_trees = true;
    for &f in params {
        for c in minimal_components_containing(&h, f)? {
            if !is_partial_two_tree(&c) {
                witnesses.push(Offending { param: f, component: c });
            } else if !is_two_tree(&c) {
                all_two_trees = false;
            }
        }
    }
    let linear_polytope = witnesses.is_empty();
    let generically_complete = linear_polytope && all_two_trees && underconstrained_parts_are_p2t(g);
    Ok(CharacterizationReport { linear_polytope, generically_complete, witnesses, suggested_f: None })
}

fn underconstrained_parts_are_p2t(g: &Graph) -> bool {
    decompose_all(g).iter().flat_map(|d| &d.components).all(|c| {
        c.graph.vertex_count() < 2
            || is_partial_two_tree(&c.graph)
            || laman_classify(&c.graph).map_or(true, |l| l.tag != LamanTag::Underconstrained)
    })
}

/// Some nonempty parameter set with a linear polytope space exists iff a
/// 2-sum component of `g` is an underconstrained partial 2-tree. The
/// returned set completes the qualifying component with the lowest vertex.
pub fn admits_efficient_space(g: &Graph) -> Result<Option<(BTreeSet<VertexPair>, CharacterizationReport)>> {
    let mut best: Option<Graph> = None;
    for d in decompose_all(g) {
        for part in maximal_p2t_parts(&d) {
            if part.vertex_count() < 3 || laman_classify(&part)?.tag != LamanTag::Underconstrained {
                continue;
            }
            if best.as_ref().is_none_or(|b| part.vertices().next() < b.vertices().next()) {
                best = Some(part);
            }
        }
    }
    let Some(part) = best else { return Ok(None) };
    let fill = complete_to_k_tree(&part, 2)?;
    let mut report = check_parameter_set(g, &fill)?;
    report.suggested_f = Some(fill.clone());
    Ok(Some((fill, report)))
}

/// Unions of partial 2-tree components over maximal connected subtrees of
/// the decomposition tree. Each is itself a 2-sum component of the input.
fn maximal_p2t_parts(d: &TwoSumDecomposition) -> Vec<Graph> {
    let n = d.components.len();
    let good: Vec<bool> = d.components.iter().map(|c| is_partial_two_tree(&c.graph)).collect();
    let mut nbrs = vec![Vec::new(); n];
    for &(i, j, _) in &d.tree {
        if good[i] && good[j] {
            nbrs[i].push(j);
            nbrs[j].push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for s in 0..n {
        if !good[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut union = Graph::new();
        while let Some(i) = stack.pop() {
            let c = &d.components[i].graph;
            for v in c.vertices() {
                union.add_vertex(v);
            }
            for e in c.edges() {
                union.add_pair(e);
            }
            for &j in &nbrs[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        parts.push(union);
    }
    parts
}

/// Result of replacing interval edges by two-bar paths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subdivision {
    pub edcs: Edcs,
    /// Fresh middle vertex -> the interval edge it replaced.
    pub provenance: BTreeMap<Vertex, VertexPair>,
}

/// Each edge `(u1, u2)` with interval `[l, r]` becomes `u1 - u - u2` with
/// bar lengths `(r - l) / 2` and `(r + l) / 2`. Without `strict`, point
/// weights (including `[d, d]`) are kept as plain edges.
pub fn subdivide_for_intervals(e: &Edcs, strict: bool) -> Result<Subdivision> {
    let g = e.graph();
    let mut next = g.max_vertex().map_or(0, |m| m + 1);
    let mut graph = Graph::with_vertices(g.vertices());
    let mut weights = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    for (&edge, w) in e.weights() {
        let (l, r) = (w.lo(), w.hi());
        if l > r {
            return Err(Error::BadInterval { edge, lo: l, hi: r });
        }
        if !strict && !w.is_genuine_interval() {
            graph.add_pair(edge);
            weights.insert(edge, Weight::Point(l));
            continue;
        }
        let mid = next;
        next += 1;
        provenance.insert(mid, edge);
        for (x, len) in [(edge.u(), (r - l) / 2.0), (edge.v(), (r + l) / 2.0)] {
            graph.add_edge(x, mid)?;
            weights.insert(VertexPair::new(x, mid), Weight::Point(len));
        }
    }
    let edcs = Edcs::new(graph, weights, e.params().clone(), e.dim())?;
    Ok(Subdivision { edcs, provenance })
}

/// The parameter-set test applied to the subdivision of an interval system.
pub fn check_parameter_set_interval(e: &Edcs, params: &BTreeSet<VertexPair>) -> Result<CharacterizationReport> {
    if !e.graph().is_connected() {
        return Err(Error::GraphNotConnected);
    }
    let sub = subdivide_for_intervals(e, false)?;
    check_parameter_set(sub.edcs.graph(), params)
}

/// Every distance assignment realizable in some dimension is realizable in
/// dimension `d`.
pub fn universal_inherence(h: &Graph, d: usize) -> Result<bool> {
    match d {
        2 => Ok(is_partial_two_tree(h)),
        3 => Ok(is_three_realizable(h)),
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: Vertex, b: Vertex) -> VertexPair {
        VertexPair::new(a, b)
    }

    fn k4_minus_f() -> Graph {
        // v1 = 1, v2 = 2, w1 = 3, w2 = 4
        Graph::from_edges([(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn single_interval_examples() {
        assert!(!single_interval_nonedge(&k4_minus_f(), p(1, 2)).unwrap().holds);
        assert!(single_interval_nonedge(&Graph::path(3), p(1, 3)).unwrap().holds);
        assert!(single_interval_nonedge(&Graph::cycle(4), p(1, 3)).unwrap().holds);
        assert_eq!(single_interval_nonedge(&Graph::k4(), p(1, 2)), Err(Error::NotANonEdge(p(1, 2))));
    }

    #[test]
    fn parameter_set_examples() {
        let r = check_parameter_set(&Graph::cycle(4), &BTreeSet::from([p(1, 3)])).unwrap();
        assert!(r.always_linear_polytope() && r.generically_complete);
        let r = check_parameter_set(&k4_minus_f(), &BTreeSet::from([p(1, 2)])).unwrap();
        assert!(!r.always_convex());
        assert_eq!(r.witnesses.len(), 1);
        let r = check_parameter_set(&Graph::path(3), &BTreeSet::from([p(1, 3)])).unwrap();
        assert!(r.always_single_interval() && r.generically_complete);
        assert!(matches!(check_parameter_set(&Graph::path(3), &BTreeSet::new()), Err(Error::BadParameterSet(_))));
        assert!(matches!(
            check_parameter_set(&Graph::path(3), &BTreeSet::from([p(1, 2)])),
            Err(Error::BadParameterSet(_))
        ));
    }

    #[test]
    fn partial_but_not_complete() {
        // C5 with one chord: g ∪ F is a partial 2-tree but not a 2-tree.
        let r = check_parameter_set(&Graph::cycle(5), &BTreeSet::from([p(1, 3)])).unwrap();
        assert!(r.always_linear_polytope());
        assert!(!r.generically_complete);
    }

    #[test]
    fn efficient_space_examples() {
        let (f, r) = admits_efficient_space(&Graph::path(3)).unwrap().unwrap();
        assert_eq!(f, BTreeSet::from([p(1, 3)]));
        assert!(r.always_linear_polytope());
        assert!(admits_efficient_space(&k4_minus_f()).unwrap().is_none());
        let g = Graph::from_edges([(1, 2), (1, 3), (2, 3), (1, 4)]).unwrap();
        let (f, _) = admits_efficient_space(&g).unwrap().unwrap();
        assert_eq!(f, BTreeSet::from([p(2, 4)]));
    }

    #[test]
    fn subdivision_lengths() {
        let e = Edcs::new(
            Graph::path(2),
            BTreeMap::from([(p(1, 2), Weight::Interval(3.0, 5.0))]),
            BTreeSet::new(),
            2,
        )
        .unwrap();
        let s = subdivide_for_intervals(&e, false).unwrap();
        assert_eq!(s.provenance, BTreeMap::from([(3, p(1, 2))]));
        assert_eq!(s.edcs.distance(p(1, 3)), Some(1.0));
        assert_eq!(s.edcs.distance(p(2, 3)), Some(4.0));
        let point = Edcs::from_distances(2, [(1, 2, 2.0)]).unwrap();
        assert!(subdivide_for_intervals(&point, false).unwrap().provenance.is_empty());
        let strict = subdivide_for_intervals(&point, true).unwrap();
        assert_eq!(strict.edcs.distance(p(1, 3)), Some(0.0));
        assert_eq!(strict.edcs.distance(p(2, 3)), Some(2.0));
    }

    #[test]
    fn interval_parameter_sets() {
        let mut w: BTreeMap<_, _> = k4_minus_f().edges().map(|e| (e, Weight::Point(1.0))).collect();
        w.insert(p(1, 3), Weight::Interval(0.5, 1.5));
        let e = Edcs::new(k4_minus_f(), w, BTreeSet::new(), 2).unwrap();
        assert!(!check_parameter_set_interval(&e, &BTreeSet::from([p(1, 2)])).unwrap().always_linear_polytope());
        let w = Graph::cycle(4).edges().map(|e| (e, Weight::Interval(1.0, 2.0))).collect();
        let e = Edcs::new(Graph::cycle(4), w, BTreeSet::new(), 2).unwrap();
        assert!(check_parameter_set_interval(&e, &BTreeSet::from([p(1, 3)])).unwrap().always_linear_polytope());
        let mut g = Graph::path(2);
        g.add_vertex(3);
        let e = Edcs::new(g, BTreeMap::from([(p(1, 2), Weight::Point(1.0))]), BTreeSet::new(), 2).unwrap();
        assert_eq!(check_parameter_set_interval(&e, &BTreeSet::from([p(1, 3)])), Err(Error::GraphNotConnected));
    }

    #[test]
    fn inherence() {
        assert!(!universal_inherence(&Graph::k222(), 3).unwrap());
        assert!(!universal_inherence(&Graph::k4(), 2).unwrap());
        assert!(universal_inherence(&Graph::k4(), 3).unwrap());
        assert_eq!(universal_inherence(&Graph::k4(), 4), Err(Error::UnsupportedDimension(4)));
    }

    #[test]
    fn report_serializes_three_flags() {
        let r = check_parameter_set(&Graph::path(3), &BTreeSet::from([p(1, 3)])).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["always_convex"], true);
        let back: CharacterizationReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
