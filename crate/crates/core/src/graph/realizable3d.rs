//! 3-realizability: no K5 and no K2,2,2 minor.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::contract::ContractionSequence;
use super::minor::{find_minor_model, MinorModel};
use super::{is_partial_k_tree, Graph, VertexPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorTarget {
    K5,
    K222,
}

impl MinorTarget {
    pub fn graph(self) -> Graph {
        match self {
            MinorTarget::K5 => Graph::k5(),
            MinorTarget::K222 => Graph::k222(),
        }
    }

    /// Does `g` have exactly this shape (up to relabelling)?
    pub fn matches(self, g: &Graph) -> bool {
        let n = g.vertex_count();
        match self {
            MinorTarget::K5 => n == 5 && g.edge_count() == 10,
            MinorTarget::K222 => {
                n == 6
                    && g.edge_count() == 12
                    && g.vertices().all(|v| g.degree(v) == 4)
                    && complement_matching(g).is_some()
            }
        }
    }
}

/// For a 4-regular graph on 6 vertices, the three missing pairs.
pub fn complement_matching(g: &Graph) -> Option<Vec<VertexPair>> {
    let missing = g.non_edges();
    let covered: BTreeSet<_> = missing.iter().flat_map(|p| p.endpoints()).collect();
    (missing.len() == 3 && covered.len() == 6).then_some(missing)
}

pub fn is_three_realizable(g: &Graph) -> bool {
    // Partial 3-trees are 3-realizable; checking that first skips most searches.
    if g.vertex_count() <= 16 && is_partial_k_tree(g, 3).unwrap_or(false) {
        return true;
    }
    obstruction_model(g).is_none()
}

fn obstruction_model(g: &Graph) -> Option<(MinorTarget, MinorModel)> {
    for target in [MinorTarget::K5, MinorTarget::K222] {
        if let Some(m) = find_minor_model(g, &target.graph()).expect("targets are small") {
            return Some((target, m));
        }
    }
    None
}

/// A contraction sequence (plus removals of vertices left isolated) taking
/// `g` exactly onto K5 or K2,2,2; `None` iff `g` is 3-realizable. K5 is
/// preferred when both are minors, which makes the K2,2,2 result exact:
/// K2,2,2 plus any edge already has a K5 minor.
pub fn contraction_reduction_to_k5_or_k222(g: &Graph) -> Option<(ContractionSequence, MinorTarget)> {
    let (target, model) = obstruction_model(g)?;
    let mut current = g.clone();
    let mut seq = ContractionSequence::identity(g);
    let mut reps = BTreeSet::new();
    for set in model.branch_sets.values() {
        let rep = *set.iter().next().expect("branch sets are nonempty");
        seq.merge_class(&mut current, set, rep).expect("branch sets are connected");
        reps.insert(rep);
    }
    let mut seen = BTreeSet::new();
    let leftovers: Vec<_> = current.vertices().filter(|v| !reps.contains(v)).collect();
    for s in leftovers {
        if seen.contains(&s) {
            continue;
        }
        let piece = current.reachable_from(s, &reps);
        seen.extend(piece.iter().copied());
        let anchor = piece.iter().flat_map(|&x| current.neighbors(x)).filter(|y| reps.contains(y)).min();
        match anchor {
            Some(a) => seq.merge_class(&mut current, &piece, a).expect("piece touches its anchor"),
            None => {
                seq.merge_class(&mut current, &piece, s).expect("piece is connected");
                seq.remove_isolated(&mut current, s).expect("collapsed piece is isolated");
            }
        }
    }
    assert!(target.matches(&current), "reduction ended at {current}, expected {target:?}");
    Some((seq, target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forbidden_minors() {
        assert!(!is_three_realizable(&Graph::k222()));
        assert!(!is_three_realizable(&Graph::k5()));
        assert!(is_three_realizable(&Graph::k5().without_pair(VertexPair::new(1, 2))));
        assert!(is_three_realizable(&Graph::k4()));
    }

    #[test]
    fn targets_are_fixed_points() {
        let (s, t) = contraction_reduction_to_k5_or_k222(&Graph::k5()).unwrap();
        assert!(s.is_empty());
        assert_eq!(t, MinorTarget::K5);
        let (s, t) = contraction_reduction_to_k5_or_k222(&Graph::k222()).unwrap();
        assert!(s.is_empty());
        assert_eq!(t, MinorTarget::K222);
    }

    #[test]
    fn subdivided_octahedron() {
        let mut g = Graph::k222();
        g.remove_edge(1, 2);
        g.add_edge(1, 7).unwrap();
        g.add_edge(7, 2).unwrap();
        let (s, t) = contraction_reduction_to_k5_or_k222(&g).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(t, MinorTarget::K222);
        assert!(MinorTarget::K222.matches(&s.replay(&g).unwrap()));
    }

    #[test]
    fn three_realizable_has_no_sequence() {
        assert!(contraction_reduction_to_k5_or_k222(&Graph::k4()).is_none());
    }
}
