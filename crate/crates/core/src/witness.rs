//! Distance assignments whose configuration space over the parameters is
//! disconnected (2D) or which cannot be realized with every parameter
//! completing the system (3D).
//!
//! Each witness is pulled back from a small base graph along a contraction
//! sequence: contracted edges get length zero and surviving edges inherit
//! the length of their image.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::graph::{
    complement_matching, contraction_reduction_to_k5_or_k222, is_three_realizable, restricted_contraction_reduction,
    BaseCase, ContractionSequence, MinorTarget,
};
use crate::{Edcs, Error, Graph, Result, Vertex, VertexPair, Weight};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessTarget {
    Base(BaseCase),
    K5 { f: VertexPair },
    K222 { f: VertexPair, t: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessAssignment {
    /// Point distances on every remaining edge; the parameters are the
    /// pairs whose attainable lengths are claimed.
    pub edcs: Edcs,
    /// Lengths the parameters attain, ascending.
    pub expected_values: Vec<f64>,
    pub contraction: ContractionSequence,
    pub target: WitnessTarget,
}

impl WitnessAssignment {
    /// Edges of the witness that carry length zero.
    pub fn zero_edges(&self) -> Vec<VertexPair> {
        self.edcs.weights().iter().filter(|(_, w)| w.lo() == 0.0 && w.hi() == 0.0).map(|(&e, _)| e).collect()
    }
}

/// Length of an edge of a base case: 2 on edges to the extra vertices,
/// 1 elsewhere.
fn base_case_length(base: &BaseCase, e: VertexPair) -> f64 {
    if e.endpoints().iter().any(|x| base.u().contains(x)) {
        2.0
    } else {
        1.0
    }
}

/// A distance assignment on `g` with `Φ_f = {0, √3}`, or `NoWitness` when
/// every minimal 2-sum component of `g ∪ f` through `f` is a partial 2-tree.
pub fn base_case_witness_2d(g: &Graph, f: VertexPair) -> Result<WitnessAssignment> {
    let red = restricted_contraction_reduction(g, f)?.ok_or(Error::NoWitness)?;
    let weights: BTreeMap<VertexPair, Weight> = g
        .edges()
        .map(|e| {
            let d = red.sequence.edge_image(e).map_or(0.0, |img| base_case_length(&red.base, img));
            (e, Weight::Point(d))
        })
        .collect();
    let edcs = Edcs::new(g.clone(), weights, BTreeSet::from([f]), 2)?;
    Ok(WitnessAssignment {
        edcs,
        expected_values: vec![0.0, 3f64.sqrt()],
        contraction: red.sequence,
        target: WitnessTarget::Base(red.base),
    })
}

/// K5 minus `(1, 2)` with unit lengths; `δ(1, 2) ∈ {0, 2√(2/3)}`.
pub fn k5_witness_3d() -> WitnessAssignment {
    let f = VertexPair::new(1, 2);
    let g = Graph::k5().without_pairs([&f]);
    let weights = g.edges().map(|e| (e, Weight::Point(1.0))).collect();
    let edcs = Edcs::new(g.clone(), weights, BTreeSet::from([f]), 3).expect("valid by construction");
    WitnessAssignment {
        edcs,
        expected_values: vec![0.0, 2.0 * (2.0f64 / 3.0).sqrt()],
        contraction: ContractionSequence::identity(&g),
        target: WitnessTarget::K5 { f },
    }
}

/// Coordinates realizing the K2,2,2 witness with parameter `t`: `{1,2,3,4}`
/// is a unit regular tetrahedron, `6` lies on the ray from `1` through `4`
/// at distance `1 + t`, and `5` is `1` reflected through the face `{2,3,4}`.
pub fn k222_coordinates(t: f64) -> BTreeMap<Vertex, Vector3<f64>> {
    let v1 = Vector3::zeros();
    let v2 = Vector3::new(1.0, 0.0, 0.0);
    let v3 = Vector3::new(0.5, 3f64.sqrt() / 2.0, 0.0);
    let v4 = Vector3::new(0.5, 3f64.sqrt() / 6.0, (2.0f64 / 3.0).sqrt());
    let v6 = v1 + v4 * (1.0 + t);
    let v5 = (v2 + v3 + v4) * (2.0 / 3.0) - v1;
    BTreeMap::from([(1, v1), (2, v2), (3, v3), (4, v4), (5, v5), (6, v6)])
}

fn k222_lengths(t: f64) -> BTreeMap<VertexPair, f64> {
    let unit = [(1, 2), (2, 3), (1, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5)];
    let mut d: BTreeMap<VertexPair, f64> = unit.iter().map(|&(a, b)| (VertexPair::new(a, b), 1.0)).collect();
    let s = 1.0 + t;
    d.insert(VertexPair::new(4, 6), t);
    d.insert(VertexPair::new(1, 6), s);
    d.insert(VertexPair::new(2, 6), (1.0 + s * s - s).sqrt());
    d
}

/// K2,2,2 minus `(5, 6)`; `δ(5, 6) ∈ {1 + t, D'(t)}` with `D'(t) < 1 + t`.
pub fn k222_witness_3d(t: f64) -> Result<WitnessAssignment> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::BadParameter(format!("t must be positive, got {t}")));
    }
    let f = VertexPair::new(5, 6);
    let g = Graph::k222().without_pairs([&f]);
    let weights = k222_lengths(t).into_iter().map(|(e, d)| (e, Weight::Point(d))).collect();
    let edcs = Edcs::new(g.clone(), weights, BTreeSet::from([f]), 3)?;
    let p = k222_coordinates(t);
    let mut expected = vec![(p[&5] - p[&6]).norm(), 1.0 + t];
    expected.sort_by(f64::total_cmp);
    Ok(WitnessAssignment {
        edcs,
        expected_values: expected,
        contraction: ContractionSequence::identity(&g),
        target: WitnessTarget::K222 { f, t },
    })
}

/// Relabels the reduced graph onto the canonical target. For K5 vertices go
/// to `1..=5` in order; for K2,2,2 the missing pairs, sorted, become the
/// parts {1,5}, {2,4}, {3,6}.
fn canonical_labels(reduced: &Graph, target: MinorTarget) -> BTreeMap<Vertex, Vertex> {
    match target {
        MinorTarget::K5 => reduced.vertices().zip(1..).collect(),
        MinorTarget::K222 => {
            let parts = [[1, 5], [2, 4], [3, 6]];
            let missing = complement_matching(reduced).expect("reduced graph is K2,2,2");
            missing.iter().zip(parts).flat_map(|(p, [a, b])| [(p.u(), a), (p.v(), b)]).collect()
        }
    }
}

/// A 3D witness on `h`: contract onto K5 or K2,2,2, choose the target edge
/// that the base witness leaves free, and take as parameters every edge of
/// `h` mapped onto it. `NoWitness` when `h` is 3-realizable.
pub fn three_d_witness(h: &Graph) -> Result<WitnessAssignment> {
    if is_three_realizable(h) {
        return Err(Error::NoWitness);
    }
    let (seq, target) = contraction_reduction_to_k5_or_k222(h).ok_or(Error::NoWitness)?;
    let reduced = seq.replay(h)?;
    let labels = canonical_labels(&reduced, target);
    let base = match target {
        MinorTarget::K5 => k5_witness_3d(),
        MinorTarget::K222 => k222_witness_3d(1.0)?,
    };
    let free = *base.edcs.params().iter().next().expect("one parameter");
    let canon = |e: VertexPair| VertexPair::new(labels[&e.u()], labels[&e.v()]);
    let mut params = BTreeSet::new();
    let mut weights = BTreeMap::new();
    for e in h.edges() {
        match seq.edge_image(e).map(canon) {
            None => {
                weights.insert(e, Weight::Point(0.0));
            }
            Some(img) if img == free => {
                params.insert(e);
            }
            Some(img) => {
                let d = base.edcs.distance(img).expect("base witness covers every other edge");
                weights.insert(e, Weight::Point(d));
            }
        }
    }
    let g = h.without_pairs(params.iter());
    let edcs = Edcs::new(g, weights, params, 3)?;
    Ok(WitnessAssignment {
        edcs,
        expected_values: base.expected_values,
        contraction: seq,
        target: base.target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::{enumerate_along, enumerate_branches};

    fn values_of(real: &[crate::realize::Realization], f: VertexPair) -> Vec<f64> {
        let mut v: Vec<f64> = real.iter().map(|r| r.distance(f.u(), f.v()).unwrap()).collect();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        v
    }

    #[test]
    fn k4_minus_f() {
        let f = VertexPair::new(1, 2);
        let g = Graph::complete(4).without_pairs([&f]);
        let w = base_case_witness_2d(&g, f).unwrap();
        assert!(w.zero_edges().is_empty());
        let e = w.edcs.clone().with_params([]).unwrap();
        let vals = values_of(&enumerate_branches(&e, 64).unwrap().realizations, f);
        assert_eq!(vals.len(), 2);
        assert!(vals[0].abs() < 1e-9 && (vals[1] - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn subdivided_edge_gets_a_zero() {
        let f = VertexPair::new(1, 2);
        let mut g = Graph::complete(4).without_pairs([&f, &VertexPair::new(1, 3)]);
        g.add_edge(1, 5).unwrap();
        g.add_edge(5, 3).unwrap();
        let w = base_case_witness_2d(&g, f).unwrap();
        assert_eq!(w.zero_edges().len(), 1);
        assert_eq!(w.edcs.weights().values().filter(|d| d.lo() == 1.0).count(), 5);
    }

    #[test]
    fn no_witness_for_two_tree_completion() {
        let g = Graph::cycle(4);
        assert!(matches!(base_case_witness_2d(&g, VertexPair::new(1, 3)), Err(Error::NoWitness)));
    }

    #[test]
    fn k5_values() {
        let w = k5_witness_3d();
        let e = w.edcs.clone().with_params([]).unwrap();
        let vals = values_of(&enumerate_branches(&e, 64).unwrap().realizations, VertexPair::new(1, 2));
        assert_eq!(vals.len(), 2);
        for (a, b) in vals.iter().zip(&w.expected_values) {
            assert!((a - b).abs() < 1e-9, "{vals:?} vs {:?}", w.expected_values);
        }
    }

    #[test]
    fn k222_coordinates_match_lengths() {
        for t in [0.3, 1.0, 2.5] {
            let p = k222_coordinates(t);
            for (e, d) in k222_lengths(t) {
                assert!(((p[&e.u()] - p[&e.v()]).norm() - d).abs() < 1e-12, "{e} at t = {t}");
            }
            let w = k222_witness_3d(t).unwrap();
            assert!(w.expected_values[0] < w.expected_values[1]);
        }
        assert!(k222_witness_3d(0.0).is_err());
    }

    #[test]
    fn k222_values_by_branch_enumeration() {
        let t = 0.7;
        let mut d = k222_lengths(t);
        d.insert(VertexPair::new(2, 4), 1.0);
        let order = [1, 2, 3, 4, 5, 6];
        let att = vec![vec![], vec![1], vec![1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![1, 2, 4]];
        let en = enumerate_along(3, &order, &att, &|p| d[&p], 64).unwrap();
        let vals = values_of(&en.realizations, VertexPair::new(5, 6));
        let w = k222_witness_3d(t).unwrap();
        assert_eq!(vals.len(), 2, "{vals:?}");
        for (a, b) in vals.iter().zip(&w.expected_values) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn three_d_witness_pulls_back() {
        let h = Graph::k5();
        let w = three_d_witness(&h).unwrap();
        assert_eq!(w.edcs.params().len(), 1);
        assert!(w.zero_edges().is_empty());

        // Subdividing an edge of K2,2,2 keeps the minor; one edge collapses.
        let mut h = Graph::k222().without_pairs([&VertexPair::new(1, 2)]);
        h.add_edge(1, 7).unwrap();
        h.add_edge(7, 2).unwrap();
        let w = three_d_witness(&h).unwrap();
        assert_eq!(w.zero_edges().len(), 1);
        assert!(!w.edcs.params().is_empty());
        assert!(matches!(w.target, WitnessTarget::K222 { .. }));

        assert!(matches!(three_d_witness(&Graph::complete(4)), Err(Error::NoWitness)));
    }
}
