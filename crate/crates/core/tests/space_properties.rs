//! Invariants of the characterization, the polytope, the realizer and the
//! oracle, checked on seeded random fixtures.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use cayley_core::cayley::{polytope_description, CayleyPoint};
use cayley_core::characterize::{admits_efficient_space, check_parameter_set, single_interval_nonedge};
use cayley_core::graph::{is_partial_two_tree, k_tree_completion, minimal_components_containing};
use cayley_core::oracle::{cayley_space_oracle, realizability_probe};
use cayley_core::realize::{enumerate_branches, realize_k_tree, verify_realization};
use cayley_core::{Edcs, Graph, VertexPair};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut impl Rng, size: std::ops::RangeInclusive<usize>) -> Graph {
    let n = rng.gen_range(size);
    let density = rng.gen_range(0.2..0.8);
    let mut g = Graph::with_vertices(1..=n);
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(density) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// A partial 2-tree with realizable lengths and the fill of a completion.
fn fixture(rng: &mut impl Rng, size: std::ops::RangeInclusive<usize>) -> (Graph, BTreeMap<cayley_core::Vertex, V3>, Vec<VertexPair>) {
    let n = rng.gen_range(size);
    let g = random_partial_k_tree(rng, n, 2, 0.4);
    let pts = random_points(rng, &g, 2);
    let fill = k_tree_completion(&g, 2).unwrap().fill.into_iter().collect();
    (g, pts, fill)
}

fn lengths(g: &Graph, pts: &BTreeMap<cayley_core::Vertex, V3>) -> BTreeMap<VertexPair, f64> {
    distances(g, pts).into_iter().map(|(a, b, d)| (p(a, b), d)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parameter_set_verdict_is_the_component_test(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 3..=7);
        let mut candidates = g.non_edges();
        prop_assume!(!candidates.is_empty());
        candidates.shuffle(&mut rng);
        let f: BTreeSet<VertexPair> = candidates.iter().take(rng.gen_range(1..=3)).copied().collect();
        let h = g.with_pairs(&f);
        let expected = f.iter().all(|&x| minimal_components_containing(&h, x).unwrap().iter().all(is_partial_two_tree));
        let report = check_parameter_set(&g, &f).unwrap();
        prop_assert_eq!(report.always_linear_polytope(), expected);
        prop_assert_eq!(report.always_convex(), report.always_single_interval());
        for &x in &f {
            let single = single_interval_nonedge(&g, x).unwrap();
            prop_assert_eq!(single.holds, check_parameter_set(&g, &BTreeSet::from([x])).unwrap().always_single_interval());
        }
    }

    #[test]
    fn suggested_parameters_qualify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 3..=7);
        if let Some((f, report)) = admits_efficient_space(&g).unwrap() {
            prop_assert!(!f.is_empty());
            prop_assert!(f.iter().all(|x| !g.has_pair(*x)));
            prop_assert!(report.always_linear_polytope());
            prop_assert!(report.generically_complete);
            prop_assert_eq!(check_parameter_set(&g, &f).unwrap().always_linear_polytope(), true);
        }
    }

    #[test]
    fn polytope_is_sound_and_complete(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, pts, fill) = fixture(&mut rng, 4..=8);
        prop_assume!(!fill.is_empty());
        let dist = lengths(&g, &pts);
        let e = edcs_from_points(&g, &pts, 2).with_params(fill.iter().copied()).unwrap();
        let poly = polytope_description(&e).unwrap();
        // The lengths of the original placement satisfy the inequalities.
        let own = CayleyPoint::new(fill.iter().map(|&q| (q, (pts[&q.u()] - pts[&q.v()]).norm())));
        prop_assert!(poly.contains(&own, 1e-9).unwrap());
        prop_assert!(poly.is_feasible(&own));
        // Every sample is realizable, checked by an independent placement.
        let h = g.with_pairs(&fill);
        for x in poly.sample(8, seed).unwrap() {
            let mut all = dist.clone();
            all.extend(x.values.iter().map(|(&q, &v)| (q, v)));
            let r = random_realization(&mut rng, &h, &all, 2, 4).expect("sample realizable");
            prop_assert!(max_length_error(&h, &all, &r) < 1e-9);
        }
    }

    #[test]
    fn projection_keeps_the_feasible_set(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, pts, fill) = fixture(&mut rng, 5..=8);
        prop_assume!(fill.len() >= 2);
        let keep: Vec<VertexPair> = fill.choose_multiple(&mut rng, fill.len() / 2).copied().collect();
        let e = edcs_from_points(&g, &pts, 2).with_params(keep.iter().copied()).unwrap();
        let poly = polytope_description(&e).unwrap();
        let proj = poly.project_out_auxiliary();
        prop_assert_eq!(proj.parameters(), poly.free_parameters());
        for _ in 0..50 {
            let x = CayleyPoint::new(keep.iter().map(|&q| (q, rng.gen_range(0.0..2.0))));
            // Skip points on the boundary, where the answer depends on rounding.
            let strict = proj.contains(&x, -1e-7).unwrap();
            let loose = proj.contains(&x, 1e-7).unwrap();
            if strict == loose {
                prop_assert_eq!(strict, poly.is_feasible(&x), "{:?}", x);
            }
        }
    }

    #[test]
    fn k_tree_realizations_meet_every_length(seed in any::<u64>(), dim in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(dim + 1..=8);
        let g = random_k_tree(&mut rng, n, dim);
        let e = edcs_from_points(&g, &random_points(&mut rng, &g, dim), dim);
        let branches: Vec<i8> = (0..n).map(|_| if rng.gen() { 1 } else { -1 }).collect();
        let r = realize_k_tree(&e, Some(&branches)).unwrap();
        prop_assert!(verify_realization(&r, &e, 1e-9).unwrap().pass);
        prop_assert!(r.in_canonical_frame(1e-9));
        let all = enumerate_branches(&e, 1 << 12).unwrap();
        prop_assert!(!all.realizations.is_empty());
        prop_assert!(all.realizations.len() <= 1 << (n - dim - 1));
        for r in &all.realizations {
            prop_assert!(verify_realization(r, &e, 1e-9).unwrap().pass);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn oracle_hull_matches_polytope_range(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, pts, fill) = fixture(&mut rng, 4..=6);
        let Some(&f) = fill.choose(&mut rng) else { return Ok(()) };
        let e = edcs_from_points(&g, &pts, 2);
        let range = polytope_description(&e.clone().with_params([f]).unwrap()).unwrap().range(f).unwrap().unwrap();
        let oracle = cayley_space_oracle(&e, f, 40).unwrap();
        prop_assert!(oracle.is_single_interval());
        let hull = oracle.hull().unwrap();
        prop_assert!((hull.0 - range.0).abs() < 1e-6 && (hull.1 - range.1).abs() < 1e-6, "{:?} vs {:?}", hull, range);
    }

    #[test]
    fn finer_oracle_grids_do_not_shrink_the_hull(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, pts, fill) = fixture(&mut rng, 4..=6);
        let Some(&f) = fill.choose(&mut rng) else { return Ok(()) };
        let e = edcs_from_points(&g, &pts, 2);
        // Grids 9 and 17 nest: every coarse point is a fine point.
        let coarse = cayley_space_oracle(&e, f, 9).unwrap().hull().unwrap();
        let fine = cayley_space_oracle(&e, f, 17).unwrap().hull().unwrap();
        prop_assert!(fine.0 <= coarse.0 + 1e-9 && fine.1 >= coarse.1 - 1e-9, "{:?} vs {:?}", fine, coarse);
    }

    #[test]
    fn probe_agrees_with_path_polytope(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.1f64..3.0) {
        let f = p(1, 4);
        let e = Edcs::from_distances(2, [(1, 2, a), (2, 3, b), (3, 4, c)]).unwrap();
        let (lo, hi) = polytope_description(&e.clone().with_params([f]).unwrap()).unwrap().range(f).unwrap().unwrap();
        prop_assert!((hi - (a + b + c)).abs() < 1e-12);
        prop_assert!((lo - (a - b - c).max(b - a - c).max(c - a - b).max(0.0)).abs() < 1e-12);
        for x in [lo, (lo + hi) / 2.0, hi] {
            prop_assert!(realizability_probe(&e, &BTreeMap::from([(f, x)]), 40).unwrap());
        }
        for x in [lo - 0.05, hi + 0.05] {
            if x >= 0.0 {
                prop_assert!(!realizability_probe(&e, &BTreeMap::from([(f, x)]), 40).unwrap());
            }
        }
    }
}

#[test]
fn probe_on_the_unit_rhombus() {
    let c4 = Edcs::from_distances(2, [(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (1, 4, 1.0)]).unwrap();
    for i in 0..=30 {
        let x = i as f64 * 0.1;
        let got = realizability_probe(&c4, &BTreeMap::from([(p(1, 3), x)]), 60).unwrap();
        assert_eq!(got, x <= 2.0 + 1e-12, "x = {x}");
    }
    // Two chords at once: the second is measured with the first fixed.
    let both = BTreeMap::from([(p(1, 3), 2f64.sqrt()), (p(2, 4), 2f64.sqrt())]);
    assert!(realizability_probe(&c4, &both, 60).unwrap());
    let bad = BTreeMap::from([(p(1, 3), 1.0), (p(2, 4), 1.0)]);
    assert!(!realizability_probe(&c4, &bad, 60).unwrap());
}
