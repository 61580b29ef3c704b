use cayley_cli::document::{EdcsDocument, EdgeRecord, FORMAT_VERSION};
use proptest::prelude::*;

fn document() -> impl Strategy<Value = EdcsDocument> {
    (2usize..7, any::<bool>()).prop_flat_map(|(n, three)| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let count = pairs.len();
        (
            proptest::collection::vec((any::<bool>(), 0.0f64..10.0, 0.0f64..5.0), count),
            proptest::collection::vec(0u8..3, count),
        )
            .prop_map(move |(weights, roles)| {
                let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
                let mut edges = Vec::new();
                let mut nonedges = Vec::new();
                for (&(a, b), (&(point, lo, width), &role)) in pairs.iter().zip(weights.iter().zip(&roles)) {
                    let (u, v) = (names[a].clone(), names[b].clone());
                    match role {
                        0 if point => edges.push(EdgeRecord { u, v, delta: Some(lo), interval: None }),
                        0 => edges.push(EdgeRecord { u, v, delta: None, interval: Some([lo, lo + width]) }),
                        1 => nonedges.push([u, v]),
                        _ => {}
                    }
                }
                EdcsDocument {
                    format_version: FORMAT_VERSION.into(),
                    vertices: names,
                    edges,
                    nonedges,
                    dim: if three { 3 } else { 2 },
                    expected_values: None,
                }
            })
    })
}

proptest! {
    #[test]
    fn documents_survive_both_directions(doc in document()) {
        let parsed = EdcsDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&parsed, &doc);
        let (edcs, names) = doc.to_edcs().unwrap();
        prop_assert_eq!(edcs.graph().vertex_count(), doc.vertices.len());
        prop_assert_eq!(edcs.graph().edge_count(), doc.edges.len());
        prop_assert_eq!(edcs.params().len(), doc.nonedges.len());
        let back = EdcsDocument::from_edcs(&edcs, &names);
        prop_assert_eq!(EdcsDocument::parse(&back.to_json()).unwrap(), back.clone());
        prop_assert_eq!(back.to_edcs().unwrap().0, edcs);
    }
}
