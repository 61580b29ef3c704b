//! Laman counting in the plane via the (2,3)-pebble game.

use serde::{Deserialize, Serialize};

use super::{is_partial_two_tree, Dense, Graph, VertexPair};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LamanTag {
    /// Independent, not rigid.
    Underconstrained,
    /// Independent and rigid: minimally rigid.
    Wellconstrained,
    /// Rigid with dependent edges.
    Overconstrained,
    /// Dependent edges, yet not rigid.
    FlexibleOverconstrained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LamanClass {
    pub tag: LamanTag,
    /// `2|V| - 3 - rank`.
    pub dof: usize,
    pub rank: usize,
    /// Edges rejected by the pebble game, in insertion order.
    pub dependent: Vec<VertexPair>,
}

impl LamanClass {
    pub fn is_rigid(&self) -> bool {
        self.dof == 0
    }

    pub fn is_independent(&self) -> bool {
        self.dependent.is_empty()
    }
}

pub fn laman_classify(g: &Graph) -> Result<LamanClass> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    // Subgraphs of 2-trees satisfy the Laman counts.
    let dependent = if is_partial_two_tree(g) { Vec::new() } else { pebble_game(g).1 };
    let rank = g.edge_count() - dependent.len();
    let dof = 2 * n - 3 - rank;
    let tag = match (dependent.is_empty(), dof == 0) {
        (true, false) => LamanTag::Underconstrained,
        (true, true) => LamanTag::Wellconstrained,
        (false, true) => LamanTag::Overconstrained,
        (false, false) => LamanTag::FlexibleOverconstrained,
    };
    Ok(LamanClass { tag, dof, rank, dependent })
}

/// Runs the (2,3)-pebble game over the edges in canonical order and returns
/// (accepted, rejected) edges.
pub fn pebble_game(g: &Graph) -> (Vec<VertexPair>, Vec<VertexPair>) {
    let d = Dense::from_graph(g);
    let n = d.len();
    let mut game = Pebbles { pebbles: vec![2; n], out: vec![Vec::new(); n], seen: vec![0; n], stamp: 0 };
    let (mut accepted, mut rejected) = (Vec::new(), Vec::new());
    for e in g.edges() {
        let u = d.ids.binary_search(&e.u()).expect("vertex");
        let v = d.ids.binary_search(&e.v()).expect("vertex");
        if game.try_add(u, v) {
            accepted.push(e);
        } else {
            rejected.push(e);
        }
    }
    (accepted, rejected)
}

struct Pebbles {
    pebbles: Vec<u8>,
    /// Directed edges: `out[a]` holds heads of edges oriented away from `a`.
    out: Vec<Vec<usize>>,
    seen: Vec<u32>,
    stamp: u32,
}

impl Pebbles {
    fn try_add(&mut self, u: usize, v: usize) -> bool {
        while self.pebbles[u] < 2 {
            if !self.fetch(u, v) {
                return false;
            }
        }
        while self.pebbles[v] < 2 {
            if !self.fetch(v, u) {
                return false;
            }
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        true
    }

    /// Moves one free pebble to `root` along directed edges, never taking
    /// it from `keep`. Reverses the path used.
    fn fetch(&mut self, root: usize, keep: usize) -> bool {
        self.stamp += 1;
        let stamp = self.stamp;
        self.seen[root] = stamp;
        self.seen[keep] = stamp;
        let mut parent = vec![(usize::MAX, usize::MAX); self.out.len()];
        let mut stack = vec![root];
        while let Some(a) = stack.pop() {
            for slot in 0..self.out[a].len() {
                let b = self.out[a][slot];
                if self.seen[b] == stamp {
                    continue;
                }
                self.seen[b] = stamp;
                parent[b] = (a, slot);
                if self.pebbles[b] > 0 {
                    self.pebbles[b] -= 1;
                    self.pebbles[root] += 1;
                    // Reverse every edge on the path root → … → b.
                    let mut x = b;
                    while x != root {
                        let (p, s) = parent[x];
                        self.out[p].swap_remove(s);
                        self.out[x].push(p);
                        x = p;
                    }
                    return true;
                }
                stack.push(b);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_classes() {
        let k3 = laman_classify(&Graph::complete(3)).unwrap();
        assert_eq!((k3.tag, k3.dof), (LamanTag::Wellconstrained, 0));
        let p3 = laman_classify(&Graph::path(3)).unwrap();
        assert_eq!((p3.tag, p3.dof), (LamanTag::Underconstrained, 1));
        let k4 = laman_classify(&Graph::k4()).unwrap();
        assert_eq!((k4.tag, k4.dof, k4.dependent.len()), (LamanTag::Overconstrained, 0, 1));
        assert_eq!(laman_classify(&Graph::new()).unwrap_err(), Error::TooFewVertices(0));
    }

    #[test]
    fn flexible_with_overconstraint() {
        // K4 plus a pendant vertex.
        let mut g = Graph::k4();
        g.add_edge(4, 5).unwrap();
        g.add_vertex(6);
        let c = laman_classify(&g).unwrap();
        assert_eq!(c.tag, LamanTag::FlexibleOverconstrained);
        assert_eq!(c.dof, 2 * 6 - 3 - 6);
    }

    #[test]
    fn pebble_game_agrees_with_counts_on_k33() {
        let mut g = Graph::new();
        for a in 1..=3 {
            for b in 4..=6 {
                g.add_edge(a, b).unwrap();
            }
        }
        let (acc, rej) = pebble_game(&g);
        assert_eq!((acc.len(), rej.len()), (9, 0));
        assert!(laman_classify(&g).unwrap().is_rigid());
    }
}
