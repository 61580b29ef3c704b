//! Partial k-tree recognition and k-tree completion for k = 2, 3.
//!
//! Both rest on vertex elimination: a graph is a partial k-tree iff its
//! vertices can be removed one at a time, each having at most k remaining
//! neighbours, where removing a vertex turns its remaining neighbours into
//! a clique. Reversing such an order and attaching each vertex to a k-clique
//! containing its neighbours builds the k-tree.

use std::collections::{BTreeSet, HashSet};

use super::{Dense, Graph, Vertex, VertexPair};
use crate::error::{Error, Result};

/// A k-tree supergraph of some graph, in construction order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTreeCompletion {
    pub k: usize,
    /// Non-edges of the input that were added.
    pub fill: BTreeSet<VertexPair>,
    /// Vertices in construction order.
    pub order: Vec<Vertex>,
    /// `attachments[i]` is the clique (of size `min(k, i)`) that
    /// `order[i]` is joined to. Entries are sorted.
    pub attachments: Vec<Vec<Vertex>>,
}

impl KTreeCompletion {
    pub fn graph(&self) -> Graph {
        let mut g = Graph::with_vertices(self.order.iter().copied());
        for (v, att) in self.order.iter().zip(&self.attachments) {
            for &a in att {
                g.add_edge(*v, a).expect("distinct");
            }
        }
        g
    }
}

/// No K4 minor, decided by series-parallel reduction.
pub fn is_partial_two_tree(g: &Graph) -> bool {
    elimination_two(&Dense::from_graph(g)).is_some()
}

/// Partial 2-tree with exactly `2n - 3` edges and at least 3 vertices.
pub fn is_two_tree(g: &Graph) -> bool {
    is_k_tree(g, 2)
}

pub fn is_partial_k_tree(g: &Graph, k: usize) -> Result<bool> {
    match k {
        2 => Ok(is_partial_two_tree(g)),
        3 => Ok(elimination_search(&Dense::from_graph(g), 3).is_some()),
        _ => Err(Error::BadParameter(format!("k = {k}; only k = 2 and k = 3 are supported"))),
    }
}

/// A k-tree here has at least `k + 1` vertices and `k n - k(k+1)/2` edges.
pub fn is_k_tree(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if n < k + 1 || g.edge_count() != k * n - k * (k + 1) / 2 {
        return false;
    }
    is_partial_k_tree(g, k).unwrap_or(false)
}

/// Non-edges whose addition turns `g` into a k-tree.
pub fn complete_to_k_tree(g: &Graph, k: usize) -> Result<BTreeSet<VertexPair>> {
    Ok(k_tree_completion(g, k)?.fill)
}

/// Full completion record: fill edges plus a construction order.
pub fn k_tree_completion(g: &Graph, k: usize) -> Result<KTreeCompletion> {
    let d = Dense::from_graph(g);
    let elim = match k {
        2 => elimination_two(&d),
        3 => elimination_search(&d, 3),
        _ => return Err(Error::BadParameter(format!("k = {k}; only k = 2 and k = 3 are supported"))),
    }
    .ok_or(Error::NotPartialKTree(k))?;
    Ok(build_from_elimination(g, &d, &elim, k))
}

/// Elimination step: vertex index and its neighbours at removal time.
type Elim = Vec<(usize, Vec<usize>)>;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    class: u8,
    pair: (usize, usize),
    v: usize,
}

/// Deterministic degree-≤2 elimination. Preference: degree ≤ 1, then
/// degree 2 with adjacent neighbours, then degree 2 with the smallest
/// missing neighbour pair.
fn elimination_two(d: &Dense) -> Option<Elim> {
    let n = d.len();
    let mut adj: Vec<BTreeSet<usize>> = d.adj.iter().map(|a| a.iter().copied().collect()).collect();
    let key_of = |adj: &[BTreeSet<usize>], v: usize| -> Option<Key> {
        let nb = &adj[v];
        match nb.len() {
            0 | 1 => Some(Key { class: 0, pair: (0, 0), v }),
            2 => {
                let mut it = nb.iter();
                let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
                if adj[a].contains(&b) {
                    Some(Key { class: 1, pair: (0, 0), v })
                } else {
                    Some(Key { class: 2, pair: (a, b), v })
                }
            }
            _ => None,
        }
    };
    let mut current: Vec<Option<Key>> = (0..n).map(|v| key_of(&adj, v)).collect();
    let mut queue: BTreeSet<Key> = current.iter().flatten().copied().collect();
    let mut removed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    while let Some(k) = queue.pop_first() {
        let v = k.v;
        let fresh = key_of(&adj, v);
        if fresh != Some(k) {
            current[v] = fresh;
            if let Some(f) = fresh {
                queue.insert(f);
            }
            continue;
        }
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        removed[v] = true;
        current[v] = None;
        for &w in &nbrs {
            if let Some(old) = current[w] {
                queue.remove(&old);
            }
            current[w] = key_of(&adj, w);
            if let Some(f) = current[w] {
                queue.insert(f);
            }
        }
        out.push((v, nbrs));
    }
    (out.len() == n).then_some(out)
}

/// Exhaustive elimination search for treewidth ≤ k, memoised on the set of
/// remaining vertices (the eliminated graph depends only on that set).
fn elimination_search(d: &Dense, k: usize) -> Option<Elim> {
    let n = d.len();
    let words = n.div_ceil(64).max(1);
    let mut state = Search {
        k,
        failed: HashSet::new(),
        words,
    };
    let adj: Vec<BTreeSet<usize>> = d.adj.iter().map(|a| a.iter().copied().collect()).collect();
    let mut out = Vec::with_capacity(n);
    state.run(adj, vec![true; n], &mut out).then_some(out)
}

struct Search {
    k: usize,
    failed: HashSet<Vec<u64>>,
    words: usize,
}

impl Search {
    fn key(&self, alive: &[bool]) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        for (i, _) in alive.iter().enumerate().filter(|(_, a)| **a) {
            bits[i / 64] |= 1 << (i % 64);
        }
        bits
    }

    fn run(&mut self, adj: Vec<BTreeSet<usize>>, alive: Vec<bool>, out: &mut Elim) -> bool {
        let live: Vec<usize> = (0..adj.len()).filter(|&v| alive[v]).collect();
        if live.is_empty() {
            return true;
        }
        let key = self.key(&alive);
        if self.failed.contains(&key) {
            return false;
        }
        let is_simplicial = |v: usize| {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            nb.iter().enumerate().all(|(i, &a)| nb[i + 1..].iter().all(|b| adj[a].contains(b)))
        };
        // Removing a simplicial vertex of small degree never hurts.
        let safe = live.iter().copied().find(|&v| adj[v].len() <= self.k && is_simplicial(v));
        let candidates: Vec<usize> = match safe {
            Some(v) => vec![v],
            None => live.iter().copied().filter(|&v| adj[v].len() <= self.k).collect(),
        };
        for v in candidates {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let mut next = adj.clone();
            for &w in &nbrs {
                next[w].remove(&v);
            }
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    next[a].insert(b);
                    next[b].insert(a);
                }
            }
            next[v].clear();
            let mut alive2 = alive.clone();
            alive2[v] = false;
            out.push((v, nbrs));
            if self.run(next, alive2, out) {
                return true;
            }
            out.pop();
        }
        self.failed.insert(key);
        false
    }
}

fn build_from_elimination(g: &Graph, d: &Dense, elim: &Elim, k: usize) -> KTreeCompletion {
    let n = d.len();
    let mut tree: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    let mut attachments = Vec::with_capacity(n);
    let mut fill = BTreeSet::new();
    for (v, nbrs) in elim.iter().rev() {
        let target = k.min(placed.len());
        let mut clique: Vec<usize> = nbrs.clone();
        clique.sort_unstable();
        while clique.len() < target {
            let extra = if clique.is_empty() {
                placed.iter().copied().min().expect("placed nonempty")
            } else {
                // Smallest vertex adjacent to the whole clique in the tree.
                let first = clique[0];
                *tree[first]
                    .iter()
                    .find(|w| !clique.contains(w) && clique.iter().all(|c| tree[*c].contains(w)))
                    .expect("cliques of a k-tree extend to k-cliques")
            };
            clique.push(extra);
            clique.sort_unstable();
        }
        for &a in &clique {
            tree[a].insert(*v);
            tree[*v].insert(a);
            let (x, y) = (d.ids[a], d.ids[*v]);
            if !g.has_edge(x, y) {
                fill.insert(VertexPair::new(x, y));
            }
        }
        placed.push(*v);
        order.push(d.ids[*v]);
        let mut att: Vec<Vertex> = clique.iter().map(|&a| d.ids[a]).collect();
        att.sort_unstable();
        attachments.push(att);
    }
    KTreeCompletion { k, fill, order, attachments }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: &[(Vertex, Vertex)]) -> BTreeSet<VertexPair> {
        v.iter().map(|&(a, b)| VertexPair::new(a, b)).collect()
    }

    #[test]
    fn recognition_basics() {
        assert!(is_partial_two_tree(&Graph::complete(3)));
        assert!(!is_partial_two_tree(&Graph::k4()));
        let diamond = Graph::from_edges([(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)]).unwrap();
        assert!(is_partial_two_tree(&diamond));
        assert!(is_two_tree(&diamond));
        assert!(!is_partial_two_tree(&Graph::k222()));
        assert!(is_partial_two_tree(&Graph::new()));
    }

    #[test]
    fn two_tree_completions() {
        assert_eq!(complete_to_k_tree(&Graph::path(3), 2).unwrap(), pairs(&[(1, 3)]));
        assert!(complete_to_k_tree(&Graph::complete(3), 2).unwrap().is_empty());
        assert_eq!(complete_to_k_tree(&Graph::cycle(4), 2).unwrap(), pairs(&[(1, 3)]));
        assert_eq!(complete_to_k_tree(&Graph::k4(), 2).unwrap_err(), Error::NotPartialKTree(2));
    }

    #[test]
    fn completion_is_a_k_tree() {
        let g = Graph::from_edges([(1, 2), (3, 4), (5, 6), (6, 7), (7, 1)]).unwrap();
        for k in [2, 3] {
            let c = k_tree_completion(&g, k).unwrap();
            let h = c.graph();
            assert!(is_k_tree(&h, k), "k = {k}: {h}");
            assert!(g.edges().all(|e| h.has_pair(e)));
            assert_eq!(h.edge_count(), g.edge_count() + c.fill.len());
        }
    }

    #[test]
    fn three_trees() {
        assert!(is_k_tree(&Graph::k4(), 3));
        // The octahedron has minimum degree 4, hence treewidth 4.
        assert!(!is_partial_k_tree(&Graph::k222(), 3).unwrap());
        assert!(!is_partial_k_tree(&Graph::k5(), 3).unwrap());
        let oct_minus = Graph::k222().without_pair(VertexPair::new(5, 6));
        let c = k_tree_completion(&oct_minus, 3).unwrap();
        assert_eq!(c.fill.len(), 1);
    }
}
