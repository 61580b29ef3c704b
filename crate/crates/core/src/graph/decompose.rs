//! 2-sum decomposition: splitting at articulation vertices and at separation
//! pairs `{a, b}` that are edges.
//!
//! Each block is first shrunk by series reductions. A reduced vertex is
//! folded into a "bag" sitting on the pair of its two neighbours; a bag that
//! lands on a real edge is a piece hanging off that edge and is split off
//! immediately. Whatever cannot be reduced (a core with all degrees ≥ 3)
//! is split by direct connectivity tests, then the bags are unfolded into
//! the core pieces. Partial 2-trees never reach the core, so they decompose
//! in `O(m log m)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Dense, Graph, Vertex, VertexPair};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "at", rename_all = "snake_case")]
pub enum Hinge {
    /// 1-sum at an articulation vertex.
    Vertex(Vertex),
    /// 2-sum along an edge.
    Edge(VertexPair),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// All edges of the piece, including copies of shared edges.
    pub graph: Graph,
    /// Copies of a shared edge whose real instance lives in another component.
    pub virtual_edges: BTreeSet<VertexPair>,
    /// No further split is possible.
    pub minimal: bool,
}

impl Component {
    pub fn real_edges(&self) -> impl Iterator<Item = VertexPair> + '_ {
        self.graph.edges().filter(|e| !self.virtual_edges.contains(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSumDecomposition {
    pub components: Vec<Component>,
    /// Tree edges `(i, j, hinge)` with `i < j` indexing `components`.
    pub tree: Vec<(usize, usize, Hinge)>,
}

/// Decomposes a connected graph into minimal 2-sum components.
pub fn two_sum_decompose(g: &Graph) -> Result<TwoSumDecomposition> {
    if !g.is_connected() {
        return Err(Error::GraphNotConnected);
    }
    Ok(decompose_connected(g))
}

/// Decomposes every connected component of `g`.
pub fn decompose_all(g: &Graph) -> Vec<TwoSumDecomposition> {
    g.components().iter().map(|c| decompose_connected(&g.induced(c))).collect()
}

/// Minimal subgraphs of `g` that are 2-sum components containing both
/// endpoints of `f`.
pub fn minimal_components_containing(g: &Graph, f: VertexPair) -> Result<Vec<Graph>> {
    for x in f.endpoints() {
        if !g.has_vertex(x) {
            return Err(Error::VertexNotFound(x));
        }
    }
    let comp = g.reachable_from(f.u(), &BTreeSet::new());
    if !comp.contains(&f.v()) {
        return Ok(Vec::new());
    }
    Ok(decompose_connected(&g.induced(&comp)).containing(f))
}

impl TwoSumDecomposition {
    /// Components sharing vertex `v`.
    pub fn components_with(&self, v: Vertex) -> Vec<usize> {
        (0..self.components.len()).filter(|&i| self.components[i].graph.has_vertex(v)).collect()
    }

    fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.components.len()];
        for &(i, j, _) in &self.tree {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// The minimal f-preserving components: every component that holds both
    /// endpoints, or else the merge of the tree path joining the components
    /// of one endpoint to those of the other.
    pub fn containing(&self, f: VertexPair) -> Vec<Graph> {
        let (u, v) = (f.u(), f.v());
        let both: Vec<usize> = (0..self.components.len())
            .filter(|&i| self.components[i].graph.has_vertex(u) && self.components[i].graph.has_vertex(v))
            .collect();
        if !both.is_empty() {
            return both.into_iter().map(|i| self.components[i].graph.clone()).collect();
        }
        let sources = self.components_with(u);
        if sources.is_empty() || self.components_with(v).is_empty() {
            return Vec::new();
        }
        let adj = self.tree_adjacency();
        let mut prev = vec![usize::MAX; self.components.len()];
        let mut queue: VecDeque<usize> = sources.iter().copied().collect();
        for &s in &sources {
            prev[s] = s;
        }
        let mut end = None;
        while let Some(c) = queue.pop_front() {
            if self.components[c].graph.has_vertex(v) {
                end = Some(c);
                break;
            }
            for &d in &adj[c] {
                if prev[d] == usize::MAX {
                    prev[d] = c;
                    queue.push_back(d);
                }
            }
        }
        let Some(mut c) = end else { return Vec::new() };
        let mut merged = self.components[c].graph.clone();
        while prev[c] != c {
            c = prev[c];
            for e in self.components[c].graph.edges() {
                merged.add_pair(e);
            }
            for x in self.components[c].graph.vertices() {
                merged.add_vertex(x);
            }
        }
        vec![merged]
    }

    /// Union of real edges over all components.
    pub fn real_edge_union(&self) -> BTreeSet<VertexPair> {
        self.components.iter().flat_map(|c| c.real_edges()).collect()
    }
}

fn decompose_connected(g: &Graph) -> TwoSumDecomposition {
    if g.vertex_count() <= 1 {
        let components = if g.is_empty() {
            Vec::new()
        } else {
            vec![Component { graph: g.clone(), virtual_edges: BTreeSet::new(), minimal: true }]
        };
        return TwoSumDecomposition { components, tree: Vec::new() };
    }
    let d = Dense::from_graph(g);
    let mut local = vec![usize::MAX; d.len()];
    let mut pieces: Vec<(usize, Graph)> = Vec::new();
    for (b, block) in blocks(&d).into_iter().enumerate() {
        if let [(x, y)] = block[..] {
            let mut bridge = Graph::new();
            bridge.add_edge(d.ids[x], d.ids[y]).expect("distinct");
            pieces.push((b, bridge));
        } else {
            pieces.extend(split_block(&d, &block, &mut local).into_iter().map(|p| (b, p)));
        }
    }
    pieces.sort_by_cached_key(|p| piece_key(&p.1));
    assemble(pieces)
}

fn piece_key(g: &Graph) -> (Vec<Vertex>, Vec<VertexPair>) {
    (g.vertices().collect(), g.edges().collect())
}

/// Assigns real/virtual copies and builds the tree: every shared edge and
/// every articulation vertex becomes a star centred on its lowest component.
fn assemble(pieces: Vec<(usize, Graph)>) -> TwoSumDecomposition {
    let mut edge_groups: HashMap<VertexPair, Vec<usize>> = HashMap::new();
    for (i, (_, p)) in pieces.iter().enumerate() {
        for e in p.edges() {
            edge_groups.entry(e).or_default().push(i);
        }
    }
    let mut by_vertex: HashMap<Vertex, BTreeMap<usize, usize>> = HashMap::new();
    for (i, (b, p)) in pieces.iter().enumerate() {
        for v in p.vertices() {
            by_vertex.entry(v).or_default().entry(*b).or_insert(i);
        }
    }
    let mut components: Vec<Component> = pieces
        .into_iter()
        .map(|(_, graph)| Component { graph, virtual_edges: BTreeSet::new(), minimal: true })
        .collect();
    let mut tree = Vec::new();
    for (e, group) in &edge_groups {
        let center = group[0];
        for &other in &group[1..] {
            components[other].virtual_edges.insert(*e);
            tree.push((center, other, Hinge::Edge(*e)));
        }
    }
    // Articulation vertices: one representative component per block.
    for (v, reps) in by_vertex {
        let mut reps: Vec<usize> = reps.into_values().collect();
        reps.sort_unstable();
        for &other in &reps[1..] {
            tree.push((reps[0], other, Hinge::Vertex(v)));
        }
    }
    for t in &mut tree {
        if t.0 > t.1 {
            std::mem::swap(&mut t.0, &mut t.1);
        }
    }
    tree.sort();
    TwoSumDecomposition { components, tree }
}

/// Edge lists, in dense indices, of the biconnected blocks (bridges included
/// as single edges) by an iterative Hopcroft–Tarjan search. Isolated
/// vertices are skipped.
fn blocks(d: &Dense) -> Vec<Vec<(usize, usize)>> {
    let n = d.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if d.adj[root].is_empty() {
            continue;
        }
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < d.adj[v].len() {
                let w = d.adj[v][*next];
                *next += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push((a.min(b), a.max(b)));
                            if (a, b) == (parent, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

#[derive(Default)]
struct Bag {
    vertices: Vec<Vertex>,
    edges: Vec<VertexPair>,
}

impl Bag {
    fn absorb(&mut self, mut other: Bag) {
        if other.vertices.len() + other.edges.len() > self.vertices.len() + self.edges.len() {
            std::mem::swap(self, &mut other);
        }
        self.vertices.append(&mut other.vertices);
        self.edges.append(&mut other.edges);
    }
}

enum PairState {
    Real,
    Bag(Bag),
}

/// Splits a 2-connected block with at least 3 vertices, given by its edges
/// in the dense indices of `d`. `local` is scratch space of length `d.len()`.
fn split_block(d: &Dense, block: &[(usize, usize)], local: &mut [usize]) -> Vec<Graph> {
    let mut verts: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    for (i, &x) in verts.iter().enumerate() {
        local[x] = i;
    }
    // Local indices follow vertex order, so the queue pops in the same order
    // as it would over vertex ids.
    let id = |i: usize| d.ids[verts[i]];
    let pair = |a: usize, b: usize| VertexPair::new(id(a), id(b));
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); verts.len()];
    let mut state: HashMap<(usize, usize), PairState> = HashMap::with_capacity(block.len());
    for &(a, b) in block {
        let (a, b) = (local[a], local[b]);
        nbrs[a].insert(b);
        nbrs[b].insert(a);
        state.insert(key(a, b), PairState::Real);
    }
    let mut pieces: Vec<Graph> = Vec::new();
    let mut queue: BTreeSet<usize> = (0..verts.len()).filter(|&v| nbrs[v].len() == 2).collect();
    let mut alive = verts.len();

    let content = |st: PairState, e: VertexPair| match st {
        PairState::Real => Bag { vertices: Vec::new(), edges: vec![e] },
        PairState::Bag(b) => b,
    };

    while alive > 2 {
        let Some(v) = queue.pop_first() else { break };
        if nbrs[v].len() != 2 {
            continue;
        }
        let (x, y) = {
            let mut it = nbrs[v].iter();
            (*it.next().unwrap(), *it.next().unwrap())
        };
        let mut bag = content(state.remove(&key(v, x)).expect("pair state"), pair(v, x));
        bag.absorb(content(state.remove(&key(v, y)).expect("pair state"), pair(v, y)));
        bag.vertices.push(id(v));
        nbrs[v].clear();
        nbrs[x].remove(&v);
        nbrs[y].remove(&v);
        alive -= 1;
        match state.get_mut(&key(x, y)) {
            Some(PairState::Real) => pieces.push(bag_piece(bag, pair(x, y), true)),
            Some(PairState::Bag(existing)) => existing.absorb(bag),
            None => {
                state.insert(key(x, y), PairState::Bag(bag));
                nbrs[x].insert(y);
                nbrs[y].insert(x);
            }
        }
        for w in [x, y] {
            if nbrs[w].len() == 2 {
                queue.insert(w);
            }
        }
    }

    let mut state: HashMap<VertexPair, PairState> = state.into_iter().map(|((a, b), st)| (pair(a, b), st)).collect();
    if alive == 2 {
        let (&e, _) = state.iter().next().expect("two vertices joined by a pair");
        if let Some(PairState::Bag(bag)) = state.remove(&e) {
            pieces.push(bag_piece(bag, e, false));
        }
        return pieces;
    }

    // Irreducible core: split by connectivity, only at real pairs.
    let mut core = Graph::new();
    let mut real = HashSet::new();
    for (e, st) in &state {
        core.add_pair(*e);
        if matches!(st, PairState::Real) {
            real.insert(*e);
        }
    }
    for part in split_by_connectivity(&core, &real) {
        let mut piece = Graph::new();
        for e in part.edges() {
            match state.get(&e) {
                Some(PairState::Bag(bag)) => {
                    for &w in &bag.vertices {
                        piece.add_vertex(w);
                    }
                    for &f in &bag.edges {
                        piece.add_pair(f);
                    }
                    piece.add_vertex(e.u());
                    piece.add_vertex(e.v());
                }
                _ => {
                    piece.add_pair(e);
                }
            }
        }
        pieces.push(piece);
    }
    pieces
}

fn bag_piece(bag: Bag, pair: VertexPair, with_edge: bool) -> Graph {
    let mut g = Graph::with_vertices(bag.vertices.iter().copied().chain(pair.endpoints()));
    for e in bag.edges {
        g.add_pair(e);
    }
    if with_edge {
        g.add_pair(pair);
    }
    g
}

/// Repeatedly splits at the smallest allowed edge pair whose removal
/// disconnects the part. A pair that fails to separate a part cannot
/// separate any later sub-part, so each pair is rejected at most once.
fn split_by_connectivity(g: &Graph, allowed: &HashSet<VertexPair>) -> Vec<Graph> {
    let mut done = Vec::new();
    let mut work = vec![g.clone()];
    let mut non_separating: HashSet<VertexPair> = HashSet::new();
    'parts: while let Some(part) = work.pop() {
        if part.vertex_count() > 3 {
            for e in part.edges() {
                if !allowed.contains(&e) || non_separating.contains(&e) {
                    continue;
                }
                let cut = BTreeSet::from([e.u(), e.v()]);
                let rest: BTreeSet<Vertex> = part.vertices().filter(|x| !cut.contains(x)).collect();
                let first = *rest.iter().next().expect("part larger than the pair");
                let side = part.reachable_from(first, &cut);
                if side.len() == rest.len() {
                    non_separating.insert(e);
                    continue;
                }
                let mut remaining: BTreeSet<Vertex> = rest;
                while let Some(&s) = remaining.iter().next() {
                    let comp = part.reachable_from(s, &cut);
                    for x in &comp {
                        remaining.remove(x);
                    }
                    let mut keep = comp;
                    keep.extend(cut.iter().copied());
                    work.push(part.induced(&keep));
                }
                continue 'parts;
            }
        }
        done.push(part);
    }
    done
}
