//! Minor testing for small targets.
//!
//! `h` is a minor of `g` iff some disjoint connected vertex sets of `g`
//! (one per vertex of `h`, the branch sets) have an edge between the sets
//! of every adjacent pair of `h`. The search enumerates branch-set labellings
//! with canonical label introduction, after shrinking `g` by rules that
//! cannot change the answer.

use std::collections::{BTreeMap, BTreeSet};

use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// Largest target the search accepts.
pub const MAX_TARGET_VERTICES: usize = 8;

/// Branch sets of a minor model, keyed by target vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl MinorModel {
    /// Checks the model against `g` and `h`.
    pub fn is_valid(&self, g: &Graph, h: &Graph) -> bool {
        let mut owner = BTreeMap::new();
        for (&x, set) in &self.branch_sets {
            if set.is_empty() || !h.has_vertex(x) {
                return false;
            }
            for &v in set {
                if !g.has_vertex(v) || owner.insert(v, x).is_some() {
                    return false;
                }
            }
            if !g.induced(set).is_connected() {
                return false;
            }
        }
        if self.branch_sets.len() != h.vertex_count() {
            return false;
        }
        h.edges().all(|e| {
            let (a, b) = (&self.branch_sets[&e.u()], &self.branch_sets[&e.v()]);
            a.iter().any(|&x| g.neighbors(x).any(|y| b.contains(&y)))
        })
    }
}

pub fn has_minor(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(find_minor_model(g, h)?.is_some())
}

/// Returns branch sets in `g` witnessing `h` as a minor, if any.
pub fn find_minor_model(g: &Graph, h: &Graph) -> Result<Option<MinorModel>> {
    let k = h.vertex_count();
    if k > MAX_TARGET_VERTICES {
        return Err(Error::MinorTargetTooLarge(k));
    }
    if k == 0 {
        return Ok(Some(MinorModel { branch_sets: BTreeMap::new() }));
    }
    let min_deg_h = h.vertices().map(|v| h.degree(v)).min().unwrap_or(0);
    let (reduced, undo) = shrink(g, min_deg_h);
    if reduced.vertex_count() < k || reduced.edge_count() < h.edge_count() {
        return Ok(None);
    }
    let h_connected = h.is_connected() && h.edge_count() > 0;
    let parts: Vec<Graph> = if h_connected {
        reduced.components().iter().map(|c| reduced.induced(c)).collect()
    } else {
        vec![reduced]
    };
    for part in parts {
        if part.vertex_count() < k || part.edge_count() < h.edge_count() {
            continue;
        }
        if let Some(sets) = Labelling::new(&part, h).search() {
            let mut model = MinorModel { branch_sets: sets };
            unshrink(&mut model, &undo);
            debug_assert!(model.is_valid(g, h));
            return Ok(Some(model));
        }
    }
    Ok(None)
}

enum Undo {
    /// Vertex deleted outright.
    Deleted,
    /// Degree-2 vertex removed and its neighbours joined.
    Suppressed(Vertex, Vertex, Vertex),
}

/// Deletes vertices of degree < 2 (when every target vertex has degree ≥ 2)
/// and suppresses degree-2 vertices (when every target vertex has degree
/// ≥ 3). Neither step changes which such targets are minors.
fn shrink(g: &Graph, min_deg_h: usize) -> (Graph, Vec<Undo>) {
    let mut g = g.clone();
    let mut undo = Vec::new();
    if min_deg_h < 2 {
        return (g, undo);
    }
    let mut stack: Vec<Vertex> = g.vertices().collect();
    while let Some(v) = stack.pop() {
        if !g.has_vertex(v) {
            continue;
        }
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        match nbrs.len() {
            0 | 1 => {
                g.remove_vertex(v);
                undo.push(Undo::Deleted);
                stack.extend(nbrs);
            }
            2 if min_deg_h >= 3 => {
                g.remove_vertex(v);
                g.add_edge(nbrs[0], nbrs[1]).expect("distinct");
                undo.push(Undo::Suppressed(v, nbrs[0], nbrs[1]));
                stack.extend(nbrs);
            }
            _ => {}
        }
    }
    (g, undo)
}

fn unshrink(model: &mut MinorModel, undo: &[Undo]) {
    for step in undo.iter().rev() {
        let Undo::Suppressed(v, a, b) = *step else { continue };
        let owner = |x: Vertex| model.branch_sets.iter().find(|(_, s)| s.contains(&x)).map(|(&k, _)| k);
        // Putting v with a keeps the set connected and the a-b adjacency.
        if let (Some(oa), Some(_)) = (owner(a), owner(b)) {
            model.branch_sets.get_mut(&oa).expect("owner exists").insert(v);
        }
    }
}

struct Labelling {
    ids: Vec<Vertex>,
    /// Adjacency as bitmasks over `ids` (graphs here are small).
    adj: Vec<u128>,
    h_ids: Vec<Vertex>,
    h_adj: Vec<u16>,
    k: usize,
}

impl Labelling {
    fn new(g: &Graph, h: &Graph) -> Self {
        // Breadth-first order from a max-degree vertex keeps sets contiguous early.
        let start = g.vertices().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("nonempty");
        let mut ids = vec![start];
        let mut seen = BTreeSet::from([start]);
        let mut i = 0;
        while ids.len() < g.vertex_count() {
            if i == ids.len() {
                let next = g.vertices().find(|v| !seen.contains(v)).expect("unvisited vertex");
                seen.insert(next);
                ids.push(next);
            }
            let x = ids[i];
            for y in g.neighbors(x) {
                if seen.insert(y) {
                    ids.push(y);
                }
            }
            i += 1;
        }
        assert!(ids.len() <= 128, "minor search is limited to 128 host vertices after reduction");
        let pos: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids.iter().map(|&v| g.neighbors(v).fold(0u128, |m, w| m | 1 << pos[&w])).collect();
        let h_ids: Vec<Vertex> = h.vertices().collect();
        let h_pos: BTreeMap<Vertex, usize> = h_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let h_adj = h_ids.iter().map(|&v| h.neighbors(v).fold(0u16, |m, w| m | 1 << h_pos[&w])).collect();
        Labelling { ids, adj, h_ids, h_adj, k: h.vertex_count() }
    }

    fn search(&self) -> Option<BTreeMap<Vertex, BTreeSet<Vertex>>> {
        let mut sets = vec![0u128; self.k];
        let perm = self.assign(0, 0, &mut sets)?;
        let mut out = BTreeMap::new();
        for (hx, &slot) in perm.iter().enumerate() {
            let members = (0..self.ids.len()).filter(|&i| sets[slot] >> i & 1 == 1).map(|i| self.ids[i]).collect();
            out.insert(self.h_ids[hx], members);
        }
        Some(out)
    }

    /// Assigns vertex `i`; `used` labels are open. On success `sets` holds
    /// the final labelling and the returned vector maps target index → label.
    fn assign(&self, i: usize, used: usize, sets: &mut Vec<u128>) -> Option<Vec<usize>> {
        let n = self.ids.len();
        if n - i < self.k - used {
            return None;
        }
        if i == n {
            return self.check(sets);
        }
        if let Some(r) = self.assign(i + 1, used, sets) {
            return Some(r);
        }
        let open = if used < self.k { used + 1 } else { used };
        for l in 0..open {
            sets[l] |= 1 << i;
            if let Some(r) = self.assign(i + 1, used.max(l + 1), sets) {
                return Some(r);
            }
            sets[l] &= !(1 << i);
        }
        None
    }

    fn connected(&self, set: u128) -> bool {
        if set == 0 {
            return false;
        }
        let mut reach = 1u128 << set.trailing_zeros();
        loop {
            let mut grow = reach;
            let mut bits = reach;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grow |= self.adj[i] & set;
            }
            if grow == reach {
                return reach == set;
            }
            reach = grow;
        }
    }

    fn check(&self, sets: &[u128]) -> Option<Vec<usize>> {
        if sets.iter().any(|&s| !self.connected(s)) {
            return None;
        }
        let k = self.k;
        let mut q = vec![0u16; k];
        for a in 0..k {
            let mut nb = 0u128;
            let mut bits = sets[a];
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                nb |= self.adj[i];
            }
            for b in 0..k {
                if a != b && nb & sets[b] != 0 {
                    q[a] |= 1 << b;
                }
            }
        }
        let mut perm = vec![usize::MAX; k];
        let mut taken = 0u16;
        embed(&self.h_adj, &q, 0, &mut perm, &mut taken).then_some(perm)
    }
}

/// Injective map of target vertices into quotient vertices preserving edges.
fn embed(h: &[u16], q: &[u16], x: usize, perm: &mut [usize], taken: &mut u16) -> bool {
    if x == h.len() {
        return true;
    }
    for slot in 0..q.len() {
        if *taken >> slot & 1 == 1 || q[slot].count_ones() < h[x].count_ones() {
            continue;
        }
        let ok = (0..x).all(|y| h[x] >> y & 1 == 0 || q[slot] >> perm[y] & 1 == 1);
        if !ok {
            continue;
        }
        perm[x] = slot;
        *taken |= 1 << slot;
        if embed(h, q, x + 1, perm, taken) {
            return true;
        }
        *taken &= !(1 << slot);
    }
    perm[x] = usize::MAX;
    false
}
