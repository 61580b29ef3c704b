#![allow(dead_code)]

use std::collections::BTreeMap;

use cayley_core::graph::k_tree_completion;
use cayley_core::realize::k_tree_order;
use cayley_core::{Edcs, Graph, Vertex, VertexPair};
use nalgebra::Vector3;
use rand::seq::SliceRandom;
use rand::Rng;

pub type V3 = Vector3<f64>;

pub fn p(a: Vertex, b: Vertex) -> VertexPair {
    VertexPair::new(a, b)
}

/// A random k-tree on `1..=n` (n > k): start from a (k+1)-clique, attach
/// each new vertex to a random k-subset of an existing (k+1)-clique.
pub fn random_k_tree(rng: &mut impl Rng, n: usize, k: usize) -> Graph {
    let mut g = Graph::complete(k + 1);
    let mut cliques: Vec<Vec<Vertex>> = vec![(1..=k + 1).collect()];
    for v in k + 2..=n {
        let mut s = cliques.choose(rng).unwrap().clone();
        s.remove(rng.gen_range(0..s.len()));
        for &u in &s {
            g.add_edge(u, v).unwrap();
        }
        s.push(v);
        cliques.push(s);
    }
    g
}

/// A connected partial k-tree: a random k-tree with edges dropped with
/// probability `drop`.
pub fn random_partial_k_tree(rng: &mut impl Rng, n: usize, k: usize, drop: f64) -> Graph {
    let full = random_k_tree(rng, n, k);
    let mut g = full.clone();
    let mut edges: Vec<VertexPair> = full.edges().collect();
    edges.shuffle(rng);
    for e in edges {
        if rng.gen_bool(drop) {
            g.remove_edge(e.u(), e.v());
            if !g.is_connected() {
                g.add_pair(e);
            }
        }
    }
    g
}

pub fn random_points(rng: &mut impl Rng, g: &Graph, dim: usize) -> BTreeMap<Vertex, V3> {
    g.vertices()
        .map(|v| {
            let mut x = V3::new(rng.gen(), rng.gen(), rng.gen());
            if dim == 2 {
                x.z = 0.0;
            }
            (v, x)
        })
        .collect()
}

pub fn distances(g: &Graph, pts: &BTreeMap<Vertex, V3>) -> Vec<(Vertex, Vertex, f64)> {
    g.edges().map(|e| (e.u(), e.v(), (pts[&e.u()] - pts[&e.v()]).norm())).collect()
}

pub fn edcs_from_points(g: &Graph, pts: &BTreeMap<Vertex, V3>, dim: usize) -> Edcs {
    let mut e = Edcs::from_distances(dim, distances(g, pts)).unwrap();
    // Isolated vertices are not listed by the edge constructor.
    if e.graph().vertex_count() != g.vertex_count() {
        let w = e.weights().clone();
        e = Edcs::new(g.clone(), w, Default::default(), dim).unwrap();
    }
    e
}

fn random_unit(rng: &mut impl Rng, dim: usize) -> V3 {
    loop {
        let mut x = V3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if dim == 2 {
            x.z = 0.0;
        }
        let n = x.norm();
        if n > 0.1 && n <= 1.0 {
            return x / n;
        }
    }
}

/// Places `v` at the prescribed distances from up to `dim` placed points,
/// choosing the free directions at random. `None` when no such point exists.
fn place(rng: &mut impl Rng, dim: usize, anchors: &[(V3, f64)]) -> Option<V3> {
    match anchors {
        [] => {
            let mut x = V3::new(rng.gen(), rng.gen(), rng.gen());
            if dim == 2 {
                x.z = 0.0;
            }
            Some(x)
        }
        [(a, r)] => Some(a + random_unit(rng, dim) * *r),
        [(a, ra), (b, rb)] => {
            let d = (b - a).norm();
            if d < 1e-12 {
                return None;
            }
            let ex = (b - a) / d;
            let x = (d * d + ra * ra - rb * rb) / (2.0 * d);
            let h2 = ra * ra - x * x;
            if h2 < 0.0 {
                return None;
            }
            let perp = if dim == 2 {
                V3::new(-ex.y, ex.x, 0.0) * if rng.gen() { 1.0 } else { -1.0 }
            } else {
                let r = random_unit(rng, 3);
                let o = r - ex * r.dot(&ex);
                if o.norm() < 1e-6 {
                    return None;
                }
                o.normalize()
            };
            Some(a + ex * x + perp * h2.sqrt())
        }
        [(a, ra), (b, rb), (c, rc)] if dim == 3 => {
            let ex = (b - a).try_normalize(1e-12)?;
            let i = ex.dot(&(c - a));
            let ey = (c - a - ex * i).try_normalize(1e-12)?;
            let ez = ex.cross(&ey);
            let d = (b - a).norm();
            let j = ey.dot(&(c - a));
            let x = (ra * ra - rb * rb + d * d) / (2.0 * d);
            let y = (ra * ra - rc * rc + i * i + j * j) / (2.0 * j) - i / j * x;
            let z2 = ra * ra - x * x - y * y;
            if z2 < 0.0 {
                return None;
            }
            let s = if rng.gen() { 1.0 } else { -1.0 };
            Some(a + ex * x + ey * y + ez * (s * z2.sqrt()))
        }
        _ => None,
    }
}

/// A random realization of `g` with the lengths `dist`, built along a
/// k-tree completion (k = dim). Written independently of the library's
/// solvers so it can serve as an oracle.
pub fn random_realization(
    rng: &mut impl Rng,
    g: &Graph,
    dist: &BTreeMap<VertexPair, f64>,
    dim: usize,
    attempts: usize,
) -> Option<BTreeMap<Vertex, V3>> {
    let comp = k_tree_completion(g, dim).ok()?;
    let (order, _) = k_tree_order(&comp.graph(), dim).ok()?;
    'attempt: for _ in 0..attempts {
        let mut pts: BTreeMap<Vertex, V3> = BTreeMap::new();
        for &v in &order {
            let anchors: Vec<(V3, f64)> =
                g.neighbors(v).filter_map(|u| pts.get(&u).map(|x| (*x, dist[&p(u, v)]))).collect();
            match place(rng, dim, &anchors) {
                Some(x) => {
                    pts.insert(v, x);
                }
                None => continue 'attempt,
            }
        }
        return Some(pts);
    }
    None
}

pub fn max_length_error(g: &Graph, dist: &BTreeMap<VertexPair, f64>, pts: &BTreeMap<Vertex, V3>) -> f64 {
    g.edges().map(|e| ((pts[&e.u()] - pts[&e.v()]).norm() - dist[&e]).abs()).fold(0.0, f64::max)
}
