//! Brute-force Cayley configuration spaces for small systems.
//!
//! Zero-length edges are contracted first, the quotient is completed to a
//! k-tree, and only the vertices that the endpoints of `f` depend on are
//! placed. Completion pairs on that path are swept over a grid; in the plane
//! each sweep coordinate ranges over its exact conditional interval, so every
//! grid point is realizable and each fixed sequence of reflections traces a
//! connected set of values. In space the sweep runs over a box bounded by
//! path lengths and the values are clustered.

use std::collections::BTreeMap;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::AuxSpace;
use crate::graph::{is_partial_k_tree, k_tree_completion};
use crate::realize::candidates;
use crate::{Edcs, Error, Graph, Result, Vertex, VertexPair, Weight};

pub const MAX_ORACLE_VERTICES: usize = 12;

/// Upper bound on leaf evaluations in one sweep; the per-axis grid shrinks
/// to stay under it.
const LEAF_BUDGET: usize = 4_000_000;

const POLLS: usize = 4;

/// Sorted, disjoint closed intervals. Points are intervals with `lo = hi`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// Merges pieces whose gap is below `gap`.
    pub fn from_pieces(mut pieces: Vec<(f64, f64)>, gap: f64) -> Self {
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (lo, hi) in pieces {
            match out.last_mut() {
                Some(last) if lo - last.1 < gap || lo <= last.1 => last.1 = last.1.max(hi),
                _ => out.push((lo, hi)),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_single_interval(&self) -> bool {
        self.intervals.len() == 1
    }

    pub fn hull(&self) -> Option<(f64, f64)> {
        Some((self.intervals.first()?.0, self.intervals.last()?.1))
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| x >= lo - tol && x <= hi + tol)
    }
}

/// Sorts `values` and merges neighbours closer than `gap`.
pub fn cluster(values: &[f64], gap: f64) -> IntervalSet {
    IntervalSet::from_pieces(values.iter().map(|&x| (x, x)).collect(), gap)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub values: IntervalSet,
    /// Completion pairs that were swept.
    pub swept: Vec<VertexPair>,
    /// Grid points per swept pair actually used.
    pub grid_points: usize,
    pub leaves: usize,
    /// Merge threshold applied to the pieces.
    pub merge_gap: f64,
}

/// The attainable lengths of `f` over all realizations of `e` in its
/// dimension, as an [`IntervalSet`].
pub fn cayley_space_oracle(e: &Edcs, f: VertexPair, grid: usize) -> Result<IntervalSet> {
    oracle_report(e, f, grid).map(|r| r.values)
}

pub fn oracle_report(e: &Edcs, f: VertexPair, grid: usize) -> Result<OracleReport> {
    let g = e.graph();
    for v in f.endpoints() {
        if !g.has_vertex(v) {
            return Err(Error::VertexNotFound(v));
        }
    }
    if g.has_pair(f) {
        return Err(Error::NotANonEdge(f));
    }
    let dist = e.point_distances()?;
    if g.vertex_count() > MAX_ORACLE_VERTICES {
        return Err(Error::OracleInapplicable(format!(
            "{} vertices, at most {MAX_ORACLE_VERTICES} supported",
            g.vertex_count()
        )));
    }
    let Some(q) = Quotient::new(g, &dist) else {
        return Ok(empty_report());
    };
    let target = {
        let (a, b) = (q.rep[&f.u()], q.rep[&f.v()]);
        (a != b).then(|| VertexPair::new(a, b))
    };
    let plan = Plan::new(e.dim(), &q, target)?;
    plan.run(grid.max(2))
}

fn empty_report() -> OracleReport {
    OracleReport { values: IntervalSet::empty(), swept: vec![], grid_points: 0, leaves: 0, merge_gap: 0.0 }
}

/// Is there a realization of `e` with the listed pairs at the given
/// lengths? All but the last pair are added as edges and the oracle is run
/// on the last one; the answer allows 1e-6 slack.
pub fn realizability_probe(e: &Edcs, values: &BTreeMap<VertexPair, f64>, attempts: usize) -> Result<bool> {
    let (&f, &x) = values.iter().next_back().ok_or(Error::BadParameter("no pairs to probe".into()))?;
    let mut graph = e.graph().clone();
    let mut weights = e.weights().clone();
    for (&p, &d) in values.iter().filter(|(p, _)| **p != f) {
        if graph.has_pair(p) {
            return Err(Error::NotANonEdge(p));
        }
        graph.add_pair(p);
        weights.insert(p, Weight::Point(d));
    }
    let extended = Edcs::new(graph, weights, Default::default(), e.dim())?;
    Ok(cayley_space_oracle(&extended, f, attempts)?.contains(x, 1e-6))
}

/// The system with zero-length edges contracted.
struct Quotient {
    graph: Graph,
    dist: BTreeMap<VertexPair, f64>,
    rep: BTreeMap<Vertex, Vertex>,
}

impl Quotient {
    /// `None` when contraction forces two different lengths on one pair or
    /// a positive length inside a class.
    fn new(g: &Graph, dist: &BTreeMap<VertexPair, f64>) -> Option<Quotient> {
        let mut rep: BTreeMap<Vertex, Vertex> = g.vertices().map(|v| (v, v)).collect();
        fn find(rep: &BTreeMap<Vertex, Vertex>, mut v: Vertex) -> Vertex {
            while rep[&v] != v {
                v = rep[&v];
            }
            v
        }
        for (e, &d) in dist {
            if d == 0.0 {
                let (a, b) = (find(&rep, e.u()), find(&rep, e.v()));
                rep.insert(a.max(b), a.min(b));
            }
        }
        let rep: BTreeMap<Vertex, Vertex> = g.vertices().map(|v| (v, find(&rep, v))).collect();
        let mut graph = Graph::with_vertices(rep.values().copied());
        let mut qdist: BTreeMap<VertexPair, f64> = BTreeMap::new();
        for (e, &d) in dist {
            let (a, b) = (rep[&e.u()], rep[&e.v()]);
            if a == b {
                if d > 0.0 {
                    return None;
                }
                continue;
            }
            let p = VertexPair::new(a, b);
            if let Some(&old) = qdist.get(&p) {
                if (old - d).abs() > 1e-9 * d.max(1.0) {
                    return None;
                }
            }
            graph.add_pair(p);
            qdist.insert(p, d);
        }
        Some(Quotient { graph, dist: qdist, rep })
    }
}

enum Domain {
    /// Exact conditional intervals, one completion parameter index per
    /// swept pair.
    Exact { space: AuxSpace, index: Vec<usize> },
    /// Independent bounds per swept pair.
    Boxed(Vec<(f64, f64)>),
}

struct Plan {
    dim: usize,
    order: Vec<Vertex>,
    att: Vec<Vec<Vertex>>,
    fixed: BTreeMap<VertexPair, f64>,
    swept: Vec<VertexPair>,
    domain: Domain,
    target: Option<VertexPair>,
    scale: f64,
}

impl Plan {
    fn new(dim: usize, q: &Quotient, target: Option<VertexPair>) -> Result<Plan> {
        if !is_partial_k_tree(&q.graph, dim)? {
            return Err(Error::OracleInapplicable(format!("not a partial {dim}-tree after contracting zero edges")));
        }
        let comp = k_tree_completion(&q.graph, dim)?;
        let pos: BTreeMap<Vertex, usize> = comp.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();

        // Vertices the placement of the target depends on.
        let mut keep = vec![target.is_none(); comp.order.len()];
        let mut stack: Vec<Vertex> = target.iter().flat_map(|p| p.endpoints()).collect();
        while let Some(v) = stack.pop() {
            if !std::mem::replace(&mut keep[pos[&v]], true) {
                stack.extend(comp.attachments[pos[&v]].iter().copied());
            }
        }
        let (order, att): (Vec<Vertex>, Vec<Vec<Vertex>>) = comp
            .order
            .iter()
            .zip(&comp.attachments)
            .filter(|(v, _)| keep[pos[v]])
            .map(|(&v, a)| (v, a.clone()))
            .unzip();
        let mut swept = Vec::new();
        for (&v, a) in order.iter().zip(&att) {
            for &w in a {
                let p = VertexPair::new(v, w);
                if comp.fill.contains(&p) && !swept.contains(&p) {
                    swept.push(p);
                }
            }
        }
        let domain = if dim == 2 {
            let space = AuxSpace::new(&comp, &q.dist);
            let index: Vec<usize> = swept.iter().map(|&p| space.index_of(p).expect("fill pair")).collect();
            let none = BTreeMap::new();
            if space.feasible(&none) {
                for (&i, &p) in index.iter().zip(&swept) {
                    if space.conditional(i, &none).is_some_and(|iv| !iv.1.is_finite()) {
                        return Err(Error::OracleInapplicable(format!("completion pair {p} is unbounded")));
                    }
                }
            }
            Domain::Exact { space, index }
        } else {
            let bounds = swept
                .iter()
                .map(|&p| {
                    let hi = path_length(&q.graph, &q.dist, p.u(), p.v())
                        .ok_or_else(|| Error::OracleInapplicable(format!("completion pair {p} is unbounded")))?;
                    Ok((0.0, hi))
                })
                .collect::<Result<Vec<_>>>()?;
            Domain::Boxed(bounds)
        };
        let scale = q.dist.values().fold(1.0f64, |m, &d| m.max(d));
        Ok(Plan { dim, order, att, fixed: q.dist.clone(), swept, domain, target, scale })
    }

    fn branch_bits(&self) -> usize {
        self.order.len().saturating_sub(self.dim + 1)
    }

    /// Lengths of the swept pairs at the point `u` of the unit cube. In the
    /// plane each coordinate passes through `(1 - cos pi t) / 2`, which makes
    /// the placed points smooth in `t` at the ends of a conditional interval,
    /// where they would otherwise move like a square root.
    fn aux_values(&self, u: &[f64]) -> Option<Vec<f64>> {
        match &self.domain {
            Domain::Exact { space, index } => {
                let mut over = BTreeMap::new();
                let mut vals = Vec::with_capacity(u.len());
                for (&i, &t) in index.iter().zip(u) {
                    let (lo, hi) = space.conditional(i, &over)?;
                    let x = lo + (1.0 - (std::f64::consts::PI * t).cos()) / 2.0 * (hi - lo);
                    over.insert(i, x);
                    vals.push(x);
                }
                Some(vals)
            }
            Domain::Boxed(b) => Some(b.iter().zip(u).map(|(&(lo, hi), &t)| lo + t * (hi - lo)).collect()),
        }
    }

    fn length(&self, vals: &[f64], p: VertexPair) -> f64 {
        match self.fixed.get(&p) {
            Some(&d) => d,
            None => vals[self.swept.iter().position(|&q| q == p).expect("completion pair")],
        }
    }

    fn measure(&self, pts: &BTreeMap<Vertex, Vector3<f64>>) -> f64 {
        self.target.map_or(0.0, |p| (pts[&p.u()] - pts[&p.v()]).norm())
    }

    /// Calls `visit(sigma, value)` for every feasible reflection sequence.
    /// Bit `j` of `sigma` picks the second solution at the `j`-th branching
    /// step; a tangent step accepts either bit.
    fn leaves(&self, vals: &[f64], visit: &mut dyn FnMut(u64, f64)) {
        let mut pts = BTreeMap::new();
        self.descend(0, 0, vals, &mut pts, visit);
    }

    fn descend(
        &self,
        i: usize,
        sigma: u64,
        vals: &[f64],
        pts: &mut BTreeMap<Vertex, Vector3<f64>>,
        visit: &mut dyn FnMut(u64, f64),
    ) {
        if i == self.order.len() {
            visit(sigma, self.measure(pts));
            return;
        }
        let v = self.order[i];
        let cands = candidates(self.dim, i, &self.att[i], pts, &|a| self.length(vals, VertexPair::new(a, v)));
        if cands.is_empty() {
            return;
        }
        let bits: &[u64] = if i > self.dim { &[0, 1] } else { &[0] };
        for &b in bits {
            pts.insert(v, cands[(b as usize).min(cands.len() - 1)]);
            let s = if i > self.dim { sigma | (b << (i - self.dim - 1)) } else { sigma };
            self.descend(i + 1, s, vals, pts, visit);
        }
        pts.remove(&v);
    }

    /// The value along one reflection sequence.
    fn leaf(&self, u: &[f64], sigma: u64) -> Option<f64> {
        let vals = self.aux_values(u)?;
        let mut pts = BTreeMap::new();
        for (i, &v) in self.order.iter().enumerate() {
            let cands = candidates(self.dim, i, &self.att[i], &pts, &|a| self.length(&vals, VertexPair::new(a, v)));
            let b = if i > self.dim { (sigma >> (i - self.dim - 1)) & 1 } else { 0 };
            let p = *cands.get((b as usize).min(cands.len().checked_sub(1)?))?;
            pts.insert(v, p);
        }
        Some(self.measure(&pts))
    }

    fn run(&self, grid: usize) -> Result<OracleReport> {
        if let Domain::Exact { space, .. } = &self.domain {
            if !space.feasible(&BTreeMap::new()) {
                return Ok(OracleReport { swept: self.swept.clone(), ..empty_report() });
            }
        }
        let m = self.swept.len();
        let per_cube = (LEAF_BUDGET >> self.branch_bits().min(20)).max(1);
        let mut per = if m == 0 { 1 } else { grid };
        while m > 0 && per > 2 && per.checked_pow(m as u32).is_none_or(|c| c > per_cube) {
            per -= 1;
        }
        let step = if per > 1 { 1.0 / (per - 1) as f64 } else { 1.0 };

        let mut extremes: BTreeMap<u64, Extreme> = BTreeMap::new();
        let mut all = Vec::new();
        let mut leaves = 0;
        let mut idx = vec![0usize; m];
        loop {
            let u: Vec<f64> = idx.iter().map(|&k| k as f64 * step).collect();
            if let Some(vals) = self.aux_values(&u) {
                self.leaves(&vals, &mut |sigma, x| {
                    leaves += 1;
                    all.push(x);
                    extremes.entry(sigma).or_insert_with(|| Extreme::new(x, &u)).update(x, &u);
                });
            }
            if !advance(&mut idx, per) {
                break;
            }
        }

        let exact = matches!(self.domain, Domain::Exact { .. });
        let pieces: Vec<(f64, f64)> = if exact {
            extremes
                .iter()
                .map(|(&sigma, ex)| {
                    if m == 0 {
                        (ex.lo, ex.hi)
                    } else {
                        (self.refine(sigma, &ex.lo_u, ex.lo, -1.0, step), self.refine(sigma, &ex.hi_u, ex.hi, 1.0, step))
                    }
                })
                .collect()
        } else {
            all.iter().map(|&x| (x, x)).collect()
        };
        let width = pieces.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
            - pieces.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let resolution = if pieces.is_empty() { 0.0 } else { width / (grid - 1) as f64 };
        let merge_gap = (2.0 * resolution).max(1e-9 * self.scale);
        Ok(OracleReport {
            values: IntervalSet::from_pieces(pieces, merge_gap),
            swept: self.swept.clone(),
            grid_points: per,
            leaves,
            merge_gap,
        })
    }

    /// Pattern search from a grid extreme along one reflection sequence;
    /// `sign` is +1 to maximize and -1 to minimize. When no coordinate move
    /// improves, random directions are polled before the step shrinks: near
    /// tangencies the only descent may be a joint move of several pairs.
    fn refine(&self, sigma: u64, start: &[f64], value: f64, sign: f64, step: f64) -> f64 {
        let m = start.len();
        let mut rng = ChaCha8Rng::seed_from_u64(sigma.wrapping_mul(2).wrapping_add((sign > 0.0) as u64));
        let mut u = start.to_vec();
        let mut best = value;
        let mut s = step;
        let mut rounds = 0;
        let try_move = |u: &mut Vec<f64>, best: &mut f64, dir: &[f64], s: f64| {
            let c: Vec<f64> = u.iter().zip(dir).map(|(x, d)| (x + s * d).clamp(0.0, 1.0)).collect();
            if c == *u {
                return false;
            }
            match self.leaf(&c, sigma) {
                Some(x) if sign * (x - *best) > 0.0 => {
                    *best = x;
                    *u = c;
                    true
                }
                _ => false,
            }
        };
        while s > 1e-10 && rounds < 4000 {
            rounds += 1;
            let mut moved = false;
            for k in 0..m {
                for d in [1.0, -1.0] {
                    let mut dir = vec![0.0; m];
                    dir[k] = d;
                    moved |= try_move(&mut u, &mut best, &dir, s);
                }
            }
            if !moved && m > 1 {
                for _ in 0..POLLS * m {
                    // Coordinates on a face of the cube only point inward.
                    let dir: Vec<f64> = u
                        .iter()
                        .map(|&x| {
                            let d: f64 = rng.gen_range(-1.0..=1.0);
                            if x <= 0.0 || x >= 1.0 { d.abs() * (1.0 - 2.0 * x) } else { d }
                        })
                        .collect();
                    if try_move(&mut u, &mut best, &dir, s) {
                        moved = true;
                        break;
                    }
                }
            }
            if !moved {
                s /= 2.0;
            }
        }
        best
    }
}

struct Extreme {
    lo: f64,
    lo_u: Vec<f64>,
    hi: f64,
    hi_u: Vec<f64>,
}

impl Extreme {
    fn new(x: f64, u: &[f64]) -> Self {
        Extreme { lo: x, lo_u: u.to_vec(), hi: x, hi_u: u.to_vec() }
    }

    fn update(&mut self, x: f64, u: &[f64]) {
        if x < self.lo {
            self.lo = x;
            self.lo_u = u.to_vec();
        }
        if x > self.hi {
            self.hi = x;
            self.hi_u = u.to_vec();
        }
    }
}

/// Odometer over `{0..per}^m`; false after the last index.
fn advance(idx: &mut [usize], per: usize) -> bool {
    for k in idx.iter_mut() {
        *k += 1;
        if *k < per {
            return true;
        }
        *k = 0;
    }
    false
}

fn path_length(g: &Graph, dist: &BTreeMap<VertexPair, f64>, s: Vertex, t: Vertex) -> Option<f64> {
    let mut best: BTreeMap<Vertex, f64> = BTreeMap::from([(s, 0.0)]);
    let mut done = std::collections::BTreeSet::new();
    while let Some((&v, &d)) = best.iter().filter(|(v, _)| !done.contains(*v)).min_by(|a, b| a.1.total_cmp(b.1)) {
        if v == t {
            return Some(d);
        }
        done.insert(v);
        for w in g.neighbors(v) {
            let nd = d + dist[&VertexPair::new(v, w)];
            if best.get(&w).is_none_or(|&old| nd < old) {
                best.insert(w, nd);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{base_case_witness_2d, k5_witness_3d};

    fn p(a: Vertex, b: Vertex) -> VertexPair {
        VertexPair::new(a, b)
    }

    fn k4_minus_f() -> Edcs {
        Edcs::from_distances(2, [(1, 3, 1.0), (1, 4, 1.0), (2, 3, 1.0), (2, 4, 1.0), (3, 4, 1.0)]).unwrap()
    }

    #[test]
    fn base_case_two_points() {
        let s = cayley_space_oracle(&k4_minus_f(), p(1, 2), 1000).unwrap();
        assert_eq!(s.len(), 2);
        let [(a, b), (c, d)] = s.intervals()[..] else { unreachable!() };
        assert!(a.abs() < 1e-9 && b.abs() < 1e-9);
        assert!((c - 3f64.sqrt()).abs() < 1e-9 && (d - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn path_and_cycle() {
        let p3 = Edcs::from_distances(2, [(1, 2, 1.0), (2, 3, 2.0)]).unwrap();
        let s = cayley_space_oracle(&p3, p(1, 3), 100).unwrap();
        assert_eq!(s.len(), 1);
        let (lo, hi) = s.hull().unwrap();
        assert!((lo - 1.0).abs() < 1e-9 && (hi - 3.0).abs() < 1e-9);

        let c4 = Edcs::from_distances(2, [(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (1, 4, 1.0)]).unwrap();
        let s = cayley_space_oracle(&c4, p(1, 3), 200).unwrap();
        assert_eq!(s.len(), 1, "{s:?}");
        let (lo, hi) = s.hull().unwrap();
        assert!(lo.abs() < 1e-9 && (hi - 2.0).abs() < 1e-9, "{s:?}");
    }

    #[test]
    fn probes() {
        let e = k4_minus_f();
        assert!(!realizability_probe(&e, &BTreeMap::from([(p(1, 2), 1.0)]), 100).unwrap());
        assert!(realizability_probe(&e, &BTreeMap::from([(p(1, 2), 3f64.sqrt())]), 100).unwrap());
        let p3 = Edcs::from_distances(2, [(1, 2, 1.0), (2, 3, 2.0)]).unwrap();
        assert!(realizability_probe(&p3, &BTreeMap::from([(p(1, 3), 3.0)]), 100).unwrap());
        assert!(!realizability_probe(&p3, &BTreeMap::from([(p(1, 3), 3.01)]), 100).unwrap());
    }

    #[test]
    fn clustering() {
        assert_eq!(cluster(&[0.0, 1.7320508], 0.01).len(), 2);
        let v: Vec<f64> = (0..=2000).map(|i| 1.0 + i as f64 * 0.001).collect();
        let s = cluster(&v, 0.01);
        assert_eq!(s.len(), 1);
        assert!((s.hull().unwrap().1 - 3.0).abs() < 1e-9);
        assert!(cluster(&[], 0.01).is_empty());
    }

    #[test]
    fn subdivided_witness() {
        let mut g = Graph::complete(4).without_pairs([&p(1, 2), &p(1, 3), &p(2, 4)]);
        for (a, b, s) in [(1, 3, 5), (2, 4, 6)] {
            g.add_edge(a, s).unwrap();
            g.add_edge(s, b).unwrap();
        }
        let w = base_case_witness_2d(&g, p(1, 2)).unwrap();
        let s = cayley_space_oracle(&w.edcs, p(1, 2), 1000).unwrap();
        assert_eq!(s.len(), 2, "{s:?}");
        for ((lo, hi), x) in s.intervals().iter().zip(&w.expected_values) {
            assert!((lo - x).abs() < 1e-9 && (hi - x).abs() < 1e-9);
        }
    }

    #[test]
    fn three_d_k5() {
        let w = k5_witness_3d();
        let s = cayley_space_oracle(&w.edcs, p(1, 2), 10).unwrap();
        assert_eq!(s.len(), 2);
        for ((lo, _), x) in s.intervals().iter().zip(&w.expected_values) {
            assert!((lo - x).abs() < 1e-9);
        }
    }

    #[test]
    fn inapplicable_and_inconsistent() {
        let k5 = Graph::complete(5).without_pairs([&p(1, 2)]);
        let w = k5.edges().map(|e| (e, Weight::Point(1.0))).collect();
        let e = Edcs::new(k5, w, Default::default(), 2).unwrap();
        assert!(matches!(cayley_space_oracle(&e, p(1, 2), 10), Err(Error::OracleInapplicable(_))));

        // The zero edge puts 1 and 2 together, but 3 is at different
        // distances from them.
        let bad = Edcs::from_distances(2, [(1, 2, 0.0), (2, 3, 1.0), (1, 3, 2.0), (3, 4, 1.0)]).unwrap();
        assert!(cayley_space_oracle(&bad, p(1, 4), 10).unwrap().is_empty());
    }
}
