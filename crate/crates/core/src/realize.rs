//! Cartesian realizations: circle intersection in 2D, trilateration in 3D,
//! assembled along k-tree construction orders and hinged across 2-sums.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use nalgebra::{DMatrix, Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::cayley::{midpoint_auxiliaries, polytope_description, CayleyPoint};
use crate::edcs::Edcs;
use crate::graph::{decompose_all, is_k_tree, is_partial_two_tree, k_tree_completion, Hinge};
use crate::{Error, Graph, Result, Vertex, VertexPair};

/// Coordinate tolerance for tangency and coincidence.
pub const TOL: f64 = 1e-9;

/// Squared heights below this (relative to the radius squared) count as
/// tangency; cancellation in the height formula is about this large.
const TANGENT: f64 = 1e-14;

type V3 = Vector3<f64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Intersection<P> {
    Empty,
    One(P),
    /// For circles, the first point lies left of `c1 -> c2`; for spheres,
    /// on the side of `(c2 - c1) × (c3 - c1)`.
    Two(P, P),
}

impl<P: Copy> Intersection<P> {
    pub fn points(&self) -> Vec<P> {
        match *self {
            Intersection::Empty => vec![],
            Intersection::One(p) => vec![p],
            Intersection::Two(p, q) => vec![p, q],
        }
    }
}

/// `Err(Degenerate)` when the centres coincide with equal positive radii.
pub fn circle_intersection(c1: Vector2<f64>, r1: f64, c2: Vector2<f64>, r2: f64) -> Result<Intersection<Vector2<f64>>> {
    let dv = c2 - c1;
    let d = dv.norm();
    if d < TOL {
        return if (r1 - r2).abs() >= TOL {
            Ok(Intersection::Empty)
        } else if r1 < TOL {
            Ok(Intersection::One(c1))
        } else {
            Err(Error::Degenerate)
        };
    }
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    if h2 < -2.0 * TOL * r1.max(1.0) {
        return Ok(Intersection::Empty);
    }
    let h = h2.max(0.0).sqrt();
    let ex = dv / d;
    let base = c1 + ex * a;
    let perp = Vector2::new(-ex.y, ex.x);
    Ok(if h2 <= TANGENT * r1.max(1.0).powi(2) { Intersection::One(base) } else { Intersection::Two(base + perp * h, base - perp * h) })
}

/// Points at the given distances from three centres; `Err(Degenerate)`
/// when the centres are collinear.
pub fn sphere_intersection(c: [V3; 3], r: [f64; 3]) -> Result<Intersection<V3>> {
    let d = (c[1] - c[0]).norm();
    if d < TOL {
        return Err(Error::Degenerate);
    }
    let ex = (c[1] - c[0]) / d;
    let i = ex.dot(&(c[2] - c[0]));
    let t = c[2] - c[0] - ex * i;
    let j = t.norm();
    if j < TOL {
        return Err(Error::Degenerate);
    }
    let ey = t / j;
    let ez = ex.cross(&ey);
    let x = (r[0] * r[0] - r[1] * r[1] + d * d) / (2.0 * d);
    let y = (r[0] * r[0] - r[2] * r[2] + i * i + j * j) / (2.0 * j) - i / j * x;
    let z2 = r[0] * r[0] - x * x - y * y;
    if z2 < -2.0 * TOL * r[0].max(1.0) {
        return Ok(Intersection::Empty);
    }
    let z = z2.max(0.0).sqrt();
    let base = c[0] + ex * x + ey * y;
    Ok(if z2 <= TANGENT * r[0].max(1.0).powi(2) { Intersection::One(base) } else { Intersection::Two(base + ez * z, base - ez * z) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CmReport {
    pub feasible: bool,
    /// Squared area (d = 2) or squared volume (d = 3).
    pub squared_volume: f64,
}

/// Cayley–Menger test on the squared pairwise distances of `d + 1` points,
/// listed in lexicographic pair order. Every face is checked, so the
/// verdict is realizability in `R^d`.
pub fn cm_feasible(squared: &[f64], d: usize) -> Result<CmReport> {
    if d != 2 && d != 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    let n = d + 1;
    if squared.len() != n * (n - 1) / 2 || squared.iter().any(|&s| s < 0.0 || !s.is_finite()) {
        return Err(Error::BadParameter(format!("expected {} nonnegative squared distances", n * (n - 1) / 2)));
    }
    let mut m = vec![vec![0.0; n]; n];
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            m[a][b] = squared[k];
            m[b][a] = squared[k];
            k += 1;
        }
    }
    let scale = squared.iter().fold(1.0f64, |s, &x| s.max(x));
    let all: Vec<usize> = (0..n).collect();
    let squared_volume = simplex_volume2(&m, &all);
    let mut feasible = squared_volume >= -1e-12 * scale.powi(d as i32);
    // Faces: every triangle (and edge trivially) must be realizable.
    if d == 3 {
        for skip in 0..n {
            let face: Vec<usize> = all.iter().copied().filter(|&x| x != skip).collect();
            feasible &= simplex_volume2(&m, &face) >= -1e-12 * scale.powi(2);
        }
    }
    Ok(CmReport { feasible, squared_volume })
}

fn simplex_volume2(m: &[Vec<f64>], idx: &[usize]) -> f64 {
    let n = idx.len();
    let mut cm = DMatrix::<f64>::from_element(n + 1, n + 1, 1.0);
    cm[(0, 0)] = 0.0;
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            cm[(a + 1, b + 1)] = m[i][j];
        }
    }
    let k = n - 1;
    let fact: f64 = (1..=k).map(|x| x as f64).product();
    let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
    sign * cm.determinant() / (2f64.powi(k as i32) * fact * fact)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub dim: usize,
    pub points: BTreeMap<Vertex, Vec<f64>>,
    /// One entry per vertex placed with a reflection choice, +1 or -1.
    pub branches: Vec<i8>,
    /// Vertices pinned by the canonical frame, in order.
    pub frame: Vec<Vertex>,
}

impl Realization {
    pub fn point(&self, v: Vertex) -> Option<V3> {
        self.points.get(&v).map(|c| V3::new(c[0], c[1], c.get(2).copied().unwrap_or(0.0)))
    }

    pub fn distance(&self, a: Vertex, b: Vertex) -> Option<f64> {
        Some((self.point(a)? - self.point(b)?).norm())
    }

    /// First frame vertex at the origin, second on the +x axis, third with
    /// nonnegative y (and zero z), fourth with nonnegative z.
    pub fn in_canonical_frame(&self, tol: f64) -> bool {
        let p: Vec<V3> = self.frame.iter().filter_map(|&v| self.point(v)).collect();
        let ok0 = p.first().is_none_or(|a| a.norm() <= tol);
        let ok1 = p.get(1).is_none_or(|b| b.x >= -tol && b.y.abs() <= tol && b.z.abs() <= tol);
        let ok2 = p.get(2).is_none_or(|c| c.y >= -tol && c.z.abs() <= tol);
        let ok3 = p.get(3).is_none_or(|d| d.z >= -tol);
        ok0 && ok1 && ok2 && ok3
    }

    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> Realization {
        Realization {
            dim: self.dim,
            points: self.points.iter().filter(|(v, _)| keep.contains(v)).map(|(&v, c)| (v, c.clone())).collect(),
            branches: Vec::new(),
            frame: self.frame.iter().copied().filter(|v| keep.contains(v)).collect(),
        }
    }

    fn from_points(dim: usize, pts: &BTreeMap<Vertex, V3>, branches: Vec<i8>, frame: Vec<Vertex>) -> Self {
        let points = pts.iter().map(|(&v, p)| (v, p.as_slice()[..dim].to_vec())).collect();
        Realization { dim, points, branches, frame }
    }
}

/// A point at the given distances from centres that do not pin it down
/// (coincident or collinear), checked against every distance.
fn fallback(dim: usize, centres: &[V3], radii: &[f64]) -> Option<V3> {
    let (mut ia, mut ib, mut far) = (0, 0, 0.0);
    for a in 0..centres.len() {
        for b in a + 1..centres.len() {
            let d = (centres[b] - centres[a]).norm();
            if d > far {
                (ia, ib, far) = (a, b, d);
            }
        }
    }
    let up = if dim == 2 { V3::y() } else { V3::z() };
    let candidate = if far < TOL {
        centres[0] + up * radii[0]
    } else {
        let ex = (centres[ib] - centres[ia]) / far;
        let x = (radii[ia].powi(2) - radii[ib].powi(2) + far * far) / (2.0 * far);
        let rho2 = radii[ia].powi(2) - x * x;
        if rho2 < -2.0 * TOL * radii[ia].max(1.0) {
            return None;
        }
        let u = if dim == 2 {
            V3::new(-ex.y, ex.x, 0.0)
        } else {
            let axis = if ex.x.abs() < 0.9 { V3::x() } else { V3::y() };
            ex.cross(&axis).normalize()
        };
        centres[ia] + ex * x + u * rho2.max(0.0).sqrt()
    };
    let ok = centres.iter().zip(radii).all(|(c, &r)| ((candidate - c).norm() - r).abs() <= 1e-7 * r.max(1.0));
    ok.then_some(candidate)
}

/// Candidate positions for the `i`-th vertex of a construction order.
/// Canonical-frame steps return at most one point.
pub(crate) fn candidates(dim: usize, i: usize, att: &[Vertex], pts: &BTreeMap<Vertex, V3>, radius: &dyn Fn(Vertex) -> f64) -> Vec<V3> {
    let centres: Vec<V3> = att.iter().map(|a| pts[a]).collect();
    let radii: Vec<f64> = att.iter().map(|&a| radius(a)).collect();
    match i {
        0 => return vec![V3::zeros()],
        1 => return vec![V3::new(radii[0], 0.0, 0.0)],
        _ => {}
    }
    let found = if att.len() == 2 {
        let to2 = |p: V3| Vector2::new(p.x, p.y);
        circle_intersection(to2(centres[0]), radii[0], to2(centres[1]), radii[1])
            .map(|x| x.points().into_iter().map(|p| V3::new(p.x, p.y, 0.0)).collect::<Vec<_>>())
    } else {
        sphere_intersection([centres[0], centres[1], centres[2]], [radii[0], radii[1], radii[2]]).map(|x| x.points())
    };
    let mut pts = match found {
        Ok(p) => p,
        Err(_) => fallback(dim, &centres, &radii).into_iter().collect(),
    };
    // Frame steps keep the solution on the nonnegative side.
    if i == 2 {
        pts.sort_by(|a, b| b.y.total_cmp(&a.y));
        pts.truncate(1);
        pts.iter_mut().for_each(|p| p.y = p.y.abs());
    } else if i == 3 && dim == 3 {
        pts.sort_by(|a, b| b.z.total_cmp(&a.z));
        pts.truncate(1);
        pts.iter_mut().for_each(|p| p.z = p.z.abs());
    }
    pts
}

/// Places `order` one vertex at a time, each at the prescribed distances
/// from its attachment clique. `branches[j]` picks the reflection for the
/// `j`-th vertex after the frame; missing entries default to +1.
pub fn realize_along(
    dim: usize,
    order: &[Vertex],
    attachments: &[Vec<Vertex>],
    dist: &dyn Fn(VertexPair) -> f64,
    branches: &[i8],
) -> Result<Realization> {
    let mut pts = BTreeMap::new();
    let mut used = Vec::new();
    for (i, (&v, att)) in order.iter().zip(attachments).enumerate() {
        let cands = candidates(dim, i, att, &pts, &|a| dist(VertexPair::new(a, v)));
        let pick = if i > dim {
            let b = branches.get(i - dim - 1).copied().unwrap_or(1);
            used.push(if cands.len() == 2 { b } else { 1 });
            usize::from(b < 0 && cands.len() == 2)
        } else {
            0
        };
        let p = *cands.get(pick).ok_or(Error::NotRealizable { vertex: v })?;
        pts.insert(v, p);
    }
    Ok(Realization::from_points(dim, &pts, used, order.iter().take(dim + 1).copied().collect()))
}

/// Construction order of a k-tree from its lexicographically smallest
/// (k+1)-clique, adding the smallest vertex whose placed neighbours form a
/// k-clique.
pub fn k_tree_order(g: &Graph, k: usize) -> Result<(Vec<Vertex>, Vec<Vec<Vertex>>)> {
    let not_k_tree = || Error::BadParameter(format!("graph is not a {k}-tree"));
    if !is_k_tree(g, k) {
        return Err(not_k_tree());
    }
    let mut order: Vec<Vertex> = vec![g.vertices().next().ok_or_else(not_k_tree)?];
    while order.len() < k + 1 {
        let next = g
            .neighbors(order[0])
            .filter(|v| !order.contains(v) && order.iter().all(|&u| g.has_edge(u, *v)))
            .min()
            .ok_or_else(not_k_tree)?;
        order.push(next);
    }
    let mut attachments: Vec<Vec<Vertex>> = (0..=k).map(|i| order[..i].to_vec()).collect();
    attachments.iter_mut().for_each(|a| a.sort_unstable());
    let mut placed: BTreeSet<Vertex> = order.iter().copied().collect();
    let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut ready = BTreeSet::new();
    let bump = |v: Vertex, placed: &BTreeSet<Vertex>, count: &mut BTreeMap<Vertex, usize>, ready: &mut BTreeSet<Vertex>| {
        for w in g.neighbors(v) {
            if !placed.contains(&w) {
                let c = count.entry(w).or_default();
                *c += 1;
                if *c == k {
                    ready.insert(w);
                }
            }
        }
    };
    for &v in &order.clone() {
        bump(v, &placed, &mut count, &mut ready);
    }
    while let Some(v) = ready.pop_first() {
        let att: Vec<Vertex> = g.neighbors(v).filter(|w| placed.contains(w)).collect();
        if att.len() != k || !att.iter().all(|&a| att.iter().all(|&b| a == b || g.has_edge(a, b))) {
            return Err(not_k_tree());
        }
        placed.insert(v);
        order.push(v);
        attachments.push(att);
        bump(v, &placed, &mut count, &mut ready);
    }
    if order.len() != g.vertex_count() {
        return Err(not_k_tree());
    }
    Ok((order, attachments))
}

fn k_tree_plan(e: &Edcs) -> Result<(Vec<Vertex>, Vec<Vec<Vertex>>, BTreeMap<VertexPair, f64>)> {
    let dist = e.point_distances()?;
    let (order, att) = k_tree_order(e.graph(), e.dim())?;
    Ok((order, att, dist))
}

/// Realization of a k-tree system (k = dimension) in the canonical frame.
pub fn realize_k_tree(e: &Edcs, branches: Option<&[i8]>) -> Result<Realization> {
    let (order, att, dist) = k_tree_plan(e)?;
    realize_along(e.dim(), &order, &att, &|p| dist[&p], branches.unwrap_or(&[]))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchNode {
    pub vertex: Vertex,
    /// Number of geometric solutions at this step (0, 1 or 2).
    pub multiplicity: u8,
    pub children: Vec<BranchNode>,
}

impl BranchNode {
    fn leaves(&self, last: bool) -> usize {
        if last || self.children.is_empty() {
            if last {
                self.multiplicity as usize
            } else {
                0
            }
        } else {
            self.children.iter().map(|c| c.leaves(false)).sum()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchTree {
    pub order: Vec<Vertex>,
    /// Steps after the canonical frame; `None` if nothing branches.
    pub root: Option<BranchNode>,
}

impl BranchTree {
    /// Number of complete, feasible branch sequences explored.
    pub fn leaf_count(&self) -> usize {
        fn go(n: &BranchNode) -> usize {
            if n.children.is_empty() {
                n.leaves(true)
            } else {
                n.children.iter().map(go).sum()
            }
        }
        self.root.as_ref().map_or(1, go)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    /// Distinct realizations in the canonical frame.
    pub realizations: Vec<Realization>,
    pub truncated: bool,
    pub tree: BranchTree,
}

/// Every reflection choice of a k-tree system, up to `cap` distinct results.
pub fn enumerate_branches(e: &Edcs, cap: usize) -> Result<Enumeration> {
    let (order, att, dist) = k_tree_plan(e)?;
    enumerate_along(e.dim(), &order, &att, &|p| dist[&p], cap)
}

pub fn enumerate_along(
    dim: usize,
    order: &[Vertex],
    attachments: &[Vec<Vertex>],
    dist: &dyn Fn(VertexPair) -> f64,
    cap: usize,
) -> Result<Enumeration> {
    let mut pts = BTreeMap::new();
    for i in 0..order.len().min(dim + 1) {
        let v = order[i];
        let c = candidates(dim, i, &attachments[i], &pts, &|a| dist(VertexPair::new(a, v)));
        pts.insert(v, *c.first().ok_or(Error::NotRealizable { vertex: v })?);
    }
    let frame: Vec<Vertex> = order.iter().take(dim + 1).copied().collect();
    let mut out = Enumeration {
        realizations: Vec::new(),
        truncated: false,
        tree: BranchTree { order: order.to_vec(), root: None },
    };
    let mut ctx = Dfs { dim, order, attachments, dist, cap, frame, out: &mut out };
    let mut branches = Vec::new();
    if order.len() > dim + 1 {
        let root = ctx.visit(dim + 1, &mut pts, &mut branches);
        out.tree.root = Some(root);
    } else {
        ctx.record(&pts, branches);
    }
    Ok(out)
}

struct Dfs<'a> {
    dim: usize,
    order: &'a [Vertex],
    attachments: &'a [Vec<Vertex>],
    dist: &'a dyn Fn(VertexPair) -> f64,
    cap: usize,
    frame: Vec<Vertex>,
    out: &'a mut Enumeration,
}

impl Dfs<'_> {
    fn visit(&mut self, i: usize, pts: &mut BTreeMap<Vertex, V3>, branches: &mut Vec<i8>) -> BranchNode {
        let v = self.order[i];
        let dist = self.dist;
        let cands = candidates(self.dim, i, &self.attachments[i], pts, &|a| dist(VertexPair::new(a, v)));
        let mut node = BranchNode { vertex: v, multiplicity: cands.len() as u8, children: Vec::new() };
        for (k, p) in cands.into_iter().enumerate() {
            if self.out.truncated {
                break;
            }
            pts.insert(v, p);
            branches.push(if k == 0 { 1 } else { -1 });
            if i + 1 < self.order.len() {
                let child = self.visit(i + 1, pts, branches);
                node.children.push(child);
            } else {
                self.record(pts, branches.clone());
            }
            branches.pop();
            pts.remove(&v);
        }
        node
    }

    fn record(&mut self, pts: &BTreeMap<Vertex, V3>, branches: Vec<i8>) {
        let scale = pts.values().fold(1.0f64, |s, p| s.max(p.norm()));
        let dup = self.out.realizations.iter().any(|r| {
            pts.iter().all(|(&v, p)| (r.point(v).expect("same vertex set") - p).norm() <= 1e-9 * scale)
        });
        if dup {
            return;
        }
        if self.out.realizations.len() >= self.cap {
            self.out.truncated = true;
            return;
        }
        self.out.realizations.push(Realization::from_points(self.dim, pts, branches, self.frame.clone()));
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub max_error: f64,
    pub mean_error: f64,
    pub errors: Vec<(VertexPair, f64)>,
    pub pass: bool,
}

/// Per-edge length errors; interval edges are measured against `[lo, hi]`.
pub fn verify_realization(r: &Realization, e: &Edcs, tol: f64) -> Result<Verification> {
    if r.dim != e.dim() {
        return Err(Error::BadParameter(format!("realization is {}D, system is {}D", r.dim, e.dim())));
    }
    if let Some(v) = e.graph().vertices().find(|v| !r.points.contains_key(v)) {
        return Err(Error::IncompleteRealization(v));
    }
    let errors: Vec<(VertexPair, f64)> = e
        .weights()
        .iter()
        .map(|(&p, w)| {
            let d = r.distance(p.u(), p.v()).expect("checked above");
            (p, (w.lo() - d).max(d - w.hi()).max(0.0))
        })
        .collect();
    let max_error = errors.iter().map(|x| x.1).fold(0.0, f64::max);
    let mean_error = if errors.is_empty() { 0.0 } else { errors.iter().map(|x| x.1).sum::<f64>() / errors.len() as f64 };
    Ok(Verification { max_error, mean_error, errors, pass: max_error < tol })
}

/// Rigid motion of the plane taking `(a, b)` onto `(a2, b2)`, applied to `p`.
fn align(p: V3, a: V3, b: V3, a2: V3, b2: V3) -> V3 {
    let (u, w) = (b - a, b2 - a2);
    let theta = if u.norm() < TOL || w.norm() < TOL { 0.0 } else { w.y.atan2(w.x) - u.y.atan2(u.x) };
    let (s, c) = theta.sin_cos();
    let q = p - a;
    a2 + V3::new(c * q.x - s * q.y, s * q.x + c * q.y, 0.0)
}

/// 2D realization of a system whose parameters take the values in `x`.
/// Missing parameter and auxiliary values are filled with conditional
/// midpoints. Components with no parameter that are not partial 2-trees
/// are read from `base`.
pub fn realize_from_config(e: &Edcs, x: &CayleyPoint, base: Option<&Realization>) -> Result<Realization> {
    let poly = polytope_description(e)?;
    let full = poly.complete(x)?;
    let mut dist = e.point_distances()?;
    dist.extend(full.values.iter().map(|(&p, &v)| (p, v)));
    let h = e.graph().with_pairs(e.params());
    let mut global: BTreeMap<Vertex, V3> = BTreeMap::new();
    let mut branches = Vec::new();
    let mut frame = Vec::new();
    for d in decompose_all(&h) {
        let mut local: Vec<BTreeMap<Vertex, V3>> = Vec::new();
        for c in &d.components {
            let cg = &c.graph;
            let pts = if cg.vertex_count() <= 2 {
                let vs: Vec<Vertex> = cg.vertices().collect();
                let mut m = BTreeMap::from([(vs[0], V3::zeros())]);
                if let [a, b] = vs[..] {
                    m.insert(b, V3::new(dist[&VertexPair::new(a, b)], 0.0, 0.0));
                }
                m
            } else if is_partial_two_tree(cg) {
                let comp = k_tree_completion(cg, 2)?;
                let mut dd = dist.clone();
                if !comp.fill.iter().all(|p| dd.contains_key(p)) {
                    dd.extend(midpoint_auxiliaries(cg, &dist)?);
                }
                let r = realize_along(2, &comp.order, &comp.attachments, &|p| dd[&p], &[])?;
                branches.extend(r.branches.iter().copied());
                if frame.is_empty() {
                    frame = r.frame.clone();
                }
                r.points.keys().map(|&v| (v, r.point(v).expect("placed"))).collect()
            } else {
                let b = base.ok_or_else(|| Error::BaseRealizationRequired(cg.to_string()))?;
                let mut m = BTreeMap::new();
                for v in cg.vertices() {
                    m.insert(v, b.point(v).ok_or_else(|| Error::BaseRealizationRequired(cg.to_string()))?);
                }
                m
            };
            local.push(pts);
        }
        // Hinge along the decomposition tree, breadth first from component 0.
        let mut adj = vec![Vec::new(); local.len()];
        for &(i, j, hinge) in &d.tree {
            adj[i].push((j, hinge));
            adj[j].push((i, hinge));
        }
        let mut placed = vec![false; local.len()];
        let mut queue = VecDeque::from([0]);
        placed[0] = true;
        global.extend(local[0].iter().map(|(&v, &p)| (v, p)));
        while let Some(i) = queue.pop_front() {
            for &(j, hinge) in &adj[i] {
                if placed[j] {
                    continue;
                }
                placed[j] = true;
                let (a, b) = match hinge {
                    Hinge::Vertex(v) => (v, v),
                    Hinge::Edge(p) => (p.u(), p.v()),
                };
                let (la, lb, ga, gb) = (local[j][&a], local[j][&b], global[&a], global[&b]);
                for (&v, &p) in &local[j] {
                    global.entry(v).or_insert_with(|| align(p, la, lb, ga, gb));
                }
                queue.push_back(j);
            }
        }
    }
    for v in e.graph().vertices() {
        global.entry(v).or_insert_with(V3::zeros);
    }
    Ok(Realization::from_points(2, &global, branches, frame))
}

/// The constraint system obtained by fixing each parameter of `e` at the
/// value in `x`, as ordinary edges.
pub fn with_parameter_values(e: &Edcs, x: &CayleyPoint) -> Result<Edcs> {
    let mut g: Graph = e.graph().clone();
    let mut w = e.weights().clone();
    for (&p, &v) in &x.values {
        g.add_pair(p);
        w.insert(p, crate::Weight::Point(v));
    }
    Edcs::new(g, w, BTreeSet::new(), e.dim())
}
