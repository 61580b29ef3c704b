//! Linear polytope descriptions of 2D Cayley configuration spaces.
//!
//! Every minimal component of `G ∪ F` that contains a parameter is completed
//! to a 2-tree with auxiliary pairs `D`. The space is cut out by the triangle
//! inequalities of those 2-trees. Triangles and their sides form a forest
//! (each triangle of a 2-tree hangs off one earlier side), so the set of
//! values a side can take given its subtree is an interval, computed
//! bottom-up. Sampling and exact membership tests both run on that forest.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characterize::check_parameter_set;
use crate::edcs::Edcs;
use crate::graph::{decompose_all, is_partial_two_tree, k_tree_completion, pair_map, KTreeCompletion};
use crate::{Error, Graph, Result, Vertex, VertexPair};

/// Absolute tolerance on lengths.
pub const TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Fixed(f64),
    /// Index into the full parameter list (`F` then `D`).
    Param(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub vertices: [Vertex; 3],
    pub sides: [VertexPair; 3],
    pub terms: [Term; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    Triangle { index: usize },
    Nonnegative,
    Projection,
}

/// `Σ coeff · x ≤ rhs` over parameter indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub coeffs: Vec<(usize, f64)>,
    pub rhs: f64,
    pub source: Source,
}

impl Inequality {
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.rhs - self.coeffs.iter().map(|&(i, c)| c * x[i]).sum::<f64>()
    }

    /// Human-readable form, with parameters printed as `x(u,v)`.
    pub fn render(&self, params: &[VertexPair], name: &dyn Fn(Vertex) -> String) -> String {
        let label = |i: usize| format!("x({},{})", name(params[i].u()), name(params[i].v()));
        match self.coeffs[..] {
            [] => format!("0 <= {}", fmt_num(self.rhs)),
            [(i, c)] if c > 0.0 => format!("{} <= {}", label(i), fmt_num(self.rhs / c)),
            [(i, c)] => format!("{} >= {}", label(i), fmt_num(self.rhs / c)),
            _ => {
                let mut s = String::new();
                for (k, &(i, c)) in self.coeffs.iter().enumerate() {
                    let sign = if c < 0.0 { "-" } else if k > 0 { "+" } else { "" };
                    let sep = if k > 0 { " " } else { "" };
                    let mag = if (c.abs() - 1.0).abs() < 1e-12 { String::new() } else { format!("{} ", fmt_num(c.abs())) };
                    let _ = write!(s, "{sep}{sign}{}{mag}{}", if k > 0 { " " } else { "" }, label(i));
                }
                format!("{s} <= {}", fmt_num(self.rhs))
            }
        }
    }
}

fn fmt_num(x: f64) -> String {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonemptinessStatus {
    /// Every parameter-free component was checked by construction.
    Verified,
    /// Some parameter-free component is not a partial 2-tree; its
    /// realizability is assumed, not checked.
    ConditionalOnComponents,
    #[default]
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CayleyPolytope {
    /// `F` then `D`; `Term::Param` indexes this list.
    all_params: Vec<VertexPair>,
    free: usize,
    projected: bool,
    triangles: Vec<TriangleRecord>,
    inequalities: Vec<Inequality>,
    construction_order: Vec<VertexPair>,
    #[serde(default)]
    status: NonemptinessStatus,
    conditional: Vec<Graph>,
    infeasible: Vec<Graph>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CayleyPoint {
    #[serde(with = "pair_map")]
    pub values: BTreeMap<VertexPair, f64>,
}

impl CayleyPoint {
    pub fn new(values: impl IntoIterator<Item = (VertexPair, f64)>) -> Self {
        CayleyPoint { values: values.into_iter().collect() }
    }

    pub fn get(&self, p: VertexPair) -> Option<f64> {
        self.values.get(&p).copied()
    }

    pub fn squared(&self) -> CayleyPoint {
        CayleyPoint::new(self.values.iter().map(|(&p, &x)| (p, x * x)))
    }

    pub fn unsquared(&self) -> CayleyPoint {
        CayleyPoint::new(self.values.iter().map(|(&p, &x)| (p, x.max(0.0).sqrt())))
    }
}

/// Componentwise `sqrt((a² + b²) / 2)`: the midpoint in squared coordinates.
pub fn squared_midpoint(a: &CayleyPoint, b: &CayleyPoint) -> Result<CayleyPoint> {
    if !a.values.keys().eq(b.values.keys()) {
        return Err(Error::BadParameter("points have different parameter sets".into()));
    }
    Ok(CayleyPoint::new(a.values.iter().zip(b.values.values()).map(|((&p, &x), &y)| (p, ((x * x + y * y) / 2.0).sqrt()))))
}

/// Triangle records and parameter list for a set of 2-tree completions.
struct Built {
    all_params: Vec<VertexPair>,
    triangles: Vec<TriangleRecord>,
}

fn build_triangles(
    components: &[Graph],
    free: &BTreeSet<VertexPair>,
    dist: &BTreeMap<VertexPair, f64>,
) -> Result<Built> {
    let mut completions = Vec::new();
    let mut aux = BTreeSet::new();
    for c in components {
        let comp = k_tree_completion(c, 2)?;
        aux.extend(comp.fill.iter().copied());
        completions.push(comp);
    }
    let all_params: Vec<VertexPair> = free.iter().chain(aux.iter()).copied().collect();
    let index: BTreeMap<VertexPair, usize> = all_params.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let term = |p: VertexPair| match index.get(&p) {
        Some(&i) => Term::Param(i),
        None => Term::Fixed(dist[&p]),
    };
    let triangles = completions.iter().flat_map(|comp| completion_triangles(comp, &term)).collect();
    Ok(Built { all_params, triangles })
}

fn completion_triangles(comp: &KTreeCompletion, term: &dyn Fn(VertexPair) -> Term) -> Vec<TriangleRecord> {
    let mut out = Vec::new();
    for (v, att) in comp.order.iter().zip(&comp.attachments).skip(2) {
        let mut vs = [*v, att[0], att[1]];
        vs.sort_unstable();
        let sides = [VertexPair::new(vs[0], vs[1]), VertexPair::new(vs[0], vs[2]), VertexPair::new(vs[1], vs[2])];
        out.push(TriangleRecord { vertices: vs, sides, terms: sides.map(term) });
    }
    out
}

/// The completion pairs of one 2-tree completion, with exact conditional
/// intervals for any of them given values for others.
pub(crate) struct AuxSpace {
    params: Vec<VertexPair>,
    global: Forest,
    rooted: Vec<Forest>,
}

impl AuxSpace {
    pub(crate) fn new(comp: &KTreeCompletion, dist: &BTreeMap<VertexPair, f64>) -> AuxSpace {
        let params: Vec<VertexPair> = comp.fill.iter().copied().collect();
        let term = |p: VertexPair| match params.iter().position(|&q| q == p) {
            Some(i) => Term::Param(i),
            None => Term::Fixed(dist[&p]),
        };
        let triangles = completion_triangles(comp, &term);
        let rooted = (0..params.len()).map(|i| Forest::new(&params, &triangles, Some(i))).collect();
        let global = Forest::new(&params, &triangles, None);
        AuxSpace { params, global, rooted }
    }

    pub(crate) fn index_of(&self, p: VertexPair) -> Option<usize> {
        self.params.iter().position(|&q| q == p)
    }

    pub(crate) fn feasible(&self, over: &BTreeMap<usize, f64>) -> bool {
        self.global.feasible(&self.global.upward(over))
    }

    /// Values of parameter `i` consistent with `over`; `None` when `over`
    /// itself is infeasible.
    pub(crate) fn conditional(&self, i: usize, over: &BTreeMap<usize, f64>) -> Option<(f64, f64)> {
        let forest = &self.rooted[i];
        let up = forest.upward(over);
        if !forest.feasible(&up) {
            return None;
        }
        up[forest.slot_of_param[i]]
    }
}

/// Values for the completion pairs of a parameter-free partial 2-tree,
/// each the midpoint of its conditional interval.
pub(crate) fn midpoint_auxiliaries(
    component: &Graph,
    dist: &BTreeMap<VertexPair, f64>,
) -> Result<BTreeMap<VertexPair, f64>> {
    let built = build_triangles(std::slice::from_ref(component), &BTreeSet::new(), dist)?;
    let forest = Forest::new(&built.all_params, &built.triangles, None);
    let none = BTreeMap::new();
    let up = forest.upward(&none);
    forest.check_roots(&up)?;
    let vals = forest.downward(&up, |slot, iv| choose(&forest, &none, slot, iv, |lo, hi| (lo + hi) / 2.0))?;
    Ok(forest.point(&vals, &built.all_params, built.all_params.len()).values)
}

pub fn polytope_description(e: &Edcs) -> Result<CayleyPolytope> {
    if e.dim() != 2 {
        return Err(Error::UnsupportedDimension(e.dim()));
    }
    let dist = e.point_distances()?;
    let free = e.params();
    let g = e.graph();
    let report = check_parameter_set(g, free)?;
    if !report.always_linear_polytope() {
        let list: Vec<String> = report.witnesses.iter().map(|w| format!("{} in {}", w.param, w.component)).collect();
        return Err(Error::NotPolytopeRepresentable(list.join("; ")));
    }
    let h = g.with_pairs(free);
    let mut with_params = Vec::new();
    let mut conditional = Vec::new();
    let mut infeasible = Vec::new();
    for d in decompose_all(&h) {
        for c in d.components {
            let cg = c.graph;
            if cg.vertex_count() < 2 {
                continue;
            }
            if free.iter().any(|f| cg.has_pair(*f)) {
                with_params.push(cg);
            } else if !is_partial_two_tree(&cg) {
                conditional.push(cg);
            } else if cg.vertex_count() >= 3 {
                let built = build_triangles(std::slice::from_ref(&cg), &BTreeSet::new(), &dist)?;
                let forest = Forest::new(&built.all_params, &built.triangles, None);
                if !forest.feasible(&forest.upward(&BTreeMap::new())) {
                    infeasible.push(cg);
                }
            }
        }
    }
    let built = build_triangles(&with_params, free, &dist)?;
    let mut inequalities = Vec::new();
    for (t, tri) in built.triangles.iter().enumerate() {
        for k in 0..3 {
            let mut coeffs = Vec::new();
            let mut rhs = 0.0;
            for (j, term) in tri.terms.iter().enumerate() {
                let sign = if j == k { 1.0 } else { -1.0 };
                match *term {
                    Term::Param(i) => coeffs.push((i, sign)),
                    Term::Fixed(d) => rhs -= sign * d,
                }
            }
            if coeffs.is_empty() {
                if rhs < -TOL && !infeasible.iter().any(|c: &Graph| tri.vertices.iter().all(|&v| c.has_vertex(v))) {
                    infeasible.push(Graph::from_edges(tri.sides.map(|s| (s.u(), s.v()))).expect("distinct"));
                }
                continue;
            }
            coeffs.sort_by_key(|c| c.0);
            inequalities.push(Inequality { coeffs, rhs, source: Source::Triangle { index: t } });
        }
    }
    let mut inequalities = prune(inequalities);
    inequalities.extend(nonnegativity(0..built.all_params.len()));
    let forest = Forest::new(&built.all_params, &built.triangles, None);
    let construction_order = forest.param_order(&built.all_params);
    let status = if conditional.is_empty() { NonemptinessStatus::Verified } else { NonemptinessStatus::ConditionalOnComponents };
    Ok(CayleyPolytope {
        all_params: built.all_params,
        free: free.len(),
        projected: false,
        triangles: built.triangles,
        inequalities,
        construction_order,
        status,
        conditional,
        infeasible,
    })
}

fn nonnegativity(range: std::ops::Range<usize>) -> impl Iterator<Item = Inequality> {
    range.map(|i| Inequality { coeffs: vec![(i, -1.0)], rhs: 0.0, source: Source::Nonnegative })
}

/// Scales each inequality to unit max coefficient, drops trivially true
/// ones, and keeps the tightest of any group with the same direction.
fn prune(ineqs: Vec<Inequality>) -> Vec<Inequality> {
    let mut best: BTreeMap<Vec<(usize, i64)>, Inequality> = BTreeMap::new();
    let mut order = Vec::new();
    for mut q in ineqs {
        q.coeffs.retain(|c| c.1.abs() > 1e-12);
        let scale = q.coeffs.iter().map(|c| c.1.abs()).fold(0.0, f64::max);
        if scale == 0.0 {
            if q.rhs >= -TOL {
                continue;
            }
        } else {
            for c in &mut q.coeffs {
                c.1 /= scale;
            }
            q.rhs /= scale;
        }
        let key: Vec<(usize, i64)> = q.coeffs.iter().map(|&(i, c)| (i, (c * 1e9).round() as i64)).collect();
        match best.get_mut(&key) {
            Some(old) if old.rhs <= q.rhs => {}
            Some(old) => *old = q,
            None => {
                order.push(key.clone());
                best.insert(key, q);
            }
        }
    }
    order.into_iter().map(|k| best.remove(&k).expect("inserted")).collect()
}

impl CayleyPolytope {
    /// Parameters the inequalities range over: `F`, plus `D` unless projected.
    pub fn parameters(&self) -> &[VertexPair] {
        if self.projected {
            &self.all_params[..self.free]
        } else {
            &self.all_params
        }
    }

    pub fn free_parameters(&self) -> &[VertexPair] {
        &self.all_params[..self.free]
    }

    pub fn auxiliary_parameters(&self) -> &[VertexPair] {
        &self.all_params[self.free..]
    }

    pub fn is_projected(&self) -> bool {
        self.projected
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn triangles(&self) -> &[TriangleRecord] {
        &self.triangles
    }

    pub fn construction_order(&self) -> &[VertexPair] {
        &self.construction_order
    }

    pub fn status(&self) -> NonemptinessStatus {
        self.status
    }

    pub fn conditional_components(&self) -> &[Graph] {
        &self.conditional
    }

    /// Parameter-free components whose own triangle inequalities fail.
    pub fn infeasible_components(&self) -> &[Graph] {
        &self.infeasible
    }

    fn index_of(&self, p: VertexPair) -> Option<usize> {
        self.all_params.iter().position(|&q| q == p)
    }

    fn forest(&self, root: Option<usize>) -> Forest {
        Forest::new(&self.all_params, &self.triangles, root)
    }

    fn overrides(&self, point: &CayleyPoint) -> Option<BTreeMap<usize, f64>> {
        point.values.iter().map(|(&p, &x)| Some((self.index_of(p)?, x))).collect()
    }

    /// Exact range of one parameter over the whole space.
    pub fn range(&self, p: VertexPair) -> Result<Option<(f64, f64)>> {
        let i = self.index_of(p).ok_or(Error::BadParameter(format!("{p} is not a parameter")))?;
        let forest = self.forest(Some(i));
        let up = forest.upward(&BTreeMap::new());
        if !self.infeasible.is_empty() || !forest.feasible(&up) {
            return Ok(None);
        }
        Ok(up[forest.slot_of_param[i]])
    }

    /// Does some completion of `point` (values for any subset of the
    /// parameters, auxiliary ones included) satisfy every inequality?
    pub fn is_feasible(&self, point: &CayleyPoint) -> bool {
        let Some(over) = self.overrides(point) else { return false };
        if over.values().any(|&x| x < -TOL) || !self.infeasible.is_empty() {
            return false;
        }
        let forest = self.forest(None);
        forest.feasible(&forest.upward(&over))
    }

    /// Checks the listed inequalities directly; `point` must give every
    /// parameter in [`Self::parameters`].
    pub fn contains(&self, point: &CayleyPoint, tol: f64) -> Result<bool> {
        let mut x = vec![0.0; self.all_params.len()];
        for (i, p) in self.parameters().iter().enumerate() {
            x[i] = point.get(*p).ok_or(Error::BadParameter(format!("missing value for {p}")))?;
        }
        Ok(self.inequalities.iter().all(|q| q.slack(&x) >= -tol))
    }

    /// Fills in missing parameters with the midpoint of their conditional
    /// interval, in construction order.
    pub fn complete(&self, partial: &CayleyPoint) -> Result<CayleyPoint> {
        let over = self.overrides(partial).ok_or(Error::ConfigOutsideSpace)?;
        if !self.is_feasible(partial) {
            return Err(Error::ConfigOutsideSpace);
        }
        let forest = self.forest(None);
        let up = forest.upward(&over);
        let vals = forest.downward(&up, |slot, iv| choose(&forest, &over, slot, iv, |lo, hi| (lo + hi) / 2.0))?;
        Ok(forest.point(&vals, &self.all_params, self.all_params.len()))
    }

    /// `count` points, each parameter drawn uniformly from its conditional
    /// interval. Not uniform over the polytope.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<CayleyPoint>> {
        if self.status == NonemptinessStatus::Unknown {
            return Err(Error::BadParameter("nonemptiness status unknown".into()));
        }
        if let Some(c) = self.infeasible.first() {
            return Err(Error::EmptyConfigurationSpace(c.to_string()));
        }
        let forest = self.forest(None);
        let none = BTreeMap::new();
        let up = forest.upward(&none);
        forest.check_roots(&up)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let keep = self.parameters().len();
        (0..count)
            .map(|_| {
                let vals = forest.downward(&up, |slot, iv| choose(&forest, &none, slot, iv, |lo, hi| rng.gen_range(lo..=hi)))?;
                Ok(forest.point(&vals, &self.all_params, keep))
            })
            .collect()
    }

    /// Fourier–Motzkin elimination of the auxiliary parameters.
    pub fn project_out_auxiliary(&self) -> CayleyPolytope {
        let mut out = self.clone();
        out.projected = true;
        out.construction_order.retain(|p| self.all_params[..self.free].contains(p));
        if self.projected || self.free == self.all_params.len() {
            return out;
        }
        let mut pool: Vec<Inequality> = self
            .inequalities
            .iter()
            .filter(|q| q.source != Source::Nonnegative || q.coeffs.iter().any(|c| c.0 >= self.free))
            .cloned()
            .collect();
        for k in (self.free..self.all_params.len()).rev() {
            let coef = |q: &Inequality| q.coeffs.iter().find(|c| c.0 == k).map_or(0.0, |c| c.1);
            let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for q in pool {
                let c = coef(&q);
                if c > 1e-12 {
                    pos.push(q);
                } else if c < -1e-12 {
                    neg.push(q);
                } else {
                    rest.push(q);
                }
            }
            for p in &pos {
                for n in &neg {
                    let (cp, cn) = (coef(p), -coef(n));
                    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
                    for &(i, c) in &p.coeffs {
                        *acc.entry(i).or_default() += c / cp;
                    }
                    for &(i, c) in &n.coeffs {
                        *acc.entry(i).or_default() += c / cn;
                    }
                    acc.remove(&k);
                    rest.push(Inequality {
                        coeffs: acc.into_iter().collect(),
                        rhs: p.rhs / cp + n.rhs / cn,
                        source: Source::Projection,
                    });
                }
            }
            pool = prune(rest);
        }
        pool.extend(nonnegativity(0..self.free));
        out.inequalities = pool;
        out
    }
}

fn choose(
    forest: &Forest,
    over: &BTreeMap<usize, f64>,
    slot: usize,
    (lo, hi): (f64, f64),
    mut pick: impl FnMut(f64, f64) -> f64,
) -> Result<f64> {
    match forest.slots[slot].1 {
        Term::Fixed(d) => Ok(d),
        Term::Param(i) => match over.get(&i) {
            Some(&x) => Ok(x),
            None if hi.is_finite() => Ok(if hi > lo { pick(lo, hi) } else { lo }),
            None => Err(Error::UnboundedConfigurationSpace(forest.slots[slot].0)),
        },
    }
}

type Interval = (f64, f64);

fn intersect(a: Option<Interval>, b: Option<Interval>) -> Option<Interval> {
    let (a, b) = (a?, b?);
    let (lo, hi) = (a.0.max(b.0), a.1.min(b.1));
    if lo > hi + TOL {
        None
    } else if lo > hi {
        Some((hi, hi))
    } else {
        Some((lo, hi))
    }
}

/// Values `x` admitting `y ∈ a`, `z ∈ b` with `(x, y, z)` a triangle.
fn combine(a: Option<Interval>, b: Option<Interval>) -> Option<Interval> {
    let (a, b) = (a?, b?);
    Some(((a.0 - b.1).max(b.0 - a.1).max(0.0), a.1 + b.1))
}

fn gap(x: f64, iv: Interval) -> f64 {
    (iv.0 - x).max(x - iv.1).max(0.0)
}

#[derive(Clone, Copy)]
enum Node {
    Slot(usize),
    Tri(usize),
}

/// The side/triangle incidence forest, rooted for one traversal.
struct Forest {
    slots: Vec<(VertexPair, Term)>,
    slot_of_param: Vec<usize>,
    tri_slots: Vec<[usize; 3]>,
    preorder: Vec<Node>,
    roots: Vec<usize>,
    tri_parent: Vec<usize>,
    tri_children: Vec<[usize; 2]>,
    slot_children: Vec<Vec<usize>>,
}

impl Forest {
    fn new(params: &[VertexPair], triangles: &[TriangleRecord], root: Option<usize>) -> Forest {
        let mut slots = Vec::new();
        let mut index: BTreeMap<VertexPair, usize> = BTreeMap::new();
        let mut intern = |p: VertexPair, t: Term, slots: &mut Vec<(VertexPair, Term)>| {
            *index.entry(p).or_insert_with(|| {
                slots.push((p, t));
                slots.len() - 1
            })
        };
        let tri_slots: Vec<[usize; 3]> = triangles
            .iter()
            .map(|t| [0, 1, 2].map(|k| intern(t.sides[k], t.terms[k], &mut slots)))
            .collect();
        let slot_of_param: Vec<usize> =
            params.iter().enumerate().map(|(i, &p)| intern(p, Term::Param(i), &mut slots)).collect();
        let mut incident = vec![Vec::new(); slots.len()];
        for (t, ss) in tri_slots.iter().enumerate() {
            for &s in ss {
                incident[s].push(t);
            }
        }
        let mut f = Forest {
            slot_children: vec![Vec::new(); slots.len()],
            tri_parent: vec![usize::MAX; tri_slots.len()],
            tri_children: vec![[0, 0]; tri_slots.len()],
            slots,
            slot_of_param,
            tri_slots,
            preorder: Vec::new(),
            roots: Vec::new(),
        };
        let mut seen = vec![false; f.slots.len()];
        let starts: Vec<usize> = root
            .map(|i| f.slot_of_param[i])
            .into_iter()
            .chain(f.slot_of_param.iter().copied())
            .chain(0..f.slots.len())
            .collect();
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            f.roots.push(s);
            let mut stack = vec![Node::Slot(s)];
            while let Some(node) = stack.pop() {
                f.preorder.push(node);
                match node {
                    Node::Slot(s) => {
                        for &t in &incident[s] {
                            if f.tri_parent[t] == usize::MAX {
                                f.tri_parent[t] = s;
                                f.slot_children[s].push(t);
                                stack.push(Node::Tri(t));
                            }
                        }
                    }
                    Node::Tri(t) => {
                        let kids: Vec<usize> = f.tri_slots[t].iter().copied().filter(|&c| c != f.tri_parent[t]).collect();
                        f.tri_children[t] = [kids[0], kids[1]];
                        for &c in &kids {
                            debug_assert!(!seen[c], "triangle sides form a forest");
                            seen[c] = true;
                            stack.push(Node::Slot(c));
                        }
                    }
                }
            }
        }
        f
    }

    fn base(&self, slot: usize, over: &BTreeMap<usize, f64>) -> Option<Interval> {
        match self.slots[slot].1 {
            Term::Fixed(d) => Some((d, d)),
            Term::Param(i) => Some(over.get(&i).map_or((0.0, f64::INFINITY), |&x| (x, x))),
        }
    }

    /// For each slot, the interval allowed by the triangles below it.
    fn upward(&self, over: &BTreeMap<usize, f64>) -> Vec<Option<Interval>> {
        let mut up = vec![None; self.slots.len()];
        let mut tri_up = vec![None; self.tri_slots.len()];
        for &node in self.preorder.iter().rev() {
            match node {
                Node::Tri(t) => {
                    let [a, b] = self.tri_children[t];
                    tri_up[t] = combine(up[a], up[b]);
                }
                Node::Slot(s) => {
                    up[s] = self.slot_children[s].iter().fold(self.base(s, over), |acc, &t| intersect(acc, tri_up[t]));
                }
            }
        }
        up
    }

    fn feasible(&self, up: &[Option<Interval>]) -> bool {
        self.roots.iter().all(|&r| up[r].is_some())
    }

    fn check_roots(&self, up: &[Option<Interval>]) -> Result<()> {
        match self.roots.iter().find(|&&r| up[r].is_none()) {
            None => Ok(()),
            Some(&r) => Err(Error::EmptyConfigurationSpace(format!("the component containing {}", self.slots[r].0))),
        }
    }

    /// Assigns every slot top-down; `pick` chooses within the exact
    /// conditional interval.
    fn downward(
        &self,
        up: &[Option<Interval>],
        mut pick: impl FnMut(usize, Interval) -> Result<f64>,
    ) -> Result<Vec<f64>> {
        let mut vals = vec![f64::NAN; self.slots.len()];
        let empty = |s: usize| Error::EmptyConfigurationSpace(format!("conditional interval of {}", self.slots[s].0));
        for &node in &self.preorder {
            match node {
                Node::Slot(s) if self.roots.contains(&s) => {
                    vals[s] = pick(s, up[s].ok_or_else(|| empty(s))?)?;
                }
                Node::Slot(_) => {}
                Node::Tri(t) => {
                    let x = vals[self.tri_parent[t]];
                    let [a, b] = self.tri_children[t];
                    let ib = up[b].ok_or_else(|| empty(b))?;
                    let ia = intersect(up[a], Some((gap(x, ib), x + ib.1))).ok_or_else(|| empty(a))?;
                    let y = pick(a, ia)?;
                    vals[a] = y;
                    let ib = intersect(up[b], Some(((x - y).abs(), x + y))).ok_or_else(|| empty(b))?;
                    vals[b] = pick(b, ib)?;
                }
            }
        }
        Ok(vals)
    }

    fn point(&self, vals: &[f64], params: &[VertexPair], keep: usize) -> CayleyPoint {
        CayleyPoint::new((0..keep).map(|i| (params[i], vals[self.slot_of_param[i]])))
    }

    fn param_order(&self, params: &[VertexPair]) -> Vec<VertexPair> {
        self.preorder
            .iter()
            .filter_map(|n| match *n {
                Node::Slot(s) => match self.slots[s].1 {
                    Term::Param(i) => Some(params[i]),
                    Term::Fixed(_) => None,
                },
                Node::Tri(_) => None,
            })
            .collect()
    }
}
