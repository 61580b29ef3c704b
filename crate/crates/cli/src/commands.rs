//! Subcommand implementations. Each returns what to print and the exit code.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use cayley_core::cayley::{polytope_description, CayleyPoint, CayleyPolytope, Source};
use cayley_core::characterize::{
    admits_efficient_space, check_parameter_set, check_parameter_set_interval, single_interval_nonedge,
    subdivide_for_intervals, universal_inherence,
};
use cayley_core::graph::{decompose_all, is_k_tree, is_partial_two_tree, laman_classify};
use cayley_core::oracle::oracle_report;
use cayley_core::realize::{enumerate_branches, realize_from_config, realize_k_tree, verify_realization, Realization};
use cayley_core::witness::{base_case_witness_2d, three_d_witness};
use cayley_core::{Edcs, Error, Graph, VertexPair};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::document::{DocumentError, EdcsDocument, Names};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FALSE: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cayley", version, about = "Cayley configuration spaces of distance constraint systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Laman class, 2-sum decomposition and the single-interval verdicts.
    Analyze {
        /// EDCS document (JSON).
        path: PathBuf,
        /// Overrides the document's dimension.
        #[arg(long)]
        dim: Option<usize>,
        /// A non-edge `u,v` to test on its own.
        #[arg(long, conflicts_with = "params_file")]
        nonedge: Option<String>,
        /// JSON list of `[u, v]` pairs to test as a parameter set.
        #[arg(long)]
        params_file: Option<PathBuf>,
    },
    /// Minimal 2-sum components of every connected component.
    Decompose { path: PathBuf },
    /// A set of non-edges whose configuration space is a convex polytope.
    Complete { path: PathBuf },
    /// Triangle-inequality description over the document's non-edges.
    Polytope {
        path: PathBuf,
        /// Eliminate completion pairs.
        #[arg(long)]
        project: bool,
    },
    /// Points of the configuration space.
    Sample {
        path: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, env = "CAYLEY_SEED", default_value_t = 0)]
        seed: u64,
        /// Draw a planar realization of each point.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Coordinates for a k-tree system or for a configuration.
    Realize {
        path: PathBuf,
        /// JSON object mapping `"u,v"` to a length.
        #[arg(long)]
        config: Option<PathBuf>,
        /// JSON object mapping vertex names to coordinates.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Every reflection choice of a k-tree system.
        #[arg(long)]
        all_branches: bool,
        /// Draw the realizations (2D only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// A length assignment whose configuration space is disconnected.
    Witness {
        path: PathBuf,
        /// Target `u,v` in 2D; defaults to the document's only non-edge.
        #[arg(long)]
        nonedge: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Brute-force value set of one non-edge.
    Oracle {
        path: PathBuf,
        /// Defaults to the document's only non-edge.
        #[arg(long)]
        nonedge: Option<String>,
        /// Grid points per swept completion pair.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
}

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn json(v: Value, code: i32) -> Outcome {
        Outcome { stdout: serde_json::to_string_pretty(&v).expect("values serialize") + "\n", stderr: String::new(), code }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Outcome {
        Outcome { stdout: String::new(), stderr: msg.into() + "\n", code }
    }

    fn note(mut self, msg: impl AsRef<str>) -> Outcome {
        self.stderr.push_str(msg.as_ref());
        self.stderr.push('\n');
        self
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPolytopeRepresentable(_) => EXIT_FALSE,
        Error::EmptyConfigurationSpace(_)
        | Error::UnboundedConfigurationSpace(_)
        | Error::NoWitness
        | Error::NotRealizable { .. }
        | Error::ConfigOutsideSpace => EXIT_INFEASIBLE,
        _ => EXIT_INPUT,
    }
}

enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = std::result::Result<Outcome, Failure>;

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Analyze { path, dim, nonedge, params_file } => analyze(&path, dim, nonedge, params_file),
        Command::Decompose { path } => decompose(&path),
        Command::Complete { path } => complete(&path),
        Command::Polytope { path, project } => polytope(&path, project),
        Command::Sample { path, count, seed, svg } => sample(&path, count, seed, svg),
        Command::Realize { path, config, base, all_branches, svg } => realize(&path, config, base, all_branches, svg),
        Command::Witness { path, nonedge, dim } => witness(&path, nonedge, dim),
        Command::Oracle { path, nonedge, grid } => oracle(&path, nonedge, grid),
    };
    match result {
        Ok(o) => o,
        Err(Failure::Input(msg)) => Outcome::fail(EXIT_INPUT, format!("error: {msg}")),
        Err(Failure::Core(e)) => Outcome::fail(exit_code(&e), format!("error: {e}")),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<(EdcsDocument, Edcs, Names), Failure> {
    let doc = EdcsDocument::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let (edcs, names) = doc.to_edcs()?;
    Ok((doc, edcs, names))
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pair_json(names: &Names, p: VertexPair) -> Value {
    json!(names.pair(p))
}

fn graph_json(g: &Graph, names: &Names) -> Value {
    json!({
        "vertices": g.vertices().map(|v| names.name(v)).collect::<Vec<_>>(),
        "edges": g.edges().map(|e| pair_json(names, e)).collect::<Vec<_>>(),
    })
}

/// The pair to study: `--nonedge`, else the document's only non-edge.
fn chosen_nonedge(flag: Option<String>, e: &Edcs, names: &Names) -> std::result::Result<VertexPair, Failure> {
    match flag {
        Some(s) => Ok(names.parse_pair(&s)?),
        None => match e.params().iter().collect::<Vec<_>>()[..] {
            [&p] => Ok(p),
            _ => Err(Failure::Input("pass --nonedge u,v (the document does not list exactly one non-edge)".into())),
        },
    }
}

fn analyze(path: &Path, dim: Option<usize>, nonedge: Option<String>, params_file: Option<PathBuf>) -> Run {
    let (_, e, names) = load(path)?;
    let g = e.graph();
    let dim = dim.unwrap_or(e.dim());
    let laman = laman_classify(g).ok().map(|c| {
        json!({
            "tag": c.tag,
            "dof": c.dof,
            "rank": c.rank,
            "dependent": c.dependent.iter().map(|&p| pair_json(&names, p)).collect::<Vec<_>>(),
        })
    });
    let decomposition: Vec<Value> = decompose_all(g)
        .iter()
        .map(|d| {
            json!({
                "components": d.components.len(),
                "non_partial_two_tree": d.components.iter()
                    .filter(|c| !is_partial_two_tree(&c.graph))
                    .map(|c| graph_json(&c.graph, &names))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();

    let params: Option<BTreeSet<VertexPair>> = match params_file {
        Some(p) => Some(parse_pair_list(&read_json(&p)?, &names)?),
        None if nonedge.is_none() && !e.params().is_empty() => Some(e.params().clone()),
        None => None,
    };
    let verdict = if let Some(s) = nonedge {
        if dim != 2 {
            return Err(Failure::Input("--nonedge verdicts are planar; use --dim 2".into()));
        }
        let f = names.parse_pair(&s)?;
        let r = single_interval_nonedge(g, f)?;
        json!({
            "kind": "single_interval",
            "nonedge": pair_json(&names, f),
            "holds": r.holds,
            "offending": r.offending.iter().map(|c| graph_json(c, &names)).collect::<Vec<_>>(),
        })
    } else if let Some(params) = params {
        let r = if e.has_intervals() { check_parameter_set_interval(&e, &params)? } else { check_parameter_set(g, &params)? };
        json!({
            "kind": "parameter_set",
            "parameters": params.iter().map(|&p| pair_json(&names, p)).collect::<Vec<_>>(),
            "holds": r.always_single_interval(),
            "always_single_interval": r.always_single_interval(),
            "always_convex": r.always_convex(),
            "always_linear_polytope": r.always_linear_polytope(),
            "generically_complete": r.generically_complete,
            "offending": r.witnesses.iter().map(|w| json!({
                "parameter": pair_json(&names, w.param),
                "component": graph_json(&w.component, &names),
            })).collect::<Vec<_>>(),
        })
    } else {
        json!({ "kind": "universal_inherence", "dim": dim, "holds": universal_inherence(g, dim)? })
    };
    let holds = verdict["holds"].as_bool().unwrap_or(false);
    let out = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "dim": dim,
        "laman": laman,
        "decomposition": decomposition,
        "verdict": verdict,
    });
    Ok(Outcome::json(out, if holds { EXIT_OK } else { EXIT_FALSE }))
}

fn parse_pair_list(v: &Value, names: &Names) -> std::result::Result<BTreeSet<VertexPair>, Failure> {
    let bad = || Failure::Input("parameter file must be a JSON list of [u, v] name pairs".into());
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|item| match item.as_array().map(|a| a.iter().map(Value::as_str).collect::<Vec<_>>()).as_deref() {
            Some([Some(a), Some(b)]) => Ok(names.parse_pair(&format!("{a},{b}"))?),
            _ => Err(bad()),
        })
        .collect()
}

fn decompose(path: &Path) -> Run {
    let (_, e, names) = load(path)?;
    let out: Vec<Value> = decompose_all(e.graph())
        .iter()
        .map(|d| {
            json!({
                "components": d.components.iter().map(|c| json!({
                    "vertices": c.graph.vertices().map(|v| names.name(v)).collect::<Vec<_>>(),
                    "edges": c.real_edges().map(|p| pair_json(&names, p)).collect::<Vec<_>>(),
                    "virtual_edges": c.virtual_edges.iter().map(|&p| pair_json(&names, p)).collect::<Vec<_>>(),
                    "minimal": c.minimal,
                    "partial_two_tree": is_partial_two_tree(&c.graph),
                })).collect::<Vec<_>>(),
                "tree": d.tree.iter().map(|(i, j, h)| json!({
                    "between": [i, j],
                    "hinge": match h {
                        cayley_core::graph::Hinge::Vertex(v) => json!({ "vertex": names.name(*v) }),
                        cayley_core::graph::Hinge::Edge(p) => json!({ "edge": pair_json(&names, *p) }),
                    },
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Outcome::json(json!({ "decompositions": out }), EXIT_OK))
}

fn complete(path: &Path) -> Run {
    let (_, e, names) = load(path)?;
    Ok(match admits_efficient_space(e.graph())? {
        Some((f, report)) => Outcome::json(
            json!({
                "suggested_f": f.iter().map(|&p| pair_json(&names, p)).collect::<Vec<_>>(),
                "generically_complete": report.generically_complete,
            }),
            EXIT_OK,
        ),
        None => Outcome::json(json!({ "suggested_f": "none", "generically_complete": false }), EXIT_FALSE),
    })
}

/// Interval-weighted systems are subdivided first; new vertices get
/// generated names.
fn point_system(e: &Edcs) -> Result<Edcs, Error> {
    if e.has_intervals() {
        Ok(subdivide_for_intervals(e, false)?.edcs)
    } else {
        Ok(e.clone())
    }
}

fn build_polytope(e: &Edcs) -> std::result::Result<CayleyPolytope, Failure> {
    if e.params().is_empty() {
        return Err(Failure::Input("the document lists no non-edges to use as parameters".into()));
    }
    Ok(polytope_description(&point_system(e)?)?)
}

fn polytope(path: &Path, project: bool) -> Run {
    let (_, e, names) = load(path)?;
    let mut poly = build_polytope(&e)?;
    if project {
        poly = poly.project_out_auxiliary();
    }
    let name = |v| names.name(v);
    let mut ranges = Vec::new();
    let mut empty = !poly.infeasible_components().is_empty();
    for &p in poly.free_parameters() {
        match poly.range(p)? {
            Some((lo, hi)) => ranges.push(json!({ "pair": pair_json(&names, p), "lo": lo, "hi": hi })),
            None => empty = true,
        }
    }
    let out = json!({
        "parameters": poly.parameters().iter().map(|&p| pair_json(&names, p)).collect::<Vec<_>>(),
        "free": poly.free_parameters().iter().map(|&p| pair_json(&names, p)).collect::<Vec<_>>(),
        "auxiliary": poly.auxiliary_parameters().iter().map(|&p| pair_json(&names, p)).collect::<Vec<_>>(),
        "projected": poly.is_projected(),
        "inequalities": poly.inequalities().iter().map(|q| q.render(poly.parameters(), &name)).collect::<Vec<_>>(),
        "triangle_rows": poly.inequalities().iter().filter(|q| matches!(q.source, Source::Triangle { .. })).count(),
        "ranges": ranges,
        "status": poly.status(),
        "conditional_components": poly.conditional_components().len(),
        "empty": empty,
    });
    let o = Outcome::json(out, if empty { EXIT_INFEASIBLE } else { EXIT_OK });
    Ok(if empty { o.note("the configuration space is empty") } else { o })
}

fn point_json(x: &CayleyPoint, names: &Names) -> Value {
    let m: Map<String, Value> =
        x.values.iter().map(|(&p, &v)| (names.pair(p).join(","), json!(v))).collect();
    Value::Object(m)
}

fn sample(path: &Path, count: usize, seed: u64, svg_path: Option<PathBuf>) -> Run {
    let (_, e, names) = load(path)?;
    let poly = build_polytope(&e)?;
    let points = poly.sample(count, seed)?;
    let mut out = Outcome::json(
        json!({ "seed": seed, "points": points.iter().map(|x| point_json(x, &names)).collect::<Vec<_>>() }),
        EXIT_OK,
    );
    if let Some(svg_path) = svg_path {
        let sys = point_system(&e)?;
        let mut reals = Vec::new();
        for x in &points {
            match realize_from_config(&sys, x, None) {
                Ok(r) => reals.push(r),
                Err(err) => out = out.note(format!("skipping a sample in the drawing: {err}")),
            }
        }
        write_svg(&svg_path, sys.graph(), &names, &reals)?;
    }
    Ok(out)
}

fn write_svg(path: &Path, g: &Graph, names: &Names, reals: &[Realization]) -> std::result::Result<(), Failure> {
    if reals.iter().any(|r| r.dim != 2) {
        return Err(Failure::Input("SVG output is for planar realizations".into()));
    }
    std::fs::write(path, svg::render(g, names, reals)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_config(v: &Value, names: &Names) -> std::result::Result<CayleyPoint, Failure> {
    let bad = || Failure::Input("configuration must be a JSON object mapping \"u,v\" to a length".into());
    let obj = v.as_object().ok_or_else(bad)?;
    let mut vals = Vec::new();
    for (k, x) in obj {
        vals.push((names.parse_pair(k)?, x.as_f64().ok_or_else(bad)?));
    }
    Ok(CayleyPoint::new(vals))
}

fn parse_base(v: &Value, names: &Names, dim: usize) -> std::result::Result<Realization, Failure> {
    let bad = || Failure::Input(format!("base must map vertex names to {dim} coordinates"));
    let obj = v.as_object().ok_or_else(bad)?;
    let mut points = BTreeMap::new();
    for (k, c) in obj {
        let id = names.id(k).ok_or_else(|| Failure::Input(format!("base: undeclared vertex {k:?}")))?;
        let coords: Vec<f64> = c.as_array().ok_or_else(bad)?.iter().map(Value::as_f64).collect::<Option<_>>().ok_or_else(bad)?;
        if coords.len() != dim {
            return Err(bad());
        }
        points.insert(id, coords);
    }
    Ok(Realization { dim, points, branches: vec![], frame: vec![] })
}

fn realization_json(r: &Realization, names: &Names) -> Value {
    let pts: Map<String, Value> = r.points.iter().map(|(&v, c)| (names.name(v), json!(c))).collect();
    json!({ "points": pts, "branches": r.branches })
}

fn realize(path: &Path, config: Option<PathBuf>, base: Option<PathBuf>, all: bool, svg_path: Option<PathBuf>) -> Run {
    let (_, e, names) = load(path)?;
    let base = base.map(|p| read_json(&p).and_then(|v| parse_base(&v, &names, e.dim()))).transpose()?;
    let sys = point_system(&e)?;
    let reals: Vec<Realization> = if all {
        let en = enumerate_branches(&sys, 1 << 16)?;
        en.realizations
    } else if let Some(c) = config {
        let x = parse_config(&read_json(&c)?, &names)?;
        vec![realize_from_config(&sys, &x, base.as_ref())?]
    } else if sys.params().is_empty() && is_k_tree(sys.graph(), sys.dim()) {
        vec![realize_k_tree(&sys, None)?]
    } else {
        vec![realize_from_config(&sys, &CayleyPoint::default(), base.as_ref())?]
    };
    let checks = reals
        .iter()
        .map(|r| verify_realization(r, &sys, 1e-9))
        .collect::<Result<Vec<_>, _>>()?;
    let max_error = checks.iter().map(|c| c.max_error).fold(0.0, f64::max);
    let out = json!({
        "realizations": reals.iter().map(|r| realization_json(r, &names)).collect::<Vec<_>>(),
        "max_error": max_error,
        "pass": checks.iter().all(|c| c.pass),
    });
    if let Some(p) = svg_path {
        write_svg(&p, sys.graph(), &names, &reals)?;
    }
    Ok(Outcome::json(out, EXIT_OK))
}

fn witness(path: &Path, nonedge: Option<String>, dim: Option<usize>) -> Run {
    let (_, e, names) = load(path)?;
    let dim = dim.unwrap_or(e.dim());
    let w = match dim {
        2 => base_case_witness_2d(e.graph(), chosen_nonedge(nonedge, &e, &names)?)?,
        3 => three_d_witness(e.graph())?,
        d => return Err(Error::UnsupportedDimension(d).into()),
    };
    let mut doc = EdcsDocument::from_edcs(&w.edcs, &names);
    doc.expected_values = Some(w.expected_values.clone());
    Ok(Outcome { stdout: doc.to_json() + "\n", stderr: String::new(), code: EXIT_OK })
}

fn oracle(path: &Path, nonedge: Option<String>, grid: usize) -> Run {
    let (_, e, names) = load(path)?;
    let f = chosen_nonedge(nonedge, &e, &names)?;
    let r = oracle_report(&e, f, grid)?;
    let out = json!({
        "nonedge": pair_json(&names, f),
        "intervals": r.values.intervals(),
        "swept": r.swept.iter().map(|&p| pair_json(&names, p)).collect::<Vec<_>>(),
        "grid_points": r.grid_points,
        "leaves": r.leaves,
        "merge_gap": r.merge_gap,
    });
    Ok(Outcome::json(out, EXIT_OK))
}
