//! The versioned JSON file format for distance constraint systems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use cayley_core::{Edcs, Graph, Vertex, VertexPair, Weight};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdcsDocument {
    pub format_version: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nonedges: Vec<[String; 2]>,
    pub dim: usize,
    /// Lengths the non-edges are known to attain, written by `witness`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentError {
    /// Where the problem is: a JSON position or a field path.
    pub location: String,
    pub message: String,
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for DocumentError {}

fn err(location: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError { location: location.into(), message: message.into() }
}

/// Vertex names, numbered `1..` in declaration order.
#[derive(Clone, Debug, PartialEq)]
pub struct Names {
    names: Vec<String>,
    ids: BTreeMap<String, Vertex>,
}

impl Names {
    pub fn new(names: Vec<String>) -> Result<Names, DocumentError> {
        let mut ids = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if ids.insert(n.clone(), i as Vertex + 1).is_some() {
                return Err(err(format!("vertices[{i}]"), format!("duplicate vertex name {n:?}")));
            }
        }
        Ok(Names { names, ids })
    }

    /// `v1, v2, ...` for the given ids; gaps get names too.
    pub fn numbered(max: Vertex) -> Names {
        Names::new((1..=max).map(|i| format!("v{i}")).collect()).expect("distinct")
    }

    pub fn id(&self, name: &str) -> Option<Vertex> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, v: Vertex) -> String {
        match v.checked_sub(1).and_then(|i| self.names.get(i)) {
            Some(n) => n.clone(),
            None => format!("v{v}"),
        }
    }

    pub fn pair(&self, p: VertexPair) -> [String; 2] {
        [self.name(p.u()), self.name(p.v())]
    }

    /// Parses `a,b` into a pair of declared vertices.
    pub fn parse_pair(&self, s: &str) -> Result<VertexPair, DocumentError> {
        let (a, b) = s.split_once(',').ok_or_else(|| err(s, "expected two vertex names separated by a comma"))?;
        let look = |n: &str| self.id(n.trim()).ok_or_else(|| err(s, format!("undeclared vertex {:?}", n.trim())));
        let (a, b) = (look(a)?, look(b)?);
        if a == b {
            return Err(err(s, "a pair needs two distinct vertices"));
        }
        Ok(VertexPair::new(a, b))
    }
}

impl EdcsDocument {
    pub fn parse(text: &str) -> Result<EdcsDocument, DocumentError> {
        let doc: EdcsDocument = serde_json::from_str(text)
            .map_err(|e| err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    fn validate(&self) -> Result<(), DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(err(
                "format_version",
                format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", self.format_version),
            ));
        }
        self.to_edcs().map(|_| ())
    }

    pub fn names(&self) -> Result<Names, DocumentError> {
        Names::new(self.vertices.clone())
    }

    /// Builds the constraint system; vertex `i` of the list gets id `i + 1`.
    pub fn to_edcs(&self) -> Result<(Edcs, Names), DocumentError> {
        let names = self.names()?;
        let mut graph = Graph::with_vertices(1..=self.vertices.len() as Vertex);
        let mut weights = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let at = |field: &str| format!("edges[{i}].{field}");
            let u = names.id(&e.u).ok_or_else(|| err(at("u"), format!("undeclared vertex {:?}", e.u)))?;
            let v = names.id(&e.v).ok_or_else(|| err(at("v"), format!("undeclared vertex {:?}", e.v)))?;
            if u == v {
                return Err(err(at("v"), "self-loop"));
            }
            let w = match (e.delta, e.interval) {
                (Some(d), None) => Weight::Point(d),
                (None, Some([l, r])) => Weight::Interval(l, r),
                _ => return Err(err(format!("edges[{i}]"), "exactly one of delta and interval is required")),
            };
            let p = VertexPair::new(u, v);
            if !graph.add_pair(p) {
                return Err(err(format!("edges[{i}]"), format!("duplicate edge {:?}-{:?}", e.u, e.v)));
            }
            weights.insert(p, w);
        }
        let mut params = BTreeSet::new();
        for (i, [a, b]) in self.nonedges.iter().enumerate() {
            let p = names.parse_pair(&format!("{a},{b}")).map_err(|e| err(format!("nonedges[{i}]"), e.message))?;
            params.insert(p);
        }
        let edcs = Edcs::new(graph, weights, params, self.dim).map_err(|e| err("document", e.to_string()))?;
        Ok((edcs, names))
    }

    pub fn from_edcs(e: &Edcs, names: &Names) -> EdcsDocument {
        let g = e.graph();
        let edges = e
            .weights()
            .iter()
            .map(|(p, w)| {
                let [u, v] = names.pair(*p);
                match w.as_point() {
                    Some(d) => EdgeRecord { u, v, delta: Some(d), interval: None },
                    None => EdgeRecord { u, v, delta: None, interval: Some([w.lo(), w.hi()]) },
                }
            })
            .collect();
        EdcsDocument {
            format_version: FORMAT_VERSION.into(),
            vertices: g.vertices().map(|v| names.name(v)).collect(),
            edges,
            nonedges: e.params().iter().map(|&p| names.pair(p)).collect(),
            dim: e.dim(),
            expected_values: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = r#"{
        "format_version": "1",
        "vertices": ["a", "b", "c"],
        "edges": [{"u": "a", "v": "b", "delta": 3}, {"u": "b", "v": "c", "interval": [1, 4]}],
        "nonedges": [["a", "c"]],
        "dim": 2
    }"#;

    #[test]
    fn parse_and_round_trip() {
        let doc = EdcsDocument::parse(P3).unwrap();
        let (e, names) = doc.to_edcs().unwrap();
        assert_eq!(e.params().len(), 1);
        assert!(e.has_intervals());
        let again = EdcsDocument::from_edcs(&e, &names);
        assert_eq!(again, doc);
        assert_eq!(EdcsDocument::parse(&again.to_json()).unwrap(), doc);
    }

    #[test]
    fn diagnostics() {
        let bad = P3.replace(r#""v": "c", "interval""#, r#""v": "z", "interval""#);
        assert_eq!(EdcsDocument::parse(&bad).unwrap_err().location, "edges[1].v");
        let both = P3.replace(r#""delta": 3"#, r#""delta": 3, "interval": [1, 2]"#);
        assert_eq!(EdcsDocument::parse(&both).unwrap_err().location, "edges[0]");
        let version = P3.replace(r#""format_version": "1""#, r#""format_version": "9""#);
        assert_eq!(EdcsDocument::parse(&version).unwrap_err().location, "format_version");
        assert!(EdcsDocument::parse("{\n\"vertices\": [").unwrap_err().location.starts_with("line 2"));
        let dup = P3.replace(r#"["a", "b", "c"]"#, r#"["a", "b", "a"]"#);
        assert_eq!(EdcsDocument::parse(&dup).unwrap_err().location, "vertices[2]");
    }
}
