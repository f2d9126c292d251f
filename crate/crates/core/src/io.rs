//! JSON documents: graphs, vertex functions, domains and Dirichlet problems.
//!
//! ```json
//! {"scalar": "rational", "edges": [{"u": "0", "v": "1", "w": "1/2"}],
//!  "truncated": ["1"], "marks": {"p": "0"}}
//! {"values": {"0": "3/4", "1": 2}}
//! {"interior": ["0"]}
//! {"graph": "g.json", "domain": {"interior": ["0"]}, "boundary": {"1": 0}, "source": {}}
//! ```
//!
//! `truncated` lists halo vertices of a materialized ball; `marks` names
//! distinguished vertices such as a ball's center or a gluing point. A
//! problem's `graph` is either inline or a path relative to the problem file.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::{GraphBuilder, VertexSet, WeightedGraph};
use crate::scalar::{Scalar, ScalarMode};

pub fn parse_json(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json(path: &Path) -> Result<Value> {
    parse_json(&std::fs::read_to_string(path)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn field<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Invalid(format!("{what} JSON: missing `{key}`")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Invalid(format!("{what} JSON: expected an object")))
}

fn str_list(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| Error::Invalid(format!("{what}: expected an array of vertex ids")))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Invalid(format!("{what}: vertex ids must be strings")))
        })
        .collect()
}

/// The `scalar` field of a document, if present.
pub fn scalar_mode(v: &Value) -> Result<Option<ScalarMode>> {
    match v.get("scalar") {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(ScalarMode::parse(s)?)),
        Some(other) => Err(Error::Invalid(format!(
            "`scalar` must be a string, got {other}"
        ))),
    }
}

#[derive(Debug, Clone)]
pub struct GraphDoc<S> {
    pub graph: WeightedGraph<S>,
    pub marks: BTreeMap<String, String>,
}

impl<S: Scalar> GraphDoc<S> {
    pub fn new(graph: WeightedGraph<S>) -> Self {
        GraphDoc {
            graph,
            marks: BTreeMap::new(),
        }
    }

    pub fn mark(&self, name: &str) -> Option<&str> {
        self.marks.get(name).map(String::as_str)
    }
}

pub fn graph_from_value<S: Scalar>(v: &Value) -> Result<GraphDoc<S>> {
    object(v, "graph")?;
    let edges = field(v, "edges", "graph")?
        .as_array()
        .ok_or_else(|| Error::Invalid("graph JSON: `edges` must be an array".into()))?;
    let mut b = GraphBuilder::new();
    for e in edges {
        let get = |k: &str| -> Result<&str> {
            field(e, k, "edge")?
                .as_str()
                .ok_or_else(|| Error::Invalid(format!("edge JSON: `{k}` must be a string")))
        };
        b.add_edge(get("u")?, get("v")?, S::from_json(field(e, "w", "edge")?)?)?;
    }
    if let Some(t) = v.get("truncated") {
        for x in str_list(t, "truncated")? {
            b.mark_truncated(&x);
        }
    }
    let graph = b.build()?;
    let mut marks = BTreeMap::new();
    if let Some(m) = v.get("marks") {
        for (name, id) in object(m, "marks")? {
            let id = id
                .as_str()
                .ok_or_else(|| Error::Invalid("marks: vertex ids must be strings".into()))?;
            graph.vertex_measure(id)?;
            marks.insert(name.clone(), id.to_string());
        }
    }
    Ok(GraphDoc { graph, marks })
}

pub fn graph_to_value<S: Scalar>(g: &WeightedGraph<S>, marks: &BTreeMap<String, String>) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .map(|e| json!({"u": e.u, "v": e.v, "w": e.weight.to_json()}))
        .collect();
    let mut doc = json!({"scalar": S::MODE.as_str(), "edges": edges});
    let truncated: Vec<&str> = g.truncated().collect();
    if !truncated.is_empty() {
        doc["truncated"] = json!(truncated);
    }
    if !marks.is_empty() {
        doc["marks"] = json!(marks);
    }
    doc
}

pub fn function_from_value<S: Scalar>(v: &Value) -> Result<VertexFunction<S>> {
    object(v, "function")?;
    object(field(v, "values", "function")?, "function values")?
        .iter()
        .map(|(k, x)| Ok((k.clone(), S::from_json(x)?)))
        .collect()
}

pub fn function_to_value<S: Scalar>(f: &VertexFunction<S>) -> Value {
    let values: Map<String, Value> = f
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_json()))
        .collect();
    json!({"scalar": S::MODE.as_str(), "values": values})
}

pub fn domain_from_value(v: &Value) -> Result<VertexSet> {
    object(v, "domain")?;
    Ok(str_list(field(v, "interior", "domain")?, "interior")?
        .into_iter()
        .collect())
}

pub fn domain_to_value(interior: &VertexSet) -> Value {
    json!({"interior": interior})
}

#[derive(Debug, Clone)]
pub struct ProblemDoc<S> {
    pub graph: GraphDoc<S>,
    pub interior: VertexSet,
    pub boundary: VertexFunction<S>,
    pub source: Option<VertexFunction<S>>,
}

fn values_map<S: Scalar>(v: &Value, what: &str) -> Result<VertexFunction<S>> {
    object(v, what)?
        .iter()
        .map(|(k, x)| Ok((k.clone(), S::from_json(x)?)))
        .collect()
}

/// Parses a problem document; a string `graph` is resolved against `base`.
pub fn problem_from_value<S: Scalar>(v: &Value, base: &Path) -> Result<ProblemDoc<S>> {
    object(v, "problem")?;
    let graph = match field(v, "graph", "problem")? {
        Value::String(path) => graph_from_value(&read_json(&base.join(path))?)?,
        inline => graph_from_value(inline)?,
    };
    let interior = domain_from_value(field(v, "domain", "problem")?)?;
    let boundary = values_map(field(v, "boundary", "problem")?, "boundary")?;
    let source = v
        .get("source")
        .map(|s| values_map(s, "source"))
        .transpose()?;
    Ok(ProblemDoc {
        graph,
        interior,
        boundary,
        source,
    })
}
