//! Vertex functions, edge functions and edge orientations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use crate::scalar::Scalar;

/// A scalar-valued function on a finite set of vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction<S> {
    values: BTreeMap<String, S>,
}

impl<S: Scalar> Default for VertexFunction<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> VertexFunction<S> {
    pub fn new() -> Self {
        VertexFunction {
            values: BTreeMap::new(),
        }
    }

    pub fn from_fn<'a, I>(vertices: I, f: impl Fn(&str) -> S) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        vertices
            .into_iter()
            .map(|v| (v.to_string(), f(v)))
            .collect()
    }

    pub fn constant<'a, I>(vertices: I, c: S) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        Self::from_fn(vertices, |_| c.clone())
    }

    pub fn indicator<'a, I>(vertices: I, at: &str) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        Self::from_fn(vertices, |v| if v == at { S::one() } else { S::zero() })
    }

    pub fn insert(&mut self, x: impl Into<String>, value: S) {
        self.values.insert(x.into(), value);
    }

    pub fn get(&self, x: &str) -> Option<&S> {
        self.values.get(x)
    }

    pub fn value(&self, x: &str) -> Result<&S> {
        self.values
            .get(x)
            .ok_or_else(|| Error::MissingValue(x.to_string()))
    }

    /// Value with finitely-supported semantics: absent means zero.
    pub fn value_or_zero(&self, x: &str) -> S {
        self.values.get(x).cloned().unwrap_or_else(S::zero)
    }

    pub fn domain(&self) -> VertexSet {
        self.values.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &S)> + '_ {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Vertices carrying a nonzero value.
    pub fn support(&self) -> VertexSet {
        self.values
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn restrict(&self, set: &VertexSet) -> Self {
        self.values
            .iter()
            .filter(|(k, _)| set.contains(*k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        self.values.iter().map(|(k, v)| (k.clone(), f(v))).collect()
    }

    pub fn sup_abs(&self) -> S {
        self.values
            .values()
            .map(|v| v.abs())
            .fold(S::zero(), S::max_of)
    }

    /// Index-aligned view for a graph; vertices outside the graph are ignored.
    pub(crate) fn align(&self, g: &WeightedGraph<S>) -> Vec<Option<S>> {
        g.vertices().map(|x| self.values.get(x).cloned()).collect()
    }
}

impl<S> FromIterator<(String, S)> for VertexFunction<S> {
    fn from_iter<T: IntoIterator<Item = (String, S)>>(iter: T) -> Self {
        VertexFunction {
            values: iter.into_iter().collect(),
        }
    }
}

/// A function on the edges of one graph, aligned with its edge indices.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFunction<S> {
    values: Vec<S>,
}

impl<S: Scalar> EdgeFunction<S> {
    pub fn new(values: Vec<S>) -> Self {
        EdgeFunction { values }
    }

    pub fn zeros(g: &WeightedGraph<S>) -> Self {
        EdgeFunction {
            values: vec![S::zero(); g.edge_count()],
        }
    }

    pub fn get(&self, e: usize) -> &S {
        &self.values[e]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A direction for every edge: `forward[e]` means the edge runs from its
/// smaller to its larger vertex identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    forward: Vec<bool>,
}

impl Orientation {
    pub fn canonical<S: Scalar>(g: &WeightedGraph<S>) -> Self {
        Orientation {
            forward: vec![true; g.edge_count()],
        }
    }

    /// Directs every edge so that `f(end) >= f(start)`; ties keep the
    /// canonical direction.
    pub fn adapted<S: Scalar>(g: &WeightedGraph<S>, f: &VertexFunction<S>) -> Result<Self> {
        let forward = g
            .edges()
            .map(|e| {
                let (fu, fv) = (f.value(e.u)?, f.value(e.v)?);
                Ok(fv >= fu)
            })
            .collect::<Result<_>>()?;
        Ok(Orientation { forward })
    }

    pub fn from_flags(forward: Vec<bool>) -> Self {
        Orientation { forward }
    }

    pub fn reverse(&mut self, e: usize) {
        self.forward[e] = !self.forward[e];
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// `(start, end)` of edge `e`.
    pub fn endpoints<'g, S: Scalar>(
        &self,
        g: &'g WeightedGraph<S>,
        e: usize,
    ) -> (&'g str, &'g str) {
        let d = g.edge_data(e);
        let (a, b) = (g.id(d.u), g.id(d.v));
        if self.forward[e] {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub(crate) fn endpoint_idx<S: Scalar>(&self, g: &WeightedGraph<S>, e: usize) -> (usize, usize) {
        let d = g.edge_data(e);
        if self.forward[e] {
            (d.u, d.v)
        } else {
            (d.v, d.u)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adapted_orientation_points_uphill() {
        let g =
            WeightedGraph::from_edges([("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)]).unwrap();
        let f: VertexFunction<f64> = VertexFunction::from_fn(g.vertices(), |v| match v {
            "a" => 3.0,
            "b" => 1.0,
            _ => 1.0,
        });
        let o = Orientation::adapted(&g, &f).unwrap();
        for e in 0..g.edge_count() {
            let (s, t) = o.endpoints(&g, e);
            assert!(f.value(t).unwrap() >= f.value(s).unwrap());
        }
        // tie b-c keeps the canonical direction
        let bc = g.edges().find(|e| e.u == "b" && e.v == "c").unwrap().index;
        assert_eq!(o.endpoints(&g, bc), ("b", "c"));
    }

    #[test]
    fn support_and_restriction() {
        let f: VertexFunction<f64> = [("a".to_string(), 0.0), ("b".to_string(), 2.0)]
            .into_iter()
            .collect();
        assert_eq!(f.support().len(), 1);
        assert_eq!(f.value_or_zero("zzz"), 0.0);
        assert!(matches!(f.value("zzz"), Err(Error::MissingValue(_))));
        assert_eq!(f.sup_abs(), 2.0);
    }
}
