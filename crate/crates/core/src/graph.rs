//! Weighted graph model and its combinatorial metric.
//!
//! Vertices are opaque strings, stored in sorted order so every traversal and
//! summation is deterministic. Edges are unordered pairs with strictly
//! positive weight; a self-loop counts once toward the vertex measure.
//!
//! A graph may carry a set of *truncated* vertices: those whose neighborhood
//! in the underlying (possibly infinite) graph is only partially present.
//! Materialized balls mark their outer halo this way, and every operation
//! that needs a full neighborhood refuses to evaluate there.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type VertexSet = BTreeSet<String>;

#[derive(Debug, Clone)]
pub(crate) struct EdgeData<S> {
    pub(crate) u: usize,
    pub(crate) v: usize,
    pub(crate) weight: S,
}

/// Borrowed view of one stored edge. `u <= v` in vertex order.
#[derive(Debug, Clone, Copy)]
pub struct Edge<'a, S> {
    pub index: usize,
    pub u: &'a str,
    pub v: &'a str,
    pub weight: &'a S,
}

impl<S> Edge<'_, S> {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Debug, Clone)]
pub struct WeightedGraph<S> {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// (neighbor, edge index); a self-loop appears once.
    adj: Vec<Vec<(usize, usize)>>,
    edges: Vec<EdgeData<S>>,
    measure: Vec<S>,
    truncated: Vec<bool>,
}

/// Accumulates edges, rejecting duplicates and non-positive weights.
#[derive(Debug, Clone)]
pub struct GraphBuilder<S> {
    edges: BTreeMap<(String, String), S>,
    truncated: VertexSet,
}

impl<S: Scalar> Default for GraphBuilder<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> GraphBuilder<S> {
    pub fn new() -> Self {
        GraphBuilder {
            edges: BTreeMap::new(),
            truncated: VertexSet::new(),
        }
    }

    pub fn add_edge(&mut self, u: &str, v: &str, weight: S) -> Result<&mut Self> {
        let key = if u <= v {
            (u.to_string(), v.to_string())
        } else {
            (v.to_string(), u.to_string())
        };
        if weight.partial_cmp(&S::zero()) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::NonPositiveWeight { u: key.0, v: key.1 });
        }
        if self.edges.contains_key(&key) {
            return Err(Error::DuplicateEdge { u: key.0, v: key.1 });
        }
        self.edges.insert(key, weight);
        Ok(self)
    }

    pub fn mark_truncated(&mut self, v: &str) -> &mut Self {
        self.truncated.insert(v.to_string());
        self
    }

    pub fn build(self) -> Result<WeightedGraph<S>> {
        let mut names = VertexSet::new();
        for (u, v) in self.edges.keys() {
            names.insert(u.clone());
            names.insert(v.clone());
        }
        if let Some(t) = self.truncated.iter().find(|t| !names.contains(*t)) {
            return Err(Error::UnknownVertex(t.clone()));
        }
        let ids: Vec<String> = names.into_iter().collect();
        let index: HashMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        let mut measure = vec![S::zero(); n];
        let mut edges = Vec::with_capacity(self.edges.len());
        for ((u, v), w) in self.edges {
            let (iu, iv) = (index[&u], index[&v]);
            let e = edges.len();
            adj[iu].push((iv, e));
            measure[iu] = measure[iu].clone() + w.clone();
            if iu != iv {
                adj[iv].push((iu, e));
                measure[iv] = measure[iv].clone() + w.clone();
            }
            edges.push(EdgeData {
                u: iu,
                v: iv,
                weight: w,
            });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let truncated = ids.iter().map(|s| self.truncated.contains(s)).collect();
        Ok(WeightedGraph {
            ids,
            index,
            adj,
            edges,
            measure,
            truncated,
        })
    }
}

impl<S: Scalar> WeightedGraph<S> {
    pub fn from_edges<'a, I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, S)>,
    {
        let mut b = GraphBuilder::new();
        for (u, v, w) in edges {
            b.add_edge(u, v, w)?;
        }
        b.build()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.ids.iter().map(String::as_str)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.index.contains_key(x)
    }

    pub(crate) fn idx(&self, x: &str) -> Result<usize> {
        self.index
            .get(x)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(x.to_string()))
    }

    pub(crate) fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub(crate) fn adj(&self, i: usize) -> &[(usize, usize)] {
        &self.adj[i]
    }

    pub(crate) fn edge_data(&self, e: usize) -> &EdgeData<S> {
        &self.edges[e]
    }

    pub(crate) fn measure_at(&self, i: usize) -> &S {
        &self.measure[i]
    }

    pub(crate) fn truncated_at(&self, i: usize) -> bool {
        self.truncated[i]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge<'_, S>> + '_ {
        self.edges.iter().enumerate().map(|(index, e)| Edge {
            index,
            u: &self.ids[e.u],
            v: &self.ids[e.v],
            weight: &e.weight,
        })
    }

    pub fn edge(&self, index: usize) -> Option<Edge<'_, S>> {
        self.edges.get(index).map(|e| Edge {
            index,
            u: &self.ids[e.u],
            v: &self.ids[e.v],
            weight: &e.weight,
        })
    }

    /// `μ_xy`, zero when `xy` is not an edge.
    pub fn weight(&self, x: &str, y: &str) -> Result<S> {
        let (ix, iy) = (self.idx(x)?, self.idx(y)?);
        Ok(self.adj[ix]
            .iter()
            .find(|(n, _)| *n == iy)
            .map(|&(_, e)| self.edges[e].weight.clone())
            .unwrap_or_else(S::zero))
    }

    /// Neighbors of `x` with edge weights, self-loop included once.
    pub fn neighbors(&self, x: &str) -> Result<Vec<(&str, &S)>> {
        let i = self.idx(x)?;
        Ok(self.adj[i]
            .iter()
            .map(|&(n, e)| (self.ids[n].as_str(), &self.edges[e].weight))
            .collect())
    }

    pub fn vertex_measure(&self, x: &str) -> Result<&S> {
        Ok(&self.measure[self.idx(x)?])
    }

    pub fn total_volume(&self) -> S {
        self.measure
            .iter()
            .fold(S::zero(), |acc, m| acc + m.clone())
    }

    pub fn is_truncated(&self, x: &str) -> Result<bool> {
        Ok(self.truncated[self.idx(x)?])
    }

    pub fn truncated(&self) -> impl Iterator<Item = &str> + '_ {
        self.ids
            .iter()
            .zip(&self.truncated)
            .filter(|(_, t)| **t)
            .map(|(s, _)| s.as_str())
    }

    /// Vertices whose full neighborhood is present.
    pub fn complete_vertices(&self) -> VertexSet {
        self.ids
            .iter()
            .zip(&self.truncated)
            .filter(|(_, t)| !**t)
            .map(|(s, _)| s.clone())
            .collect()
    }

    /// Smallest vertex measure, `None` on the empty graph.
    pub fn min_measure(&self) -> Option<S> {
        self.measure.iter().cloned().reduce(S::min_of)
    }

    /// Breadth-first distances from `p`; `None` marks unreachable vertices.
    pub fn distances_from(&self, p: &str) -> Result<Vec<Option<usize>>> {
        let start = self.idx(p)?;
        Ok(self.bfs(&[start], usize::MAX))
    }

    pub(crate) fn bfs(&self, sources: &[usize], limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            if d >= limit {
                continue;
            }
            for &(y, _) in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Combinatorial distance; `Ok(None)` when the pair is disconnected.
    pub fn distance(&self, x: &str, y: &str) -> Result<Option<usize>> {
        let iy = self.idx(y)?;
        Ok(self.distances_from(x)?[iy])
    }

    /// Closed ball `{x : d(x, p) <= radius}`.
    pub fn ball(&self, p: &str, radius: usize) -> Result<VertexSet> {
        let start = self.idx(p)?;
        let dist = self.bfs(&[start], radius);
        Ok(self.collect_where(&dist, |d| d <= radius))
    }

    /// Vertices outside `omega` at distance exactly one from it.
    pub fn boundary(&self, omega: &VertexSet) -> Result<VertexSet> {
        let mut out = VertexSet::new();
        for x in omega {
            let i = self.idx(x)?;
            for &(n, _) in &self.adj[i] {
                let name = &self.ids[n];
                if !omega.contains(name) {
                    out.insert(name.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs(&[0], usize::MAX).iter().all(Option::is_some)
    }

    /// Connected components of the subgraph induced on `set`, each sorted,
    /// ordered by their smallest vertex.
    pub fn components(&self, set: &VertexSet) -> Result<Vec<VertexSet>> {
        let members: BTreeSet<usize> = set.iter().map(|x| self.idx(x)).collect::<Result<_>>()?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &members {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(x) = stack.pop() {
                comp.insert(self.ids[x].clone());
                for &(y, _) in &self.adj[x] {
                    if members.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        Ok(out)
    }

    fn collect_where(&self, dist: &[Option<usize>], keep: impl Fn(usize) -> bool) -> VertexSet {
        dist.iter()
            .enumerate()
            .filter(|(_, d)| d.is_some_and(&keep))
            .map(|(i, _)| self.ids[i].clone())
            .collect()
    }
}

/// A finite set `Ω` together with its computed vertex boundary `∂Ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    interior: VertexSet,
    boundary: VertexSet,
}

impl Domain {
    pub fn new<S: Scalar>(g: &WeightedGraph<S>, interior: VertexSet) -> Result<Self> {
        let boundary = g.boundary(&interior)?;
        Ok(Domain { interior, boundary })
    }

    pub fn interior(&self) -> &VertexSet {
        &self.interior
    }

    pub fn boundary(&self) -> &VertexSet {
        &self.boundary
    }

    pub fn closure(&self) -> VertexSet {
        self.interior.union(&self.boundary).cloned().collect()
    }
}
