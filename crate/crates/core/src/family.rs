//! Lazy families of infinite graphs and their finite windows.
//!
//! A family only answers "which edges touch this vertex". [`materialize`]
//! walks it breadth-first from the root and returns the ball `B_R` together
//! with a one-ring halo `B_{R+1} \ B_R`, so every vertex of `B_R` carries its
//! intrinsic measure. Halo vertices are marked truncated.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::{Domain, GraphBuilder, VertexSet, WeightedGraph};
use crate::scalar::Scalar;

pub trait GraphFamily<S: Scalar>: Send + Sync {
    fn name(&self) -> &str;

    fn root(&self) -> String;

    /// Every edge of the full graph incident to `v`, as `(neighbor, weight)`.
    /// A self-loop is listed once with `neighbor == v`.
    fn incident(&self, v: &str) -> Result<Vec<(String, S)>>;

    /// Certified lower bound `μ_0` on vertex measures, if the family has one.
    fn min_measure(&self) -> Option<S> {
        None
    }

    /// Largest radius this family can materialize without losing exactness.
    fn max_radius(&self) -> Option<usize> {
        None
    }
}

/// A function given by a rule on vertex identifiers.
pub type FunctionSource<S> = Arc<dyn Fn(&str) -> Result<S> + Send + Sync>;

/// A materialized ball: interior `B_R(root)`, boundary the halo ring.
#[derive(Debug, Clone)]
pub struct Ball<S> {
    pub graph: WeightedGraph<S>,
    pub domain: Domain,
    pub root: String,
    pub radius: usize,
}

impl<S: Scalar> Ball<S> {
    /// Vertices at distance at most `r` from the root (`r <= radius + 1`).
    pub fn sub_ball(&self, r: usize) -> VertexSet {
        self.graph
            .ball(&self.root, r)
            .expect("root belongs to its own ball")
    }
}

pub fn materialize<S: Scalar>(fam: &dyn GraphFamily<S>, radius: usize) -> Result<Ball<S>> {
    if let Some(cap) = fam.max_radius() {
        if radius > cap {
            return Err(Error::RadiusCap {
                family: fam.name().to_string(),
                requested: radius,
                cap,
            });
        }
    }
    let ctx = |e: Error| Error::Generator {
        family: fam.name().to_string(),
        source: Box::new(e),
    };
    let root = fam.root();
    let mut dist: HashMap<String, usize> = HashMap::new();
    let mut edges: HashMap<(String, String), S> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(root.clone(), 0);
    queue.push_back(root.clone());
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d > radius {
            continue;
        }
        for (y, w) in fam.incident(&x).map_err(ctx)? {
            let key = if x <= y {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            };
            match edges.get(&key) {
                Some(prev) if *prev != w => {
                    return Err(ctx(Error::Invalid(format!(
                        "asymmetric weight on edge {}-{}",
                        key.0, key.1
                    ))))
                }
                Some(_) => {}
                None => {
                    edges.insert(key, w);
                }
            }
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    if edges.is_empty() {
        return Err(ctx(Error::Invalid(format!("root `{root}` has no edges"))));
    }
    let mut b = GraphBuilder::new();
    let mut sorted: Vec<_> = edges.into_iter().collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for ((u, v), w) in sorted {
        b.add_edge(&u, &v, w).map_err(ctx)?;
    }
    let mut interior = VertexSet::new();
    for (v, d) in &dist {
        if *d > radius {
            b.mark_truncated(v);
        } else {
            interior.insert(v.clone());
        }
    }
    let graph = b.build()?;
    let domain = Domain::new(&graph, interior)?;
    Ok(Ball {
        graph,
        domain,
        root,
        radius,
    })
}

/// Materializes `B_R` and evaluates `f` on every vertex of it, halo included.
pub fn materialize_with<S: Scalar>(
    fam: &dyn GraphFamily<S>,
    radius: usize,
    f: &FunctionSource<S>,
) -> Result<(Ball<S>, VertexFunction<S>)> {
    let ball = materialize(fam, radius)?;
    let values = ball
        .graph
        .vertices()
        .map(|v| Ok((v.to_string(), f(v)?)))
        .collect::<Result<VertexFunction<S>>>()?;
    Ok((ball, values))
}

/// A finite graph seen as a family rooted at one of its vertices.
/// Truncated vertices refuse to report their edges.
#[derive(Debug, Clone)]
pub struct FiniteFamily<S> {
    name: String,
    graph: WeightedGraph<S>,
    root: String,
    cap: Option<usize>,
}

impl<S: Scalar> FiniteFamily<S> {
    pub fn new(
        name: impl Into<String>,
        graph: WeightedGraph<S>,
        root: impl Into<String>,
    ) -> Result<Self> {
        let root = root.into();
        graph.vertex_measure(&root)?;
        Ok(FiniteFamily {
            name: name.into(),
            graph,
            root,
            cap: None,
        })
    }

    /// Caps the radius [`materialize`] accepts, e.g. where a paired
    /// function stops being meaningful.
    pub fn with_max_radius(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn graph(&self) -> &WeightedGraph<S> {
        &self.graph
    }
}

impl<S: Scalar> GraphFamily<S> for FiniteFamily<S> {
    fn name(&self) -> &str {
        &self.name
    }

    fn root(&self) -> String {
        self.root.clone()
    }

    fn incident(&self, v: &str) -> Result<Vec<(String, S)>> {
        if self.graph.is_truncated(v)? {
            return Err(Error::TruncatedNeighborhood(v.to_string()));
        }
        Ok(self
            .graph
            .neighbors(v)?
            .into_iter()
            .map(|(n, w)| (n.to_string(), w.clone()))
            .collect())
    }

    fn min_measure(&self) -> Option<S> {
        self.graph
            .complete_vertices()
            .iter()
            .map(|v| self.graph.vertex_measure(v).unwrap().clone())
            .reduce(S::min_of)
    }

    fn max_radius(&self) -> Option<usize> {
        self.cap
    }
}
