//! Standard families and the counterexample graphs: the dyadic line with its
//! harmonic function, unit lattices, regular trees, one-point gluing, and a
//! small zoo of nonnegative subharmonic functions.
//!
//! Vertex labels: `"n"` on the line and on `Z`, `"x,y"` on `Z²`, and
//! `"r"`, `"r.0"`, `"r.0.1"`, ... on trees. Gluing prefixes the left side
//! with `L:` and the right side with `R:`; the seam keeps the right label.

use std::sync::Arc;

use crate::dirichlet::{solve_dirichlet, DirichletProblem, SolveOptions};
use crate::error::{Error, Result};
use crate::family::{materialize, FiniteFamily, FunctionSource, GraphFamily};
use crate::function::VertexFunction;
use crate::graph::{GraphBuilder, WeightedGraph};
use crate::scalar::Scalar;

pub const DYADIC_CAP_RATIONAL: usize = 200;
pub const DYADIC_CAP_FLOAT: usize = 900;

fn parse_int(label: &str) -> Result<i64> {
    label
        .parse()
        .map_err(|_| Error::UnknownVertex(label.to_string()))
}

fn parse_pair(label: &str) -> Result<(i64, i64)> {
    let bad = || Error::UnknownVertex(label.to_string());
    let (x, y) = label.split_once(',').ok_or_else(bad)?;
    Ok((x.parse().map_err(|_| bad())?, y.parse().map_err(|_| bad())?))
}

/// `Z` with `μ_{n,n±1} = 2^{1 - max(|n|, |n±1|)}`. Finite total volume 8.
#[derive(Debug, Clone, Copy, Default)]
pub struct DyadicLine;

pub fn dyadic_line() -> DyadicLine {
    DyadicLine
}

impl DyadicLine {
    pub fn weight<S: Scalar>(x: i64, y: i64) -> S {
        S::pow2(1 - x.abs().max(y.abs()))
    }
}

impl<S: Scalar> GraphFamily<S> for DyadicLine {
    fn name(&self) -> &str {
        "dyadic-line"
    }

    fn root(&self) -> String {
        "0".into()
    }

    fn incident(&self, v: &str) -> Result<Vec<(String, S)>> {
        let n = parse_int(v)?;
        Ok([n - 1, n + 1]
            .into_iter()
            .map(|m| (m.to_string(), Self::weight(n, m)))
            .collect())
    }

    fn max_radius(&self) -> Option<usize> {
        Some(if S::is_exact() {
            DYADIC_CAP_RATIONAL
        } else {
            DYADIC_CAP_FLOAT
        })
    }
}

/// `f(n) = 2^n - 1` for `n >= 0`, `1 - 2^{-n}` for `n < 0`.
pub fn dyadic_harmonic_value<S: Scalar>(n: i64) -> S {
    if n >= 0 {
        S::pow2(n) - S::one()
    } else {
        S::one() - S::pow2(-n)
    }
}

pub fn dyadic_harmonic<S: Scalar>() -> FunctionSource<S> {
    Arc::new(|v: &str| Ok(dyadic_harmonic_value(parse_int(v)?)))
}

pub fn dyadic_abs<S: Scalar>() -> FunctionSource<S> {
    Arc::new(|v: &str| Ok(dyadic_harmonic_value::<S>(parse_int(v)?).abs()))
}

/// Unit-weight `Z` (`dim = 1`) or `Z²` (`dim = 2`).
#[derive(Debug, Clone)]
pub struct Lattice<S> {
    dim: usize,
    weight: S,
}

pub fn lattice<S: Scalar>(dim: usize) -> Result<Lattice<S>> {
    lattice_weighted(dim, S::one())
}

pub fn lattice_weighted<S: Scalar>(dim: usize, weight: S) -> Result<Lattice<S>> {
    if !(1..=2).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if weight.partial_cmp(&S::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Invalid(format!(
            "lattice weight must be positive, got {weight}"
        )));
    }
    Ok(Lattice { dim, weight })
}

impl<S: Scalar> Lattice<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl<S: Scalar> GraphFamily<S> for Lattice<S> {
    fn name(&self) -> &str {
        if self.dim == 1 {
            "z"
        } else {
            "z2"
        }
    }

    fn root(&self) -> String {
        if self.dim == 1 { "0" } else { "0,0" }.into()
    }

    fn incident(&self, v: &str) -> Result<Vec<(String, S)>> {
        let w = &self.weight;
        if self.dim == 1 {
            let n = parse_int(v)?;
            return Ok(vec![
                ((n - 1).to_string(), w.clone()),
                ((n + 1).to_string(), w.clone()),
            ]);
        }
        let (x, y) = parse_pair(v)?;
        Ok([(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]
            .into_iter()
            .map(|(a, b)| (format!("{a},{b}"), w.clone()))
            .collect())
    }

    fn min_measure(&self) -> Option<S> {
        Some(S::from_int(2 * self.dim as i64) * self.weight.clone())
    }
}

/// The `(b+1)`-regular tree: the root and every other vertex have degree
/// `b + 1`.
#[derive(Debug, Clone)]
pub struct RegularTree<S> {
    branching: usize,
    weight: S,
    name: String,
}

pub fn regular_tree<S: Scalar>(branching: usize) -> Result<RegularTree<S>> {
    if branching < 2 {
        return Err(Error::Invalid(format!(
            "tree branching must be >= 2, got {branching}"
        )));
    }
    Ok(RegularTree {
        branching,
        weight: S::one(),
        name: format!("tree{branching}"),
    })
}

impl<S: Scalar> RegularTree<S> {
    pub fn branching(&self) -> usize {
        self.branching
    }
}

pub fn tree_depth(label: &str) -> Result<usize> {
    let mut parts = label.split('.');
    if parts.next() != Some("r") {
        return Err(Error::UnknownVertex(label.to_string()));
    }
    let mut d = 0;
    for p in parts {
        p.parse::<usize>()
            .map_err(|_| Error::UnknownVertex(label.to_string()))?;
        d += 1;
    }
    Ok(d)
}

impl<S: Scalar> GraphFamily<S> for RegularTree<S> {
    fn name(&self) -> &str {
        &self.name
    }

    fn root(&self) -> String {
        "r".into()
    }

    fn incident(&self, v: &str) -> Result<Vec<(String, S)>> {
        let depth = tree_depth(v)?;
        let children = if depth == 0 {
            self.branching + 1
        } else {
            let last: usize = v.rsplit('.').next().unwrap().parse().unwrap();
            let parent_children = if depth == 1 {
                self.branching + 1
            } else {
                self.branching
            };
            if last >= parent_children {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            self.branching
        };
        let mut out: Vec<(String, S)> = (0..children)
            .map(|k| (format!("{v}.{k}"), self.weight.clone()))
            .collect();
        if let Some((parent, _)) = v.rsplit_once('.') {
            out.push((parent.to_string(), self.weight.clone()));
        }
        Ok(out)
    }

    fn min_measure(&self) -> Option<S> {
        Some(S::from_int(self.branching as i64 + 1) * self.weight.clone())
    }
}

pub fn left_label(x: &str) -> String {
    format!("L:{x}")
}

pub fn right_label(y: &str) -> String {
    format!("R:{y}")
}

/// `Γ₁ ∧ G` for finite graphs: identifies `p ∈ Γ₁` with `zero ∈ G`, keeping
/// every edge and weight. Returns the glued graph and the seam label.
pub fn glue<S: Scalar>(
    left: &WeightedGraph<S>,
    p: &str,
    right: &WeightedGraph<S>,
    zero: &str,
) -> Result<(WeightedGraph<S>, String)> {
    left.vertex_measure(p)?;
    right.vertex_measure(zero)?;
    let seam = right_label(zero);
    let rename_left = |x: &str| if x == p { seam.clone() } else { left_label(x) };
    let mut b = GraphBuilder::new();
    for e in left.edges() {
        b.add_edge(&rename_left(e.u), &rename_left(e.v), e.weight.clone())?;
    }
    for e in right.edges() {
        b.add_edge(&right_label(e.u), &right_label(e.v), e.weight.clone())?;
    }
    for x in left.truncated() {
        b.mark_truncated(&rename_left(x));
    }
    for y in right.truncated() {
        b.mark_truncated(&right_label(y));
    }
    Ok((b.build()?, seam))
}

/// `Γ₁ ∧ G` for families, rooted at the seam.
#[derive(Clone)]
pub struct GluedFamily<S> {
    left: Arc<dyn GraphFamily<S>>,
    p: String,
    right: Arc<dyn GraphFamily<S>>,
    zero: String,
    name: String,
}

impl<S: Scalar> GluedFamily<S> {
    pub fn new(
        left: Arc<dyn GraphFamily<S>>,
        p: &str,
        right: Arc<dyn GraphFamily<S>>,
        zero: &str,
    ) -> Self {
        let name = format!("{}^{}", left.name(), right.name());
        GluedFamily {
            left,
            p: p.to_string(),
            right,
            zero: zero.to_string(),
            name,
        }
    }

    /// Unit `Z²` (infinite volume) glued at its origin to the dyadic line at 0.
    pub fn z2_dyadic() -> Self {
        let z2: Arc<dyn GraphFamily<S>> = Arc::new(lattice::<S>(2).expect("dim 2"));
        Self::new(z2, "0,0", Arc::new(DyadicLine), "0")
    }

    pub fn seam(&self) -> String {
        right_label(&self.zero)
    }

    fn map_left(&self, x: &str) -> String {
        if x == self.p {
            self.seam()
        } else {
            left_label(x)
        }
    }
}

impl<S: Scalar> GraphFamily<S> for GluedFamily<S> {
    fn name(&self) -> &str {
        &self.name
    }

    fn root(&self) -> String {
        self.seam()
    }

    fn incident(&self, v: &str) -> Result<Vec<(String, S)>> {
        let from_left = |x: &str| -> Result<Vec<(String, S)>> {
            Ok(self
                .left
                .incident(x)?
                .into_iter()
                .map(|(y, w)| (self.map_left(&y), w))
                .collect())
        };
        let from_right = |y: &str| -> Result<Vec<(String, S)>> {
            Ok(self
                .right
                .incident(y)?
                .into_iter()
                .map(|(z, w)| (right_label(&z), w))
                .collect())
        };
        if v == self.seam() {
            let mut out = from_left(&self.p)?;
            out.extend(from_right(&self.zero)?);
            return Ok(out);
        }
        if let Some(x) = v.strip_prefix("L:") {
            if x == self.p {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            return from_left(x);
        }
        if let Some(y) = v.strip_prefix("R:") {
            return from_right(y);
        }
        Err(Error::UnknownVertex(v.to_string()))
    }

    fn min_measure(&self) -> Option<S> {
        Some(S::min_of(
            self.left.min_measure()?,
            self.right.min_measure()?,
        ))
    }

    fn max_radius(&self) -> Option<usize> {
        match (self.left.max_radius(), self.right.max_radius()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// `g = 0` on `Γ₁ \ {p}` and `g = f` on `G`, as in the gluing construction;
/// at the seam `g` takes the right-hand value.
pub fn glued_function<S: Scalar>(right: FunctionSource<S>) -> FunctionSource<S> {
    Arc::new(move |v: &str| {
        if v.starts_with("L:") {
            Ok(S::zero())
        } else if let Some(y) = v.strip_prefix("R:") {
            right(y)
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    })
}

pub fn abs_x1<S: Scalar>() -> FunctionSource<S> {
    Arc::new(|v: &str| Ok(S::from_int(parse_pair(v)?.0.abs())))
}

pub fn square<S: Scalar>() -> FunctionSource<S> {
    Arc::new(|v: &str| {
        let n = parse_int(v)?;
        Ok(S::from_int(n) * S::from_int(n))
    })
}

pub fn depth<S: Scalar>() -> FunctionSource<S> {
    Arc::new(|v: &str| Ok(S::from_int(tree_depth(v)? as i64)))
}

pub fn constant<S: Scalar>(c: S) -> FunctionSource<S> {
    Arc::new(move |_: &str| Ok(c.clone()))
}

pub const BUMP_RADIUS: usize = 6;

/// Harmonic function on `B_6 ⊂ Z²` with boundary data the indicator of
/// `(7,0)`; nonnegative by the maximum principle.
pub fn dirichlet_bump<S: Scalar>() -> Result<(FiniteFamily<S>, FunctionSource<S>)> {
    let z2 = lattice::<S>(2)?;
    let ball = materialize(&z2, BUMP_RADIUS + 1)?;
    let inner = ball.sub_ball(BUMP_RADIUS);
    let domain = crate::graph::Domain::new(&ball.graph, inner)?;
    let boundary_values =
        VertexFunction::indicator(domain.boundary().iter().map(String::as_str), "7,0");
    let problem = DirichletProblem {
        graph: &ball.graph,
        domain,
        boundary_values,
        source: None,
    };
    let report = solve_dirichlet(&problem, &SolveOptions::default())?;
    let values = report.solution;
    let fam =
        FiniteFamily::new("dirichlet-bump", ball.graph, ball.root)?.with_max_radius(BUMP_RADIUS);
    let f: FunctionSource<S> = Arc::new(move |v: &str| values.value(v).cloned());
    Ok((fam, f))
}

pub const ZOO: [&str; 5] = [
    "abs-coordinate-Z2",
    "square-Z",
    "dirichlet-bump",
    "dyadic-abs",
    "depth-tree",
];

/// A family paired with a nonnegative function subharmonic wherever the
/// family can be materialized.
#[derive(Clone)]
pub struct ZooEntry<S> {
    pub name: &'static str,
    pub family: Arc<dyn GraphFamily<S>>,
    pub function: FunctionSource<S>,
}

pub fn subharmonic_zoo<S: Scalar>(name: &str) -> Result<ZooEntry<S>> {
    let (name, family, function): (&'static str, Arc<dyn GraphFamily<S>>, FunctionSource<S>) =
        match name {
            "abs-coordinate-Z2" => ("abs-coordinate-Z2", Arc::new(lattice::<S>(2)?), abs_x1()),
            "square-Z" => ("square-Z", Arc::new(lattice::<S>(1)?), square()),
            "dirichlet-bump" => {
                let (fam, f) = dirichlet_bump()?;
                ("dirichlet-bump", Arc::new(fam), f)
            }
            "dyadic-abs" => ("dyadic-abs", Arc::new(DyadicLine), dyadic_abs()),
            "depth-tree" => ("depth-tree", Arc::new(regular_tree::<S>(2)?), depth()),
            other => return Err(Error::UnknownName(other.to_string())),
        };
    Ok(ZooEntry {
        name,
        family,
        function,
    })
}

pub const FAMILIES: [&str; 5] = ["dyadic-line", "z", "z2", "tree", "glue"];

/// Families by CLI name; `branching` applies to `tree`.
pub fn family_by_name<S: Scalar>(name: &str, branching: usize) -> Result<Arc<dyn GraphFamily<S>>> {
    Ok(match name {
        "dyadic-line" => Arc::new(DyadicLine),
        "z" => Arc::new(lattice::<S>(1)?),
        "z2" => Arc::new(lattice::<S>(2)?),
        "tree" => Arc::new(regular_tree::<S>(branching)?),
        "glue" => Arc::new(GluedFamily::<S>::z2_dyadic()),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

pub const FUNCTIONS: [&str; 7] = [
    "dyadic-harmonic",
    "dyadic-abs",
    "abs-x1",
    "square",
    "depth",
    "glued-dyadic",
    "one",
];

/// Functions by CLI name.
pub fn function_by_name<S: Scalar>(name: &str) -> Result<FunctionSource<S>> {
    Ok(match name {
        "dyadic-harmonic" => dyadic_harmonic(),
        "dyadic-abs" => dyadic_abs(),
        "abs-x1" => abs_x1(),
        "square" => square(),
        "depth" => depth(),
        "glued-dyadic" => glued_function(dyadic_harmonic()),
        "one" => constant(S::one()),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

/// The function a family is usually studied with.
pub fn default_function<S: Scalar>(family: &str) -> Result<FunctionSource<S>> {
    function_by_name(match family {
        "dyadic-line" => "dyadic-harmonic",
        "z" => "square",
        "z2" => "abs-x1",
        "tree" => "depth",
        "glue" => "glued-dyadic",
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{classify, laplacian};
    use crate::family::materialize_with;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn dyadic_weights_and_measures() {
        assert_eq!(DyadicLine::weight::<Rational>(2, 3), r(1, 4));
        let ball = materialize::<Rational>(&DyadicLine, 10).unwrap();
        assert_eq!(*ball.graph.vertex_measure("0").unwrap(), r(2, 1));
        assert_eq!(*ball.graph.vertex_measure("-4").unwrap(), r(3, 16));
        let vol = ball
            .sub_ball(10)
            .iter()
            .fold(Rational::from_int(0), |a, x| {
                a + ball.graph.vertex_measure(x).unwrap().clone()
            });
        assert!(vol < r(8, 1));
    }

    #[test]
    fn dyadic_values() {
        assert_eq!(dyadic_harmonic_value::<Rational>(3), r(7, 1));
        assert_eq!(dyadic_harmonic_value::<Rational>(-1), r(-1, 1));
        for n in -20..=20 {
            assert_eq!(
                dyadic_harmonic_value::<Rational>(n),
                -dyadic_harmonic_value::<Rational>(-n)
            );
        }
        let (ball, f) = materialize_with(&DyadicLine, 5, &dyadic_harmonic::<Rational>()).unwrap();
        assert_eq!(laplacian(&ball.graph, &f, "2").unwrap(), r(0, 1));
    }

    #[test]
    fn dyadic_radius_cap() {
        assert!(matches!(
            materialize::<Rational>(&DyadicLine, 201),
            Err(Error::RadiusCap { cap: 200, .. })
        ));
        assert!(matches!(
            materialize::<f64>(&DyadicLine, 901),
            Err(Error::RadiusCap { cap: 900, .. })
        ));
    }

    #[test]
    fn lattice_and_tree_counts() {
        let z2 = lattice::<Rational>(2).unwrap();
        assert_eq!(materialize(&z2, 1).unwrap().domain.interior().len(), 5);
        assert!(matches!(
            lattice::<f64>(3),
            Err(Error::UnsupportedDimension(3))
        ));
        let t = regular_tree::<Rational>(2).unwrap();
        let ball = materialize(&t, 2).unwrap();
        assert_eq!(ball.domain.interior().len(), 10);
        for x in ball.domain.interior() {
            assert_eq!(*ball.graph.vertex_measure(x).unwrap(), r(3, 1));
        }
        assert!(matches!(t.incident("r.0.2"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn glue_triangle_to_dyadic_line() {
        let tri = WeightedGraph::from_edges([
            ("p", "a", r(1, 1)),
            ("a", "b", r(1, 1)),
            ("b", "p", r(1, 2)),
        ])
        .unwrap();
        let n = 6;
        let ball = materialize::<Rational>(&DyadicLine, n).unwrap();
        let (g, seam) = glue(&tri, "p", &ball.graph, "0").unwrap();
        assert_eq!(g.len(), 3 + ball.graph.len() - 1);
        assert_eq!(*g.vertex_measure(&seam).unwrap(), r(3, 2) + r(2, 1));
        assert_eq!(
            g.total_volume(),
            tri.total_volume() + ball.graph.total_volume()
        );
        assert!(matches!(
            glue(&tri, "q", &ball.graph, "0"),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn glue_preserves_loop_at_mark() {
        let left = WeightedGraph::from_edges([("p", "p", r(1, 1)), ("p", "a", r(1, 1))]).unwrap();
        let right = WeightedGraph::from_edges([("0", "1", r(1, 1))]).unwrap();
        let (g, seam) = glue(&left, "p", &right, "0").unwrap();
        assert_eq!(g.weight(&seam, &seam).unwrap(), r(1, 1));
        assert_eq!(*g.vertex_measure(&seam).unwrap(), r(3, 1));
    }

    #[test]
    fn glued_family_is_harmonic_at_seam() {
        let fam = GluedFamily::<Rational>::z2_dyadic();
        let (ball, g) = materialize_with(&fam, 5, &glued_function(dyadic_harmonic())).unwrap();
        assert_eq!(*ball.graph.vertex_measure("R:0").unwrap(), r(6, 1));
        let c = classify(&ball.graph, &g, &ball.domain, &r(0, 1)).unwrap();
        assert!(c.is_harmonic());
    }

    #[test]
    fn zoo_entries_are_subharmonic() {
        for name in ZOO {
            let e = subharmonic_zoo::<Rational>(name).unwrap();
            let (ball, f) = materialize_with(e.family.as_ref(), 5, &e.function).unwrap();
            let c = classify(&ball.graph, &f, &ball.domain, &r(0, 1)).unwrap();
            assert!(c.is_subharmonic(), "{name}");
            assert!(f.iter().all(|(_, v)| *v >= r(0, 1)), "{name}");
        }
        assert!(matches!(
            subharmonic_zoo::<f64>("nope"),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn zoo_laplacians() {
        let e = subharmonic_zoo::<Rational>("abs-coordinate-Z2").unwrap();
        let (ball, f) = materialize_with(e.family.as_ref(), 3, &e.function).unwrap();
        assert_eq!(laplacian(&ball.graph, &f, "0,2").unwrap(), r(1, 2));
        assert_eq!(laplacian(&ball.graph, &f, "1,1").unwrap(), r(0, 1));
        let e = subharmonic_zoo::<Rational>("square-Z").unwrap();
        let (ball, f) = materialize_with(e.family.as_ref(), 3, &e.function).unwrap();
        for x in ball.domain.interior() {
            assert_eq!(laplacian(&ball.graph, &f, x).unwrap(), r(1, 1));
        }
        let e = subharmonic_zoo::<Rational>("depth-tree").unwrap();
        let (ball, f) = materialize_with(e.family.as_ref(), 3, &e.function).unwrap();
        assert_eq!(laplacian(&ball.graph, &f, "r").unwrap(), r(1, 1));
        assert_eq!(laplacian(&ball.graph, &f, "r.1.0").unwrap(), r(1, 3));
    }
}
