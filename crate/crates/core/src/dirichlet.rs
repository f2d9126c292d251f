//! Discrete Dirichlet problem `Δf = -s` on `Ω`, `f = b` on `∂Ω`, and the
//! maximum principle for subharmonic functions.
//!
//! Small domains (and every rational-mode problem) are solved by banded
//! elimination after a reverse Cuthill-McKee ordering; the system matrix is
//! a weighted graph Laplacian with Dirichlet rows, hence symmetric positive
//! definite and safe to eliminate without pivoting. Large float problems use
//! Gauss-Seidel sweeps in vertex order.

use std::collections::{BTreeMap, VecDeque};

use serde_json::{json, Value};

use crate::calculus::{classify, laplacian_idx, VertexVerdict};
use crate::error::{Error, Result};
use crate::family::{materialize_with, FunctionSource, GraphFamily};
use crate::function::VertexFunction;
use crate::graph::{Domain, WeightedGraph};
use crate::scalar::{abs_pow, Scalar};

pub const DIRECT_LIMIT: usize = 2000;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct DirichletProblem<'g, S> {
    pub graph: &'g WeightedGraph<S>,
    pub domain: Domain,
    pub boundary_values: VertexFunction<S>,
    /// Right-hand side `s` of `Δf = -s`; absent entries are zero.
    pub source: Option<VertexFunction<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Auto,
    Direct,
    Iterative,
}

#[derive(Debug, Clone)]
pub struct SolveOptions<S> {
    pub tol: S,
    pub method: Method,
    pub max_iterations: usize,
}

impl<S: Scalar> Default for SolveOptions<S> {
    fn default() -> Self {
        SolveOptions {
            tol: if S::is_exact() {
                S::zero()
            } else {
                S::from_f64(1e-10).expect("finite")
            },
            method: Method::Auto,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UsedMethod {
    Direct,
    Iterative,
}

impl UsedMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            UsedMethod::Direct => "direct",
            UsedMethod::Iterative => "iterative",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport<S> {
    pub solution: VertexFunction<S>,
    pub method: UsedMethod,
    pub iterations: usize,
    /// `max_Ω |Δf + s|`.
    pub residual: S,
}

impl<S: Scalar> SolveReport<S> {
    pub fn to_json(&self) -> Value {
        let values: serde_json::Map<String, Value> = self
            .solution
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_json()))
            .collect();
        json!({
            "scalar": S::MODE.as_str(),
            "method": self.method.as_str(),
            "iterations": self.iterations,
            "residual": self.residual.to_json(),
            "solution": {"values": values},
        })
    }
}

struct System<'a, S> {
    g: &'a WeightedGraph<S>,
    /// Graph index of each unknown.
    unknowns: Vec<usize>,
    /// Position of a graph vertex among the unknowns.
    position: BTreeMap<usize, usize>,
    fixed: Vec<Option<S>>,
    source: Vec<S>,
}

impl<S: Scalar> System<'_, S> {
    fn off_diagonal_mass(&self, i: usize) -> S {
        self.g
            .adj(i)
            .iter()
            .filter(|(n, _)| *n != i)
            .fold(S::zero(), |acc, &(_, e)| {
                acc + self.g.edge_data(e).weight.clone()
            })
    }

    fn residual(&self, values: &[Option<S>]) -> Result<S> {
        let mut worst = S::zero();
        for &i in &self.unknowns {
            let r = (laplacian_idx(self.g, values, i)? + self.source[i].clone()).abs();
            worst = S::max_of(worst, r);
        }
        Ok(worst)
    }
}

pub fn solve_dirichlet<S: Scalar>(
    p: &DirichletProblem<'_, S>,
    opts: &SolveOptions<S>,
) -> Result<SolveReport<S>> {
    let g = p.graph;
    let interior = p.domain.interior();
    if interior.is_empty() {
        return Err(Error::Invalid("empty domain".into()));
    }
    if p.domain.boundary().is_empty() {
        return Err(Error::NoBoundary);
    }
    let components = g.components(interior)?;
    if components.len() > 1 {
        return Err(Error::DisconnectedDomain(
            components[1].iter().cloned().collect(),
        ));
    }
    let mut unknowns = Vec::with_capacity(interior.len());
    for x in interior {
        let i = g.idx(x)?;
        if g.truncated_at(i) {
            return Err(Error::TruncatedNeighborhood(x.clone()));
        }
        unknowns.push(i);
    }
    let mut fixed = vec![None; g.len()];
    for y in p.domain.boundary() {
        let v = p
            .boundary_values
            .get(y)
            .ok_or_else(|| Error::MissingBoundaryValue(y.clone()))?;
        fixed[g.idx(y)?] = Some(v.clone());
    }
    let source: Vec<S> = g
        .vertices()
        .map(|x| {
            p.source
                .as_ref()
                .map_or_else(S::zero, |s| s.value_or_zero(x))
        })
        .collect();
    let position = unknowns.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let sys = System {
        g,
        unknowns,
        position,
        fixed,
        source,
    };

    let method = match opts.method {
        Method::Auto if S::is_exact() || interior.len() <= DIRECT_LIMIT => UsedMethod::Direct,
        Method::Auto | Method::Iterative => UsedMethod::Iterative,
        Method::Direct => UsedMethod::Direct,
    };
    if method == UsedMethod::Iterative && S::is_exact() {
        return Err(Error::ModeMismatch(
            "iterative Dirichlet solves need float64; use the direct method".into(),
        ));
    }

    let (values, iterations) = match method {
        UsedMethod::Direct => {
            let mut values = solve_banded(&sys)?;
            // float elimination may land a hair above tol on badly scaled data
            let mut polish = 0;
            if !S::is_exact() && sys.residual(&values)? > opts.tol {
                polish = gauss_seidel(&sys, &mut values, &opts.tol, opts.max_iterations)?;
            }
            (values, polish)
        }
        UsedMethod::Iterative => {
            let mut values = initial_guess(&sys);
            let sweeps = gauss_seidel(&sys, &mut values, &opts.tol, opts.max_iterations)?;
            (values, sweeps)
        }
    };

    let residual = sys.residual(&values)?;
    if S::is_exact() && !residual.is_zero() {
        return Err(Error::SolverDefect(format!(
            "exact solve left residual {residual}"
        )));
    }
    let solution = p
        .domain
        .closure()
        .into_iter()
        .map(|x| {
            let v = values[g.idx(&x)?].clone().expect("closure is solved");
            Ok((x, v))
        })
        .collect::<Result<VertexFunction<S>>>()?;
    Ok(SolveReport {
        solution,
        method,
        iterations,
        residual,
    })
}

fn initial_guess<S: Scalar>(sys: &System<'_, S>) -> Vec<Option<S>> {
    let (sum, count) = sys
        .fixed
        .iter()
        .flatten()
        .fold((S::zero(), 0i64), |(s, c), v| (s + v.clone(), c + 1));
    let avg = sum / S::from_int(count);
    let mut values = sys.fixed.clone();
    for &i in &sys.unknowns {
        values[i] = Some(avg.clone());
    }
    values
}

fn gauss_seidel<S: Scalar>(
    sys: &System<'_, S>,
    values: &mut [Option<S>],
    tol: &S,
    max_iterations: usize,
) -> Result<usize> {
    let g = sys.g;
    let diag: Vec<S> = sys
        .unknowns
        .iter()
        .map(|&i| sys.off_diagonal_mass(i))
        .collect();
    for sweep in 1..=max_iterations {
        for (k, &i) in sys.unknowns.iter().enumerate() {
            let mut acc = g.measure_at(i).clone() * sys.source[i].clone();
            for &(n, e) in g.adj(i) {
                if n != i {
                    let v = values[n].as_ref().expect("neighbors are in the closure");
                    acc = acc + g.edge_data(e).weight.clone() * v.clone();
                }
            }
            values[i] = Some(acc / diag[k].clone());
        }
        if sys.residual(values)? <= *tol {
            return Ok(sweep);
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iterations,
        residual: sys.residual(values)?.as_f64(),
    })
}

/// Reverse Cuthill-McKee order of the unknowns (positions into `unknowns`).
fn rcm_order<S: Scalar>(sys: &System<'_, S>) -> Vec<usize> {
    let n = sys.unknowns.len();
    let nbrs: Vec<Vec<usize>> = sys
        .unknowns
        .iter()
        .map(|&i| {
            let mut v: Vec<usize> = sys
                .g
                .adj(i)
                .iter()
                .filter_map(|(m, _)| {
                    if *m != i {
                        sys.position.get(m).copied()
                    } else {
                        None
                    }
                })
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    let start = (0..n).min_by_key(|&k| (nbrs[k].len(), k)).unwrap_or(0);
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(k) = queue.pop_front() {
        order.push(k);
        let mut next: Vec<usize> = nbrs[k].iter().copied().filter(|&m| !seen[m]).collect();
        next.sort_by_key(|&m| (nbrs[m].len(), m));
        for m in next {
            seen[m] = true;
            queue.push_back(m);
        }
    }
    order.reverse();
    order
}

fn solve_banded<S: Scalar>(sys: &System<'_, S>) -> Result<Vec<Option<S>>> {
    let g = sys.g;
    let n = sys.unknowns.len();
    let order = rcm_order(sys);
    if order.len() != n {
        return Err(Error::SolverDefect("ordering missed unknowns".into()));
    }
    let mut row_of = vec![0usize; n];
    for (row, &k) in order.iter().enumerate() {
        row_of[k] = row;
    }

    let mut half = 0usize;
    for (k, &i) in sys.unknowns.iter().enumerate() {
        for (m, _) in g.adj(i) {
            if let Some(&km) = sys.position.get(m) {
                half = half.max(row_of[k].abs_diff(row_of[km]));
            }
        }
    }
    let width = 2 * half + 1;
    let at = |r: usize, c: usize| r * width + (c + half - r);
    let mut band = vec![S::zero(); n * width];
    let mut rhs = vec![S::zero(); n];

    for (k, &i) in sys.unknowns.iter().enumerate() {
        let r = row_of[k];
        band[at(r, r)] = sys.off_diagonal_mass(i);
        let mut b = g.measure_at(i).clone() * sys.source[i].clone();
        for &(m, e) in g.adj(i) {
            if m == i {
                continue;
            }
            let w = g.edge_data(e).weight.clone();
            match sys.position.get(&m) {
                Some(&km) => {
                    let c = row_of[km];
                    band[at(r, c)] = band[at(r, c)].clone() - w;
                }
                None => {
                    let v = sys.fixed[m]
                        .clone()
                        .ok_or_else(|| Error::MissingBoundaryValue(g.id(m).to_string()))?;
                    b = b + w * v;
                }
            }
        }
        rhs[r] = b;
    }

    for k in 0..n {
        let pivot = band[at(k, k)].clone();
        if pivot.is_zero() {
            return Err(Error::SolverDefect(format!("zero pivot at row {k}")));
        }
        let last = (k + half).min(n - 1);
        for i in k + 1..=last {
            let aik = band[at(i, k)].clone();
            if aik.is_zero() {
                continue;
            }
            let factor = aik / pivot.clone();
            for j in k..=last {
                let akj = &band[at(k, j)];
                if !akj.is_zero() {
                    let upd = band[at(i, j)].clone() - factor.clone() * akj.clone();
                    band[at(i, j)] = upd;
                }
            }
            rhs[i] = rhs[i].clone() - factor * rhs[k].clone();
        }
    }
    let mut x = vec![S::zero(); n];
    for k in (0..n).rev() {
        let last = (k + half).min(n - 1);
        let mut acc = rhs[k].clone();
        for j in k + 1..=last {
            acc = acc - band[at(k, j)].clone() * x[j].clone();
        }
        x[k] = acc / band[at(k, k)].clone();
    }

    let mut values = sys.fixed.clone();
    for (k, &i) in sys.unknowns.iter().enumerate() {
        values[i] = Some(x[row_of[k]].clone());
    }
    Ok(values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxPrincipleVerdict<S> {
    pub max_interior: S,
    pub max_boundary: S,
    /// `max_Ω f <= max_∂Ω f` within tolerance.
    pub bound_holds: bool,
    /// The interior maximum reaches the boundary maximum within tolerance.
    pub equality_case: bool,
    pub constant_on_closure: bool,
}

impl<S: Scalar> MaxPrincipleVerdict<S> {
    /// Bound plus rigidity: equality only for constants.
    pub fn holds(&self) -> bool {
        self.bound_holds && (!self.equality_case || self.constant_on_closure)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_interior": self.max_interior.to_json(),
            "max_boundary": self.max_boundary.to_json(),
            "bound_holds": self.bound_holds,
            "equality_case": self.equality_case,
            "constant_on_closure": self.constant_on_closure,
            "holds": self.holds(),
        })
    }
}

pub fn check_max_principle<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    omega: &Domain,
    tol: &S,
) -> Result<MaxPrincipleVerdict<S>> {
    let class = classify(g, f, omega, tol)?;
    if let Some(x) = class
        .with_verdict(VertexVerdict::StrictlySuperharmonic)
        .next()
    {
        return Err(Error::NotSubharmonic {
            vertex: x.to_string(),
            laplacian: class.vertices[x].laplacian.to_string(),
        });
    }
    if omega.boundary().is_empty() {
        return Err(Error::NoBoundary);
    }
    let max_over = |set: &crate::graph::VertexSet| -> Result<S> {
        let mut it = set.iter().map(|x| f.value(x).cloned());
        let first = it.next().expect("nonempty")?;
        it.try_fold(first, |m, v| Ok(S::max_of(m, v?)))
    };
    let max_interior = max_over(omega.interior())?;
    let max_boundary = max_over(omega.boundary())?;
    let closure = omega.closure();
    let mut lo = max_interior.clone();
    let mut scale = S::one();
    for x in &closure {
        let v = f.value(x)?;
        lo = S::min_of(lo, v.clone());
        scale = S::max_of(scale, v.abs());
    }
    let hi = S::max_of(max_interior.clone(), max_boundary.clone());
    let eff = tol.clone() * scale;
    Ok(MaxPrincipleVerdict {
        bound_holds: max_interior <= max_boundary.clone() + eff.clone(),
        equality_case: max_interior >= max_boundary.clone() - eff.clone(),
        constant_on_closure: hi - lo <= eff,
        max_interior,
        max_boundary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NondegenerateVerdict {
    /// The certified annulus bound falls below the inner maximum: `f` decays.
    LqAtScale,
    /// Tail mass does not vanish at this scale.
    NotLqAtScale,
}

impl NondegenerateVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            NondegenerateVerdict::LqAtScale => "L^q at this scale",
            NondegenerateVerdict::NotLqAtScale => "not L^q at this scale",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NondegenerateReport {
    pub min_measure: f64,
    pub total: f64,
    /// `Σ |f|^q μ_x` over `r < d(x, root) <= R`.
    pub tail: f64,
    /// `(tail / μ_0)^{1/q}`, a bound on `|f|` over the annulus.
    pub certified_bound: f64,
    pub annulus_max: f64,
    pub inner_max: f64,
    pub bound_holds: bool,
    pub verdict: NondegenerateVerdict,
}

/// On a graph with `μ_x >= μ_0 > 0`, `|f(x)|^q μ_0 <= Σ_{tail} |f|^q μ`, so
/// vanishing tail sums force `f -> 0`; this certifies the bound on the
/// annulus `r < d <= R` of a materialized ball.
pub fn verify_nondegenerate_liouville<S: Scalar>(
    fam: &dyn GraphFamily<S>,
    f: &FunctionSource<S>,
    q: f64,
    r: usize,
    radius: usize,
) -> Result<NondegenerateReport> {
    crate::calculus::check_exponent(q)?;
    if r >= radius {
        return Err(Error::Invalid(format!(
            "need r < R, got r = {r}, R = {radius}"
        )));
    }
    let mu0 = fam
        .min_measure()
        .ok_or_else(|| Error::NoMeasureBound(fam.name().to_string()))?
        .as_f64();
    let (ball, values) = materialize_with(fam, radius, f)?;
    let dist = ball.graph.distances_from(&ball.root)?;
    let (mut total, mut tail) = (S::zero(), S::zero());
    let (mut annulus_max, mut inner_max) = (0f64, 0f64);
    for (i, x) in ball.graph.vertices().enumerate() {
        let Some(d) = dist[i].filter(|d| *d <= radius) else {
            continue;
        };
        let v = values.value(x)?;
        let term = abs_pow(v, q)?.expect("q > 0").0 * ball.graph.measure_at(i).clone();
        total = total + term.clone();
        if d > r {
            tail = tail + term;
            annulus_max = annulus_max.max(v.abs().as_f64());
        } else {
            inner_max = inner_max.max(v.abs().as_f64());
        }
    }
    let tail = tail.as_f64();
    let certified_bound = (tail / mu0).powf(1.0 / q);
    let bound_holds = certified_bound * (1.0 + 1e-12) >= annulus_max;
    let verdict = if certified_bound < inner_max {
        NondegenerateVerdict::LqAtScale
    } else {
        NondegenerateVerdict::NotLqAtScale
    };
    Ok(NondegenerateReport {
        min_measure: mu0,
        total: total.as_f64(),
        tail,
        certified_bound,
        annulus_max,
        inner_max,
        bound_holds,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use crate::scalar::Rational;
    use num_traits::One;

    fn path(weights: &[Rational]) -> WeightedGraph<Rational> {
        let names: Vec<String> = (0..=weights.len()).map(|i| i.to_string()).collect();
        WeightedGraph::from_edges(
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (names[i].as_str(), names[i + 1].as_str(), w.clone())),
        )
        .unwrap()
    }

    fn set(xs: impl IntoIterator<Item = usize>) -> VertexSet {
        xs.into_iter().map(|i| i.to_string()).collect()
    }

    fn problem<'g>(
        g: &'g WeightedGraph<Rational>,
        interior: VertexSet,
        bc: &[(usize, i64)],
    ) -> DirichletProblem<'g, Rational> {
        DirichletProblem {
            graph: g,
            domain: Domain::new(g, interior).unwrap(),
            boundary_values: bc
                .iter()
                .map(|(k, v)| (k.to_string(), Rational::from_int(*v)))
                .collect(),
            source: None,
        }
    }

    #[test]
    fn linear_interpolation_on_path() {
        let g = path(&vec![Rational::one(); 10]);
        let p = problem(&g, set(1..=9), &[(0, 0), (10, 1)]);
        let rep = solve_dirichlet(&p, &SolveOptions::default()).unwrap();
        assert_eq!(rep.method, UsedMethod::Direct);
        assert!(num_traits::Zero::is_zero(&rep.residual));
        for n in 0..=10i64 {
            assert_eq!(
                *rep.solution.value(&n.to_string()).unwrap(),
                Rational::from_ratio(n, 10)
            );
        }
    }

    #[test]
    fn weighted_single_equation() {
        let g = path(&[Rational::from_int(1), Rational::from_int(2)]);
        let p = problem(&g, set([1]), &[(0, 0), (2, 3)]);
        let rep = solve_dirichlet(&p, &SolveOptions::default()).unwrap();
        assert_eq!(*rep.solution.value("1").unwrap(), Rational::from_int(2));
    }

    #[test]
    fn constant_boundary_gives_constant() {
        let g = path(&vec![Rational::from_ratio(1, 3); 6]);
        let p = problem(&g, set(1..=5), &[(0, 4), (6, 4)]);
        let rep = solve_dirichlet(&p, &SolveOptions::default()).unwrap();
        assert!(rep
            .solution
            .iter()
            .all(|(_, v)| *v == Rational::from_int(4)));
        let v = check_max_principle(&g, &rep.solution, &p.domain, &Rational::from_int(0)).unwrap();
        assert!(v.equality_case && v.constant_on_closure && v.holds());
    }

    #[test]
    fn error_paths() {
        let g = path(&vec![Rational::one(); 6]);
        let all = Domain::new(&g, set(0..=6)).unwrap();
        let p = DirichletProblem {
            graph: &g,
            domain: all,
            boundary_values: VertexFunction::new(),
            source: None,
        };
        assert!(matches!(
            solve_dirichlet(&p, &SolveOptions::default()),
            Err(Error::NoBoundary)
        ));

        let split = problem(&g, set([1, 2, 4, 5]), &[(0, 0), (3, 0), (6, 0)]);
        match solve_dirichlet(&split, &SolveOptions::default()) {
            Err(Error::DisconnectedDomain(c)) => {
                assert_eq!(c, vec!["4".to_string(), "5".to_string()])
            }
            other => panic!("{other:?}"),
        }

        let missing = problem(&g, set(1..=5), &[(0, 0)]);
        assert!(matches!(
            solve_dirichlet(&missing, &SolveOptions::default()),
            Err(Error::MissingBoundaryValue(v)) if v == "6"
        ));

        let p = problem(&g, set(1..=5), &[(0, 0), (6, 1)]);
        let opts = SolveOptions {
            method: Method::Iterative,
            ..SolveOptions::default()
        };
        assert!(matches!(
            solve_dirichlet(&p, &opts),
            Err(Error::ModeMismatch(_))
        ));
    }

    #[test]
    fn direct_and_iterative_agree() {
        let names: Vec<String> = (0..=30).map(|i| i.to_string()).collect();
        let g: WeightedGraph<f64> = WeightedGraph::from_edges((0..30).map(|i| {
            (
                names[i].as_str(),
                names[i + 1].as_str(),
                1.0 + (i % 3) as f64,
            )
        }))
        .unwrap();
        let domain = Domain::new(&g, set(1..=29)).unwrap();
        let bc: VertexFunction<f64> = [("0".to_string(), -2.0), ("30".to_string(), 5.0)]
            .into_iter()
            .collect();
        let src = VertexFunction::constant(g.vertices(), -0.01);
        let p = DirichletProblem {
            graph: &g,
            domain,
            boundary_values: bc,
            source: Some(src),
        };
        let tol = 1e-10;
        let direct = solve_dirichlet(
            &p,
            &SolveOptions {
                method: Method::Direct,
                ..Default::default()
            },
        )
        .unwrap();
        let iter = solve_dirichlet(
            &p,
            &SolveOptions {
                method: Method::Iterative,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(iter.method, UsedMethod::Iterative);
        assert!(direct.residual <= tol && iter.residual <= tol);
        for (x, v) in direct.solution.iter() {
            assert!((v - iter.solution.value(x).unwrap()).abs() <= 10.0 * tol * 1e3);
        }
    }

    #[test]
    fn iteration_cap_is_reported() {
        let names: Vec<String> = (0..=40).map(|i| i.to_string()).collect();
        let g: WeightedGraph<f64> = WeightedGraph::from_edges(
            (0..40).map(|i| (names[i].as_str(), names[i + 1].as_str(), 1.0)),
        )
        .unwrap();
        let domain = Domain::new(&g, set(1..=39)).unwrap();
        let bc: VertexFunction<f64> = [("0".to_string(), 0.0), ("40".to_string(), 1.0)]
            .into_iter()
            .collect();
        let p = DirichletProblem {
            graph: &g,
            domain,
            boundary_values: bc,
            source: None,
        };
        let opts = SolveOptions {
            method: Method::Iterative,
            max_iterations: 3,
            tol: 1e-12,
        };
        assert!(matches!(
            solve_dirichlet(&p, &opts),
            Err(Error::NoConvergence { iterations: 3, .. })
        ));
    }

    #[test]
    fn max_principle_rejects_superharmonic_input() {
        let g = path(&vec![Rational::one(); 4]);
        let d = Domain::new(&g, set(1..=3)).unwrap();
        let f: VertexFunction<Rational> = (0..=4)
            .map(|n: i64| (n.to_string(), Rational::from_int(-(n - 2) * (n - 2))))
            .collect();
        match check_max_principle(&g, &f, &d, &Rational::from_int(0)) {
            Err(Error::NotSubharmonic { vertex, .. }) => assert_eq!(vertex, "1"),
            other => panic!("{other:?}"),
        }
    }
}
