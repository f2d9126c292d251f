//! Seeded random instances and the property sweeps run by `check`.
//!
//! Weights and values are small rationals `p/q`, so rational-mode runs stay
//! exact and float-mode runs see the same instances rounded.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::calculus::{
    check_green, check_l1_preservation, classify, gradient, laplacian, operator_norm_check,
    transition_apply, truncate_min,
};
use crate::dirichlet::{check_max_principle, solve_dirichlet, DirichletProblem, SolveOptions};
use crate::error::Result;
use crate::function::{Orientation, VertexFunction};
use crate::graph::{Domain, GraphBuilder, VertexSet, WeightedGraph};
use crate::scalar::Scalar;

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_ratio<S: Scalar>(rng: &mut SweepRng, lo: i64, hi: i64, max_den: i64) -> S {
    S::from_ratio(rng.gen_range(lo..=hi), rng.gen_range(1..=max_den))
}

fn vertex_name(i: usize) -> String {
    format!("v{i:03}")
}

/// Connected graph on `n` vertices: a random spanning tree plus `extra`
/// chords, with an occasional self-loop.
pub fn random_graph<S: Scalar>(
    rng: &mut SweepRng,
    n: usize,
    extra: usize,
) -> Result<WeightedGraph<S>> {
    let mut b = GraphBuilder::new();
    let weight = |rng: &mut SweepRng| random_ratio::<S>(rng, 1, 9, 4);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let w = weight(rng);
        b.add_edge(&vertex_name(order[k]), &vertex_name(parent), w)?;
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 20 * (extra + 1) {
        attempts += 1;
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v && !rng.gen_bool(0.2) {
            continue;
        }
        let w = weight(rng);
        if b.add_edge(&vertex_name(u), &vertex_name(v), w).is_ok() {
            added += 1;
        }
    }
    b.build()
}

pub fn random_function<S: Scalar>(
    rng: &mut SweepRng,
    g: &WeightedGraph<S>,
    nonnegative: bool,
) -> VertexFunction<S> {
    let lo = if nonnegative { 0 } else { -9 };
    g.vertices()
        .map(|x| (x.to_string(), random_ratio(rng, lo, 9, 5)))
        .collect()
}

/// A connected set of about `size` vertices grown from a random seed vertex.
pub fn random_connected_subset<S: Scalar>(
    rng: &mut SweepRng,
    g: &WeightedGraph<S>,
    size: usize,
) -> Result<VertexSet> {
    let ids: Vec<&str> = g.vertices().collect();
    let start = ids[rng.gen_range(0..ids.len())];
    let mut set = VertexSet::new();
    let mut frontier = VecDeque::from([start.to_string()]);
    while let Some(x) = frontier.pop_front() {
        if set.len() >= size {
            break;
        }
        if !set.insert(x.clone()) {
            continue;
        }
        let mut next: Vec<String> = g
            .neighbors(&x)?
            .into_iter()
            .map(|(y, _)| y.to_string())
            .collect();
        next.shuffle(rng);
        frontier.extend(next);
    }
    Ok(set)
}

/// A random Dirichlet instance whose interior leaves a nonempty boundary.
pub fn random_dirichlet<S: Scalar>(
    rng: &mut SweepRng,
    g: &WeightedGraph<S>,
    constant_boundary: bool,
) -> Result<(Domain, VertexFunction<S>)> {
    let size = rng.gen_range(1..g.len());
    let domain = Domain::new(g, random_connected_subset(rng, g, size)?)?;
    let c: S = random_ratio(rng, -9, 9, 5);
    let data = domain
        .boundary()
        .iter()
        .map(|y| {
            let v = if constant_boundary {
                c.clone()
            } else {
                random_ratio(rng, -9, 9, 5)
            };
            (y.clone(), v)
        })
        .collect();
    Ok((domain, data))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteCheck {
    fn new(name: &'static str) -> Self {
        SuiteCheck {
            name,
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "instances": self.instances,
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

fn tolerance<S: Scalar>(scale: f64) -> S {
    if S::is_exact() {
        S::zero()
    } else {
        S::from_f64(1e-10 * scale.max(1.0)).expect("finite")
    }
}

fn close<S: Scalar>(a: &S, b: &S) -> bool {
    let scale = a.as_f64().abs().max(b.as_f64().abs());
    (a.clone() - b.clone()).abs() <= tolerance::<S>(scale)
}

/// Green's formula, product rule, `Δ = P - I`, `L¹` preservation, the
/// operator-norm bound and min-truncation, each on `instances` random cases.
pub fn identity_suite<S: Scalar>(seed: u64, instances: usize) -> Result<Vec<SuiteCheck>> {
    let mut rng = rng(seed);
    let mut green = SuiteCheck::new("green");
    let mut product = SuiteCheck::new("product-rule");
    let mut transition = SuiteCheck::new("laplacian-is-P-minus-I");
    let mut l1 = SuiteCheck::new("l1-preservation");
    let mut opnorm = SuiteCheck::new("operator-norm");
    let mut truncation = SuiteCheck::new("min-truncation");

    for k in 0..instances {
        let n = rng.gen_range(5..=30);
        let extra = rng.gen_range(0..=n);
        let g: WeightedGraph<S> = random_graph(&mut rng, n, extra)?;
        let f = random_function(&mut rng, &g, false);
        let h = random_function(&mut rng, &g, false);

        let residual = check_green(&g, &f, &h, None)?;
        green.record(close(&residual, &S::zero()), || {
            format!("case {k}: residual {residual}")
        });

        let flags = (0..g.edge_count()).map(|_| rng.gen_bool(0.5)).collect();
        let o = Orientation::from_flags(flags);
        let fh: VertexFunction<S> = f
            .iter()
            .map(|(x, v)| (x.to_string(), v.clone() * h.value_or_zero(x)))
            .collect();
        let mut ok = true;
        for e in 0..g.edge_count() {
            let (start, end) = o.endpoints(&g, e);
            let lhs = gradient(&g, &o, &fh, e)?;
            let rhs = if start == end {
                S::zero()
            } else {
                f.value(start)?.clone() * gradient(&g, &o, &h, e)?
                    + gradient(&g, &o, &f, e)? * h.value(end)?.clone()
            };
            ok &= close(&lhs, &rhs);
        }
        product.record(ok, || format!("case {k}"));

        let mut ok = true;
        for x in g.vertices() {
            ok &= close(
                &(transition_apply(&g, &f, x)? - f.value(x)?.clone()),
                &laplacian(&g, &f, x)?,
            );
        }
        transition.record(ok, || format!("case {k}"));

        let fpos = random_function(&mut rng, &g, true);
        let residual = check_l1_preservation(&g, &fpos, None)?;
        l1.record(close(&residual, &S::zero()), || {
            format!("case {k}: residual {residual}")
        });

        if !f.support().is_empty() {
            let q = [1.0, 1.5, 2.0, 3.0][k % 4];
            let ratio = operator_norm_check(&g, &f, q)?;
            opnorm.record(ratio <= 2.0 + 1e-12, || {
                format!("case {k}: ratio {ratio} at q = {q}")
            });
        }

        let (domain, data) = random_dirichlet(&mut rng, &g, false)?;
        let harmonic = solve_dirichlet(
            &DirichletProblem {
                graph: &g,
                domain: domain.clone(),
                boundary_values: data,
                source: None,
            },
            &SolveOptions::default(),
        )?
        .solution;
        let a: S = random_ratio(&mut rng, -9, 9, 5);
        let tol = tolerance::<S>(harmonic.sup_abs().as_f64());
        let class = classify(&g, &truncate_min(&harmonic, &a), &domain, &tol)?;
        truncation.record(class.is_superharmonic(), || {
            format!("case {k}: verdict {}", class.verdict.as_str())
        });
    }
    Ok(vec![green, product, transition, l1, opnorm, truncation])
}

/// Random Dirichlet solves checked against the maximum principle; every
/// fifth case uses constant boundary data to exercise the equality case.
pub fn max_principle_suite<S: Scalar>(seed: u64, cases: usize) -> Result<Vec<SuiteCheck>> {
    let mut rng = rng(seed);
    let mut bound = SuiteCheck::new("max-principle-bound");
    let mut rigidity = SuiteCheck::new("max-principle-rigidity");
    let mut residual = SuiteCheck::new("dirichlet-residual");
    for k in 0..cases {
        let n = rng.gen_range(6..=40);
        let extra = rng.gen_range(0..=n);
        let g: WeightedGraph<S> = random_graph(&mut rng, n, extra)?;
        let constant = k % 5 == 0;
        let (domain, data) = random_dirichlet(&mut rng, &g, constant)?;
        let report = solve_dirichlet(
            &DirichletProblem {
                graph: &g,
                domain: domain.clone(),
                boundary_values: data.clone(),
                source: None,
            },
            &SolveOptions::default(),
        )?;
        let tol = tolerance::<S>(report.solution.sup_abs().as_f64());
        let v = check_max_principle(&g, &report.solution, &domain, &tol)?;
        bound.record(v.bound_holds, || {
            format!("case {k}: {} > {}", v.max_interior, v.max_boundary)
        });
        let data_constant = data.iter().all(|(_, x)| close(x, &v.max_boundary));
        rigidity.record(v.equality_case == data_constant && v.holds(), || {
            format!(
                "case {k}: equality {} with constant data {}",
                v.equality_case, data_constant
            )
        });
        let res_ok = if S::is_exact() {
            report.residual.is_zero()
        } else {
            report.residual <= SolveOptions::<S>::default().tol
        };
        residual.record(res_ok, || format!("case {k}: residual {}", report.residual));
    }
    Ok(vec![bound, rigidity, residual])
}
