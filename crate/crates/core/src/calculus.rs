//! First-order calculus on weighted graphs.
//!
//! `Δf(x) = (1/μ_x) Σ_y μ_xy (f(y) - f(x))`, `Pf(x) = Σ_y (μ_xy/μ_x) f(y)`,
//! and `∇_e f = f(end) - f(start)` for an oriented edge. Every operation that
//! needs the full neighborhood of a vertex refuses to evaluate at truncated
//! vertices or where the function has no value.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::function::{EdgeFunction, Orientation, VertexFunction};
use crate::graph::{Domain, VertexSet, WeightedGraph};
use crate::scalar::{abs_pow, Scalar};

fn value_at<S: Scalar>(g: &WeightedGraph<S>, vals: &[Option<S>], i: usize) -> Result<S> {
    vals[i]
        .clone()
        .ok_or_else(|| Error::MissingValue(g.id(i).to_string()))
}

fn check_complete<S: Scalar>(g: &WeightedGraph<S>, i: usize) -> Result<()> {
    if g.truncated_at(i) {
        Err(Error::TruncatedNeighborhood(g.id(i).to_string()))
    } else {
        Ok(())
    }
}

pub(crate) fn laplacian_idx<S: Scalar>(
    g: &WeightedGraph<S>,
    vals: &[Option<S>],
    i: usize,
) -> Result<S> {
    check_complete(g, i)?;
    let fx = value_at(g, vals, i)?;
    let mut acc = S::zero();
    for &(n, e) in g.adj(i) {
        if n == i {
            continue;
        }
        let fy = value_at(g, vals, n)?;
        acc = acc + g.edge_data(e).weight.clone() * (fy - fx.clone());
    }
    Ok(acc / g.measure_at(i).clone())
}

fn transition_idx<S: Scalar>(g: &WeightedGraph<S>, vals: &[Option<S>], i: usize) -> Result<S> {
    check_complete(g, i)?;
    let mut acc = S::zero();
    for &(n, e) in g.adj(i) {
        acc = acc + g.edge_data(e).weight.clone() * value_at(g, vals, n)?;
    }
    Ok(acc / g.measure_at(i).clone())
}

pub fn laplacian<S: Scalar>(g: &WeightedGraph<S>, f: &VertexFunction<S>, x: &str) -> Result<S> {
    let i = g.idx(x)?;
    laplacian_idx(g, &f.align(g), i)
}

/// `Δf` on every vertex of `set`.
pub fn laplacian_on<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    set: &VertexSet,
) -> Result<VertexFunction<S>> {
    let vals = f.align(g);
    set.iter()
        .map(|x| Ok((x.clone(), laplacian_idx(g, &vals, g.idx(x)?)?)))
        .collect()
}

pub fn transition_apply<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    x: &str,
) -> Result<S> {
    let i = g.idx(x)?;
    transition_idx(g, &f.align(g), i)
}

/// `∇_e f` under `orientation`; zero on self-loops.
pub fn gradient<S: Scalar>(
    g: &WeightedGraph<S>,
    orientation: &Orientation,
    f: &VertexFunction<S>,
    e: usize,
) -> Result<S> {
    let edge = g
        .edge(e)
        .ok_or_else(|| Error::Invalid(format!("no edge with index {e}")))?;
    if edge.is_loop() {
        return Ok(S::zero());
    }
    let (start, end) = orientation.endpoints(g, e);
    Ok(f.value(end)?.clone() - f.value(start)?.clone())
}

/// `∇f` on every edge.
pub fn gradient_field<S: Scalar>(
    g: &WeightedGraph<S>,
    orientation: &Orientation,
    f: &VertexFunction<S>,
) -> Result<EdgeFunction<S>> {
    (0..g.edge_count())
        .map(|e| gradient(g, orientation, f, e))
        .collect::<Result<Vec<_>>>()
        .map(EdgeFunction::new)
}

/// `⟨f1, f2⟩ = Σ_x f1(x) f2(x) μ_x`; absent values count as zero.
pub fn inner_product_v<S: Scalar>(
    g: &WeightedGraph<S>,
    f1: &VertexFunction<S>,
    f2: &VertexFunction<S>,
) -> S {
    let mut acc = S::zero();
    for (i, x) in g.vertices().enumerate() {
        if let (Some(a), Some(b)) = (f1.get(x), f2.get(x)) {
            acc = acc + a.clone() * b.clone() * g.measure_at(i).clone();
        }
    }
    acc
}

/// `⟨u1, u2⟩ = Σ_e u1(e) u2(e) μ_e`.
pub fn inner_product_e<S: Scalar>(
    g: &WeightedGraph<S>,
    u1: &EdgeFunction<S>,
    u2: &EdgeFunction<S>,
) -> Result<S> {
    if u1.len() != g.edge_count() || u2.len() != g.edge_count() {
        return Err(Error::Invalid(
            "edge function does not match the graph".into(),
        ));
    }
    Ok(g.edges().fold(S::zero(), |acc, e| {
        acc + u1.get(e.index).clone() * u2.get(e.index).clone() * e.weight.clone()
    }))
}

/// Residual `⟨Δf, h⟩ + ⟨∇f, ∇h⟩` for a finitely supported test function `h`.
///
/// The support of `h` must avoid truncated vertices and, when `domain` is
/// given, lie inside it; `f` must be known on the support's 1-neighborhood.
pub fn check_green<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    h: &VertexFunction<S>,
    domain: Option<&VertexSet>,
) -> Result<S> {
    let support = h.support();
    let fv = f.align(g);
    let mut pairing_v = S::zero();
    for x in &support {
        let i = g.idx(x)?;
        if g.truncated_at(i) || domain.is_some_and(|d| !d.contains(x)) {
            return Err(Error::SupportLeak(x.clone()));
        }
        pairing_v =
            pairing_v + laplacian_idx(g, &fv, i)? * h.value_or_zero(x) * g.measure_at(i).clone();
    }
    let mut pairing_e = S::zero();
    for e in g.edges() {
        if e.is_loop() || !(support.contains(e.u) || support.contains(e.v)) {
            continue;
        }
        let df = f.value(e.v)?.clone() - f.value(e.u)?.clone();
        let dh = h.value_or_zero(e.v) - h.value_or_zero(e.u);
        pairing_e = pairing_e + e.weight.clone() * df * dh;
    }
    Ok(pairing_v + pairing_e)
}

/// Power sum `Σ |f|^q μ_x` and norm `(Σ |f|^q μ_x)^{1/q}` over a set.
#[derive(Debug, Clone, PartialEq)]
pub struct LqValue<S> {
    pub power_sum: S,
    pub norm: f64,
    /// Set in rational mode when a non-integer `q` forced float evaluation.
    pub approximate: bool,
}

pub(crate) fn check_exponent(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(q))
    }
}

pub fn lq_norm<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    q: f64,
    domain: &VertexSet,
) -> Result<LqValue<S>> {
    check_exponent(q)?;
    let mut sum = S::zero();
    let mut approximate = false;
    for x in domain {
        let mu = g.vertex_measure(x)?;
        let (p, approx) = abs_pow(f.value(x)?, q)?.expect("q > 0");
        approximate |= approx;
        sum = sum + p * mu.clone();
    }
    Ok(LqValue {
        norm: sum.as_f64().powf(1.0 / q),
        power_sum: sum,
        approximate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexVerdict {
    Harmonic,
    StrictlySubharmonic,
    StrictlySuperharmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainVerdict {
    Harmonic,
    Subharmonic,
    Superharmonic,
    None,
}

impl DomainVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            DomainVerdict::Harmonic => "harmonic",
            DomainVerdict::Subharmonic => "subharmonic",
            DomainVerdict::Superharmonic => "superharmonic",
            DomainVerdict::None => "none",
        }
    }
}

impl VertexVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexVerdict::Harmonic => "harmonic",
            VertexVerdict::StrictlySubharmonic => "strictly-subharmonic",
            VertexVerdict::StrictlySuperharmonic => "strictly-superharmonic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexClass<S> {
    pub laplacian: S,
    pub verdict: VertexVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification<S> {
    pub vertices: BTreeMap<String, VertexClass<S>>,
    pub verdict: DomainVerdict,
    /// Relative tolerance coefficient; the threshold at `x` is
    /// `tolerance * max(1, sup |f| over x and its neighbors)`.
    pub tolerance: S,
}

impl<S: Scalar> Classification<S> {
    pub fn is_harmonic(&self) -> bool {
        self.verdict == DomainVerdict::Harmonic
    }

    /// Harmonic functions count as subharmonic.
    pub fn is_subharmonic(&self) -> bool {
        matches!(
            self.verdict,
            DomainVerdict::Harmonic | DomainVerdict::Subharmonic
        )
    }

    pub fn is_superharmonic(&self) -> bool {
        matches!(
            self.verdict,
            DomainVerdict::Harmonic | DomainVerdict::Superharmonic
        )
    }

    pub fn with_verdict(&self, v: VertexVerdict) -> impl Iterator<Item = &str> + '_ {
        self.vertices
            .iter()
            .filter(move |(_, c)| c.verdict == v)
            .map(|(x, _)| x.as_str())
    }

    pub fn to_json(&self) -> Value {
        let per_vertex: serde_json::Map<String, Value> = self
            .vertices
            .iter()
            .map(|(x, c)| {
                (
                    x.clone(),
                    json!({"laplacian": c.laplacian.to_json(), "verdict": c.verdict.as_str()}),
                )
            })
            .collect();
        json!({
            "scalar": S::MODE.as_str(),
            "tolerance": self.tolerance.to_json(),
            "verdict": self.verdict.as_str(),
            "vertices": per_vertex,
        })
    }
}

/// `1e-9` in float mode, `0` in rational mode.
pub fn default_tolerance<S: Scalar>() -> S {
    if S::is_exact() {
        S::zero()
    } else {
        S::from_f64(1e-9).expect("finite")
    }
}

fn local_scale<S: Scalar>(g: &WeightedGraph<S>, vals: &[Option<S>], i: usize) -> S {
    let mut m = S::one();
    for j in std::iter::once(i).chain(g.adj(i).iter().map(|&(n, _)| n)) {
        if let Some(v) = &vals[j] {
            m = S::max_of(m, v.abs());
        }
    }
    m
}

pub fn classify<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    omega: &Domain,
    tol: &S,
) -> Result<Classification<S>> {
    if *tol < S::zero() {
        return Err(Error::Invalid("negative tolerance".into()));
    }
    if S::is_exact() && !tol.is_zero() {
        return Err(Error::NonzeroExactTolerance);
    }
    let vals = f.align(g);
    let mut vertices = BTreeMap::new();
    let (mut any_sub, mut any_super) = (false, false);
    for x in omega.interior() {
        let i = g.idx(x)?;
        let lap = laplacian_idx(g, &vals, i)?;
        let threshold = if tol.is_zero() {
            S::zero()
        } else {
            tol.clone() * local_scale(g, &vals, i)
        };
        let verdict = if lap > threshold {
            any_sub = true;
            VertexVerdict::StrictlySubharmonic
        } else if lap < -threshold.clone() {
            any_super = true;
            VertexVerdict::StrictlySuperharmonic
        } else {
            VertexVerdict::Harmonic
        };
        vertices.insert(
            x.clone(),
            VertexClass {
                laplacian: lap,
                verdict,
            },
        );
    }
    let verdict = match (any_sub, any_super) {
        (false, false) => DomainVerdict::Harmonic,
        (true, false) => DomainVerdict::Subharmonic,
        (false, true) => DomainVerdict::Superharmonic,
        (true, true) => DomainVerdict::None,
    };
    Ok(Classification {
        vertices,
        verdict,
        tolerance: tol.clone(),
    })
}

/// Result of `Δ^m f` together with its domain bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct IteratedLaplacian<S> {
    pub values: VertexFunction<S>,
    /// `|D_0|, |D_1|, ..., |D_m|`: where `f`, `Δf`, ..., `Δ^m f` are known.
    pub domain_sizes: Vec<usize>,
    /// Number of applications that shrank the known domain.
    pub rings_lost: usize,
}

/// `Δ^m f` on `omega`. Each application is evaluated only where the previous
/// iterate is known on the full neighborhood.
pub fn iterate_laplacian<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    m: usize,
    omega: &VertexSet,
) -> Result<IteratedLaplacian<S>> {
    if m == 0 {
        return Err(Error::Invalid("iteration count must be positive".into()));
    }
    let mut current = f.align(g);
    let mut sizes = vec![current.iter().filter(|v| v.is_some()).count()];
    let mut rings_lost = 0;
    for _ in 0..m {
        let next: Vec<Option<S>> = (0..g.len())
            .map(|i| {
                let known = current[i].is_some()
                    && !g.truncated_at(i)
                    && g.adj(i).iter().all(|&(n, _)| current[n].is_some());
                if known {
                    laplacian_idx(g, &current, i).ok()
                } else {
                    None
                }
            })
            .collect();
        let size = next.iter().filter(|v| v.is_some()).count();
        if size < *sizes.last().unwrap() {
            rings_lost += 1;
        }
        sizes.push(size);
        current = next;
    }
    let mut values = VertexFunction::new();
    for x in omega {
        match &current[g.idx(x)?] {
            Some(v) => values.insert(x.clone(), v.clone()),
            None => return Err(Error::HaloDepth { required: m }),
        }
    }
    Ok(IteratedLaplacian {
        values,
        domain_sizes: sizes,
        rings_lost,
    })
}

/// `‖Δf‖_q / ‖f‖_q` for finitely supported `f`, the numerator taken over the
/// support's 1-neighborhood. Bounded by 2 since `Δ = P - I` and `P` is an
/// `L^q` contraction.
pub fn operator_norm_check<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    q: f64,
) -> Result<f64> {
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::InvalidExponent(q));
    }
    let support = f.support();
    if support.is_empty() {
        return Err(Error::ZeroFunction);
    }
    let neighborhood: VertexSet = support.union(&g.boundary(&support)?).cloned().collect();
    let vals: Vec<Option<S>> = g.vertices().map(|x| Some(f.value_or_zero(x))).collect();
    let mut num = S::zero();
    for x in &neighborhood {
        let i = g.idx(x)?;
        let lap = laplacian_idx(g, &vals, i)?;
        num = num + abs_pow(&lap, q)?.expect("q >= 1").0 * g.measure_at(i).clone();
    }
    let mut den = S::zero();
    for x in &support {
        den = den
            + abs_pow(&f.value_or_zero(x), q)?.expect("q >= 1").0 * g.vertex_measure(x)?.clone();
    }
    Ok((num.as_f64() / den.as_f64()).powf(1.0 / q))
}

/// `‖Pf‖_1 - ‖f‖_1` for `f >= 0` on a finite graph, with `‖Pf‖_1` summed
/// over `region` (all vertices by default). Absent values count as zero.
/// Summed over the whole graph the residual vanishes identically; over a
/// proper region it measures the mass that `P` pushes out of it.
pub fn check_l1_preservation<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    region: Option<&VertexSet>,
) -> Result<S> {
    if let Some((x, _)) = f.iter().find(|(_, v)| **v < S::zero()) {
        return Err(Error::Negative {
            vertex: x.to_string(),
        });
    }
    let vals: Vec<S> = g.vertices().map(|x| f.value_or_zero(x)).collect();
    let mut pf_norm = S::zero();
    for (i, x) in g.vertices().enumerate() {
        if region.is_some_and(|r| !r.contains(x)) {
            continue;
        }
        let mu = g.measure_at(i);
        let mut pf = S::zero();
        for &(n, e) in g.adj(i) {
            pf = pf + g.edge_data(e).weight.clone() / mu.clone() * vals[n].clone();
        }
        pf_norm = pf_norm + pf * mu.clone();
    }
    let f_norm = vals.iter().enumerate().fold(S::zero(), |acc, (i, v)| {
        acc + v.clone() * g.measure_at(i).clone()
    });
    Ok(pf_norm - f_norm)
}

/// Pointwise `min{f, a}`.
pub fn truncate_min<S: Scalar>(f: &VertexFunction<S>, a: &S) -> VertexFunction<S> {
    f.map(|v| S::min_of(v.clone(), a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::{One, Zero};

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    /// Unit-weight path `lo..=hi`, endpoints truncated.
    fn line(lo: i64, hi: i64) -> WeightedGraph<Rational> {
        let mut b = crate::graph::GraphBuilder::new();
        for n in lo..hi {
            b.add_edge(&n.to_string(), &(n + 1).to_string(), Rational::one())
                .unwrap();
        }
        b.mark_truncated(&lo.to_string())
            .mark_truncated(&hi.to_string());
        b.build().unwrap()
    }

    fn on_line(
        g: &WeightedGraph<Rational>,
        h: impl Fn(i64) -> Rational,
    ) -> VertexFunction<Rational> {
        VertexFunction::from_fn(g.vertices(), |v| h(v.parse().unwrap()))
    }

    #[test]
    fn laplacian_of_square_is_one() {
        let g = line(-10, 10);
        let f = on_line(&g, |n| Rational::from_int(n * n));
        for n in -9..=9 {
            assert_eq!(laplacian(&g, &f, &n.to_string()).unwrap(), Rational::one());
        }
        assert!(matches!(
            laplacian(&g, &f, "10"),
            Err(Error::TruncatedNeighborhood(_))
        ));
    }

    #[test]
    fn laplacian_of_constant_vanishes() {
        let g = line(0, 5);
        let f = VertexFunction::constant(g.vertices(), r(7, 3));
        assert!(laplacian(&g, &f, "2").unwrap().is_zero());
    }

    #[test]
    fn missing_neighbor_value_is_named() {
        let g = line(0, 5);
        let mut f = on_line(&g, Rational::from_int);
        f = f.restrict(&["1", "2"].iter().map(|s| s.to_string()).collect());
        match laplacian(&g, &f, "2") {
            Err(Error::MissingValue(v)) => assert_eq!(v, "3"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transition_on_path() {
        let g =
            WeightedGraph::from_edges([("0", "1", Rational::one()), ("1", "2", Rational::one())])
                .unwrap();
        let f: VertexFunction<Rational> = [("0", 0), ("1", 0), ("2", 3)]
            .iter()
            .map(|(k, v)| (k.to_string(), Rational::from_int(*v)))
            .collect();
        assert_eq!(transition_apply(&g, &f, "1").unwrap(), r(3, 2));
        let c = VertexFunction::constant(g.vertices(), r(5, 1));
        assert_eq!(transition_apply(&g, &c, "0").unwrap(), r(5, 1));
    }

    #[test]
    fn gradient_on_loop_is_zero() {
        let g = WeightedGraph::from_edges([("a", "a", 1.0), ("a", "b", 1.0)]).unwrap();
        let f: VertexFunction<f64> =
            VertexFunction::from_fn(g.vertices(), |v| if v == "a" { 1.0 } else { 4.0 });
        let o = Orientation::canonical(&g);
        let lp = g.edges().find(|e| e.is_loop()).unwrap().index;
        assert_eq!(gradient(&g, &o, &f, lp).unwrap(), 0.0);
        let ab = g.edges().find(|e| !e.is_loop()).unwrap().index;
        assert_eq!(gradient(&g, &o, &f, ab).unwrap(), 3.0);
    }

    #[test]
    fn inner_products() {
        let g = WeightedGraph::from_edges([("u", "v", r(2, 1))]).unwrap();
        let ind = VertexFunction::indicator(g.vertices(), "u");
        assert_eq!(inner_product_v(&g, &ind, &ind), r(2, 1));
        assert!(inner_product_v(
            &g,
            &ind,
            &VertexFunction::constant(g.vertices(), Rational::zero())
        )
        .is_zero());
        let u = EdgeFunction::new(vec![r(3, 1)]);
        assert_eq!(inner_product_e(&g, &u, &u).unwrap(), r(18, 1));
    }

    #[test]
    fn green_with_zero_test_function() {
        let g = line(0, 6);
        let f = on_line(&g, |n| Rational::from_int(n * n * n));
        let h = VertexFunction::constant(g.vertices(), Rational::zero());
        assert!(check_green(&g, &f, &h, None).unwrap().is_zero());
        let leak = VertexFunction::indicator(g.vertices(), "6");
        assert!(matches!(
            check_green(&g, &f, &leak, None),
            Err(Error::SupportLeak(_))
        ));
    }

    #[test]
    fn lq_norm_basics() {
        let g = line(0, 4);
        let zero = VertexFunction::constant(g.vertices(), Rational::zero());
        let all = g.vertices().map(String::from).collect();
        let v = lq_norm(&g, &zero, 2.0, &all).unwrap();
        assert!(v.power_sum.is_zero());
        assert!(matches!(
            lq_norm(&g, &zero, 0.0, &all),
            Err(Error::InvalidExponent(_))
        ));
        assert!(matches!(
            lq_norm(&g, &zero, -1.0, &all),
            Err(Error::InvalidExponent(_))
        ));
    }

    #[test]
    fn classify_rejects_tolerance_in_exact_mode() {
        let g = line(0, 4);
        let f = on_line(&g, Rational::from_int);
        let d = Domain::new(&g, ["1", "2", "3"].iter().map(|s| s.to_string()).collect()).unwrap();
        assert!(classify(&g, &f, &d, &Rational::zero())
            .unwrap()
            .is_harmonic());
        assert!(matches!(
            classify(&g, &f, &d, &r(1, 100)),
            Err(Error::NonzeroExactTolerance)
        ));
    }

    #[test]
    fn classify_float_tolerance_scales_with_values() {
        let mut b = crate::graph::GraphBuilder::<f64>::new();
        for n in 0..4 {
            b.add_edge(&n.to_string(), &(n + 1).to_string(), 1.0)
                .unwrap();
        }
        let g = b.build().unwrap();
        // a linear function of size 1e12 with a rounding-scale perturbation
        let f = VertexFunction::from_fn(g.vertices(), |v| {
            let n: f64 = v.parse().unwrap();
            1e12 * n + if v == "2" { 1e-3 } else { 0.0 }
        });
        let d = Domain::new(&g, ["1", "2", "3"].iter().map(|s| s.to_string()).collect()).unwrap();
        assert!(classify(&g, &f, &d, &1e-9).unwrap().is_harmonic());
        assert_eq!(
            classify(&g, &f, &d, &0.0).unwrap().verdict,
            DomainVerdict::None
        );
    }

    #[test]
    fn iterate_square_twice() {
        let g = line(-12, 12);
        let f = on_line(&g, |n| Rational::from_int(n * n));
        let inner: VertexSet = (-10..=10).map(|n: i64| n.to_string()).collect();
        let it = iterate_laplacian(&g, &f, 2, &inner).unwrap();
        assert!(it.values.iter().all(|(_, v)| v.is_zero()));
        assert_eq!(it.domain_sizes, vec![25, 23, 21]);
        assert_eq!(it.rings_lost, 2);
        let lin = on_line(&g, Rational::from_int);
        let once = iterate_laplacian(&g, &lin, 1, &inner).unwrap();
        assert!(once.values.iter().all(|(_, v)| v.is_zero()));
        let too_wide: VertexSet = (-11..=11).map(|n: i64| n.to_string()).collect();
        assert!(matches!(
            iterate_laplacian(&g, &f, 2, &too_wide),
            Err(Error::HaloDepth { required: 2 })
        ));
    }

    #[test]
    fn operator_norm_examples() {
        let tri =
            WeightedGraph::from_edges([("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)]).unwrap();
        let ind = VertexFunction::indicator(tri.vertices(), "a");
        let ratio = operator_norm_check(&tri, &ind, 2.0).unwrap();
        assert!(ratio <= 2.0);
        // Δ1_a = (-1, 1/2, 1/2) with μ = 2: ratio^2 = (2 + 1/2 + 1/2) / 2
        assert!((ratio - 1.5f64.sqrt()).abs() < 1e-12);
        let c = VertexFunction::constant(tri.vertices(), 3.0);
        assert_eq!(operator_norm_check(&tri, &c, 1.0).unwrap(), 0.0);
        let z = VertexFunction::constant(tri.vertices(), 0.0);
        assert!(matches!(
            operator_norm_check(&tri, &z, 1.0),
            Err(Error::ZeroFunction)
        ));
    }

    #[test]
    fn l1_preservation_on_triangle() {
        let tri = WeightedGraph::from_edges([
            ("a", "b", r(1, 1)),
            ("b", "c", r(2, 1)),
            ("a", "c", r(1, 3)),
        ])
        .unwrap();
        let ind = VertexFunction::indicator(tri.vertices(), "b");
        assert!(check_l1_preservation(&tri, &ind, None).unwrap().is_zero());
        let neg = VertexFunction::constant(tri.vertices(), r(-1, 1));
        assert!(matches!(
            check_l1_preservation(&tri, &neg, None),
            Err(Error::Negative { .. })
        ));
    }

    #[test]
    fn truncate_min_cases() {
        let g = line(0, 4);
        let f = on_line(&g, Rational::from_int);
        assert_eq!(truncate_min(&f, &r(10, 1)), f);
        let flat = truncate_min(&f, &r(-1, 1));
        assert!(flat.iter().all(|(_, v)| *v == r(-1, 1)));
    }
}
