//! Cutoff functions, both sides of the Caccioppoli-type energy inequality,
//! Karp-type growth profiles and the quantities `A_i`, `Q_i`, `β_i` of the
//! Liouville argument.
//!
//! The inequality's constant is never fixed: reports carry
//! `ratio = lhs / rhs_core`, so the estimate reads `ratio <= C`.
//!
//! Zero convention: in `min{f^{q-2}(x), f^{q-2}(y)}` a zero base with a
//! negative exponent is `+∞`, the min picks the finite side when there is
//! one, and an edge whose gradient vanishes contributes `0` whatever the
//! factor (`0·∞ = 0`).

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::calculus::{check_exponent, classify, VertexVerdict};
use crate::error::{Error, Result};
use crate::examples::{abs_x1, depth, dyadic_abs, lattice, regular_tree, square, DyadicLine};
use crate::family::{materialize_with, FunctionSource, GraphFamily};
use crate::function::{Orientation, VertexFunction};
use crate::graph::{Domain, VertexSet, WeightedGraph};
use crate::scalar::{abs_pow, Scalar};

fn float_slack<S: Scalar>() -> S {
    if S::is_exact() {
        S::zero()
    } else {
        S::from_f64(1e-12).expect("finite")
    }
}

/// Distances from `center`, checking every vertex within `radius` has its
/// full neighborhood.
fn distances_within<S: Scalar>(
    g: &WeightedGraph<S>,
    center: &str,
    radius: usize,
) -> Result<Vec<Option<usize>>> {
    let dist = g.distances_from(center)?;
    for (i, d) in dist.iter().enumerate() {
        if matches!(d, Some(d) if *d <= radius) && g.truncated_at(i) {
            return Err(Error::BallExceedsGraph {
                center: center.to_string(),
                required: radius + 1,
            });
        }
    }
    Ok(dist)
}

fn within(d: Option<usize>, radius: usize) -> bool {
    matches!(d, Some(d) if d <= radius)
}

/// `φ_{r,R}` around `center`: `1` on `B_{r+1}`, linear in between, `0` from
/// distance `R` on.
#[derive(Debug, Clone)]
pub struct CutoffProfile<S> {
    pub center: String,
    pub r: usize,
    pub outer: usize,
    pub phi: VertexFunction<S>,
}

impl<S: Scalar> CutoffProfile<S> {
    pub fn slope(&self) -> S {
        S::one() / S::from_int((self.outer - self.r - 1) as i64)
    }

    pub fn gradient_bound(&self) -> S {
        S::from_ratio(2, (self.outer - self.r) as i64)
    }

    pub fn value(&self, x: &str) -> S {
        self.phi.value_or_zero(x)
    }
}

fn phi_at<S: Scalar>(d: Option<usize>, r: usize, outer: usize) -> S {
    match d {
        Some(d) if d <= r + 1 => S::one(),
        Some(d) if d < outer => S::from_ratio((outer - d) as i64, (outer - r - 1) as i64),
        _ => S::zero(),
    }
}

/// Builds `φ_{r,R}` on `g` and checks its invariants on every vertex and
/// edge. `g` must contain `B_R(center)`.
pub fn cutoff<S: Scalar>(
    g: &WeightedGraph<S>,
    center: &str,
    r: usize,
    outer: usize,
) -> Result<CutoffProfile<S>> {
    if r < 1 || outer < r + 2 {
        return Err(Error::DegenerateCutoff { r, outer });
    }
    let dist = g.distances_from(center)?;
    for (i, d) in dist.iter().enumerate() {
        if within(*d, outer - 1) && g.truncated_at(i) {
            return Err(Error::BallExceedsGraph {
                center: center.to_string(),
                required: outer,
            });
        }
    }
    let values: Vec<S> = dist.iter().map(|d| phi_at(*d, r, outer)).collect();
    let profile = CutoffProfile {
        center: center.to_string(),
        r,
        outer,
        phi: g
            .vertices()
            .zip(&values)
            .map(|(x, v)| (x.to_string(), v.clone()))
            .collect(),
    };

    let broken = |what: String| Err(Error::Invalid(format!("cutoff invariant violated: {what}")));
    let slack = float_slack::<S>();
    for (i, v) in values.iter().enumerate() {
        let d = dist[i];
        if *v < S::zero() || *v > S::one() {
            return broken(format!("φ({}) = {v} outside [0, 1]", g.id(i)));
        }
        if within(d, r + 1) && !v.is_one() {
            return broken(format!("φ({}) != 1 inside B_(r+1)", g.id(i)));
        }
        if !within(d, outer - 1) && !v.is_zero() {
            return broken(format!("φ({}) != 0 at distance >= R", g.id(i)));
        }
    }
    let bound = profile.gradient_bound();
    for e in g.edges() {
        let (iu, iv) = (g.idx(e.u)?, g.idx(e.v)?);
        let (pu, pv) = (&values[iu], &values[iv]);
        let grad = (pv.clone() - pu.clone()).abs();
        if grad > bound.clone() + slack.clone() {
            return broken(format!("|∇φ| = {grad} on {}-{} exceeds {bound}", e.u, e.v));
        }
        let annulus = |d: Option<usize>| within(d, outer) && !within(d, r);
        if !grad.is_zero() && !(annulus(dist[iu]) && annulus(dist[iv])) {
            return broken(format!("∇φ != 0 on {}-{} outside the annulus", e.u, e.v));
        }
        let both_in = within(dist[iu], outer) && within(dist[iv], outer);
        let one_deep = outer >= 2 && (within(dist[iu], outer - 2) || within(dist[iv], outer - 2));
        if both_in && one_deep {
            let (lo, hi) = (
                S::min_of(pu.clone(), pv.clone()),
                S::max_of(pu.clone(), pv.clone()),
            );
            if hi > S::from_int(2) * lo + slack.clone() {
                return broken(format!("φ ratio above 2 on {}-{}", e.u, e.v));
            }
        }
    }
    Ok(profile)
}

/// `|x|^e`, with `None` for `+∞` (zero base, negative exponent).
fn ext_pow<S: Scalar>(x: &S, e: f64, approx: &mut bool) -> Result<Option<S>> {
    Ok(abs_pow(x, e)?.map(|(v, a)| {
        *approx |= a;
        v
    }))
}

fn ext_min<S: Scalar>(a: Option<S>, b: Option<S>) -> Option<S> {
    match (a, b) {
        (Some(a), Some(b)) => Some(S::min_of(a, b)),
        (a, b) => a.or(b),
    }
}

/// `factor · grad²·μ` under `0·∞ = 0`.
fn energy_term<S: Scalar>(weight: &S, grad: &S, factor: Option<S>) -> S {
    if grad.is_zero() {
        return S::zero();
    }
    match factor {
        Some(f) => weight.clone() * grad.clone() * grad.clone() * f,
        None => S::zero(),
    }
}

/// Checks `f >= 0` and `Δf >= 0` on `B_R(center)`.
fn check_nonnegative_subharmonic<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    center: &str,
    radius: usize,
    tol: &S,
) -> Result<Vec<Option<usize>>> {
    let dist = distances_within(g, center, radius)?;
    let ball: VertexSet = g
        .vertices()
        .zip(&dist)
        .filter(|(_, d)| within(**d, radius))
        .map(|(x, _)| x.to_string())
        .collect();
    for x in &ball {
        if *f.value(x)? < S::zero() {
            return Err(Error::Negative { vertex: x.clone() });
        }
    }
    let class = classify(g, f, &Domain::new(g, ball)?, tol)?;
    if let Some(x) = class
        .with_verdict(VertexVerdict::StrictlySuperharmonic)
        .next()
    {
        return Err(Error::NotSubharmonic {
            vertex: x.to_string(),
            laplacian: class.vertices[x].laplacian.to_string(),
        });
    }
    Ok(dist)
}

#[derive(Debug, Clone)]
pub struct SidesOptions<S> {
    /// Classification tolerance for the subharmonicity precondition.
    pub tol: S,
    /// Evaluate with `f + ε` instead of the zero convention.
    pub epsilon: Option<S>,
    /// Edge directions used for gradients; `None` means f-adapted.
    pub orientation: Option<Orientation>,
}

impl<S: Scalar> Default for SidesOptions<S> {
    fn default() -> Self {
        SidesOptions {
            tol: crate::calculus::default_tolerance(),
            epsilon: None,
            orientation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaccioppoliReport<S> {
    pub center: String,
    pub q: f64,
    pub r: usize,
    pub outer: usize,
    /// `Σ_{e=xy ⊂ B_r} μ_e |∇_e f|² min{f^{q-2}(x), f^{q-2}(y)}`.
    pub lhs: S,
    /// `(R - r)^{-2} Σ_{B_R \ B_r} f^q μ_x`.
    pub rhs_core: S,
    pub epsilon: Option<S>,
    /// Some power was evaluated in floating point.
    pub approximate: bool,
}

impl<S: Scalar> CaccioppoliReport<S> {
    pub fn ratio(&self) -> Option<S> {
        (self.rhs_core > S::zero()).then(|| self.lhs.clone() / self.rhs_core.clone())
    }

    /// `lhs > 0` with `rhs_core = 0` would contradict the inequality for
    /// every constant.
    pub fn is_violation(&self) -> bool {
        self.lhs > S::zero() && self.rhs_core.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "center": self.center,
            "q": self.q,
            "r": self.r,
            "R": self.outer,
            "lhs": self.lhs.to_json(),
            "rhs_core": self.rhs_core.to_json(),
            "ratio": self.ratio().map(|x| x.to_json()),
            "ratio_f64": self.ratio().map(|x| x.as_f64()),
            "epsilon": self.epsilon.as_ref().map(|e| e.to_json()),
            "approximate": self.approximate,
            "violation": self.is_violation(),
        })
    }
}

pub fn caccioppoli_sides<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    q: f64,
    center: &str,
    r: usize,
    outer: usize,
    opts: &SidesOptions<S>,
) -> Result<CaccioppoliReport<S>> {
    check_exponent(q)?;
    if q <= 1.0 {
        return Err(Error::InvalidExponent(q));
    }
    if r < 1 || outer < r + 2 {
        return Err(Error::DegenerateCutoff { r, outer });
    }
    let dist = check_nonnegative_subharmonic(g, f, center, outer, &opts.tol)?;
    cutoff(g, center, r, outer)?;

    let shift = opts.epsilon.clone().unwrap_or_else(S::zero);
    let vals: Vec<Option<S>> = g
        .vertices()
        .map(|x| f.get(x).map(|v| v.clone() + shift.clone()))
        .collect();
    let orientation = match &opts.orientation {
        Some(o) => o.clone(),
        None => Orientation::adapted(g, f)?,
    };
    let mut approx = false;
    let value = |i: usize| -> Result<&S> {
        vals[i]
            .as_ref()
            .ok_or_else(|| Error::MissingValue(g.id(i).to_string()))
    };

    let mut lhs = S::zero();
    for e in 0..g.edge_count() {
        let (s, t) = orientation.endpoint_idx(g, e);
        if !(within(dist[s], r) && within(dist[t], r)) {
            continue;
        }
        let (fs, ft) = (value(s)?, value(t)?);
        let grad = ft.clone() - fs.clone();
        let factor = ext_min(
            ext_pow(fs, q - 2.0, &mut approx)?,
            ext_pow(ft, q - 2.0, &mut approx)?,
        );
        lhs = lhs + energy_term(&g.edge_data(e).weight, &grad, factor);
    }

    let mut mass = S::zero();
    for (i, d) in dist.iter().enumerate() {
        if within(*d, outer) && !within(*d, r) {
            let p = ext_pow(value(i)?, q, &mut approx)?.expect("q > 0");
            mass = mass + p * g.measure_at(i).clone();
        }
    }
    let width = S::from_int((outer - r) as i64);
    Ok(CaccioppoliReport {
        center: center.to_string(),
        q,
        r,
        outer,
        lhs,
        rhs_core: mass / (width.clone() * width),
        epsilon: opts.epsilon.clone(),
        approximate: approx,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEntry<S> {
    pub radius: usize,
    /// `Σ_{B_R} |f|^q μ_x`.
    pub s: S,
    /// `S_R / R²`.
    pub a: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSeries<S> {
    pub center: String,
    pub q: f64,
    pub entries: Vec<GrowthEntry<S>>,
    pub approximate: bool,
}

impl<S: Scalar> GrowthSeries<S> {
    pub fn get(&self, radius: usize) -> Option<&GrowthEntry<S>> {
        self.entries.get(radius.checked_sub(1)?)
    }

    pub fn s(&self, radius: usize) -> f64 {
        self.get(radius).map_or(f64::NAN, |e| e.s.as_f64())
    }

    pub fn a(&self, radius: usize) -> f64 {
        self.get(radius).map_or(f64::NAN, |e| e.a.as_f64())
    }

    /// `R,S_R,A_R` with `.` decimals and LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("R,S_R,A_R\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{:?},{:?}\n",
                e.radius,
                e.s.as_f64(),
                e.a.as_f64()
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let num = |x: &S| {
            if self.approximate {
                json!(x.as_f64())
            } else {
                x.to_json()
            }
        };
        json!({
            "center": self.center,
            "q": self.q,
            "approximate": self.approximate,
            "entries": self.entries.iter().map(|e| json!({
                "R": e.radius,
                "S_R": num(&e.s),
                "A_R": num(&e.a),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `S_R` and `A_R` for `R = 1..=rmax` on a graph containing `B_rmax(center)`
/// with intrinsic measures.
pub fn growth_on_graph<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    center: &str,
    q: f64,
    rmax: usize,
) -> Result<GrowthSeries<S>> {
    check_exponent(q)?;
    let dist = distances_within(g, center, rmax)?;
    let mut shells = vec![S::zero(); rmax + 1];
    let mut approximate = false;
    for (i, x) in g.vertices().enumerate() {
        if let Some(d) = dist[i].filter(|d| *d <= rmax) {
            let p = ext_pow(f.value(x)?, q, &mut approximate)?.expect("q > 0");
            shells[d] = shells[d].clone() + p * g.measure_at(i).clone();
        }
    }
    let mut s = shells[0].clone();
    let mut entries = Vec::with_capacity(rmax);
    for (radius, shell) in shells.into_iter().enumerate().skip(1) {
        s = s + shell;
        let r2 = S::from_int((radius * radius) as i64);
        entries.push(GrowthEntry {
            radius,
            a: s.clone() / r2,
            s: s.clone(),
        });
    }
    Ok(GrowthSeries {
        center: center.to_string(),
        q,
        entries,
        approximate,
    })
}

pub fn growth_profile<S: Scalar>(
    fam: &dyn GraphFamily<S>,
    f: &FunctionSource<S>,
    q: f64,
    rmax: usize,
) -> Result<GrowthSeries<S>> {
    check_exponent(q)?;
    let (ball, values) = materialize_with(fam, rmax, f)?;
    growth_on_graph(&ball.graph, &values, &ball.root, q, rmax)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofCase {
    /// `1 < q < 2`: weights `f^{q-2}(end) φ²(start)`.
    Small,
    /// `q >= 2`: weights `f^{q-2}(start) φ²(end)`, plus the shell term `β`.
    Large,
}

impl ProofCase {
    pub fn for_exponent(q: f64) -> Self {
        if q < 2.0 {
            ProofCase::Small
        } else {
            ProofCase::Large
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProofCase::Small => "1<q<2",
            ProofCase::Large => "q>=2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofTrace<S> {
    pub q: f64,
    pub case: ProofCase,
    pub constant: S,
    pub radii: Vec<usize>,
    pub a: Vec<S>,
    /// `q_values[i]` pairs `φ_{R_{i-1}, R_i}` with `B_{R_i}`; undefined at `i = 0`.
    pub q_values: Vec<Option<S>>,
    /// `β_i`, one per consecutive pair of radii; zero in the small case.
    pub beta: Vec<S>,
    /// `Q_{i+1}² - C A_{i+1} (Q_{i+1} - Q_i + β_i)` for `i >= 1`.
    pub residuals: Vec<S>,
    pub approximate: bool,
}

impl<S: Scalar> ProofTrace<S> {
    /// `max_i A_i`, the role of the bound `K`.
    pub fn max_a(&self) -> S {
        self.a.iter().cloned().fold(S::zero(), S::max_of)
    }

    pub fn q_nondecreasing(&self) -> bool {
        let qs: Vec<&S> = self.q_values.iter().flatten().collect();
        qs.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn to_json(&self) -> Value {
        let num = |x: &S| {
            if self.approximate {
                json!(x.as_f64())
            } else {
                x.to_json()
            }
        };
        json!({
            "q": self.q,
            "case": self.case.as_str(),
            "C": num(&self.constant),
            "radii": self.radii,
            "A": self.a.iter().map(num).collect::<Vec<_>>(),
            "Q": self.q_values.iter().map(|v| v.as_ref().map(num)).collect::<Vec<_>>(),
            "beta": self.beta.iter().map(num).collect::<Vec<_>>(),
            "residuals": self.residuals.iter().map(num).collect::<Vec<_>>(),
            "max_A": num(&self.max_a()),
            "Q_nondecreasing": self.q_nondecreasing(),
        })
    }
}

/// Dyadic radii `R_1, 2R_1, 4R_1, ...` not exceeding `limit`.
pub fn doubling_radii(r1: usize, limit: usize) -> Vec<usize> {
    let mut radii = Vec::new();
    let mut r = r1;
    while r >= 1 && r <= limit {
        radii.push(r);
        r *= 2;
    }
    radii
}

pub fn proof_trace<S: Scalar>(
    fam: &dyn GraphFamily<S>,
    f: &FunctionSource<S>,
    q: f64,
    r1: usize,
    limit: usize,
    constant: S,
) -> Result<ProofTrace<S>> {
    check_exponent(q)?;
    if q <= 1.0 {
        return Err(Error::InvalidExponent(q));
    }
    let limit = fam.max_radius().map_or(limit, |cap| cap.min(limit));
    let radii = doubling_radii(r1, limit);
    if radii.len() < 2 {
        return Err(Error::InsufficientRadii(radii.len()));
    }
    let rn = *radii.last().unwrap();
    let (ball, values) = materialize_with(fam, rn, f)?;
    trace_on_graph(&ball.graph, &values, &ball.root, q, &radii, constant)
}

pub fn trace_on_graph<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    center: &str,
    q: f64,
    radii: &[usize],
    constant: S,
) -> Result<ProofTrace<S>> {
    if radii.len() < 2 {
        return Err(Error::InsufficientRadii(radii.len()));
    }
    let rn = *radii.last().unwrap();
    let dist =
        check_nonnegative_subharmonic(g, f, center, rn, &crate::calculus::default_tolerance())?;
    let case = ProofCase::for_exponent(q);
    let orientation = Orientation::adapted(g, f)?;
    let aligned = f.align(g);
    let val = |i: usize| {
        aligned[i]
            .as_ref()
            .ok_or_else(|| Error::MissingValue(g.id(i).to_string()))
    };
    let mut approx = false;

    let growth = growth_on_graph(g, f, center, q, rn)?;
    approx |= growth.approximate;
    let a: Vec<S> = radii
        .iter()
        .map(|&r| growth.get(r).expect("r <= rn").a.clone())
        .collect();

    let mut q_values = vec![None];
    let mut beta = Vec::new();
    for w in radii.windows(2) {
        let (ri, rj) = (w[0], w[1]);
        let phi = cutoff(g, center, ri, rj)?;
        let phi_vals = phi.phi.align(g);
        let mut qsum = S::zero();
        let mut shell = S::zero();
        for e in 0..g.edge_count() {
            let (s, t) = orientation.endpoint_idx(g, e);
            if !(within(dist[s], rj) && within(dist[t], rj)) {
                continue;
            }
            let (fs, ft) = (val(s)?, val(t)?);
            let grad = ft.clone() - fs.clone();
            let weight = &g.edge_data(e).weight;
            let (base, cut) = match case {
                ProofCase::Small => (ft, &phi_vals[s]),
                ProofCase::Large => (fs, &phi_vals[t]),
            };
            let factor = ext_pow(base, q - 2.0, &mut approx)?;
            let cut = cut.clone().unwrap_or_else(S::zero);
            qsum = qsum + energy_term(weight, &grad, factor.clone()) * cut.clone() * cut;
            if case == ProofCase::Large
                && rj >= 2
                && !within(dist[s], rj - 2)
                && !within(dist[t], rj - 2)
            {
                shell = shell + energy_term(weight, &grad, ext_pow(fs, q - 2.0, &mut approx)?);
            }
        }
        q_values.push(Some(qsum));
        let gap = S::from_int((rj - ri) as i64);
        beta.push(constant.clone() * shell / (gap.clone() * gap));
    }

    let mut residuals = Vec::new();
    for i in 1..radii.len() - 1 {
        let (qi, qn) = (
            q_values[i].clone().unwrap(),
            q_values[i + 1].clone().unwrap(),
        );
        residuals.push(
            qn.clone() * qn.clone()
                - constant.clone() * a[i + 1].clone() * (qn - qi + beta[i].clone()),
        );
    }
    Ok(ProofTrace {
        q,
        case,
        constant,
        radii: radii.to_vec(),
        a,
        q_values,
        beta,
        residuals,
        approximate: approx,
    })
}

/// One `(family, f, q, r, R)` entry of a corpus. `key` names the
/// family/function pair; cases sharing a key and `R` share one ball.
#[derive(Clone)]
pub struct CorpusCase<S> {
    pub key: String,
    pub family: Arc<dyn GraphFamily<S>>,
    pub function: FunctionSource<S>,
    pub q: f64,
    pub r: usize,
    pub outer: usize,
}

impl<S: Scalar> CorpusCase<S> {
    pub fn label(&self) -> String {
        format!("{} q={} r={} R={}", self.key, self.q, self.r, self.outer)
    }
}

pub const CORPUS_EXPONENTS: [f64; 5] = [1.25, 1.5, 2.0, 3.0, 4.0];
pub const CORPUS_RADII: [(usize, usize); 3] = [(1, 4), (2, 6), (3, 7)];

type CorpusFamily<S> = (&'static str, Arc<dyn GraphFamily<S>>, FunctionSource<S>);

/// Dyadic line, `Z`, `Z²` and the binary tree with their zoo functions,
/// crossed with [`CORPUS_EXPONENTS`] and [`CORPUS_RADII`] scaled by `scale`.
pub fn builtin_corpus<S: Scalar>(scale: usize) -> Result<Vec<CorpusCase<S>>> {
    let pairs: Vec<CorpusFamily<S>> = vec![
        ("dyadic-line/|f|", Arc::new(DyadicLine), dyadic_abs()),
        ("z/n^2", Arc::new(lattice::<S>(1)?), square()),
        ("z2/|x1|", Arc::new(lattice::<S>(2)?), abs_x1()),
        ("tree2/depth", Arc::new(regular_tree::<S>(2)?), depth()),
    ];
    let mut cases = Vec::new();
    for (key, fam, f) in pairs {
        for q in CORPUS_EXPONENTS {
            for (r, outer) in CORPUS_RADII {
                cases.push(CorpusCase {
                    key: key.to_string(),
                    family: fam.clone(),
                    function: f.clone(),
                    q,
                    r: r * scale,
                    outer: outer * scale,
                });
            }
        }
    }
    Ok(cases)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRow {
    pub label: String,
    pub q: f64,
    pub r: usize,
    pub outer: usize,
    pub lhs: f64,
    pub rhs_core: f64,
    pub ratio: Option<f64>,
    pub violation: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalConstant {
    /// `sup lhs / rhs_core`; infinite when some case is a violation.
    pub sup: f64,
    pub table: Vec<CorpusRow>,
    pub violations: Vec<String>,
}

impl EmpiricalConstant {
    pub fn is_finite(&self) -> bool {
        self.sup.is_finite() && self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sup": if self.sup.is_finite() { json!(self.sup) } else { json!("inf") },
            "finite": self.is_finite(),
            "violations": self.violations,
            "table": self.table.iter().map(|row| json!({
                "case": row.label,
                "q": row.q,
                "r": row.r,
                "R": row.outer,
                "lhs": row.lhs,
                "rhs_core": row.rhs_core,
                "ratio": row.ratio,
                "violation": row.violation,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn empirical_constant<S: Scalar>(corpus: &[CorpusCase<S>]) -> Result<EmpiricalConstant> {
    let mut balls = HashMap::new();
    let mut table = Vec::with_capacity(corpus.len());
    let mut violations = Vec::new();
    let mut sup = 0f64;
    let opts = SidesOptions::default();
    for case in corpus {
        let key = (case.key.clone(), case.outer);
        if !balls.contains_key(&key) {
            balls.insert(
                key.clone(),
                materialize_with(case.family.as_ref(), case.outer, &case.function)?,
            );
        }
        let (ball, values) = &balls[&key];
        let rep = caccioppoli_sides(
            &ball.graph,
            values,
            case.q,
            &ball.root,
            case.r,
            case.outer,
            &opts,
        )?;
        let ratio = rep.ratio().map(|x| x.as_f64());
        let violation = rep.is_violation();
        if violation {
            violations.push(case.label());
            sup = f64::INFINITY;
        } else if let Some(x) = ratio {
            sup = sup.max(x);
        }
        table.push(CorpusRow {
            label: case.label(),
            q: case.q,
            r: case.r,
            outer: case.outer,
            lhs: rep.lhs.as_f64(),
            rhs_core: rep.rhs_core.as_f64(),
            ratio,
            violation,
        });
    }
    Ok(EmpiricalConstant {
        sup,
        table,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatnessVerdict {
    Constant,
    /// Nonconstant and the outer annulus carries at least the inner mass.
    NonconstantNotLq,
    Nonconstant,
}

impl FlatnessVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            FlatnessVerdict::Constant => "constant",
            FlatnessVerdict::NonconstantNotLq => "nonconstant, consistent: f not in L^q",
            FlatnessVerdict::Nonconstant => "nonconstant",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlatnessReport {
    pub q: f64,
    pub radius: usize,
    /// `max |∇_e f| min{f^{q-2}(x), f^{q-2}(y)}` over edges in `B_{R/2}`.
    pub max_edge_quantity: f64,
    pub flat: bool,
    pub constant_on_inner_ball: bool,
    /// Zero edge quantity forced local constancy on the data.
    pub rigidity_holds: bool,
    pub inner_mass: f64,
    pub outer_mass: f64,
    pub verdict: FlatnessVerdict,
}

impl FlatnessReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "R": self.radius,
            "max_edge_quantity": self.max_edge_quantity,
            "flat": self.flat,
            "constant_on_inner_ball": self.constant_on_inner_ball,
            "rigidity_holds": self.rigidity_holds,
            "inner_mass": self.inner_mass,
            "outer_mass": self.outer_mass,
            "verdict": self.verdict.as_str(),
        })
    }
}

pub fn liouville_flatness_check<S: Scalar>(
    g: &WeightedGraph<S>,
    f: &VertexFunction<S>,
    q: f64,
    center: &str,
    radius: usize,
    tol: &S,
) -> Result<FlatnessReport> {
    check_exponent(q)?;
    if q <= 1.0 {
        return Err(Error::InvalidExponent(q));
    }
    let dist = check_nonnegative_subharmonic(g, f, center, radius, tol)?;
    let half = radius / 2;
    let aligned = f.align(g);
    let val = |i: usize| {
        aligned[i]
            .as_ref()
            .ok_or_else(|| Error::MissingValue(g.id(i).to_string()))
    };
    let mut approx = false;
    let mut scale = S::one();
    for (i, d) in dist.iter().enumerate() {
        if within(*d, radius) {
            scale = S::max_of(scale, val(i)?.abs());
        }
    }
    let threshold = tol.clone() * scale;

    let mut max_q = S::zero();
    let (mut lo, mut hi): (Option<S>, Option<S>) = (None, None);
    for e in 0..g.edge_count() {
        let d = g.edge_data(e);
        if !(within(dist[d.u], half) && within(dist[d.v], half)) {
            continue;
        }
        let (fu, fv) = (val(d.u)?, val(d.v)?);
        let grad = (fv.clone() - fu.clone()).abs();
        let factor = ext_min(
            ext_pow(fu, q - 2.0, &mut approx)?,
            ext_pow(fv, q - 2.0, &mut approx)?,
        );
        let quantity = match factor {
            _ if grad.is_zero() => S::zero(),
            Some(m) => grad * m,
            None => S::zero(),
        };
        max_q = S::max_of(max_q, quantity);
    }
    for (i, d) in dist.iter().enumerate() {
        if within(*d, half) {
            let v = val(i)?.clone();
            lo = Some(lo.map_or(v.clone(), |m| S::min_of(m, v.clone())));
            hi = Some(hi.map_or(v.clone(), |m| S::max_of(m, v)));
        }
    }
    let constant = match (lo, hi) {
        (Some(lo), Some(hi)) => hi - lo <= threshold,
        _ => true,
    };
    let flat = max_q <= threshold;

    let (mut inner, mut outer) = (S::zero(), S::zero());
    for (i, d) in dist.iter().enumerate() {
        if within(*d, radius) {
            let p = ext_pow(val(i)?, q, &mut approx)?.expect("q > 0") * g.measure_at(i).clone();
            if within(*d, half) {
                inner = inner + p;
            } else {
                outer = outer + p;
            }
        }
    }
    let verdict = if flat && constant {
        FlatnessVerdict::Constant
    } else if outer >= inner {
        FlatnessVerdict::NonconstantNotLq
    } else {
        FlatnessVerdict::Nonconstant
    };
    Ok(FlatnessReport {
        q,
        radius,
        max_edge_quantity: max_q.as_f64(),
        flat,
        constant_on_inner_ball: constant,
        rigidity_holds: !flat || constant,
        inner_mass: inner.as_f64(),
        outer_mass: outer.as_f64(),
        verdict,
    })
}
