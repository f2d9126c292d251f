//! `graphpot`: generate example graphs, classify and solve, evaluate
//! Caccioppoli sides, growth profiles and proof traces, and run the
//! property sweeps.
//!
//! Exit status: 0 success, 1 verification failure (a report is printed),
//! 2 usage or input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use graphpot::caccioppoli::{
    builtin_corpus, caccioppoli_sides, empirical_constant, growth_on_graph, growth_profile,
    liouville_flatness_check, proof_trace, SidesOptions,
};
use graphpot::calculus::{classify, default_tolerance};
use graphpot::dirichlet::{
    check_max_principle, solve_dirichlet, verify_nondegenerate_liouville, DirichletProblem, Method,
    SolveOptions,
};
use graphpot::examples::{default_function, family_by_name, function_by_name, glue};
use graphpot::family::{materialize_with, FunctionSource, GraphFamily};
use graphpot::io::{
    function_from_value, function_to_value, graph_from_value, graph_to_value, problem_from_value,
    read_json, scalar_mode, to_pretty, GraphDoc,
};
use graphpot::scalar::parse_rational;
use graphpot::sweep::{identity_suite, max_principle_suite};
use graphpot::{Domain, Error, Rational, Scalar, ScalarMode, VertexFunction, WeightedGraph};

#[derive(Parser)]
#[command(
    name = "graphpot",
    version,
    about = "Potential theory on weighted graphs"
)]
struct Cli {
    /// Arithmetic: `rational` (exact) or `float64`. Defaults to the input
    /// file's mode, else rational.
    #[arg(long, global = true)]
    scalar: Option<String>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Materialize a ball of a family, with a function on it.
    Gen(GenArgs),
    /// Classify a function as harmonic / sub- / superharmonic.
    Classify(ClassifyArgs),
    /// Solve a Dirichlet problem and check the maximum principle.
    Solve(SolveArgs),
    /// Evaluate both sides of the Caccioppoli-type inequality.
    Caccioppoli(CaccioppoliArgs),
    /// Growth profile `S_R`, `A_R = S_R / R²`.
    Growth(GrowthArgs),
    /// Quantities `A_i`, `Q_i`, `β_i` along doubling radii.
    Trace(TraceArgs),
    /// Property sweeps and Liouville checks.
    Check(CheckArgs),
    /// Glue two graphs at marked vertices.
    Glue(GlueArgs),
}

#[derive(Args)]
struct Source {
    /// Family: dyadic-line, z, z2, tree, glue.
    #[arg(long)]
    family: Option<String>,
    /// Function name in family mode, function file with --graph.
    #[arg(long)]
    function: Option<String>,
    /// Graph file (instead of --family).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Center vertex in graph mode; defaults to the `center` mark.
    #[arg(long)]
    center: Option<String>,
    /// Tree branching.
    #[arg(long, default_value_t = 2)]
    branching: usize,
}

#[derive(Args)]
struct GenArgs {
    family: String,
    #[arg(long)]
    radius: usize,
    #[arg(long)]
    function: Option<String>,
    #[arg(long, default_value_t = 2)]
    branching: usize,
    /// `graph.json[,function.json]`; graph JSON goes to stdout otherwise.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    function: PathBuf,
    /// Domain file; defaults to every vertex with a full neighborhood.
    #[arg(long)]
    domain: Option<PathBuf>,
    #[arg(long)]
    tol: Option<String>,
    /// Fail with status 1 unless the domain verdict is at least this.
    #[arg(long)]
    expect: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: PathBuf,
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long, default_value_t = graphpot::dirichlet::DEFAULT_MAX_ITERATIONS)]
    max_iterations: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CaccioppoliArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long = "R", alias = "outer")]
    outer: Option<usize>,
    /// Evaluate with f + ε.
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    /// Fail with status 1 if the ratio exceeds this constant.
    #[arg(long)]
    bound: Option<f64>,
    /// Run the built-in corpus instead of a single case.
    #[arg(long)]
    corpus: bool,
    /// Radius multiplier for the corpus.
    #[arg(long, default_value_t = 1)]
    scale: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GrowthArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    rmax: usize,
    /// `csv` or `json`; inferred from --out, csv on stdout.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    r1: usize,
    #[arg(long)]
    rmax: usize,
    #[arg(long = "C", alias = "constant", default_value = "1")]
    constant: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// identities, max-principle, flatness, nondegenerate or all.
    #[arg(default_value = "all")]
    what: String,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = 50)]
    cases: usize,
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    /// Inner radius for `nondegenerate`.
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 10)]
    radius: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GlueArgs {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    p: String,
    #[arg(long)]
    right: PathBuf,
    #[arg(long)]
    zero: String,
    /// Function on the right graph; the glued function is 0 on the left.
    #[arg(long)]
    right_function: Option<PathBuf>,
    /// `graph.json[,function.json]`.
    #[arg(long)]
    out: Option<String>,
}

/// A successful run, possibly carrying a verification failure.
struct Outcome {
    failed: bool,
}

impl Outcome {
    fn ok() -> Self {
        Outcome { failed: false }
    }

    fn verdict(passed: bool) -> Self {
        Outcome { failed: !passed }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) if o.failed => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn input_mode(cli: &Cli) -> anyhow::Result<ScalarMode> {
    if let Some(s) = &cli.scalar {
        return Ok(ScalarMode::parse(s)?);
    }
    let file = match &cli.cmd {
        Cmd::Classify(a) => Some(a.graph.clone()),
        Cmd::Solve(a) => Some(a.problem.clone()),
        Cmd::Glue(a) => Some(a.left.clone()),
        Cmd::Caccioppoli(CaccioppoliArgs { source, .. })
        | Cmd::Growth(GrowthArgs { source, .. })
        | Cmd::Check(CheckArgs { source, .. }) => source.graph.clone(),
        _ => None,
    };
    match file {
        Some(path) => {
            let v = load(&path)?;
            let inner = match v.get("graph") {
                Some(g) if g.is_object() => g.clone(),
                _ => v,
            };
            Ok(scalar_mode(&inner)?.unwrap_or(ScalarMode::Rational))
        }
        None => Ok(ScalarMode::Rational),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match input_mode(cli)? {
        ScalarMode::Rational => dispatch::<Rational>(cli),
        ScalarMode::Float64 => dispatch::<f64>(cli),
    }
}

fn dispatch<S: Scalar>(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.cmd {
        Cmd::Gen(a) => cmd_gen::<S>(a),
        Cmd::Classify(a) => cmd_classify::<S>(a),
        Cmd::Solve(a) => cmd_solve::<S>(a),
        Cmd::Caccioppoli(a) => cmd_caccioppoli::<S>(a),
        Cmd::Growth(a) => cmd_growth::<S>(a),
        Cmd::Trace(a) => cmd_trace::<S>(a),
        Cmd::Check(a) => cmd_check::<S>(a, cli.seed),
        Cmd::Glue(a) => cmd_glue::<S>(a),
    }
}

fn load(path: &Path) -> anyhow::Result<Value> {
    read_json(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> anyhow::Result<()> {
    emit(out, &to_pretty(v))
}

/// Prints a failing report on stdout (when it went to a file) and stderr.
fn report_failure(out: Option<&Path>, v: &Value) {
    if out.is_some() {
        print!("{}", to_pretty(&json!({"violation": v})));
    }
    eprintln!("verification failed");
}

fn out_pair(out: &Option<String>) -> (Option<PathBuf>, Option<PathBuf>) {
    match out {
        None => (None, None),
        Some(s) => {
            let mut it = s.splitn(2, ',').map(|p| PathBuf::from(p.trim()));
            (it.next(), it.next())
        }
    }
}

/// `GP_MAX_RADIUS`, defaulting to 200 rational / 900 float.
fn radius_cap<S: Scalar>() -> anyhow::Result<usize> {
    match std::env::var("GP_MAX_RADIUS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("GP_MAX_RADIUS must be a nonnegative integer, got `{v}`")),
        Err(_) => Ok(if S::is_exact() { 200 } else { 900 }),
    }
}

fn check_radius<S: Scalar>(family: &str, radius: usize) -> anyhow::Result<()> {
    let cap = radius_cap::<S>()?;
    if radius > cap {
        return Err(Error::RadiusCap {
            family: family.to_string(),
            requested: radius,
            cap,
        }
        .into());
    }
    Ok(())
}

fn parse_scalar<S: Scalar>(text: &str) -> anyhow::Result<S> {
    let t = text.trim();
    if S::is_exact() {
        if let Ok(r) = parse_rational(t) {
            return Ok(S::from_json(&Value::String(r.to_string()))?);
        }
        let x: f64 = t.parse().map_err(|_| anyhow!("not a number: `{t}`"))?;
        if x == 0.0 {
            return Ok(S::zero());
        }
        bail!("`{t}` is not a rational literal; use p/q or --scalar float64");
    }
    if let Ok(x) = t.parse::<f64>() {
        return Ok(S::from_f64(x)?);
    }
    Ok(S::from_json(&Value::String(t.to_string()))?)
}

fn load_graph<S: Scalar>(path: &Path) -> anyhow::Result<GraphDoc<S>> {
    graph_from_value(&load(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_function<S: Scalar>(path: &Path) -> anyhow::Result<VertexFunction<S>> {
    function_from_value(&load(path)?).with_context(|| format!("in {}", path.display()))
}

/// A graph with a function and a center, from a family or from files.
struct Instance<S> {
    graph: WeightedGraph<S>,
    function: VertexFunction<S>,
    center: String,
}

fn family_and_function<S: Scalar>(
    src: &Source,
) -> anyhow::Result<(Arc<dyn GraphFamily<S>>, FunctionSource<S>)> {
    let name = src
        .family
        .as_deref()
        .ok_or_else(|| anyhow!("give --family or --graph"))?;
    let fam = family_by_name::<S>(name, src.branching)?;
    let f = match &src.function {
        Some(fname) => function_by_name::<S>(fname)?,
        None => default_function::<S>(name)?,
    };
    Ok((fam, f))
}

fn instance<S: Scalar>(src: &Source, radius: usize) -> anyhow::Result<Instance<S>> {
    if let Some(path) = &src.graph {
        let doc = load_graph::<S>(path)?;
        let fpath = src
            .function
            .as_ref()
            .ok_or_else(|| anyhow!("--graph needs --function <file>"))?;
        let function = load_function::<S>(Path::new(fpath))?;
        let center = match (&src.center, doc.mark("center")) {
            (Some(c), _) => c.clone(),
            (None, Some(c)) => c.to_string(),
            (None, None) => bail!("no --center given and the graph has no `center` mark"),
        };
        return Ok(Instance {
            graph: doc.graph,
            function,
            center,
        });
    }
    let (fam, f) = family_and_function::<S>(src)?;
    check_radius::<S>(fam.name(), radius)?;
    let (ball, function) = materialize_with(fam.as_ref(), radius, &f)?;
    Ok(Instance {
        graph: ball.graph,
        function,
        center: ball.root,
    })
}

fn cmd_gen<S: Scalar>(a: &GenArgs) -> anyhow::Result<Outcome> {
    let fam = family_by_name::<S>(&a.family, a.branching)?;
    let f = match &a.function {
        Some(name) => function_by_name::<S>(name)?,
        None => default_function::<S>(&a.family)?,
    };
    check_radius::<S>(fam.name(), a.radius)?;
    let (ball, values) = materialize_with(fam.as_ref(), a.radius, &f)?;
    let mut marks = BTreeMap::from([("center".to_string(), ball.root.clone())]);
    if a.family == "glue" {
        marks.insert("seam".into(), ball.root.clone());
    }
    let mut graph = graph_to_value(&ball.graph, &marks);
    graph["radius"] = json!(a.radius);
    graph["family"] = json!(fam.name());
    let (gout, fout) = out_pair(&a.out);
    emit_json(gout.as_deref(), &graph)?;
    if let Some(p) = fout {
        emit_json(Some(&p), &function_to_value(&values))?;
    }
    Ok(Outcome::ok())
}

fn cmd_classify<S: Scalar>(a: &ClassifyArgs) -> anyhow::Result<Outcome> {
    let g = load_graph::<S>(&a.graph)?.graph;
    let f = load_function::<S>(&a.function)?;
    let interior = match &a.domain {
        Some(p) => graphpot::io::domain_from_value(&load(p)?)?,
        None => g.complete_vertices(),
    };
    let domain = Domain::new(&g, interior)?;
    let tol = match &a.tol {
        Some(t) => parse_scalar::<S>(t)?,
        None => default_tolerance::<S>(),
    };
    let c = classify(&g, &f, &domain, &tol)?;
    emit_json(a.out.as_deref(), &c.to_json())?;
    let passed = match a.expect.as_deref() {
        None => true,
        Some("harmonic") => c.is_harmonic(),
        Some("subharmonic") => c.is_subharmonic(),
        Some("superharmonic") => c.is_superharmonic(),
        Some(other) => bail!("unknown verdict `{other}`"),
    };
    if !passed {
        report_failure(
            a.out.as_deref(),
            &json!({"expected": a.expect, "verdict": c.verdict.as_str()}),
        );
    }
    Ok(Outcome::verdict(passed))
}

fn cmd_solve<S: Scalar>(a: &SolveArgs) -> anyhow::Result<Outcome> {
    let base = a.problem.parent().unwrap_or(Path::new("."));
    let doc = problem_from_value::<S>(&load(&a.problem)?, base)
        .with_context(|| format!("in {}", a.problem.display()))?;
    let domain = Domain::new(&doc.graph.graph, doc.interior.clone())?;
    let mut opts = SolveOptions::<S> {
        method: match a.method.as_str() {
            "auto" => Method::Auto,
            "direct" => Method::Direct,
            "iterative" => Method::Iterative,
            other => bail!("unknown method `{other}`"),
        },
        max_iterations: a.max_iterations,
        ..SolveOptions::default()
    };
    if let Some(t) = &a.tol {
        opts.tol = parse_scalar::<S>(t)?;
    }
    let problem = DirichletProblem {
        graph: &doc.graph.graph,
        domain: domain.clone(),
        boundary_values: doc.boundary,
        source: doc.source.clone(),
    };
    let report = match solve_dirichlet(&problem, &opts) {
        Err(Error::NoConvergence {
            iterations,
            residual,
        }) => {
            let v =
                json!({"error": "no convergence", "iterations": iterations, "residual": residual});
            emit_json(a.out.as_deref(), &v)?;
            report_failure(a.out.as_deref(), &v);
            return Ok(Outcome::verdict(false));
        }
        other => other?,
    };
    let mut v = report.to_json();
    let mut passed = true;
    let harmonic = doc
        .source
        .as_ref()
        .is_none_or(|s| s.iter().all(|(_, x)| x.is_zero()));
    if harmonic {
        let scale = S::from_f64(report.solution.sup_abs().as_f64().max(1.0))?;
        let tol = if S::is_exact() {
            S::zero()
        } else {
            opts.tol.clone() * scale
        };
        let mp = check_max_principle(&doc.graph.graph, &report.solution, &domain, &tol)?;
        passed = mp.holds();
        v["max_principle"] = mp.to_json();
    }
    emit_json(a.out.as_deref(), &v)?;
    if !passed {
        report_failure(a.out.as_deref(), &v["max_principle"]);
    }
    Ok(Outcome::verdict(passed))
}

fn cmd_caccioppoli<S: Scalar>(a: &CaccioppoliArgs) -> anyhow::Result<Outcome> {
    if a.corpus {
        let corpus = builtin_corpus::<S>(a.scale)?;
        let outer = corpus.iter().map(|c| c.outer).max().unwrap_or(0);
        check_radius::<S>("corpus", outer)?;
        let result = empirical_constant(&corpus)?;
        let v = result.to_json();
        emit_json(a.out.as_deref(), &v)?;
        if !result.is_finite() {
            report_failure(a.out.as_deref(), &json!({"violations": result.violations}));
        }
        return Ok(Outcome::verdict(result.is_finite()));
    }
    let q = a.q.ok_or_else(|| anyhow!("--q is required"))?;
    let r = a.r.ok_or_else(|| anyhow!("--r is required"))?;
    let outer = a.outer.ok_or_else(|| anyhow!("--R is required"))?;
    if r < 1 || outer < r + 2 {
        return Err(Error::DegenerateCutoff { r, outer }.into());
    }
    let inst = instance::<S>(&a.source, outer)?;
    let mut opts = SidesOptions::<S>::default();
    if let Some(t) = &a.tol {
        opts.tol = parse_scalar::<S>(t)?;
    }
    if let Some(e) = &a.epsilon {
        opts.epsilon = Some(parse_scalar::<S>(e)?);
    }
    let rep = caccioppoli_sides(
        &inst.graph,
        &inst.function,
        q,
        &inst.center,
        r,
        outer,
        &opts,
    )?;
    let mut v = rep.to_json();
    let ratio_ok = match (a.bound, rep.ratio()) {
        (Some(c), Some(x)) => x.as_f64() <= c,
        _ => true,
    };
    let passed = ratio_ok && !rep.is_violation();
    v["bound"] = json!(a.bound);
    v["holds"] = json!(passed);
    emit_json(a.out.as_deref(), &v)?;
    if !passed {
        report_failure(a.out.as_deref(), &v);
    }
    Ok(Outcome::verdict(passed))
}

fn cmd_growth<S: Scalar>(a: &GrowthArgs) -> anyhow::Result<Outcome> {
    let series = if a.source.graph.is_some() {
        let inst = instance::<S>(&a.source, a.rmax)?;
        growth_on_graph(&inst.graph, &inst.function, &inst.center, a.q, a.rmax)?
    } else {
        let (fam, f) = family_and_function::<S>(&a.source)?;
        check_radius::<S>(fam.name(), a.rmax)?;
        growth_profile(fam.as_ref(), &f, a.q, a.rmax)?
    };
    let format = match (&a.format, &a.out) {
        (Some(f), _) => f.clone(),
        (None, Some(p)) if p.extension().is_some_and(|e| e == "json") => "json".into(),
        _ => "csv".into(),
    };
    let text = match format.as_str() {
        "csv" => series.to_csv(),
        "json" => to_pretty(&series.to_json()),
        other => bail!("unknown format `{other}`"),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(Outcome::ok())
}

fn cmd_trace<S: Scalar>(a: &TraceArgs) -> anyhow::Result<Outcome> {
    let (fam, f) = family_and_function::<S>(&a.source)?;
    let cap = radius_cap::<S>()?.min(a.rmax);
    let constant = parse_scalar::<S>(&a.constant)?;
    let trace = proof_trace(fam.as_ref(), &f, a.q, a.r1, cap, constant)?;
    emit_json(a.out.as_deref(), &trace.to_json())?;
    Ok(Outcome::ok())
}

fn cmd_check<S: Scalar>(a: &CheckArgs, seed: u64) -> anyhow::Result<Outcome> {
    let mut sections = serde_json::Map::new();
    let mut passed = true;
    let run_identities = matches!(a.what.as_str(), "identities" | "all");
    let run_mp = matches!(a.what.as_str(), "max-principle" | "all");
    if run_identities {
        let checks = identity_suite::<S>(seed, a.instances)?;
        passed &= checks.iter().all(|c| c.passed());
        sections.insert(
            "identities".into(),
            json!(checks.iter().map(|c| c.to_json()).collect::<Vec<_>>()),
        );
    }
    if run_mp {
        let checks = max_principle_suite::<S>(seed, a.cases)?;
        passed &= checks.iter().all(|c| c.passed());
        sections.insert(
            "max_principle".into(),
            json!(checks.iter().map(|c| c.to_json()).collect::<Vec<_>>()),
        );
    }
    match a.what.as_str() {
        "identities" | "max-principle" | "all" => {}
        "flatness" => {
            let inst = instance::<S>(&a.source, a.radius)?;
            let rep = liouville_flatness_check(
                &inst.graph,
                &inst.function,
                a.q,
                &inst.center,
                a.radius,
                &default_tolerance::<S>(),
            )?;
            passed &= rep.rigidity_holds;
            sections.insert("flatness".into(), rep.to_json());
        }
        "nondegenerate" => {
            let (fam, f) = family_and_function::<S>(&a.source)?;
            check_radius::<S>(fam.name(), a.radius)?;
            let rep = verify_nondegenerate_liouville(fam.as_ref(), &f, a.q, a.r, a.radius)?;
            passed &= rep.bound_holds;
            sections.insert(
                "nondegenerate".into(),
                json!({
                    "min_measure": rep.min_measure,
                    "tail": rep.tail,
                    "certified_bound": rep.certified_bound,
                    "annulus_max": rep.annulus_max,
                    "inner_max": rep.inner_max,
                    "bound_holds": rep.bound_holds,
                    "verdict": rep.verdict.as_str(),
                }),
            );
        }
        other => bail!("unknown check `{other}`"),
    }
    let v = json!({"seed": seed, "scalar": S::MODE.as_str(), "passed": passed, "checks": sections});
    emit_json(a.out.as_deref(), &v)?;
    if !passed {
        report_failure(a.out.as_deref(), &v);
    }
    Ok(Outcome::verdict(passed))
}

fn cmd_glue<S: Scalar>(a: &GlueArgs) -> anyhow::Result<Outcome> {
    let left = load_graph::<S>(&a.left)?.graph;
    let right = load_graph::<S>(&a.right)?.graph;
    let (g, seam) = glue(&left, &a.p, &right, &a.zero)?;
    let marks = BTreeMap::from([
        ("seam".to_string(), seam.clone()),
        ("center".to_string(), seam),
    ]);
    let (gout, fout) = out_pair(&a.out);
    emit_json(gout.as_deref(), &graph_to_value(&g, &marks))?;
    if let Some(p) = fout {
        let path = a
            .right_function
            .as_ref()
            .ok_or_else(|| anyhow!("a function output needs --right-function"))?;
        let f = load_function::<S>(path)?;
        let glued: VertexFunction<S> = g
            .vertices()
            .map(|x| {
                let v = match x.strip_prefix("R:") {
                    Some(y) => f.value(y)?.clone(),
                    None => S::zero(),
                };
                Ok((x.to_string(), v))
            })
            .collect::<graphpot::Result<_>>()?;
        emit_json(Some(&p), &function_to_value(&glued))?;
    }
    Ok(Outcome::ok())
}
