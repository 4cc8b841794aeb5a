use clap::ValueEnum;
use fcohom::checks::run_suite;
use fcohom::cohomology::{
    germ_quotient_probe, h0_dimension, regular_case_predictor, table1_report, GradedComplex, NormalFormOptions,
    NormalFormSolver, Prediction, Table1Cell,
};
use fcohom::forms::{format_form, parse_form, DifferentialForm};
use fcohom::groebner::{milnor_data, poincare_series_product};
use fcohom::polyalg::{Polynomial, WeightSystem};
use fcohom::spectral::{
    e2_degeneration_check, projective_degeneration_check, projective_form_verdict, FiltrationSliceReport,
};
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_MATH};
use crate::problem::{resolve, Problem, ProblemSpec};
use crate::render::{fields, list, yes_no, Table};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Milnor,
    Hodge,
    Cohom,
    Table1,
    H0,
    Nf,
    Spectral,
    SpectralProj,
    Predict,
    ProbeQuotient,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Milnor => "milnor",
            Command::Hodge => "hodge",
            Command::Cohom => "cohom",
            Command::Table1 => "table1",
            Command::H0 => "h0",
            Command::Nf => "nf",
            Command::Spectral => "spectral",
            Command::SpectralProj => "spectral-proj",
            Command::Predict => "predict",
            Command::ProbeQuotient => "probe-quotient",
            Command::Verify => "verify",
        }
    }
}

/// Result of a successful run. `failure` is set when the computation
/// completed but reported a failed check.
pub struct Outcome {
    pub results: Value,
    pub text: String,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(results: Value, text: String) -> Self {
        Outcome { results, text, failure: None }
    }
}

/// Resolves defaults into `spec`, so that the echoed spec reproduces the run.
pub fn run(command: Command, spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let problem = resolve(spec)?;
    match command {
        Command::Milnor => milnor(&problem),
        Command::Hodge => hodge(&problem),
        Command::Cohom => cohom(&problem, spec),
        Command::Table1 => table1(&problem, spec),
        Command::H0 => h0(&problem, spec),
        Command::Nf => nf(&problem, spec),
        Command::Spectral => spectral(&problem, spec),
        Command::SpectralProj => spectral_proj(&problem, spec),
        Command::Predict => predict(spec),
        Command::ProbeQuotient => probe_quotient(&problem, spec),
        Command::Verify => verify(spec),
    }
}

fn quasi_degree(f: &Polynomial, w: &WeightSystem) -> Result<i64, CliError> {
    match f.is_quasi_homogeneous(w)? {
        Some(n) if n > 0 => Ok(n),
        Some(_) => Err(CliError::precondition("f must be nonconstant")),
        None => Err(CliError::new("NOT_QUASI_HOMOGENEOUS", "f is not quasi-homogeneous for the given weights", EXIT_MATH)),
    }
}

/// Largest weighted degree of a term of `f`.
fn top_weight(f: &Polynomial, w: &WeightSystem) -> i64 {
    f.terms().map(|(m, _)| m.weighted_degree(w)).max().unwrap_or(0)
}

fn parse_eta(problem: &Problem, spec: &ProblemSpec) -> Result<DifferentialForm, CliError> {
    let text = spec.eta.as_deref().ok_or_else(|| CliError::invalid("missing field `eta`"))?;
    parse_form(text, &problem.vars).map_err(|e| CliError::parse("eta", text, e))
}

fn milnor(problem: &Problem) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let w = &problem.weights;
    let md = milnor_data(f, w)?;
    let poincare = poincare_series_product(w, md.degree)?;
    let top = poincare.degree().map_or(0, |d| d as i64) + 1;
    let agrees = (0..=top).all(|d| poincare.coeff(d) == (md.graded_dim(d) as i64).into());
    let basis: Vec<String> = md.basis_b.iter().map(|m| m.to_string_with(&problem.vars)).collect();
    let results = json!({
        "milnor_number": md.milnor_number,
        "basis": basis,
        "graded_dims": md.graded_dims,
        "hodge": md.hodge,
        "degree": md.degree,
        "weight_sum": md.weight_sum,
        "poincare": poincare.to_string(),
        "poincare_agrees": agrees,
    });
    let mut t = Table::new(["weight", "dim", "basis"]);
    for (&d, &dim) in &md.graded_dims {
        let ms: Vec<String> = md.basis_in_degree(w, d).iter().map(|m| m.to_string_with(&problem.vars)).collect();
        t.row([d.to_string(), dim.to_string(), ms.join(", ")]);
    }
    let text = format!(
        "{}\n\n{}",
        fields(&[
            ("milnor number", md.milnor_number.to_string()),
            ("degree N", md.degree.to_string()),
            ("weight sum", md.weight_sum.to_string()),
            ("poincare", poincare.to_string()),
            ("poincare agrees", yes_no(agrees)),
        ]),
        t.render()
    );
    Ok(Outcome::ok(results, text))
}

fn hodge(problem: &Problem) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let md = milnor_data(f, &problem.weights)?;
    let n = problem.nvars();
    let results = json!({
        "degree": md.degree,
        "weight_sum": md.weight_sum,
        "milnor_number": md.milnor_number,
        "hodge": md.hodge,
    });
    let mut t = Table::new(["q", "h^{q,n-q}"]);
    for (q, h) in &md.hodge {
        t.row([q.to_string(), h.to_string()]);
    }
    let text = format!(
        "{}\n\n{}",
        fields(&[
            ("n", n.to_string()),
            ("degree N", md.degree.to_string()),
            ("weight sum", md.weight_sum.to_string()),
            ("milnor number", md.milnor_number.to_string()),
        ]),
        t.render()
    );
    Ok(Outcome::ok(results, text))
}

fn cohom(problem: &Problem, spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let w = &problem.weights;
    let n = problem.nvars();
    let big_n = quasi_degree(f, w)?;
    let p = *spec.p.get_or_insert(0);
    let d = *spec.max_degree.get_or_insert(3 * big_n + w.total());
    let ks: Vec<usize> = match spec.k {
        Some(k) if k > n => return Err(CliError::invalid(format!("k = {k} exceeds the number of variables {n}"))),
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let report = GradedComplex::new(f, w, p)?.report(&ks, d);
    let results = serde_json::to_value(&report).expect("serializable report");

    let mut header = vec!["weight".to_string()];
    header.extend(report.rows.iter().map(|r| format!("H^{}", r.k)));
    let mut t = Table::new(header);
    for deg in 0..=d {
        let mut cells = vec![deg.to_string()];
        cells.extend(report.rows.iter().map(|r| r.per_degree[&deg].to_string()));
        t.row(cells);
    }
    let mut totals = vec!["total".to_string()];
    totals.extend(report.rows.iter().map(|r| r.total.to_string()));
    t.row(totals);
    let mut stab = vec!["stabilized".to_string()];
    stab.extend(report.rows.iter().map(|r| yes_no(r.stabilized)));
    t.row(stab);
    let text = format!(
        "{}\n\n{}",
        fields(&[
            ("p", p.to_string()),
            ("degree N", report.degree.to_string()),
            ("weight sum", report.weight_sum.to_string()),
            ("max degree", d.to_string()),
        ]),
        t.render()
    );
    Ok(Outcome::ok(results, text))
}

fn prediction_text(p: &Prediction) -> String {
    match p {
        Prediction::Finite(v) => v.to_string(),
        Prediction::Infinite => "inf".into(),
        Prediction::Unknown => "?".into(),
        Prediction::NotCovered => "-".into(),
    }
}

fn status_text(c: &Table1Cell) -> String {
    serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn table1(problem: &Problem, spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let w = &problem.weights;
    let n = problem.nvars() as i64;
    let big_n = quasi_degree(f, w)?;
    let p_min = *spec.p_min.get_or_insert(0);
    let p_max = *spec.p_max.get_or_insert(n + 1);
    if p_min > p_max {
        return Err(CliError::invalid(format!("empty range p_min = {p_min} > p_max = {p_max}")));
    }
    let d = *spec.max_degree.get_or_insert(3 * big_n + w.total());
    let report = table1_report(f, w, p_min..=p_max, d)?;
    let results = serde_json::to_value(&report).expect("serializable report");

    let top = n.to_string();
    let below = (n - 1).to_string();
    let mut t = Table::new([
        "p".to_string(),
        "row".to_string(),
        format!("H^{below} predicted"),
        format!("H^{below} computed"),
        format!("H^{below} status"),
        format!("H^{top} predicted"),
        format!("H^{top} computed"),
        format!("H^{top} status"),
    ]);
    for r in &report.rows {
        t.row([
            r.p.to_string(),
            r.label.clone(),
            prediction_text(&r.top_minus_one.prediction),
            r.top_minus_one.total.to_string(),
            status_text(&r.top_minus_one),
            prediction_text(&r.top.prediction),
            r.top.total.to_string(),
            status_text(&r.top),
        ]);
    }
    let mut header = vec!["p".to_string(), "k".to_string()];
    header.extend((0..=d).map(|x| x.to_string()));
    let mut per = Table::new(header);
    for r in &report.rows {
        for c in [&r.top_minus_one, &r.top] {
            let mut cells = vec![r.p.to_string(), c.k.to_string()];
            cells.extend(c.per_degree.values().map(ToString::to_string));
            per.row(cells);
        }
    }
    let hodge: Vec<String> = report.hodge.iter().map(|(q, h)| format!("h^{q}={h}")).collect();
    let blocks: Vec<String> = report.blocks.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
    let text = format!(
        "{}\n\n{}\n\nper-degree dimensions\n{}",
        fields(&[
            ("n", n.to_string()),
            ("degree N", report.degree.to_string()),
            ("weight sum", report.weight_sum.to_string()),
            ("milnor number", report.milnor_number.to_string()),
            ("hodge", hodge.join(" ")),
            ("poincare agrees", yes_no(report.poincare_agrees)),
            ("max degree", report.max_degree.to_string()),
            ("blocks", blocks.join(" ")),
            ("all consistent", yes_no(report.all_consistent())),
        ]),
        t.render(),
        per.render()
    );
    Ok(Outcome::ok(results, text))
}

fn h0(problem: &Problem, spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let w = &problem.weights;
    let p = *spec.p.get_or_insert(0);
    let n_top = top_weight(f, w);
    let d = *spec.max_degree.get_or_insert((3 * n_top + w.total()).max(-p * n_top));
    let r = h0_dimension(f, w, p, d)?;
    let generator = r.generator.as_ref().map(|g| g.to_string_with(&problem.vars));
    let results = json!({
        "p": r.p,
        "max_degree": r.max_degree,
        "dimension": r.dimension,
        "generator": generator,
        "generator_is_f_power": r.generator_is_f_power,
    });
    let text = fields(&[
        ("p", r.p.to_string()),
        ("max degree", r.max_degree.to_string()),
        ("dimension", r.dimension.to_string()),
        ("generator", generator.unwrap_or_else(|| "-".into())),
        ("generator is f power", r.generator_is_f_power.map_or("-".into(), yes_no)),
    ]);
    Ok(Outcome::ok(results, text))
}

fn nf(problem: &Problem, spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let w = &problem.weights;
    let p = *spec.p.get_or_insert(0);
    let mut eta = parse_eta(problem, spec)?;
    if eta.degree() == 0 {
        eta = DifferentialForm::top(eta.as_function());
    }
    let options = NormalFormOptions { shuffle_seed: spec.seed };
    let solver = NormalFormSolver::with_options(f, w, p, options)?;
    let res = solver.solve(&eta)?;
    let verified = solver.check(&eta, &res).is_ok();
    let h: Vec<String> = res.h.iter().map(|g| g.to_string_with(&problem.vars)).collect();
    let witness = format_form(&res.witness, &problem.vars);
    let results = json!({ "p": p, "h": h, "witness": witness, "verified": verified });
    let mut t = Table::new(["j", "h_j"]);
    for (j, g) in h.iter().enumerate() {
        t.row([(j + 1).to_string(), g.clone()]);
    }
    let text = format!(
        "{}\n\n{}",
        fields(&[("p", p.to_string()), ("witness", witness), ("verified", yes_no(verified))]),
        t.render()
    );
    Ok(Outcome::ok(results, text))
}

fn slice_outcome(report: &FiltrationSliceReport, vars: &[String], extra: &[(&str, String)]) -> Outcome {
    let mut results = serde_json::to_value(report).expect("serializable report");
    for (i, c) in report.degrees.iter().enumerate() {
        if let Some(wit) = &c.witness {
            results["degrees"][i]["witness"] = Value::String(format_form(wit, vars));
        }
    }
    results["passed"] = Value::Bool(report.passed());
    let mut t = Table::new(["weight", "dim Z", "Z verified", "inclusion", "witness"]);
    for c in &report.degrees {
        t.row([
            c.degree.to_string(),
            c.z_dim.to_string(),
            yes_no(c.z_verified),
            yes_no(c.inclusion_holds),
            c.witness.as_ref().map_or("-".into(), |a| format_form(a, vars)),
        ]);
    }
    let mut head = vec![
        ("p", report.p.to_string()),
        ("q", report.q.to_string()),
        ("r", report.r.to_string()),
        ("window", format!("[{}, {}]", report.window.0, report.window.1)),
        ("primitive", yes_no(report.primitive)),
    ];
    head.extend(extra.iter().cloned());
    head.push(("passed", yes_no(report.passed())));
    Outcome::ok(results, format!("{}\n\n{}", fields(&head), t.render()))
}

fn spectral(problem: &Problem, spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let w = &problem.weights;
    let n = problem.nvars() as i64;
    let big_n = quasi_degree(f, w)?;
    let p = *spec.p.get_or_insert(0);
    let q = *spec.q.get_or_insert(n - 1 - p);
    let d = *spec.max_degree.get_or_insert(2 * big_n + w.total());
    let report = e2_degeneration_check(f, w, p, q, d)?;
    Ok(slice_outcome(&report, &problem.vars, &[]))
}

fn spectral_proj(problem: &Problem, spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let w = &problem.weights;
    if spec.eta.is_some() {
        let alpha = parse_eta(problem, spec)?;
        let verdict = projective_form_verdict(f, w, &alpha)?;
        let name = serde_json::to_value(verdict).expect("serializable verdict");
        let text = fields(&[
            ("form", format_form(&alpha, &problem.vars)),
            ("verdict", name.as_str().unwrap_or_default().to_string()),
        ]);
        return Ok(Outcome::ok(json!({ "verdict": name }), text));
    }
    let m = problem.nvars() as i64;
    let p = *spec.p.get_or_insert(0);
    let q = *spec.q.get_or_insert(m - 2 - p);
    let report = projective_degeneration_check(f, w, p, q)?;
    Ok(slice_outcome(&report, &problem.vars, &[("form degree", (p + q).to_string())]))
}

fn predict(spec: &ProblemSpec) -> Result<Outcome, CliError> {
    let bm = spec.betti_m.as_ref().ok_or_else(|| CliError::invalid("missing field `betti_m`"))?;
    let bs = spec.betti_s.as_ref().ok_or_else(|| CliError::invalid("missing field `betti_s`"))?;
    let dims = regular_case_predictor(bm, bs);
    let results = json!({ "betti_m": bm, "betti_s": bs, "dims": dims });
    let mut t = Table::new(["k", "b_k(M)", "b_{k-1}(S)", "dim H^k"]);
    for (k, dim) in dims.iter().enumerate() {
        let prev = if k == 0 { "-".to_string() } else { bs.get(k - 1).copied().unwrap_or(0).to_string() };
        t.row([k.to_string(), bm.get(k).copied().unwrap_or(0).to_string(), prev, dim.to_string()]);
    }
    Ok(Outcome::ok(results, t.render()))
}

fn probe_quotient(problem: &Problem, spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let f = problem.poly()?;
    let d = *spec.max_degree.get_or_insert(20);
    let probe = germ_quotient_probe(f, &problem.weights, d)?;
    let results = serde_json::to_value(&probe).expect("serializable probe");
    let mut t = Table::new(["weight", "dim"]);
    for (i, v) in probe.dims.iter().enumerate() {
        t.row([i.to_string(), v.to_string()]);
    }
    let text = format!(
        "{}\n\n{}",
        fields(&[("max degree", probe.max_degree.to_string()), ("all nonzero", yes_no(probe.all_nonzero))]),
        t.render()
    );
    Ok(Outcome::ok(results, text))
}

fn verify(spec: &mut ProblemSpec) -> Result<Outcome, CliError> {
    let seed = *spec.seed.get_or_insert(0);
    let instances = *spec.instances.get_or_insert(fcohom::checks::IDENTITY_INSTANCES);
    if instances == 0 {
        return Err(CliError::invalid("`instances` must be positive"));
    }
    let report = run_suite(seed, 2 * instances, instances);
    let mut results = serde_json::to_value(&report).expect("serializable report");
    results["passed"] = Value::Bool(report.passed());
    let mut t = Table::new(["check", "instances", "failures", "first failure"]);
    for c in &report.checks {
        t.row([
            c.name.clone(),
            c.instances.to_string(),
            c.failures.to_string(),
            c.first_failure.clone().unwrap_or_else(|| "-".into()),
        ]);
    }
    let text = format!(
        "{}\n\n{}",
        fields(&[("seed", seed.to_string()), ("passed", yes_no(report.passed()))]),
        t.render()
    );
    let failing: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    let failure = (!failing.is_empty()).then(|| CliError::new("VERIFY_FAILED", format!("failed checks: {}", list(&failing)), EXIT_MATH));
    Ok(Outcome { results, text, failure })
}

/// The JSON document emitted for a run.
pub fn envelope(command: Command, spec: &ProblemSpec, body: Result<&Outcome, &CliError>) -> Value {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command.name(),
        "inputs": spec,
        "results": Value::Null,
        "seed": spec.seed,
    });
    match body {
        Ok(out) => {
            doc["results"] = out.results.clone();
            if let Some(e) = &out.failure {
                doc["error"] = serde_json::to_value(e).expect("serializable error");
            }
        }
        Err(e) => doc["error"] = serde_json::to_value(e).expect("serializable error"),
    }
    doc
}
