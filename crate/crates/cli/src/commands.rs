use std::path::Path;

use serde_json::{json, Value};
use sphere_rep::certificates::{
    girth_representation, maximum_edge_pairing, nilli_identities, nilli_vector, random_regular_representation,
    weight_repair, NilliIdentities, WeightProfile,
};
use sphere_rep::experiment::{run_experiment, ExperimentConfig, SANDWICH_TOL};
use sphere_rep::linalg::{sym_eigen, Matrix, DEFAULT_EIGEN_TOL};
use sphere_rep::representation::{
    project, projection_expectation_check, render_svg, rho_edges, spectral_drawing, RenderStyle,
};
use sphere_rep::sdp::{dual_certificate_regular, solve_primal, SolutionReport, SolverOptions, CERTIFICATE_TOL};
use sphere_rep::{Edge, Error, Graph};

use crate::input::{load, InputInfo};
use crate::output::{emit, envelope, to_json, write_atomic};
use crate::{CliError, Command, InputArgs, Method, SolverArgs, Status};

/// Identity checks on Nilli vectors are exact up to this.
const IDENTITY_TOL: f64 = 1e-12;
const PROJECTION_SIGMAS: f64 = 3.0;

pub fn run(command: Command) -> Result<Status, CliError> {
    match command {
        Command::Rho { input, solver, seed, report } => rho(&input, &solver, seed, report.as_deref()),
        Command::Draw { input, solver, method, dim, seed, out, report, labels } => {
            draw(&input, &solver, method, dim, seed, out.as_deref(), report.as_deref(), labels)
        }
        Command::Bound { input, k, seed, report } => bound(&input, k, seed, report.as_deref()),
        Command::Nilli { input, k, edge, far, seed, report } => {
            nilli(&input, k, edge.as_deref(), far.as_deref(), seed, report.as_deref())
        }
        Command::RandomRegular { n, d, count, k, seed, max_cycle, no_solver, solver, report } => {
            let mut cfg = ExperimentConfig::new(n, d, count, k, seed);
            cfg.max_cycle = max_cycle;
            cfg.solver = if no_solver { None } else { Some(solver_options(&solver, seed)?) };
            random_regular(&cfg, &solver, report.as_deref())
        }
        Command::ProjectCheck { n, x, trials, seed, report } => project_check(n, x, trials, seed, report.as_deref()),
        Command::RepairDemo { input, weights, k, seed, report } => {
            repair_demo(&input, weights.as_deref(), k, seed, report.as_deref())
        }
    }
}

fn load_input(input: &InputArgs, seed: u64) -> Result<(Graph, InputInfo), CliError> {
    load(input.file.as_deref(), input.generator.as_deref(), seed)
}

fn solver_options(args: &SolverArgs, seed: u64) -> Result<SolverOptions, CliError> {
    let opts = SolverOptions {
        rank: args.rank,
        tol_feas: args.tol,
        max_outer: args.max_iters,
        restarts: args.restarts,
        seed,
        ..SolverOptions::default()
    };
    opts.validate()?;
    Ok(opts)
}

fn solver_tolerances(opts: &SolverOptions) -> Value {
    json!({
        "tol_feas": opts.tol_feas,
        "tol_obj": opts.tol_obj,
        "max_outer": opts.max_outer,
        "max_inner": opts.max_inner,
        "restarts": opts.restarts,
        "rank": opts.rank,
        "certificate": CERTIFICATE_TOL,
        "eigen": DEFAULT_EIGEN_TOL,
    })
}

fn rho(input: &InputArgs, solver: &SolverArgs, seed: u64, report: Option<&Path>) -> Result<Status, CliError> {
    let (g, info) = load_input(input, seed)?;
    let opts = solver_options(solver, seed)?;
    let p = solve_primal(&g, &opts)?;
    let (cert, note) = if g.is_regular() {
        match dual_certificate_regular(&g) {
            Ok(c) => (Some(c), None),
            Err(e @ Error::NotConnected) => (None, Some(e.to_string())),
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, Some(Error::NotRegular.to_string()))
    };
    let solution = SolutionReport::new(&p, cert.as_ref())?;
    let body = json!({
        "regular": g.regular_degree(),
        "solution": to_json(&solution),
        "certificate": cert.as_ref().map(to_json),
        "certificate_note": note,
    });
    emit(&envelope("rho", seed, Some(&info), solver_tolerances(&opts), body), report)?;
    Ok(if p.converged { Status::Ok } else { Status::NotConverged })
}

#[allow(clippy::too_many_arguments)]
fn draw(
    input: &InputArgs,
    solver: &SolverArgs,
    method: Method,
    dim: usize,
    seed: u64,
    out: Option<&Path>,
    report: Option<&Path>,
    labels: bool,
) -> Result<Status, CliError> {
    let (g, info) = load_input(input, seed)?;
    let opts = solver_options(solver, seed)?;
    let (layout, objective, converged): (Matrix, Option<f64>, bool) = match method {
        Method::Sdp => {
            let p = solve_primal(&g, &opts)?;
            (project(&p.factor, dim, seed)?, Some(p.objective), p.converged)
        }
        Method::Spectral => (spectral_drawing(&g, dim)?, None, true),
    };
    let drawing = if dim == 2 {
        render_svg(&g, &layout, &RenderStyle { labels, ..RenderStyle::default() })?
    } else {
        serde_json::to_string_pretty(&layout).expect("matrices serialize") + "\n"
    };
    match out {
        Some(path) => write_atomic(path, drawing.as_bytes())?,
        None => print!("{drawing}"),
    }
    if let Some(path) = report {
        let body = json!({
            "method": match method { Method::Sdp => "sdp", Method::Spectral => "spectral" },
            "dim": dim,
            "objective": objective,
            "rho_drawing": rho_edges(&g, &layout)?,
            "converged": converged,
            "output": out.map(|p| p.display().to_string()),
        });
        emit(&envelope("draw", seed, Some(&info), solver_tolerances(&opts), body), Some(path))?;
    }
    Ok(if converged { Status::Ok } else { Status::NotConverged })
}

fn bound(input: &InputArgs, k: usize, seed: u64, report: Option<&Path>) -> Result<Status, CliError> {
    let (g, info) = load_input(input, seed)?;
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if g.n() < 2 {
        return Err(Error::TrivialGraph.into());
    }
    let lambda2 = sym_eigen(&g.adjacency_matrix(), DEFAULT_EIGEN_TOL)?.values[1];
    let (lower, reason) = match girth_representation(&g, k) {
        Ok(r) => (
            Some(json!({
                "closed_form": r.closed_form,
                "rho_certificate": r.rho,
                "pairs": r.pairing.pairs.len(),
            })),
            None,
        ),
        Err(e @ (Error::GirthTooSmall { .. } | Error::NoPairing { .. })) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let body = json!({
        "d": d,
        "k": k,
        "lambda2": lambda2,
        "upper_bound": lambda2 * g.n() as f64 / 2.0,
        "girth": g.girth(),
        "lower_bound": lower,
        "lower_bound_note": reason,
    });
    let tolerances = json!({ "eigen": DEFAULT_EIGEN_TOL });
    emit(&envelope("bound", seed, Some(&info), tolerances, body), report)?;
    Ok(Status::Ok)
}

fn parse_edge(raw: &str) -> Result<Edge, CliError> {
    let bad = || CliError::Input(format!("edge must look like `u,v`, got `{raw}`"));
    let (u, v) = raw.split_once(',').ok_or_else(bad)?;
    Ok(Edge::new(u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
}

fn nilli(
    input: &InputArgs,
    k: usize,
    edge: Option<&str>,
    far: Option<&str>,
    seed: u64,
    report: Option<&Path>,
) -> Result<Status, CliError> {
    let (g, info) = load_input(input, seed)?;
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    let (e, ebar) = match (edge, far) {
        (Some(a), Some(b)) => (parse_edge(a)?, parse_edge(b)?),
        (None, None) => {
            let pairing = maximum_edge_pairing(&g, k, Default::default());
            *pairing.pairs.first().ok_or(Error::NoPairing { k, matched: 0, edges: g.m() })?
        }
        _ => return Err(CliError::Input("give both --edge and --far, or neither".into())),
    };
    let w = nilli_vector(&g, e, ebar, k)?;
    let ids = nilli_identities(&g, &w);
    let (norm_sq, quad) = NilliIdentities::expected(k, d);
    let holds = (ids.norm_sq - norm_sq).abs() <= IDENTITY_TOL && (ids.quad - quad).abs() <= IDENTITY_TOL;
    let body = json!({
        "k": k,
        "d": d,
        "edge": e,
        "far": ebar,
        "entries": w.entries,
        "norm_sq": ids.norm_sq,
        "quad": ids.quad,
        "tree_like": ids.tree_like,
        "expected": { "norm_sq": norm_sq, "quad": quad },
        "identities_hold": holds,
    });
    emit(&envelope("nilli", seed, Some(&info), json!({ "identity": IDENTITY_TOL }), body), report)?;
    Ok(if ids.tree_like && !holds { Status::CertificateFailed } else { Status::Ok })
}

fn random_regular(cfg: &ExperimentConfig, solver: &SolverArgs, report: Option<&Path>) -> Result<Status, CliError> {
    let ex = run_experiment(cfg)?;
    let mut tolerances = match &cfg.solver {
        Some(opts) => solver_tolerances(opts),
        None => json!({ "eigen": DEFAULT_EIGEN_TOL, "rank": solver.rank }),
    };
    tolerances["sandwich"] = json!(SANDWICH_TOL);
    let violations = ex.summary.sandwich_violations;
    let not_converged = ex.samples.iter().any(|s| s.solver_converged == Some(false));
    emit(&envelope("random-regular", cfg.seed, None, tolerances, to_json(&ex)), report)?;
    Ok(if violations > 0 {
        Status::CertificateFailed
    } else if not_converged {
        Status::NotConverged
    } else {
        Status::Ok
    })
}

fn project_check(n: usize, x: f64, trials: usize, seed: u64, report: Option<&Path>) -> Result<Status, CliError> {
    let check = projection_expectation_check(n, x, trials, seed)?;
    let mut body = to_json(&check);
    body["pass"] = json!(check.within_standard_errors(PROJECTION_SIGMAS));
    emit(&envelope("project-check", seed, None, json!({ "sigmas": PROJECTION_SIGMAS }), body), report)?;
    Ok(Status::Ok)
}

fn repair_demo(
    input: &InputArgs,
    weights: Option<&str>,
    k: usize,
    seed: u64,
    report: Option<&Path>,
) -> Result<Status, CliError> {
    let have_graph = input.file.is_some() || input.generator.is_some();
    let (profile, info, extra) = match (weights, have_graph) {
        (Some(raw), false) => {
            let f = raw
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| CliError::Input(format!("bad weight `{x}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            (f, None, Value::Null)
        }
        (None, true) => {
            let (g, info) = load_input(input, seed)?;
            let cert = random_regular_representation(&g, k)?;
            // Deficiencies left by the Nilli rows, before any repair row.
            let f: Vec<f64> = (0..g.n())
                .map(|v| 1.0 - (0..cert.good_pairs).map(|i| cert.matrix.get(i, v).powi(2)).sum::<f64>())
                .collect();
            let extra = json!({
                "k": k,
                "good_pairs": cert.good_pairs,
                "bad_edges": cert.bad_edges,
                "repair_rows": cert.repair_rows,
                "rho_certificate": cert.rho,
                "residual_unit": cert.residual_unit,
                "residual_barycentre": cert.residual_barycentre,
            });
            (f, Some(info), extra)
        }
        _ => return Err(CliError::Input("give either --weights or a graph input".into())),
    };
    let n = profile.len();
    let repaired = weight_repair(&WeightProfile::new(profile.clone())?);
    let sums = repaired.vertex_sums(n);
    let max_error = sums.iter().zip(&profile).fold(0.0f64, |a, (s, f)| a.max((s - f.max(0.0)).abs()));
    let body = json!({
        "profile": profile,
        "weights": repaired.weights,
        "depth": repaired.depth,
        "vertex_sums": sums,
        "max_error": max_error,
        "certificate": extra,
    });
    emit(&envelope("repair-demo", seed, info.as_ref(), json!({ "sum": 1e-9 }), body), report)?;
    Ok(if max_error > 1e-9 { Status::CertificateFailed } else { Status::Ok })
}
