use std::f64::consts::PI;

use super::*;
use crate::graph::PlatonicSolid;
use crate::linalg::{random_orthogonal, sym_eigen, DEFAULT_EIGEN_TOL};
use crate::representation::principal_axes;

fn solve(g: &Graph) -> PrimalSolution {
    solve_primal(g, &SolverOptions::default()).unwrap()
}

#[test]
fn pentagon() {
    let p = solve(&Graph::cycle(5).unwrap());
    assert!(p.converged);
    assert!((p.objective - 5.0 * (2.0 * PI / 5.0).cos()).abs() < 1e-5, "{}", p.objective);
    assert!(p.residual_unit <= 1e-8);
    assert!(p.residual_barycentre <= 1e-8 * 5.0);
}

#[test]
fn petersen_and_k4() {
    let p = solve(&Graph::petersen());
    assert!((p.objective - 5.0).abs() < 1e-5);
    let p = solve(&Graph::complete(4));
    assert!((p.objective + 2.0).abs() < 1e-5);
    // On K₄, ρ = (‖s‖² − 4)/2 for unit columns, so the regular simplex (all
    // Gram entries −1/3) attains the same value as the solver.
    let simplex = Matrix::from_columns(&[
        vec![1.0, 1.0, 1.0],
        vec![1.0, -1.0, -1.0],
        vec![-1.0, 1.0, -1.0],
        vec![-1.0, -1.0, 1.0],
    ]);
    let simplex = Matrix::from_rows(&(0..3).map(|k| simplex.row(k).iter().map(|x| x / 3f64.sqrt()).collect()).collect::<Vec<_>>());
    assert!((rho_edges(&Graph::complete(4), &simplex).unwrap() - p.objective).abs() < 1e-5);
}

#[test]
fn irregular_graph_is_feasible() {
    // A star: the centre is opposite the leaves' average.
    let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let p = solve(&star);
    assert!(p.converged);
    assert!(validate(&star, &p.factor).unwrap().is_valid(1e-7));
}

#[test]
fn trivial_and_bad_options() {
    assert_eq!(solve_primal(&Graph::new(1, &[]).unwrap(), &SolverOptions::default()), Err(Error::TrivialGraph));
    let g = Graph::cycle(5).unwrap();
    for opts in [
        SolverOptions { rank: Some(0), ..Default::default() },
        SolverOptions { penalty_growth: 1.0, ..Default::default() },
        SolverOptions { tol_feas: 0.0, ..Default::default() },
        SolverOptions { restarts: 0, ..Default::default() },
    ] {
        assert!(matches!(solve_primal(&g, &opts), Err(Error::InvalidOptions(_))));
    }
}

#[test]
fn iteration_cap_is_flagged() {
    let g = Graph::cycle(12).unwrap();
    let opts = SolverOptions { max_outer: 1, max_inner: 2, ..Default::default() };
    let p = solve_primal(&g, &opts).unwrap();
    assert!(!p.converged);
    assert_eq!(p.iterations, 2);
}

#[test]
fn lagrangian_is_monotone_within_rounds() {
    for g in [Graph::petersen(), Graph::random_regular(40, 3, 2).unwrap(), Graph::path(7)] {
        let (_, trace) = solve_primal_traced(&g, &SolverOptions::default()).unwrap();
        for round in &trace {
            for w in round.windows(2) {
                assert!(w[1] >= w[0] - 1e-12 * w[0].abs().max(1.0), "{} -> {}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn deterministic_across_execution() {
    let g = Graph::random_regular(30, 4, 8).unwrap();
    let seq = SolverOptions { execution: Execution::Sequential, seed: 4, ..Default::default() };
    let par = SolverOptions { execution: Execution::Parallel, ..seq.clone() };
    let a = solve_primal(&g, &seq).unwrap();
    assert_eq!(a, solve_primal(&g, &par).unwrap());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&solve_primal(&g, &seq).unwrap()).unwrap());
}

#[test]
fn objective_depends_only_on_gram() {
    let g = Graph::platonic(PlatonicSolid::Octahedron);
    let p = solve(&g);
    let q = random_orthogonal(p.rank, 77);
    let rotated = q.matmul(&p.factor).unwrap();
    assert!((rho_edges(&g, &rotated).unwrap() - p.objective).abs() <= 1e-10);
}

#[test]
fn optimal_rows_are_second_eigenvectors() {
    for g in [Graph::petersen(), Graph::hypercube(3).unwrap(), Graph::cycle(7).unwrap()] {
        let p = solve(&g);
        let d = dual_certificate_regular(&g).unwrap();
        assert!(duality_gap(&p, &d).unwrap() <= 1e-6);
        let a = g.adjacency_matrix();
        let l2 = sym_eigen(&a, DEFAULT_EIGEN_TOL).unwrap().values[1];
        let (rows, norms_sq) = principal_axes(&p.factor).unwrap();
        for (k, &w) in norms_sq.iter().enumerate() {
            if w <= 1e-6 * g.n() as f64 {
                continue;
            }
            let row = rows.row(k);
            let ar = a.mul_vec(row).unwrap();
            let res = ar.iter().zip(row).map(|(x, y)| (x - l2 * y).powi(2)).sum::<f64>().sqrt();
            assert!(res <= 1e-4 * w.sqrt(), "row {k}: residual {res}, norm {}", w.sqrt());
        }
    }
}

#[test]
fn tight_certificates() {
    let cases = [(Graph::petersen(), 5.0), (Graph::cycle(4).unwrap(), 0.0), (Graph::complete(3), -1.5)];
    for (g, want) in cases {
        let d = dual_certificate_regular(&g).unwrap();
        assert!((d.dual_objective - want).abs() < 1e-10);
        assert!(d.min_eig_m >= -1e-10);
        assert!((upper_bound_regular(&g).unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn strict_points() {
    let cases = [(Graph::petersen(), 15.0), (Graph::cycle(4).unwrap(), 4.0), (Graph::hypercube(3).unwrap(), 12.0)];
    for (g, want) in cases {
        let d = strict_feasible_point(&g).unwrap();
        assert!((d.dual_objective - want).abs() < 1e-10);
        assert!(d.min_eig_m >= 1.0 - 1e-8);
    }
}

#[test]
fn upper_bound_examples() {
    assert!((upper_bound_regular(&Graph::hypercube(5).unwrap()).unwrap() - 48.0).abs() < 1e-9);
    for n in 3..8 {
        assert!((upper_bound_regular(&Graph::complete(n)).unwrap() + n as f64 / 2.0).abs() < 1e-10);
    }
    assert_eq!(upper_bound_regular(&Graph::path(3)), Err(Error::NotRegular));
}

#[test]
fn certificate_errors() {
    assert_eq!(dual_certificate_regular(&Graph::path(3)), Err(Error::NotRegular));
    let two = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    assert_eq!(dual_certificate_regular(&two), Err(Error::NotConnected));
    assert!(strict_feasible_point(&two).is_err());
    // Below λ₂/2 on C₅ the matrix M has a negative eigenvalue.
    let c5 = Graph::cycle(5).unwrap();
    let bad = certificate_from_multipliers(&c5, &[0.0; 5], 1.0).unwrap();
    assert!(!bad.is_valid(CERTIFICATE_TOL));
}

#[test]
fn gap_rejects_other_graph() {
    let p = solve(&Graph::cycle(5).unwrap());
    let d = dual_certificate_regular(&Graph::petersen()).unwrap();
    assert_eq!(duality_gap(&p, &d), Err(Error::GraphMismatch { primal: 5, dual: 10 }));
    let d5 = dual_certificate_regular(&Graph::cycle(5).unwrap()).unwrap();
    let gap = duality_gap(&p, &d5).unwrap();
    assert!((-1e-8..=1e-4).contains(&gap), "{gap}");
}

#[test]
fn report_json_fields() {
    let g = Graph::petersen();
    let p = solve(&g);
    let d = dual_certificate_regular(&g).unwrap();
    let report = SolutionReport::new(&p, Some(&d)).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    for key in ["objective", "upper_bound", "gap", "residual_unit", "residual_barycentre", "rank", "iterations", "converged", "factor"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["factor"]["cols"], 10);
}
