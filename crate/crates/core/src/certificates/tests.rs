use super::*;
use crate::graph::Edge;
use crate::representation::{rho_edges, rho_rows, validate};
use crate::sdp::upper_bound_regular;

fn c(n: usize) -> Graph {
    Graph::cycle(n).unwrap()
}

#[test]
fn layers_on_cycle() {
    let g = c(20);
    assert_eq!(ball_layers(&g, Edge(0, 1), 0).unwrap(), vec![vec![0, 1]]);
    assert_eq!(ball_layers(&g, Edge(0, 1), 2).unwrap(), vec![vec![0, 1], vec![2, 19], vec![3, 18]]);
    assert_eq!(ball_layers(&g, Edge(0, 5), 1), Err(Error::EdgeNotInGraph(Edge(0, 5))));
}

#[test]
fn layers_grow_like_a_tree() {
    // The dodecahedron has girth 5, so radius-1 balls around an edge are trees.
    let g = Graph::platonic(crate::graph::PlatonicSolid::Dodecahedron);
    let layers = ball_layers(&g, g.edges()[0], 1).unwrap();
    assert_eq!(layers.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 4]);
}

#[test]
fn nilli_on_cycle() {
    let g = c(20);
    let w = nilli_vector(&g, Edge(0, 1), Edge(10, 11), 2).unwrap();
    assert_eq!(w.entries.len(), 12);
    assert!(w.entries.iter().all(|&(_, x)| x.abs() == 1.0));
    assert_eq!(w.sum(), 0.0);
    let id = nilli_identities(&g, &w);
    assert!(id.tree_like);
    assert_eq!((id.norm_sq, id.quad), (12.0, 20.0));
    assert_eq!(NilliIdentities::expected(2, 2), (12.0, 20.0));

    let w0 = nilli_vector(&g, Edge(0, 1), Edge(5, 6), 0).unwrap();
    assert_eq!(w0.entries, vec![(0, 1.0), (1, 1.0), (5, -1.0), (6, -1.0)]);
    let id = nilli_identities(&g, &w0);
    assert_eq!((id.norm_sq, id.quad), (4.0, 4.0));
}

#[test]
fn nilli_on_cubic_graph() {
    let g = Graph::random_regular(200, 3, 11).unwrap();
    let dist = g.bfs(&[g.edges()[0].0, g.edges()[0].1]);
    let e = g.edges()[0];
    let far = *g.edges().iter().find(|f| dist[f.0].min(dist[f.1]) >= 4).unwrap();
    let w = nilli_vector(&g, e, far, 1).unwrap();
    let inner: Vec<f64> = w.entries.iter().map(|&(_, x)| x).filter(|x| x.abs() < 1.0).collect();
    assert!(inner.iter().all(|x| (x.abs() - 0.5f64.sqrt()).abs() < 1e-15));
    let id = nilli_identities(&g, &w);
    if id.tree_like {
        assert!((id.norm_sq - 8.0).abs() < 1e-12);
        assert!((id.quad - (4.0 + 8.0 * 2f64.sqrt())).abs() < 1e-12);
    }
}

#[test]
fn nilli_errors() {
    let g = c(20);
    assert!(matches!(
        nilli_vector(&g, Edge(0, 1), Edge(4, 5), 2),
        Err(Error::TooClose { distance: 3, required: 6, .. })
    ));
    assert_eq!(nilli_vector(&Graph::path(5), Edge(0, 1), Edge(3, 4), 0), Err(Error::NotRegular));
}

#[test]
fn cyclic_neighbourhood_is_not_tree_like() {
    let g = triangle_in_dodecahedron();
    let e = Edge(0, 20);
    let dist = g.bfs(&[e.0, e.1]);
    let far = *g.edges().iter().find(|f| dist[f.0].min(dist[f.1]) >= 4).unwrap();
    let w = nilli_vector(&g, e, far, 1).unwrap();
    let id = nilli_identities(&g, &w);
    assert!(!id.tree_like);
    let (norm_sq, quad) = NilliIdentities::expected(1, 3);
    assert!(id.norm_sq != norm_sq || id.quad != quad);
}

fn assert_valid_pairing(g: &Graph, p: &EdgePairing) {
    let mut left: Vec<Edge> = p.pairs.iter().map(|x| x.0).collect();
    let mut right: Vec<Edge> = p.pairs.iter().map(|x| x.1).collect();
    left.sort();
    right.sort();
    assert_eq!(left, g.edges());
    assert_eq!(right, g.edges());
    for &(e, f) in &p.pairs {
        assert!(g.edge_dist(e, f).unwrap().is_none_or(|d| d >= pair_distance(p.k)));
    }
}

#[test]
fn pairings() {
    let g = c(20);
    let p = edge_pairing(&g, 2).unwrap();
    assert_valid_pairing(&g, &p);
    let g6 = c(6);
    assert_valid_pairing(&g6, &edge_pairing(&g6, 0).unwrap());
    assert!(matches!(edge_pairing(&Graph::petersen(), 1), Err(Error::NoPairing { k: 1, .. })));
    assert_eq!(edge_pairing(&Graph::path(4), 0), Err(Error::NotRegular));
}

#[test]
fn petersen_has_no_far_edges() {
    // Oracle: every pair of Petersen edges is within distance 3.
    let g = Graph::petersen();
    for &e in g.edges() {
        for &f in g.edges() {
            assert!(g.edge_dist(e, f).unwrap().unwrap() < 4);
        }
    }
}

#[test]
fn girth_construction_on_cycles() {
    let r = girth_representation(&c(20), 2).unwrap();
    assert!((r.rho - 50.0 / 3.0).abs() < 1e-9);
    assert!((r.closed_form - 50.0 / 3.0).abs() < 1e-12);
    assert!((rho_rows(&c(20), &r.matrix).unwrap() - r.rho).abs() < 1e-12);
    let v = validate(&c(20), &r.matrix).unwrap();
    assert!(v.is_valid(1e-9));
    assert!(r.rho <= upper_bound_regular(&c(20)).unwrap() + 1e-9);

    let r = girth_representation(&c(6), 0).unwrap();
    assert!((r.rho - 3.0).abs() < 1e-12);
    assert!((upper_bound_regular(&c(6)).unwrap() - 3.0).abs() < 1e-10);
}

#[test]
fn girth_construction_on_dodecahedron() {
    // Girth 5 > 2k+2 for k = 1; the closed form needs a perfect pairing at distance 4.
    let g = Graph::platonic(crate::graph::PlatonicSolid::Dodecahedron);
    match girth_representation(&g, 1) {
        Ok(r) => {
            assert!((r.rho - girth_lower_bound(20, 3, 1)).abs() < 1e-9);
            assert!(r.rho <= upper_bound_regular(&g).unwrap() + 1e-6);
        }
        Err(e) => assert!(matches!(e, Error::NoPairing { .. })),
    }
    assert_eq!(girth_representation(&g, 2).unwrap_err(), Error::GirthTooSmall { girth: 5, required: 6 });
}

#[test]
fn bad_edge_sets() {
    assert!(bad_edges(&c(20), 2).unwrap().is_empty());
    assert_eq!(bad_edges(&Graph::complete(4), 1).unwrap().len(), 6);
    assert!(bad_edges(&Graph::complete(4), 0).unwrap().is_empty());
    // C₅ and C₁₂ side by side: with k = 2 the pentagon is short, the 12-cycle is not.
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.extend((0..12).map(|i| (5 + i, 5 + (i + 1) % 12)));
    let g = Graph::new(17, &edges).unwrap();
    let bad = bad_edges(&g, 2).unwrap();
    assert_eq!(bad.len(), 5);
    assert!(bad.iter().all(|e| e.1 < 5));
    assert!(bad_edges(&g, 1).unwrap().is_empty());
}

#[test]
fn lollipop_bad_edges_by_distance() {
    // Triangle 0-1-2 with a path 2-3-4-5 hanging off: with k = 1 the
    // triangle and the edges touching distance 1 are bad.
    let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
    let bad = bad_edges(&g, 1).unwrap();
    assert_eq!(bad, vec![Edge(0, 1), Edge(0, 2), Edge(1, 2), Edge(2, 3), Edge(3, 4)]);
}

#[test]
fn random_construction_reduces_to_girth_case() {
    let g = c(20);
    let a = random_regular_representation(&g, 2).unwrap();
    let b = girth_representation(&g, 2).unwrap();
    assert_eq!(a.repair_rows, 0);
    assert_eq!(a.bad_edges, 0);
    assert_eq!(a.matrix, b.matrix);
}

#[test]
fn random_construction_on_cubic_graphs() {
    for seed in 0..4 {
        let g = Graph::random_regular(120, 3, seed).unwrap();
        let cert = random_regular_representation(&g, 1).unwrap();
        assert!(cert.residual_unit <= 1e-8 && cert.residual_barycentre <= 1e-8, "{cert:?}");
        assert!((rho_edges(&g, &cert.matrix).unwrap() - cert.rho).abs() < 1e-12);
        assert!(cert.rho <= upper_bound_regular(&g).unwrap() + 1e-6);
        if !cert.repair_touches_edge {
            assert!((cert.rho - cert.nilli_rho).abs() < 1e-9);
        }
        let report = serde_json::to_value(cert.report(&g, None)).unwrap();
        assert_eq!(report["good_pairs"], cert.good_pairs);
    }
}

#[test]
fn one_short_cycle() {
    let g = triangle_in_dodecahedron();
    assert_eq!(g.regular_degree(), Some(3));
    assert_eq!(g.count_cycles_upto(3).unwrap().count(3), 1);
    let cert = random_regular_representation(&g, 1).unwrap();
    assert!(cert.bad_edges > 0);
    assert!(cert.residual_unit <= 1e-9);
    assert!(cert.residual_barycentre <= 1e-9);
}

#[test]
fn choosing_k() {
    // d = 3: (2√2 − 1)/(k+1) ≤ ε/2.
    let k = choose_k(3, 0.5).unwrap();
    let excess = 2.0 * 2f64.sqrt() - 1.0;
    assert!(excess / (k as f64 + 1.0) <= 0.25);
    assert!(k == 0 || excess / (k as f64) > 0.25);
    assert_eq!(k, 7);
    assert!(choose_k(3, 0.0).is_err());
}

/// A cubic graph with exactly one triangle: vertex 0 of the dodecahedron
/// (girth 5) blown up into the triangle 0, 20, 21.
fn triangle_in_dodecahedron() -> Graph {
    let base = Graph::platonic(crate::graph::PlatonicSolid::Dodecahedron);
    let nbrs = base.neighbors(0).to_vec();
    let mut edges: Vec<(usize, usize)> = base.edges().iter().filter(|e| !e.contains(0)).map(|e| (e.0, e.1)).collect();
    let t = [0, 20, 21];
    edges.extend([(0, 20), (20, 21), (21, 0)]);
    for (i, &u) in nbrs.iter().enumerate() {
        edges.push((t[i], u));
    }
    Graph::new(22, &edges).unwrap()
}
