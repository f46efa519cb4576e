//! The auxiliary complex at the center of the mixed-sign example.

use std::sync::Arc;

use indef_core::families::mixed_star_example;
use indef_core::{build_star_complex, solve_gluing, GluingOptions};

#[test]
fn center_star_metric() {
    let (c, m) = mixed_star_example();
    let s = build_star_complex(&c, &m, 0).unwrap();
    assert_eq!(s.vertices, vec![0, 1, 2, 3, 4]);
    let apex = s.apex.expect("neighbors 1, 2, 3 have outside edges");
    assert_eq!(apex, 5);

    // Apex cones: triangle over 1-2, edge to 3; vertex 4 has no outside edge.
    let mut maximal = s.complex.maximal_simplices().to_vec();
    maximal.sort();
    assert_eq!(
        maximal,
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![1, 2, 5],
            vec![2, 3],
            vec![3, 5]
        ]
    );
    assert!(!s.complex.are_adjacent(0, apex));
    assert!(!s.complex.are_adjacent(4, apex));

    let center_edges = [(1, 2.0_f64), (2, 1.0), (3, 2.0_f64.sqrt()), (4, 3.0)];
    for (u, g) in center_edges {
        let e = s.complex.edge_index(0, u).unwrap();
        let hat = s.metric.signed_lengths()[e];
        assert!((hat - g / 2.0_f64.sqrt()).abs() <= 1e-15, "edge 0-{u}: {hat}");
        assert_eq!(s.metric.get(e), g * g / 2.0);
    }
    let zeros = s
        .complex
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a != 0 && b != 0)
        .inspect(|&(e, _)| assert_eq!(s.metric.get(e), 0.0))
        .count();
    assert_eq!(zeros, 6);
}

#[test]
fn example_glues() {
    let (c, m) = mixed_star_example();
    let c = Arc::new(c);
    let (z, sol) = solve_gluing(&c, &m, &GluingOptions::default()).unwrap();
    assert_eq!(sol.q, 5);
    let (residual, _) = z.phi().max_abs_diff(m.squared());
    assert!(residual <= 1e-10 * m.sup_norm());
}
