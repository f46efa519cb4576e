//! Randomized corpus run through all three solvers, checked by the
//! independent verifier.

use std::sync::Arc;

use indef_core::families::{random_complex, random_metric};
use indef_core::verify::{
    verify_immersion, verify_isometry, verify_local_embedding, verify_simplicial_embedding,
};
use indef_core::{
    build_star_complex, solve_gluing, solve_greene, solve_spanning, GluingOptions, GreeneOptions,
    IndefiniteMetric, SimplicialComplex, SimplicialMap, SpanningOptions,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 100;
const EPS_GEO: f64 = 1e-9;

fn corpus() -> Vec<(u64, Arc<SimplicialComplex>, IndefiniteMetric<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE as u64)
        .map(|k| {
            let c = random_complex(&mut rng, 20, 3, 8).unwrap();
            let m = random_metric(&c, &mut rng, -10.0, 10.0);
            (k, Arc::new(c), m)
        })
        .collect()
}

fn check_chain(f: &SimplicialMap<f64>) -> bool {
    let e = verify_simplicial_embedding(f, EPS_GEO).passed;
    let l = verify_local_embedding(f, EPS_GEO).passed;
    let i = verify_immersion(f, EPS_GEO).passed;
    (!e || l) && (!l || i)
}

#[test]
fn greene_on_corpus() {
    for (k, c, m) in corpus() {
        let opts = GreeneOptions {
            seed: k,
            ..GreeneOptions::default()
        };
        let (h, report) = solve_greene(&c, &m, &opts).unwrap_or_else(|e| panic!("case {k}: {e}"));
        assert_eq!(report.q, c.max_degree().max(2 * c.dimension() + 1), "case {k}");
        let iso = verify_isometry(&h, &m, 1e-8).unwrap();
        assert!(iso.passed, "case {k}: {iso:?}");
        assert!(verify_simplicial_embedding(&h, EPS_GEO).passed, "case {k}");
        assert!(check_chain(&h), "case {k}");
    }
}

#[test]
fn spanning_on_corpus() {
    for (k, c, m) in corpus() {
        let opts = SpanningOptions {
            seed: k,
            ..SpanningOptions::default()
        };
        let (z, sol) = solve_spanning(&c, &m, &opts).unwrap_or_else(|e| panic!("case {k}: {e}"));
        assert_eq!(sol.p + sol.q, 2 * c.dimension() + 1 + c.edge_count(), "case {k}");
        assert!(sol.p > 2 * c.dimension(), "case {k}");
        let iso = verify_isometry(&z, &m, 1e-8).unwrap();
        assert!(iso.passed, "case {k}: {iso:?}");
        assert!(verify_simplicial_embedding(&z, EPS_GEO).passed, "case {k}");
        assert!(check_chain(&z), "case {k}");
    }
}

#[test]
fn gluing_on_corpus() {
    for (k, c, m) in corpus() {
        let opts = GluingOptions {
            seed: k,
            ..GluingOptions::default()
        };
        let (z, sol) = solve_gluing(&c, &m, &opts).unwrap_or_else(|e| panic!("case {k}: {e}"));
        let (n, d) = (c.dimension(), c.max_degree());
        let q = d.max(2 * n + 1);
        assert_eq!(sol.p, 2 * q * (d * d * d - d * d + d + 1), "case {k}");
        let iso = verify_isometry(&z, &m, 1e-8).unwrap();
        assert!(iso.passed, "case {k}: {iso:?}");
        assert!(verify_simplicial_embedding(&z, EPS_GEO).passed, "case {k}");
        assert!(check_chain(&z), "case {k}");
        for class in &sol.partition.classes {
            for &u in class {
                let star = c.closed_star(u, 3).unwrap();
                assert!(
                    class.iter().all(|&w| w == u || !star.contains_vertex(w)),
                    "case {k}"
                );
            }
        }
    }
}

#[test]
fn star_complexes_stay_within_bounds() {
    for (k, c, m) in corpus() {
        for v in 0..c.vertex_count() {
            let s = build_star_complex(&c, &m, v).unwrap();
            assert!(s.complex.dimension() <= c.dimension(), "case {k} vertex {v}");
            assert!(s.complex.max_degree() <= c.max_degree(), "case {k} vertex {v}");
            if let Some(a) = s.apex {
                assert!(
                    !s.complex.are_adjacent(a, s.local_center()),
                    "case {k} vertex {v}"
                );
                for &e in s.complex.incident_edges(a) {
                    assert_eq!(s.metric.get(e), 0.0);
                }
            }
        }
    }
}
